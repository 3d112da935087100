#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "oracles.hpp"
#include "qfourier/bessel.hpp"
#include "qfourier/error.hpp"

using namespace qfourier;
namespace fs = std::filesystem;

TEST_CASE("jv at zero and small argument") {
  const PrecisionCtx ctx;
  for (double v : {-0.5, 0.0, 0.5, 1.5}) CHECK(jv(0.0, QParams(0.5, v), ctx) == 1.0);
  const QParams p(0.5, 0.5);
  const double x = std::pow(0.5, 10);
  const double two_terms = 1.0 - p.q2() * x * x / ((1.0 - std::pow(p.q(), 3.0)) * (1.0 - p.q2()));
  CHECK(std::abs(jv(x, p, ctx) - two_terms) < 1e-10);
}

TEST_CASE("jv against the exact rational oracle") {
  const PrecisionCtx ctx;
  // v = 0: q^{2v+2} = 2^-2.
  CHECK(oracle::ulp_distance(jv(std::pow(0.5, -5), QParams(0.5, 0.0), ctx), oracle::jv_half_exact(-5, 2)) <= 1.0);
  CHECK(jv(std::pow(0.5, -5), QParams(0.5, 0.5), ctx) == doctest::Approx(-3.4678188217562341e-11).epsilon(1e-15));
  for (auto [v, e] : {std::pair{0.0, 2}, std::pair{0.5, 3}, std::pair{1.5, 5}}) {
    const QParams p(0.5, v);
    const BesselTable table = jv_table(p, -8, 30, ctx);
    for (int n = -8; n <= 30; ++n) CHECK(oracle::ulp_distance(table(n), oracle::jv_half_exact(n, e)) <= 1.0);
  }
}

TEST_CASE("binary64 and precise paths agree off the lattice") {
  const PrecisionCtx ctx;
  const QParams p(0.7, 0.25);
  for (double x : {0.3, 1.7, 4.2, 11.0}) {
    const double fast = jv(x, p, ctx);
    const double precise = jv_precise(x, p, ctx).to_double();
    CHECK(std::abs(fast - precise) <= 1e-13 * std::max(std::abs(precise), 1e-300) + 1e-300);
  }
}

TEST_CASE("table layout and consistency with the scalar path") {
  const PrecisionCtx ctx;
  const LatticeGrid grid(QParams(0.5, 0.5), -10, 40);
  const BesselTable table = jv_table(grid, ctx);
  CHECK(table.n_min() == -20);
  CHECK(table.n_max() == 80);
  CHECK(table(0) == jv(1.0, grid.params(), ctx));
  CHECK_THROWS_AS((void)table(81), Error);
  const double bound = jv_bound_constant(grid.params(), ctx);
  for (int n = 0; n <= 80; ++n) CHECK(std::abs(table(n)) <= bound);
}

TEST_CASE("table is stable under extra working digits") {
  PrecisionCtx wide;
  wide.work_digits = 80;
  const PrecisionCtx ctx;
  const QParams p(0.8, 0.5);
  const BesselTable a = jv_table(p, -40, 40, ctx);
  const BesselTable b = jv_table(p, -40, 40, wide);
  for (int n = -40; n <= 40; ++n) CHECK(oracle::ulp_distance(a(n), b(n)) <= 1.0);
}

TEST_CASE("decay bound") {
  const PrecisionCtx ctx;
  // v = 0, q = 1/2: C = (-q^2;q^2)^2 / (q^2;q^2) from the product oracle.
  const double c = std::pow(oracle::qpoch_product(-0.25, 0.25), 2) / oracle::qpoch_product(0.25, 0.25);
  CHECK(jv_bound_constant(QParams(0.5, 0.0), ctx) == doctest::Approx(c).epsilon(1e-14));
  for (auto [q, v] : {std::pair{0.5, 0.0}, std::pair{0.5, 0.5}, std::pair{0.5, 1.5}, std::pair{0.8, 0.5}}) {
    const BesselTable table = jv_table(default_grid(QParams(q, v)), ctx);
    const CheckEntry e = decay_bound_check(table, ctx);
    CHECK(e.pass);
    CHECK(e.residual <= 1.0 + 1e-12);
  }
  const QParams p(0.5, 0.0);
  for (int n = -8; n <= -1; ++n) {
    CHECK(std::log(std::abs(jv(std::pow(0.5, n), p, ctx))) <= jv_log_bound(n, p, ctx) + 1e-12);
  }
}

TEST_CASE("eigenfunction relation") {
  const PrecisionCtx ctx;
  const LatticeGrid grid(QParams(0.5, 0.5), -10, 40);
  const BesselTable table = jv_table(grid, ctx);
  for (int lam : {-2, 0, 1, 2, 3}) CHECK(eigen_residual(grid, lam, table, ctx) < 1e-10);
  CHECK(eigen_residual_binary64(grid, 0, table, {-9, 4}) < 1e-10);
  CHECK(eigen_residual_binary64(grid, 2, table, {-9, 4}) < 1e-10);
}

TEST_CASE("table cache round trip") {
  const PrecisionCtx ctx;
  const fs::path dir = fs::temp_directory_path() / "qfourier_test_cache";
  fs::remove_all(dir);
  const LatticeGrid grid(QParams(0.5, 1.5), -10, 40);
  const BesselTable fresh = jv_table(grid, ctx, dir);
  CHECK(fresh.has_precise());
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) == 1);
  const BesselTable cached = jv_table(grid, ctx, dir);
  CHECK(!cached.has_precise());
  for (int n = fresh.n_min(); n <= fresh.n_max(); ++n) CHECK(fresh(n) == cached(n));
  CHECK(cached.precise(-3, ctx).to_double() == fresh(-3));
}
