#include <cmath>
#include <map>
#include <memory>
#include <utility>

#include "doctest.h"
#include "qfourier/heat.hpp"
#include "qfourier/probes.hpp"
#include "qfourier/transform.hpp"

using namespace qfourier;

namespace {

const TransformOp& op_for(double q, double v) {
  static std::map<std::pair<double, double>, std::unique_ptr<TransformOp>> cache;
  auto& slot = cache[{q, v}];
  if (!slot) slot = std::make_unique<TransformOp>(make_transform(default_grid(QParams(q, v)), PrecisionCtx()));
  return *slot;
}

}  // namespace

TEST_CASE("transform interiors") {
  CHECK(op_for(0.5, 0.0).interior() == IndexWindow{-10, 4});
  CHECK(op_for(0.5, 0.5).interior() == IndexWindow{-10, 4});
  CHECK(op_for(0.5, 1.5).interior() == IndexWindow{-10, 5});
  CHECK(op_for(0.8, 0.5).interior() == IndexWindow{-20, 8});
}

TEST_CASE("matrix structure") {
  const TransformOp& op = op_for(0.5, 0.5);
  const LatticeGrid& g = op.grid();
  for (int n = g.n_lo(); n <= g.n_hi(); n += 3) {
    for (int m = g.n_lo(); m <= g.n_hi(); m += 5) {
      CHECK(op.kernel(n, m) == op.kernel(m, n));
      CHECK(op.entry(n, m) == op.kernel(n, m) * g.weight(m));
      if (m > g.n_lo() && n < g.n_hi()) CHECK(op.kernel(n, m) == op.kernel(n + 1, m - 1));
    }
  }
  // forward(f)(x) = inner(f, psi_x)
  ProbeFactory pf(3);
  const GridFn f = pf.dense(g, op.interior());
  const GridFn ff = op.forward(f);
  for (int x : {-5, 0, 3}) CHECK(ff.at(x) == doctest::Approx(inner(f, op.basis(x))).epsilon(1e-13));
}

TEST_CASE("inversion and Plancherel on seeded probes") {
  for (auto [q, v] : {std::pair{0.5, 0.0}, std::pair{0.5, 0.5}, std::pair{0.5, 1.5}, std::pair{0.8, 0.5}}) {
    const TransformOp& op = op_for(q, v);
    ProbeFactory pf(7);
    for (const GridFn& f : pf.mixed(op.grid(), op.interior(), 30)) {
      CHECK(inversion_residual(f, op) < 1e-9);
      CHECK(plancherel_defect(f, op) < 1e-9);
    }
    CHECK(inversion_residual(delta_fn(op.grid(), 0), op) < 1e-9);
    CHECK(inversion_residual(GridFn::zeros(op.grid()), op) == 0.0);
    CHECK(plancherel_defect(GridFn::zeros(op.grid()), op) == 0.0);
  }
}

TEST_CASE("norms and orthogonality of the basis") {
  const TransformOp& op = op_for(0.5, 0.0);
  // ||F psi_1||^2 = ||psi_1||^2 = 1/(1-q) = 2
  CHECK(std::pow(norm_p(op.forward(op.basis(0)), 2.0), 2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(gram_entry(op, 0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  const TransformOp op1 = make_transform(LatticeGrid(QParams(0.5, 1.0), -10, 40), PrecisionCtx());
  CHECK(gram_entry(op1, 1, 1) == doctest::Approx(32.0).epsilon(1e-12));
  for (auto [q, v] : {std::pair{0.5, 0.0}, std::pair{0.5, 0.5}, std::pair{0.5, 1.5}, std::pair{0.8, 0.5}}) {
    const OrthogonalityResult r = orthogonality_matrix(op_for(q, v));
    CHECK(r.max_offdiag < 1e-9);
    CHECK(r.max_diag_rel < 1e-9);
  }
  // F psi_y is concentrated at y.
  const GridFn fy = op.forward(op.basis(-2));
  for (int x = op.interior().lo; x <= op.interior().hi; ++x) {
    if (x != -2) CHECK(std::abs(fy.at(x)) * std::sqrt(op.grid().weight(x) * op.grid().weight(-2)) < 1e-9);
  }
}

TEST_CASE("q-Bessel operator") {
  const TransformOp& op = op_for(0.5, 0.5);
  const LatticeGrid& g = op.grid();
  const double q = 0.5;
  const double q2v = std::pow(q, 2 * 0.5);
  const GridFn lap1 = q_bessel_operator(GridFn::constant(g, 1.0));
  for (int n = g.n_lo() + 1; n < g.n_hi(); ++n) CHECK(std::abs(lap1.at(n)) < 1e-300 + 1e-13 * std::pow(q, -2 * n));
  CHECK(lap1.at(g.n_lo()) == 0.0);
  const GridFn x2 = GridFn::from_exponent(g, [&](int n) { return g.x(n) * g.x(n); });
  const GridFn lapx2 = q_bessel_operator(x2);
  const double expected = 1.0 / (q * q) - 1.0 - q2v + q2v * q * q;
  for (int n = g.n_lo() + 1; n < g.n_hi(); ++n) CHECK(lapx2.at(n) == doctest::Approx(expected).epsilon(1e-12));
  // Delta j_v(lambda .) = -lambda^2 j_v(lambda .) with lambda = q
  const GridFn f = op.basis(1);
  const GridFn lf = q_bessel_operator(f);
  for (int n = -8; n <= 4; ++n) CHECK(std::abs(lf.at(n) + q * q * f.at(n)) < 1e-9 * (1.0 + std::abs(q * q * f.at(n))));
}

TEST_CASE("Delta acts as multiplication by -x^2") {
  const TransformOp& op = op_for(0.5, 0.5);
  const LatticeGrid& g = op.grid();
  ProbeFactory pf(11);
  const IndexWindow inner_window{op.interior().lo + 2, op.interior().hi - 2};
  for (int i = 0; i < 5; ++i) CHECK(delta_multiplier_defect(pf.bump(g, inner_window), op) < 1e-8);
  CHECK(delta_multiplier_defect(gauss_kernel(1.0, g, PrecisionCtx()).values, op) < 1e-8);
  CHECK(delta_multiplier_defect(GridFn::zeros(g), op) == 0.0);
}

TEST_CASE("transform of the Gauss kernel is the q-exponential symbol") {
  const TransformOp& op = op_for(0.5, 0.5);
  const LatticeGrid& g = op.grid();
  const PrecisionCtx ctx;
  const GridFn fg = op.forward(gauss_kernel(1.0, g, ctx).values);
  for (int n = op.interior().lo; n <= op.interior().hi; ++n) {
    const double x = g.x(n);
    const double expected = qexp(-x * x, g.params().q2(), ctx);
    CHECK(std::abs(fg.at(n) - expected) <= 1e-8 * std::max(expected, 1e-6));
  }
}

TEST_CASE("decay at infinity for L1-normalized input") {
  const TransformOp& op = op_for(0.5, 0.5);
  ProbeFactory pf(5);
  for (int i = 0; i < 5; ++i) {
    const GridFn b = pf.bump(op.grid(), op.interior());
    const GridFn f = (1.0 / norm_p(b, 1.0)) * b;
    const GridFn ff = op.forward(f);
    CHECK(std::abs(ff.at(op.grid().n_lo())) < 1e-6 * sup_norm(ff));
    CHECK(sup_norm(ff) <= op.c() * (1.0 + 1e-12));
  }
}
