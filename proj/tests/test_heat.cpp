#include <cmath>
#include <memory>

#include "doctest.h"
#include "qfourier/error.hpp"
#include "qfourier/heat.hpp"
#include "qfourier/probes.hpp"

using namespace qfourier;

namespace {

struct Setup {
  LatticeGrid grid;
  TransformOp op;
  Kernel3 K;
};

const Setup& setup() {
  static std::unique_ptr<Setup> s;
  if (!s) {
    const PrecisionCtx ctx;
    const LatticeGrid grid = default_grid(QParams(0.5, 0.5));
    auto table = std::make_shared<const BesselTable>(jv_table(grid, ctx));
    s = std::make_unique<Setup>(Setup{grid, TransformOp(grid, table, ctx), make_kernel(grid, table, ctx, 16)});
  }
  return *s;
}

}  // namespace

TEST_CASE("Gauss kernel") {
  const Setup& s = setup();
  const PrecisionCtx ctx;
  const double q2 = 0.25;
  for (double t : {q2 * q2, q2, 1.0, 1.0 / q2}) {
    const GaussKernel g = gauss_kernel(t, s.grid, ctx);
    for (double x : g.values.values()) CHECK(x > 0.0);
    CHECK(gauss_mass_defect(g, s.K.c()) < 1e-8);
    CHECK(gauss_transform_defect(t, s.op, ctx) < 1e-8);
  }
  CHECK_THROWS_AS(gauss_kernel(0.0, s.grid, ctx), Error);
  CHECK_THROWS_AS(gauss_kernel(-1.0, s.grid, ctx), Error);
}

TEST_CASE("heat semigroup action") {
  const Setup& s = setup();
  const PrecisionCtx ctx;
  const GridFn u1 = heat_apply(GridFn::constant(s.grid, 1.0), 1.0, s.K, ctx);
  for (int x = s.K.window().lo; x <= s.K.window().hi; ++x) CHECK(std::abs(u1.at(x) - 1.0) < 1e-8);
  ProbeFactory pf(4);
  const GridFn bump = pf.bump(s.grid, s.K.window());
  const GridFn u = heat_apply(bump, 1.0, s.K, ctx);
  for (int x = s.K.window().lo; x <= s.K.window().hi; ++x) CHECK(u.at(x) > -1e-10);
  for (const GridFn& f : pf.mixed(s.grid, s.K.window(), 4)) {
    CHECK(heat_spectral_defect(f, 1.0, s.K, s.op, ctx) < 1e-8);
  }
  // u = P_t G(., s) stays positive and mass-normalized
  const GridFn gs = gauss_kernel(0.5, s.grid, ctx).values;
  const GridFn ug = heat_apply(gs, 1.0, s.K, ctx);
  for (int x = s.K.window().lo; x <= s.K.window().hi; ++x) CHECK(ug.at(x) > 0.0);
  CHECK(std::abs(s.K.c() * jackson_integral(ug) - 1.0) < 1e-8);
  const LatticeGrid other(QParams(0.5, 0.5), -10, 39);
  CHECK_THROWS_AS(heat_apply(GridFn::zeros(other), 1.0, s.K, ctx), Error);
}

TEST_CASE("heat equation residual") {
  const Setup& s = setup();
  const PrecisionCtx ctx;
  ProbeFactory pf(8);
  const GridFn f = pf.bump(s.grid, s.K.window());
  for (double t : {0.0625, 0.25, 1.0, 4.0}) {
    const HeatResidual r = heat_residual(f, t, s.K, ctx);
    CHECK(r.residual < 1e-7);
    CHECK(r.mass_defect < 1e-8);
    CHECK(r.t == t);
  }
  CHECK(heat_residual(f, 0.37, s.K, ctx).residual < 1e-6);
}

TEST_CASE("scalar q-difference identity of the symbol") {
  const PrecisionCtx ctx;
  const auto z = qexp_sample_points();
  CHECK(z.size() == 20);
  for (double x : z) CHECK(x < 0.0);
  for (double q : {0.5, 0.8}) CHECK(qexp_difference_defect(QParams(q, 0.5), z, ctx) < 1e-12);
  CHECK(amplitude_quasi_periodicity(QParams(0.5, 0.5), 1.0, -3, 3, ctx) < 1e-10);
}

TEST_CASE("heat Markov check") {
  const Setup& s = setup();
  ProbeFactory pf(12);
  const auto probes = pf.mixed(s.grid, s.K.window(), 8);
  for (double t : {0.25, 1.0, 4.0}) {
    const MarkovReport r = heat_markov_check(t, s.K, probes, 0.0, PrecisionCtx());
    CHECK(r.max_defect() < 1e-8);
    CHECK(r.symmetry_defect < 1e-8);
    CHECK(r.sup_defect < 1e-9);
  }
}

TEST_CASE("semigroup composition is reported, not asserted") {
  const Setup& s = setup();
  ProbeFactory pf(13);
  const double d = semigroup_defect(pf.bump(s.grid, s.K.window()), 1.0, 0.25, s.K, PrecisionCtx());
  CHECK(std::isfinite(d));
  MESSAGE("||P_1 P_{q^2} f - P_{1+q^2} f|| / ||f|| = " << d);
}
