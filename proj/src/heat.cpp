#include "qfourier/heat.hpp"

#include <algorithm>
#include <cmath>

#include "qfourier/bigfloat.hpp"
#include "qfourier/error.hpp"
#include "qfourier/summation.hpp"

namespace qfourier {

GaussKernel gauss_kernel(double t, const LatticeGrid& grid, const PrecisionCtx& ctx) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::InvalidParams, "heat time t must be positive");
  const QParams& p = grid.params();
  const double amp = gauss_amplitude(t, p, ctx);
  const double scale = std::pow(p.q(), -2.0 * p.v()) / t;
  return GaussKernel{t, GridFn::from_exponent(grid, [&](int n) {
                        const double x = grid.x(n);
                        return amp * qexp(-scale * x * x, p.q2(), ctx);
                      })};
}

double gauss_mass_defect(const GaussKernel& g, double c) {
  return std::abs(c * norm_p(g.values, 1.0) - 1.0);
}

GridFn heat_apply(const GridFn& f, double t, const Kernel3& K, const PrecisionCtx& ctx) {
  if (!(f.grid() == K.grid())) throw Error(ErrorCode::GridMismatch, "function is not on the kernel grid");
  const GaussKernel g = gauss_kernel(t, K.grid(), ctx);
  return convolve(g.values, f, K);
}

HeatResidual heat_residual(const GridFn& f, double t, const Kernel3& K, const PrecisionCtx& ctx) {
  const double q2 = K.grid().params().q2();
  const GridFn u = heat_apply(f, t, K, ctx);
  const GridFn u_prev = heat_apply(f, q2 * t, K, ctx);
  const GridFn lap = q_bessel_operator(u);
  HeatResidual r;
  r.t = t;
  r.mass_defect = gauss_mass_defect(gauss_kernel(t, K.grid(), ctx), K.c());
  const IndexWindow& w = K.window();
  for (int x = w.lo + 1; x <= w.hi - 1; ++x) {
    const double time_side = (u.at(x) - u_prev.at(x)) / t;
    r.residual = std::max(r.residual, std::abs(lap.at(x) - time_side) / (1.0 + std::abs(lap.at(x))));
  }
  return r;
}

double gauss_transform_defect(double t, const TransformOp& op, const PrecisionCtx& ctx) {
  const LatticeGrid& grid = op.grid();
  const double q2 = grid.params().q2();
  const GridFn symbol = GridFn::from_exponent(grid, [&](int n) {
    const double y = grid.x(n);
    return qexp(-t * y * y, q2, ctx);
  });
  const GridFn lhs = op.forward(symbol);
  const GaussKernel g = gauss_kernel(t, grid, ctx);
  const double floor = 1e-6 * sup_norm(g.values);
  double worst = 0.0;
  for (int n = op.interior().lo; n <= op.interior().hi; ++n) {
    const double gx = g.values.at(n);
    worst = std::max(worst, std::abs(lhs.at(n) - gx) / std::max(std::abs(gx), floor));
  }
  return worst;
}

double heat_spectral_defect(const GridFn& f, double t, const Kernel3& K, const TransformOp& op,
                            const PrecisionCtx& ctx) {
  const LatticeGrid& grid = K.grid();
  const double nf = norm_p(f, 2.0);
  if (nf == 0.0) return 0.0;
  const double q2 = grid.params().q2();
  const GridFn symbol = GridFn::from_exponent(grid, [&](int n) {
    const double x = grid.x(n);
    return qexp(-t * x * x, q2, ctx);
  });
  const GridFn lhs = op.forward(heat_apply(f, t, K, ctx));
  const GridFn rhs = pointwise_product(symbol, op.forward(f));
  return norm_p(lhs - rhs, 2.0) / nf;
}

double qexp_difference_defect(const QParams& p, const std::vector<double>& z_samples, const PrecisionCtx& ctx) {
  // Evaluated on the working-precision path; in binary64 the two sides cancel by a factor |z|.
  const mpfr_prec_t bits = bits_for_digits(ctx.work_digits);
  const BigFloat q2 = BigFloat(p.q(), bits) * BigFloat(p.q(), bits);
  double worst = 0.0;
  for (double zd : z_samples) {
    const BigFloat z(zd, bits);
    const BigFloat e = qexp(z, q2, ctx);
    const BigFloat e_shift = qexp(q2 * z, q2, ctx);
    worst = std::max(worst, ((e - e_shift - z * e) / e).abs().to_double());
  }
  return worst;
}

std::vector<double> qexp_sample_points() {
  std::vector<double> z;
  for (int k = 0; k < 20; ++k) z.push_back(-std::pow(10.0, -3.0 + 0.35 * k));
  return z;
}

double amplitude_quasi_periodicity(const QParams& p, double t, int m_lo, int m_hi, const PrecisionCtx& ctx) {
  std::vector<double> values;
  for (int m = m_lo; m <= m_hi; ++m) {
    const double tm = t * std::pow(p.q2(), m);
    values.push_back(gauss_amplitude(tm, p, ctx) * std::pow(p.q2(), m * (p.v() + 1.0)));
  }
  const double ref = values.front();
  double worst = 0.0;
  for (double x : values) worst = std::max(worst, std::abs(x / ref - 1.0));
  return worst;
}

double semigroup_defect(const GridFn& f, double t, double s, const Kernel3& K, const PrecisionCtx& ctx) {
  const double nf = norm_p(f, 2.0);
  if (nf == 0.0) return 0.0;
  const GridFn composed = heat_apply(heat_apply(f, s, K, ctx), t, K, ctx);
  return norm_p(composed - heat_apply(f, t + s, K, ctx), 2.0) / nf;
}

MarkovReport heat_markov_check(double t, const Kernel3& K, const std::vector<GridFn>& probes, double min_kernel,
                               const PrecisionCtx& ctx) {
  const GaussKernel g = gauss_kernel(t, K.grid(), ctx);
  return markov_check([&](const GridFn& f) { return convolve(f, g.values, K); }, K.grid(), K.window(), probes,
                      min_kernel);
}

double heat_multiplier_defect(double t, const Kernel3& K, const PrecisionCtx& ctx) {
  const LatticeGrid& grid = K.grid();
  const GaussKernel g = gauss_kernel(t, grid, ctx);
  const MultiplierCoeffs coeffs = multiplier_coeffs(g.values, K);
  double worst = 0.0;
  for (int n = coeffs.range.lo; n <= coeffs.range.hi; ++n) {
    const double x = grid.x(n);
    worst = std::max(worst, std::abs(coeffs.at(n) - qexp(-t * x * x, grid.params().q2(), ctx)));
  }
  return worst;
}

}  // namespace qfourier
