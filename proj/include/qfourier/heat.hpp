#pragma once

#include <vector>

#include "qfourier/lattice.hpp"
#include "qfourier/transform.hpp"
#include "qfourier/translation.hpp"

namespace qfourier {

// G(x, t) = A(t) e(-q^{-2v} x^2 / t, q^2) sampled on the grid.
struct GaussKernel {
  double t;
  GridFn values;
};

// Throws InvalidParams unless t > 0.
GaussKernel gauss_kernel(double t, const LatticeGrid& grid, const PrecisionCtx& ctx);

// |c ||G||_1 - 1|.
double gauss_mass_defect(const GaussKernel& g, double c);

// P_t f = G(., t) * f.
GridFn heat_apply(const GridFn& f, double t, const Kernel3& K, const PrecisionCtx& ctx);

struct HeatResidual {
  double t = 0.0;
  // max over window interior of |Delta u - (u(t) - u(q^2 t))/t| / (1 + |Delta u|).
  double residual = 0.0;
  // |c ||G(., t)||_1 - 1|.
  double mass_defect = 0.0;
};

HeatResidual heat_residual(const GridFn& f, double t, const Kernel3& K, const PrecisionCtx& ctx);

// max over x in the transform interior of |F[e(-t y^2, q^2)](x) - G(x, t)| / max(|G(x, t)|, 1e-6 sup|G|).
double gauss_transform_defect(double t, const TransformOp& op, const PrecisionCtx& ctx);

// ||F(P_t f) - e(-t x^2, q^2) F f||_2 / ||f||_2.
double heat_spectral_defect(const GridFn& f, double t, const Kernel3& K, const TransformOp& op,
                            const PrecisionCtx& ctx);

// max over the samples of |e(z, q^2) - e(q^2 z, q^2) - z e(z, q^2)| / e(z, q^2).
double qexp_difference_defect(const QParams& p, const std::vector<double>& z_samples, const PrecisionCtx& ctx);

// Twenty negative sample points spread over several decades.
std::vector<double> qexp_sample_points();

// max relative spread of A(q^{2m} t) q^{2m(v+1)} over m in [m_lo, m_hi].
double amplitude_quasi_periodicity(const QParams& p, double t, int m_lo, int m_hi, const PrecisionCtx& ctx);

// ||P_t P_s f - P_{t+s} f||_2 / ||f||_2; reported without a pass criterion.
double semigroup_defect(const GridFn& f, double t, double s, const Kernel3& K, const PrecisionCtx& ctx);

// Markov axioms of f -> f * G(., t).
MarkovReport heat_markov_check(double t, const Kernel3& K, const std::vector<GridFn>& probes, double min_kernel,
                               const PrecisionCtx& ctx);

// Multiplier coefficients of rho = G(., t), compared with e(-t q^{2n}, q^2) over the kernel window.
double heat_multiplier_defect(double t, const Kernel3& K, const PrecisionCtx& ctx);

}  // namespace qfourier
