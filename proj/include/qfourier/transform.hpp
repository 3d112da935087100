#pragma once

#include <memory>
#include <vector>

#include "qfourier/bessel.hpp"
#include "qfourier/lattice.hpp"

namespace qfourier {

// Bound on the relative inversion error of column t (the unit function at q^t)
// caused by truncating the lattice sum to the grid.
double inversion_tail_estimate(const LatticeGrid& grid, int t, const PrecisionCtx& ctx);
// Longest run of columns from n_lo upward whose tail estimate is below tol.
IndexWindow transform_interior(const LatticeGrid& grid, const PrecisionCtx& ctx, double tol = 1e-12);

// The q-Bessel Fourier transform as a dense matrix on a grid:
// M[n, m] = c (1-q) q^{m(2v+2)} j_v(q^{n+m}, q^2).
class TransformOp {
public:
  TransformOp(LatticeGrid grid, std::shared_ptr<const BesselTable> table, const PrecisionCtx& ctx);

  const LatticeGrid& grid() const { return grid_; }
  const BesselTable& table() const { return *table_; }
  std::shared_ptr<const BesselTable> table_ptr() const { return table_; }
  double c() const { return c_; }
  const IndexWindow& interior() const { return interior_; }

  // c j_v(q^{n+m}); symmetric in (n, m).
  double kernel(int n, int m) const { return c_ * (*table_)(n + m); }
  // Matrix entry, stored as kernel(n, m) * weight(m).
  double entry(int n, int m) const;

  GridFn forward(const GridFn& f) const;
  // psi_x(t) = c j_v(q^{x_exp} t, q^2) sampled on the grid.
  GridFn basis(int x_exp) const;

private:
  LatticeGrid grid_;
  std::shared_ptr<const BesselTable> table_;
  double c_;
  IndexWindow interior_;
  std::vector<double> matrix_;
};

TransformOp make_transform(const LatticeGrid& grid, const PrecisionCtx& ctx);

// ||F(F f) - f||_2 / ||f||_2 (zero for f = 0).
double inversion_residual(const GridFn& f, const TransformOp& op);
// | ||F f||_2 - ||f||_2 | / ||f||_2 (zero for f = 0).
double plancherel_defect(const GridFn& f, const TransformOp& op);

// Truncated Gram entry <psi_x, psi_y>.
double gram_entry(const TransformOp& op, int x_exp, int y_exp);

struct OrthogonalityResult {
  IndexWindow window;
  // max |<psi_x, psi_y>| (1-q) x^{v+1} y^{v+1} over x != y.
  double max_offdiag = 0.0;
  // max relative error of <psi_x, psi_x> against 1/((1-q) x^{2v+2}).
  double max_diag_rel = 0.0;
};

OrthogonalityResult orthogonality_matrix(const TransformOp& op);
OrthogonalityResult orthogonality_matrix(const TransformOp& op, const IndexWindow& window);

// Delta f(x) = x^{-2}[f(x/q) - (1+q^{2v}) f(x) + q^{2v} f(qx)] on interior points; boundary entries are 0.
GridFn q_bessel_operator(const GridFn& f);

// ||F[Delta f] + x^2 F f||_2 / ||x^2 F f||_2 (zero for f = 0).
double delta_multiplier_defect(const GridFn& f, const TransformOp& op);

}  // namespace qfourier
