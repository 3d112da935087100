#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "qfourier/bessel.hpp"
#include "qfourier/lattice.hpp"
#include "qfourier/transform.hpp"

namespace qfourier {

// Bound on the error of D_v(q^a, q^b, q^c) from truncating the s-sum to the grid.
double kernel_truncation_bound(const LatticeGrid& grid, int a, int b, int c, const PrecisionCtx& ctx);
// Row mass (1-q) sum_{c < n_lo} q^{c(2v+2)} |D_v(q^a, q^b, q^c)| carried by lattice points
// below the grid, evaluated from extra j_v values below the table range.
double kernel_mass_leak(const LatticeGrid& grid, const BesselTable& table, int a, int b, const PrecisionCtx& ctx);
// Window of up to `points` exponents ending at the highest exponent allowed by the
// truncation bound and the transform interior, raised at the bottom until every row
// in the window leaks less than tol. Throws InvalidParams when fewer than 4 points qualify.
IndexWindow kernel_window(const LatticeGrid& grid, const BesselTable& table, int points, const PrecisionCtx& ctx,
                          double tol = 1e-12);

// The translation kernel D_v(x,y,z) = c^2 (1-q) sum_s q^{s(2v+2)} j_v(xq^s) j_v(yq^s) j_v(zq^s),
// tabulated for all grid triples. Entries are evaluated once per sorted triple, so
// every permutation returns the identical value. Only the window is trusted.
class Kernel3 {
public:
  Kernel3(LatticeGrid grid, std::shared_ptr<const BesselTable> table, IndexWindow window, const PrecisionCtx& ctx);

  const LatticeGrid& grid() const { return grid_; }
  const BesselTable& table() const { return *table_; }
  const IndexWindow& window() const { return window_; }
  double c() const { return c_; }

  double operator()(int a, int b, int c) const;

private:
  LatticeGrid grid_;
  std::shared_ptr<const BesselTable> table_;
  IndexWindow window_;
  double c_;
  std::vector<double> packed_;
};

Kernel3 make_kernel(const LatticeGrid& grid, std::shared_ptr<const BesselTable> table, const PrecisionCtx& ctx,
                    int window_points = 16);

// T_x f(y) = (1-q) sum_z q^{z(2v+2)} f(q^z) D_v(x, y, q^z) at every grid point y.
// Throws OffWindow unless x_exp lies in the kernel window.
GridFn translate(const GridFn& f, int x_exp, const Kernel3& K);
// f * g(x) = c sum_y w_y T_x f(y) g(y) at every grid point x.
GridFn convolve(const GridFn& f, const GridFn& g, const Kernel3& K);

// Weighted row sum (1-q) sum_c q^{c(2v+2)} D_v(q^a, q^b, q^c) over the grid.
double kernel_row_sum(const Kernel3& K, int a, int b);
// max over (a,b) in the window of |row sum - 1|.
double kernel_row_sum_defect(const Kernel3& K);
// max over (y,z) in the window of |sum_x w_x D(x,y,z) j_v(q^{x+t}) - j_v(q^{y+t}) j_v(q^{z+t})|.
double kernel_projection_defect(const Kernel3& K, int t);
// Number of window triples whose six permutations disagree (zero when exact).
long kernel_symmetry_violations(const Kernel3& K);

struct PositivityResult {
  double min_kernel = 0.0;
  int a = 0;
  int b = 0;
  int c = 0;
  // True when every entry is >= -10^{-(work_digits-5)}.
  bool nonnegative = true;
};

// Minimum of D_v over window triples, evaluated on the high-precision path without storing
// the cube. The s-sum is extended past the grid top by the grid size.
PositivityResult positivity_min(const LatticeGrid& grid, const IndexWindow& window, const PrecisionCtx& ctx);
PositivityResult positivity_min(const LatticeGrid& grid, const BesselTable& table, const IndexWindow& window,
                                const PrecisionCtx& ctx);
PositivityResult positivity_min(const QParams& p, int window_points, const PrecisionCtx& ctx);

struct MarkovReport {
  double min_kernel = 0.0;
  double unit_defect = 0.0;
  double symmetry_defect = 0.0;
  double contraction_defect = 0.0;
  double jensen_defect = 0.0;
  double sup_defect = 0.0;
  double positivity_defect = 0.0;
  double mass_defect = 0.0;

  // Largest of the gated defects.
  double max_defect() const;
};

using LinearOp = std::function<GridFn(const GridFn&)>;

// Checks the Markov axioms of `op` on the probes; pointwise quantities are taken over `window`.
// Jensen and positivity use only the nonnegative probes.
MarkovReport markov_check(const LinearOp& op, const LatticeGrid& grid, const IndexWindow& window,
                          const std::vector<GridFn>& probes, double min_kernel);
// Same for T_x at every x in `x_exps`, reporting the worst case.
MarkovReport markov_check(const Kernel3& K, const std::vector<int>& x_exps, const std::vector<GridFn>& probes,
                          double min_kernel);

// f_n = psi_{q^n} / ||psi_{q^n}||, using the exact norm x^{-(v+1)}/sqrt(1-q).
GridFn normalized_basis(const TransformOp& op, int n);
// ||T_x f_n - (f_n(x)/f_n(0)) f_n||_2 with f_n(0) = c/||psi_{q^n}||.
double eigen_check(const Kernel3& K, const TransformOp& op, int n, int x_exp);

struct MultiplierCoeffs {
  IndexWindow range;
  std::vector<double> values;

  double at(int n) const { return values.at(static_cast<std::size_t>(n - range.lo)); }
};

// c_n = c sum_y w_y j_v(q^{n+y}) rho(y) for n in the kernel window.
// Throws NotProbability unless rho >= 0 and c * jackson_integral(rho) = 1 within 1e-10.
MultiplierCoeffs multiplier_coeffs(const GridFn& rho, const Kernel3& K);
// max over n in the window of ||f_n * rho - c_n f_n||_2.
double multiplier_action_defect(const GridFn& rho, const Kernel3& K, const TransformOp& op);

// max over window triples of |D - sum_{n in n_range} f_n(x) f_n(y) f_n(z)/f_n(0)| / max|D|,
// with f_n from the transform basis.
double hypergroup_expansion_defect(const Kernel3& K, const TransformOp& op, const IndexWindow& n_range);

}  // namespace qfourier
