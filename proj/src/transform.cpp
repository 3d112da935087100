#include "qfourier/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qfourier/error.hpp"
#include "qfourier/summation.hpp"

namespace qfourier {

namespace {

// Running log-sum-exp accumulator.
class LogSum {
public:
  void add(double log_term) {
    if (log_term == -HUGE_VAL) return;
    if (log_term > max_) {
      scaled_ = scaled_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    } else {
      scaled_ += std::exp(log_term - max_);
    }
  }
  double value() const { return scaled_ > 0.0 ? max_ + std::log(scaled_) : -HUGE_VAL; }

private:
  double max_ = -HUGE_VAL;
  double scaled_ = 0.0;
};

constexpr double kTiny = 1e-300;

}  // namespace

double inversion_tail_estimate(const LatticeGrid& grid, int t, const PrecisionCtx& ctx) {
  const QParams& p = grid.params();
  const double a = p.weight_exponent();
  const double lq = std::log(p.q());
  const double log_c = std::log(c_qv(p, ctx));
  const double log_bc = std::log(jv_bound_constant(p, ctx));
  const double log_pref = 2.0 * log_c + 2.0 * std::log1p(-p.q()) + t * a * lq;
  auto log_bound = [&](int k) {
    if (k >= 0) return log_bc;
    const double kk = k;
    return log_bc + (kk * kk - (2.0 * p.v() + 1.0) * kk) * lq;
  };
  // Points above the grid: |j_v| <= C, geometric weight tail.
  const double log_high = 2.0 * log_bc + (grid.n_hi() + 1) * a * lq - std::log1p(-std::pow(p.q(), a));
  LogSum err2;
  for (int n = grid.n_lo(); n <= grid.n_hi(); ++n) {
    LogSum missing;
    missing.add(log_high);
    double best = -HUGE_VAL;
    for (int m = grid.n_lo() - 1;; --m) {
      const double term = m * a * lq + log_bound(n + m) + log_bound(m + t);
      missing.add(term);
      best = std::max(best, term);
      if (n + m < 0 && m + t < 0 && term < best - 80.0) break;
    }
    const double log_e = log_pref + missing.value();
    err2.add((n - t) * a * lq + 2.0 * log_e);
  }
  return std::exp(0.5 * err2.value());
}

IndexWindow transform_interior(const LatticeGrid& grid, const PrecisionCtx& ctx, double tol) {
  IndexWindow w{grid.n_lo(), grid.n_lo() - 1};
  for (int t = grid.n_lo(); t <= grid.n_hi(); ++t) {
    if (!(inversion_tail_estimate(grid, t, ctx) < tol)) break;
    w.hi = t;
  }
  return w;
}

TransformOp::TransformOp(LatticeGrid grid, std::shared_ptr<const BesselTable> table, const PrecisionCtx& ctx)
    : grid_(std::move(grid)), table_(std::move(table)), c_(c_qv(grid_.params(), ctx)) {
  if (!table_ || !(table_->params() == grid_.params()) || !table_->covers(2 * grid_.n_lo(), 2 * grid_.n_hi())) {
    throw Error(ErrorCode::GridMismatch, "Bessel table must cover [2 n_lo, 2 n_hi] for the same (q, v)");
  }
  interior_ = transform_interior(grid_, ctx);
  const std::size_t n = grid_.size();
  matrix_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const int ni = grid_.exponent(i);
      const int mj = grid_.exponent(j);
      matrix_[i * n + j] = kernel(ni, mj) * grid_.weight(mj);
    }
  }
}

double TransformOp::entry(int n, int m) const { return matrix_[grid_.index(n) * grid_.size() + grid_.index(m)]; }

GridFn TransformOp::forward(const GridFn& f) const {
  if (!(f.grid() == grid_)) throw Error(ErrorCode::GridMismatch, "function is not on the transform grid");
  const std::size_t n = grid_.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    CompensatedSum sum;
    const double* row = &matrix_[i * n];
    for (std::size_t j = 0; j < n; ++j) sum.add(row[j] * f[j]);
    out[i] = sum.value();
  }
  return GridFn(grid_, std::move(out));
}

GridFn TransformOp::basis(int x_exp) const {
  return GridFn::from_exponent(grid_, [&](int t) { return kernel(x_exp, t); });
}

TransformOp make_transform(const LatticeGrid& grid, const PrecisionCtx& ctx) {
  return TransformOp(grid, std::make_shared<const BesselTable>(jv_table(grid, ctx)), ctx);
}

double inversion_residual(const GridFn& f, const TransformOp& op) {
  const double nf = norm_p(f, 2.0);
  if (nf == 0.0) return 0.0;
  return norm_p(op.forward(op.forward(f)) - f, 2.0) / std::max(nf, kTiny);
}

double plancherel_defect(const GridFn& f, const TransformOp& op) {
  const double nf = norm_p(f, 2.0);
  if (nf == 0.0) return 0.0;
  return std::abs(norm_p(op.forward(f), 2.0) - nf) / std::max(nf, kTiny);
}

double gram_entry(const TransformOp& op, int x_exp, int y_exp) {
  const LatticeGrid& grid = op.grid();
  CompensatedSum sum;
  for (int t = grid.n_lo(); t <= grid.n_hi(); ++t) sum.add(grid.weight(t) * op.kernel(x_exp, t) * op.kernel(y_exp, t));
  return sum.value();
}

OrthogonalityResult orthogonality_matrix(const TransformOp& op) { return orthogonality_matrix(op, op.interior()); }

OrthogonalityResult orthogonality_matrix(const TransformOp& op, const IndexWindow& window) {
  const LatticeGrid& grid = op.grid();
  OrthogonalityResult r;
  r.window = window;
  for (int x = window.lo; x <= window.hi; ++x) {
    for (int y = window.lo; y <= x; ++y) {
      const double g = gram_entry(op, x, y);
      if (x == y) {
        const double expected = 1.0 / grid.weight(x);
        r.max_diag_rel = std::max(r.max_diag_rel, std::abs(g - expected) / expected);
      } else {
        r.max_offdiag = std::max(r.max_offdiag, std::abs(g) * std::sqrt(grid.weight(x) * grid.weight(y)));
      }
    }
  }
  return r;
}

GridFn q_bessel_operator(const GridFn& f) {
  const LatticeGrid& grid = f.grid();
  const double q2v = std::pow(grid.params().q(), 2.0 * grid.params().v());
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t i = 1; i + 1 < f.size(); ++i) {
    const double x = grid.x(grid.exponent(i));
    // f(x/q) sits one index below x on the grid.
    out[i] = (f[i - 1] - (1.0 + q2v) * f[i] + q2v * f[i + 1]) / (x * x);
  }
  return GridFn(grid, std::move(out));
}

double delta_multiplier_defect(const GridFn& f, const TransformOp& op) {
  const LatticeGrid& grid = op.grid();
  const GridFn ff = op.forward(f);
  const GridFn x2ff = GridFn::from_exponent(grid, [&](int n) { return grid.x(n) * grid.x(n) * ff.at(n); });
  const double denom = norm_p(x2ff, 2.0);
  if (denom == 0.0) return 0.0;
  return norm_p(op.forward(q_bessel_operator(f)) + x2ff, 2.0) / denom;
}

}  // namespace qfourier
