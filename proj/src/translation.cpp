#include "qfourier/translation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "qfourier/error.hpp"
#include "qfourier/summation.hpp"

namespace qfourier {

namespace {

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

// Log-domain decay bound for |j_v(q^k)|.
struct LogBound {
  double log_c;
  double v;
  double lq;

  double operator()(int k) const {
    if (k >= 0) return log_c;
    const double kk = k;
    return log_c + (kk * kk - (2.0 * v + 1.0) * kk) * lq;
  }
};

LogBound log_bound_for(const QParams& p, const PrecisionCtx& ctx) {
  return {std::log(jv_bound_constant(p, ctx)), p.v(), std::log(p.q())};
}

// log of sum_{s < s_top} q^{sA} B(a+s) B(b+s) B(c+s), descending until negligible.
double log_low_triple_sum(const LogBound& lb, double a_lq, int a, int b, int c, int s_top) {
  LogSum sum;
  double best = -HUGE_VAL;
  for (int s = s_top - 1;; --s) {
    const double term = s * a_lq + lb(a + s) + lb(b + s) + lb(c + s);
    sum.add(term);
    best = std::max(best, term);
    if (a + s < 0 && b + s < 0 && c + s < 0 && term < best - 80.0) break;
  }
  return sum.value();
}

std::size_t packed_index(std::size_t i, std::size_t j, std::size_t k) {
  return k * (k + 1) * (k + 2) / 6 + j * (j + 1) / 2 + i;
}

std::array<int, 3> sorted3(int a, int b, int c) {
  std::array<int, 3> s{a, b, c};
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

double kernel_truncation_bound(const LatticeGrid& grid, int a, int b, int c, const PrecisionCtx& ctx) {
  const QParams& p = grid.params();
  const LogBound lb = log_bound_for(p, ctx);
  const double a_lq = p.weight_exponent() * lb.lq;
  const double log_pref = 2.0 * std::log(c_qv(p, ctx)) + std::log1p(-p.q());
  LogSum sum;
  sum.add(log_low_triple_sum(lb, a_lq, a, b, c, grid.n_lo()));
  sum.add(3.0 * lb.log_c + (grid.n_hi() + 1) * a_lq - std::log1p(-std::exp(a_lq)));
  return std::exp(log_pref + sum.value());
}

namespace {

// High-precision j_v(q^k) and weights over an index range extended by the grid
// size on both sides; values whose decay bound is below 1e-400 are stored as zero.
class ExtendedJ {
public:
  ExtendedJ(const LatticeGrid& grid, const BesselTable& table, const PrecisionCtx& ctx)
      : lo_(2 * grid.n_lo() - static_cast<int>(grid.size())),
        hi_(2 * grid.n_hi() + static_cast<int>(grid.size())),
        bits_(bits_for_digits(ctx.work_digits + 10)) {
    const LogBound lb = log_bound_for(grid.params(), ctx);
    const double log_floor = -400.0 * std::log(10.0);
    for (int k = lo_; k <= hi_; ++k) {
      if (table.n_min() <= k && k <= table.n_max()) {
        values_.push_back(table.precise(k, ctx).with_precision(bits_));
      } else if (lb(k) < log_floor) {
        values_.emplace_back(bits_);
      } else {
        values_.push_back(jv_lattice(k, grid.params(), ctx).with_precision(bits_));
      }
    }
    const BigFloat q(grid.params().q(), bits_);
    const BigFloat qa = q.pow(BigFloat(grid.params().weight_exponent(), bits_));
    s_lo_ = grid.n_lo();
    for (int s = s_lo_; s <= hi_ - grid.n_lo(); ++s) {
      weights_.push_back((BigFloat(1L, bits_) - q) * qa.pow(static_cast<long>(s)));
    }
    const BigFloat c = c_qv(grid.params(), ctx, bits_);
    c2_ = c * c;
  }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  mpfr_prec_t bits() const { return bits_; }
  const BigFloat& operator()(int k) const { return values_[static_cast<std::size_t>(k - lo_)]; }
  const BigFloat& weight(int s) const { return weights_[static_cast<std::size_t>(s - s_lo_)]; }
  const BigFloat& c2() const { return c2_; }

private:
  int lo_;
  int hi_;
  int s_lo_ = 0;
  mpfr_prec_t bits_;
  std::vector<BigFloat> values_;
  std::vector<BigFloat> weights_;
  BigFloat c2_;
};

double mass_leak(const LatticeGrid& grid, const ExtendedJ& J, int a, int b) {
  const QParams& p = grid.params();
  double leak = 0.0;
  double best = 0.0;
  for (int c = grid.n_lo() - 1; c + grid.n_lo() >= J.lo(); --c) {
    // Extend s until j_v(q^{c+s}) reaches the flat top of the grid, so the
    // cancellation that makes D small far from the diagonal is complete.
    const int s_hi = std::max(grid.n_hi(), grid.n_hi() - c);
    if (std::max(a, b) + s_hi > J.hi() || s_hi > J.hi() - grid.n_lo()) break;
    BigFloat d(J.bits());
    for (int s = grid.n_lo(); s <= s_hi; ++s) d += J.weight(s) * J(a + s) * J(b + s) * J(c + s);
    // Weight of a point below the grid, in log form to avoid overflow.
    const double log_term = std::log1p(-p.q()) + c * p.weight_exponent() * std::log(p.q()) + (J.c2() * d).log_abs();
    const double term = std::exp(log_term);
    leak += term;
    best = std::max(best, term);
    if (term == 0.0 || term < 1e-30 * best) break;
  }
  return leak;
}

}  // namespace

double kernel_mass_leak(const LatticeGrid& grid, const BesselTable& table, int a, int b, const PrecisionCtx& ctx) {
  const ExtendedJ J(grid, table, ctx);
  return mass_leak(grid, J, a, b);
}

IndexWindow kernel_window(const LatticeGrid& grid, const BesselTable& table, int points, const PrecisionCtx& ctx,
                          double tol) {
  if (points < 4) throw Error(ErrorCode::InvalidParams, "kernel window needs at least 4 points");
  if (!table.covers(2 * grid.n_lo(), 2 * grid.n_hi())) {
    throw Error(ErrorCode::GridMismatch, "Bessel table must cover [2 n_lo, 2 n_hi]");
  }
  const IndexWindow interior = transform_interior(grid, ctx);
  int hi = interior.hi;
  while (hi >= grid.n_lo() && !(kernel_truncation_bound(grid, hi, hi, hi, ctx) < tol)) --hi;
  int lo = std::max(grid.n_lo(), hi - points + 1);
  const ExtendedJ J(grid, table, ctx);
  auto row_ok = [&](int a) {
    for (int b = a; b <= hi; ++b) {
      if (!(mass_leak(grid, J, a, b) < tol)) return false;
    }
    return true;
  };
  // Rows near the bottom of the window leak the most; raise lo until all rows pass.
  while (lo <= hi) {
    bool ok = true;
    for (int a = lo; a <= hi && ok; ++a) ok = row_ok(a);
    if (ok) break;
    ++lo;
  }
  const IndexWindow w{lo, hi};
  if (w.size() < 4) {
    throw Error(ErrorCode::InvalidParams,
                "no kernel window of at least 4 points meets the truncation budget; widen the grid");
  }
  return w;
}

Kernel3::Kernel3(LatticeGrid grid, std::shared_ptr<const BesselTable> table, IndexWindow window,
                 const PrecisionCtx& ctx)
    : grid_(std::move(grid)), table_(std::move(table)), window_(window), c_(c_qv(grid_.params(), ctx)) {
  if (!table_ || !(table_->params() == grid_.params()) || !table_->covers(2 * grid_.n_lo(), 2 * grid_.n_hi())) {
    throw Error(ErrorCode::GridMismatch, "Bessel table must cover [2 n_lo, 2 n_hi] for the same (q, v)");
  }
  if (window_.empty() || !grid_.contains(window_.lo) || !grid_.contains(window_.hi)) {
    throw Error(ErrorCode::OffWindow, "kernel window must lie inside the grid");
  }
  const std::size_t n = grid_.size();
  std::vector<double> weights(n);
  for (std::size_t s = 0; s < n; ++s) weights[s] = grid_.weight(grid_.exponent(s));
  // J[i + s] = j_v(q^{(n_lo + i) + (n_lo + s)}).
  std::vector<double> jrow(2 * n - 1);
  for (std::size_t k = 0; k < jrow.size(); ++k) jrow[k] = (*table_)(2 * grid_.n_lo() + static_cast<int>(k));
  const double c2 = c_ * c_;
  packed_.assign(n * (n + 1) * (n + 2) / 6, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j <= k; ++j) {
      for (std::size_t i = 0; i <= j; ++i) {
        CompensatedSum sum;
        for (std::size_t s = 0; s < n; ++s) sum.add(weights[s] * (jrow[i + s] * jrow[j + s] * jrow[k + s]));
        packed_[packed_index(i, j, k)] = c2 * sum.value();
      }
    }
  }
}

double Kernel3::operator()(int a, int b, int c) const {
  const auto s = sorted3(a, b, c);
  return packed_[packed_index(grid_.index(s[0]), grid_.index(s[1]), grid_.index(s[2]))];
}

Kernel3 make_kernel(const LatticeGrid& grid, std::shared_ptr<const BesselTable> table, const PrecisionCtx& ctx,
                    int window_points) {
  const IndexWindow window = kernel_window(grid, *table, window_points, ctx);
  return Kernel3(grid, std::move(table), window, ctx);
}

GridFn translate(const GridFn& f, int x_exp, const Kernel3& K) {
  if (!(f.grid() == K.grid())) throw Error(ErrorCode::GridMismatch, "function is not on the kernel grid");
  if (!K.window().contains(x_exp)) {
    throw Error(ErrorCode::OffWindow, "translation point q^" + std::to_string(x_exp) + " outside kernel window [" +
                                          std::to_string(K.window().lo) + ", " + std::to_string(K.window().hi) + "]");
  }
  const LatticeGrid& grid = K.grid();
  return GridFn::from_exponent(grid, [&](int y) {
    CompensatedSum sum;
    for (int z = grid.n_lo(); z <= grid.n_hi(); ++z) {
      const double fz = f.at(z);
      if (fz != 0.0) sum.add(grid.weight(z) * fz * K(x_exp, y, z));
    }
    return sum.value();
  });
}

GridFn convolve(const GridFn& f, const GridFn& g, const Kernel3& K) {
  require_same_grid(f, g);
  if (!(f.grid() == K.grid())) throw Error(ErrorCode::GridMismatch, "function is not on the kernel grid");
  const LatticeGrid& grid = K.grid();
  auto support = [&](const GridFn& h) {
    std::vector<std::pair<int, double>> out;
    for (int n = grid.n_lo(); n <= grid.n_hi(); ++n) {
      if (h.at(n) != 0.0) out.emplace_back(n, grid.weight(n) * h.at(n));
    }
    return out;
  };
  const auto fs = support(f);
  const auto gs = support(g);
  return GridFn::from_exponent(grid, [&](int x) {
    CompensatedSum outer;
    for (const auto& [y, gy] : gs) {
      CompensatedSum inner_sum;
      for (const auto& [z, fz] : fs) inner_sum.add(fz * K(x, y, z));
      outer.add(gy * inner_sum.value());
    }
    return K.c() * outer.value();
  });
}

double kernel_row_sum(const Kernel3& K, int a, int b) {
  const LatticeGrid& grid = K.grid();
  CompensatedSum sum;
  for (int c = grid.n_lo(); c <= grid.n_hi(); ++c) sum.add(grid.weight(c) * K(a, b, c));
  return sum.value();
}

double kernel_row_sum_defect(const Kernel3& K) {
  double worst = 0.0;
  for (int a = K.window().lo; a <= K.window().hi; ++a) {
    for (int b = a; b <= K.window().hi; ++b) worst = std::max(worst, std::abs(kernel_row_sum(K, a, b) - 1.0));
  }
  return worst;
}

double kernel_projection_defect(const Kernel3& K, int t) {
  const LatticeGrid& grid = K.grid();
  const BesselTable& J = K.table();
  double worst = 0.0;
  for (int y = K.window().lo; y <= K.window().hi; ++y) {
    for (int z = y; z <= K.window().hi; ++z) {
      CompensatedSum sum;
      for (int x = grid.n_lo(); x <= grid.n_hi(); ++x) sum.add(grid.weight(x) * K(x, y, z) * J(x + t));
      worst = std::max(worst, std::abs(sum.value() - J(y + t) * J(z + t)));
    }
  }
  return worst;
}

long kernel_symmetry_violations(const Kernel3& K) {
  long bad = 0;
  const IndexWindow& w = K.window();
  for (int a = w.lo; a <= w.hi; ++a) {
    for (int b = w.lo; b <= w.hi; ++b) {
      for (int c = w.lo; c <= w.hi; ++c) {
        const double d = K(a, b, c);
        if (!(d == K(a, c, b) && d == K(b, a, c) && d == K(b, c, a) && d == K(c, a, b) && d == K(c, b, a))) ++bad;
      }
    }
  }
  return bad;
}

PositivityResult positivity_min(const LatticeGrid& grid, const IndexWindow& window, const PrecisionCtx& ctx) {
  return positivity_min(grid, jv_table(grid, ctx), window, ctx);
}

PositivityResult positivity_min(const LatticeGrid& grid, const BesselTable& table, const IndexWindow& window,
                                const PrecisionCtx& ctx) {
  if (window.empty() || !grid.contains(window.lo) || !grid.contains(window.hi)) {
    throw Error(ErrorCode::OffWindow, "positivity window must lie inside the grid");
  }
  const ExtendedJ J(grid, table, ctx);
  const mpfr_prec_t bits = J.bits();
  // The s-sum runs past n_hi so entries far from the diagonal keep their cancellation.
  const int s_hi = std::min(J.hi() - window.hi, J.hi() - grid.n_lo());
  const BigFloat floor = -BigFloat(10L, bits).pow(-static_cast<long>(ctx.work_digits - 5));
  PositivityResult result;
  bool first = true;
  BigFloat min_value(bits);
  for (int a = window.lo; a <= window.hi; ++a) {
    for (int b = a; b <= window.hi; ++b) {
      for (int cc = b; cc <= window.hi; ++cc) {
        BigFloat sum(bits);
        for (int s = grid.n_lo(); s <= s_hi; ++s) sum += J.weight(s) * J(a + s) * J(b + s) * J(cc + s);
        sum *= J.c2();
        if (sum < floor) result.nonnegative = false;
        if (first || sum < min_value) {
          first = false;
          min_value = sum;
          result.a = a;
          result.b = b;
          result.c = cc;
        }
      }
    }
  }
  result.min_kernel = min_value.to_double();
  return result;
}

double MarkovReport::max_defect() const {
  return std::max({unit_defect, symmetry_defect, contraction_defect, jensen_defect, sup_defect, positivity_defect,
                   mass_defect});
}

MarkovReport markov_check(const LinearOp& op, const LatticeGrid& grid, const IndexWindow& window,
                          const std::vector<GridFn>& probes, double min_kernel) {
  MarkovReport r;
  r.min_kernel = min_kernel;
  const GridFn unit = op(GridFn::constant(grid, 1.0));
  for (int y = window.lo; y <= window.hi; ++y) r.unit_defect = std::max(r.unit_defect, std::abs(unit.at(y) - 1.0));
  std::vector<GridFn> images;
  images.reserve(probes.size());
  for (const GridFn& f : probes) images.push_back(op(f));
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const GridFn& f = probes[i];
    const GridFn& tf = images[i];
    const double nf = norm_p(f, 2.0);
    const double sf = sup_norm(f);
    if (nf == 0.0) continue;
    const double mass = jackson_integral(f);
    r.mass_defect = std::max(r.mass_defect, std::abs(jackson_integral(tf) - mass) / (1.0 + std::abs(mass)));
    r.contraction_defect = std::max(r.contraction_defect, norm_p(tf, 2.0) / nf - 1.0);
    r.sup_defect = std::max(r.sup_defect, sup_norm(tf) / sf - 1.0);
    const std::size_t j = (i + 1) % probes.size();
    if (j != i) {
      const GridFn& g = probes[j];
      const double ng = norm_p(g, 2.0);
      if (ng > 0.0) {
        r.symmetry_defect = std::max(r.symmetry_defect, std::abs(inner(tf, g) - inner(f, images[j])) / (nf * ng));
      }
    }
    const bool nonneg = std::all_of(f.values().begin(), f.values().end(), [](double x) { return x >= 0.0; });
    if (nonneg) {
      const GridFn t_sq = op(pointwise_product(f, f));
      for (int y = window.lo; y <= window.hi; ++y) {
        const double ty = tf.at(y);
        r.jensen_defect = std::max(r.jensen_defect, (ty * ty - t_sq.at(y)) / (sf * sf));
        r.positivity_defect = std::max(r.positivity_defect, -ty / sf);
      }
    }
  }
  r.contraction_defect = std::max(0.0, r.contraction_defect);
  r.sup_defect = std::max(0.0, r.sup_defect);
  r.jensen_defect = std::max(0.0, r.jensen_defect);
  r.positivity_defect = std::max(0.0, r.positivity_defect);
  return r;
}

MarkovReport markov_check(const Kernel3& K, const std::vector<int>& x_exps, const std::vector<GridFn>& probes,
                          double min_kernel) {
  MarkovReport worst;
  worst.min_kernel = min_kernel;
  for (int x : x_exps) {
    const MarkovReport r = markov_check([&](const GridFn& f) { return translate(f, x, K); }, K.grid(), K.window(),
                                        probes, min_kernel);
    worst.unit_defect = std::max(worst.unit_defect, r.unit_defect);
    worst.symmetry_defect = std::max(worst.symmetry_defect, r.symmetry_defect);
    worst.contraction_defect = std::max(worst.contraction_defect, r.contraction_defect);
    worst.jensen_defect = std::max(worst.jensen_defect, r.jensen_defect);
    worst.sup_defect = std::max(worst.sup_defect, r.sup_defect);
    worst.positivity_defect = std::max(worst.positivity_defect, r.positivity_defect);
    worst.mass_defect = std::max(worst.mass_defect, r.mass_defect);
  }
  return worst;
}

GridFn normalized_basis(const TransformOp& op, int n) {
  return std::sqrt(op.grid().weight(n)) * op.basis(n);
}

double eigen_check(const Kernel3& K, const TransformOp& op, int n, int x_exp) {
  const GridFn fn = normalized_basis(op, n);
  const double lambda = K.table()(n + x_exp);
  return norm_p(translate(fn, x_exp, K) - lambda * fn, 2.0);
}

MultiplierCoeffs multiplier_coeffs(const GridFn& rho, const Kernel3& K) {
  if (!(rho.grid() == K.grid())) throw Error(ErrorCode::GridMismatch, "density is not on the kernel grid");
  for (double x : rho.values()) {
    if (!(x >= 0.0)) throw Error(ErrorCode::NotProbability, "density must be nonnegative");
  }
  const double mass = K.c() * jackson_integral(rho);
  if (!(std::abs(mass - 1.0) <= 1e-10)) {
    throw Error(ErrorCode::NotProbability, "c * integral of density is " + std::to_string(mass) + ", expected 1");
  }
  const LatticeGrid& grid = K.grid();
  MultiplierCoeffs out;
  out.range = K.window();
  for (int n = out.range.lo; n <= out.range.hi; ++n) {
    CompensatedSum sum;
    for (int y = grid.n_lo(); y <= grid.n_hi(); ++y) sum.add(grid.weight(y) * K.table()(n + y) * rho.at(y));
    out.values.push_back(K.c() * sum.value());
  }
  return out;
}

double multiplier_action_defect(const GridFn& rho, const Kernel3& K, const TransformOp& op) {
  const MultiplierCoeffs coeffs = multiplier_coeffs(rho, K);
  double worst = 0.0;
  for (int n = coeffs.range.lo; n <= coeffs.range.hi; ++n) {
    const GridFn fn = normalized_basis(op, n);
    worst = std::max(worst, norm_p(convolve(fn, rho, K) - coeffs.at(n) * fn, 2.0));
  }
  return worst;
}

double hypergroup_expansion_defect(const Kernel3& K, const TransformOp& op, const IndexWindow& n_range) {
  const IndexWindow& w = K.window();
  std::vector<GridFn> fn;
  std::vector<double> fn0;
  for (int n = n_range.lo; n <= n_range.hi; ++n) {
    fn.push_back(normalized_basis(op, n));
    fn0.push_back(op.c() * std::sqrt(op.grid().weight(n)));
  }
  double max_d = 0.0;
  double worst = 0.0;
  for (int x = w.lo; x <= w.hi; ++x) {
    for (int y = x; y <= w.hi; ++y) {
      for (int z = y; z <= w.hi; ++z) {
        CompensatedSum sum;
        for (std::size_t k = 0; k < fn.size(); ++k) sum.add(fn[k].at(x) * fn[k].at(y) * fn[k].at(z) / fn0[k]);
        const double d = K(x, y, z);
        max_d = std::max(max_d, std::abs(d));
        worst = std::max(worst, std::abs(d - sum.value()));
      }
    }
  }
  return max_d > 0.0 ? worst / max_d : worst;
}

PositivityResult positivity_min(const QParams& p, int window_points, const PrecisionCtx& ctx) {
  const LatticeGrid grid = default_grid(p);
  const BesselTable table = jv_table(grid, ctx);
  return positivity_min(grid, table, kernel_window(grid, table, window_points, ctx), ctx);
}

}  // namespace qfourier
