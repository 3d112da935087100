#include "qfourier/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "qfourier/error.hpp"
#include "qfourier/summation.hpp"

namespace qfourier {

namespace {

constexpr int kMaxTerms = 100000;
// Relative accuracy certified for every high-precision value; enough to round
// to binary64 within one ulp.
constexpr long kCertifiedBits = 62;

double log10_max_term(double log10x, const QParams& p) {
  const double lq = std::log10(p.q());
  const double q2 = p.q2();
  const double qa = std::pow(p.q(), p.weight_exponent());
  double logt = 0.0;
  double best = 0.0;
  double q2k = 1.0;
  for (int k = 0; k < kMaxTerms; ++k) {
    const double step = (2.0 * k + 2.0) * lq + 2.0 * log10x - std::log10(1.0 - qa * q2k) - std::log10(1.0 - q2k * q2);
    logt += step;
    best = std::max(best, logt);
    if (step < 0.0 && logt < best - 30.0) break;
    q2k *= q2;
  }
  return best;
}

double log10_bound_at(double x, const QParams& p, double log10_constant) {
  const double n = std::log10(std::abs(x)) / std::log10(p.q());
  if (n >= 0.0) return log10_constant;
  return log10_constant + (n * n - (2.0 * p.v() + 1.0) * n) * std::log10(p.q());
}

double jv_binary64(double x, const QParams& p, const PrecisionCtx& ctx) {
  const double q2 = p.q2();
  const double qa = std::pow(p.q(), p.weight_exponent());
  const double x2 = x * x;
  const double tol = std::max(ctx.tail_tol, 1e-300);
  CompensatedSum sum;
  sum.add(1.0);
  double term = 1.0;
  double max_abs = 1.0;
  double q2k = 1.0;
  for (int k = 0; k < kMaxTerms; ++k) {
    const double ratio = q2k * q2 * x2 / ((1.0 - qa * q2k) * (1.0 - q2k * q2));
    term = -term * ratio;
    sum.add(term);
    max_abs = std::max(max_abs, std::abs(term));
    q2k *= q2;
    const double next = q2k * q2 * x2 / ((1.0 - qa * q2k) * (1.0 - q2k * q2));
    if (next < 0.5 && std::abs(term) * next / (1.0 - next) < tol * max_abs) return sum.value();
    if (term == 0.0) return sum.value();
  }
  throw Error(ErrorCode::NonConvergent, "series did not terminate");
}

// Sums the series with x supplied at the working precision and certifies the result.
BigFloat jv_series_precise(const BigFloat& x, const QParams& p, const PrecisionCtx& ctx) {
  const mpfr_prec_t bits = x.precision();
  const BigFloat one(1L, bits);
  const BigFloat q(p.q(), bits);
  const BigFloat q2 = q * q;
  const BigFloat qa = q.pow(BigFloat(p.weight_exponent(), bits));
  const BigFloat x2 = x * x;
  BigFloat sum = one;
  BigFloat term = one;
  BigFloat q2k = one;
  long max_exp = term.exponent2();
  const double log2_stop = std::min(std::log2(ctx.tail_tol), -static_cast<double>(bits));
  int terms = 0;
  for (int k = 0; k < kMaxTerms; ++k) {
    const BigFloat ratio = q2k * q2 * x2 / ((one - qa * q2k) * (one - q2k * q2));
    term = -(term * ratio);
    sum += term;
    max_exp = std::max(max_exp, term.exponent2());
    q2k *= q2;
    terms = k + 2;
    const double next = (q2k * q2 * x2 / ((one - qa * q2k) * (one - q2k * q2))).to_double();
    if (term.is_zero()) break;
    if (next < 0.5) {
      // Tail bounded by |term| * next / (1 - next) <= 2 |term| * next.
      const double log2_tail = static_cast<double>(term.exponent2()) + 1.0 + std::log2(next);
      if (log2_tail < static_cast<double>(max_exp) + log2_stop) break;
    }
    if (k + 1 == kMaxTerms) throw Error(ErrorCode::NonConvergent, "series did not terminate");
  }
  const double log2_round = std::log2(4.0 * (terms + 2.0) * (terms + 2.0)) + static_cast<double>(max_exp) -
                            static_cast<double>(bits);
  const double log2_tail = static_cast<double>(max_exp) + log2_stop;
  const double log2_err = std::max(log2_round, log2_tail) + 1.0;
  if (sum.is_zero() || log2_err > static_cast<double>(sum.exponent2() - 1 - kCertifiedBits)) {
    throw Error(ErrorCode::PrecisionExhausted,
                "cannot certify j_v at " + std::to_string(ctx.work_digits) + " working digits; raise --digits");
  }
  return sum.with_precision(bits_for_digits(ctx.work_digits + 10));
}

mpfr_prec_t series_bits(double x, const QParams& p, const PrecisionCtx& ctx) {
  const double loss = jv_cancellation_digits(x, p);
  return bits_for_digits(ctx.work_digits + static_cast<int>(std::ceil(loss)) + 10);
}

std::string format17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

double jv_bound_constant(const QParams& p, const PrecisionCtx& ctx) {
  const double q2 = p.q2();
  const double qa = std::pow(p.q(), p.weight_exponent());
  return qpoch_inf(-q2, q2, ctx) * qpoch_inf(-qa, q2, ctx) / qpoch_inf(qa, q2, ctx);
}

double jv_log_bound(int n, const QParams& p, const PrecisionCtx& ctx) {
  const double base = std::log(jv_bound_constant(p, ctx));
  if (n >= 0) return base;
  const double nn = n;
  return base + (nn * nn - (2.0 * p.v() + 1.0) * nn) * std::log(p.q());
}

double jv_cancellation_digits(double x, const QParams& p) {
  if (x == 0.0 || !std::isfinite(x)) return 0.0;
  const double log10x = std::log10(std::abs(x));
  const double log10_c = std::log10(jv_bound_constant(p, PrecisionCtx{}));
  return std::max(0.0, log10_max_term(log10x, p) - log10_bound_at(x, p, log10_c));
}

double jv(double x, const QParams& p, const PrecisionCtx& ctx) {
  ctx.validate();
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidParams, "j_v requires a finite argument");
  if (x == 0.0) return 1.0;
  if (jv_cancellation_digits(x, p) <= 6.0) return jv_binary64(x, p, ctx);
  return jv_precise(x, p, ctx).to_double();
}

BigFloat jv_precise(double x, const QParams& p, const PrecisionCtx& ctx) {
  ctx.validate();
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidParams, "j_v requires a finite argument");
  return jv_series_precise(BigFloat(x, series_bits(x, p, ctx)), p, ctx);
}

BigFloat jv_lattice(int n, const QParams& p, const PrecisionCtx& ctx) {
  ctx.validate();
  const double x = std::pow(p.q(), n);
  const mpfr_prec_t bits = series_bits(x, p, ctx);
  return jv_series_precise(BigFloat(p.q(), bits).pow(static_cast<long>(n)), p, ctx);
}

BesselTable::BesselTable(QParams params, int n_min, int n_max, std::vector<double> values,
                         std::vector<BigFloat> precise)
    : params_(params), n_min_(n_min), n_max_(n_max), values_(std::move(values)), precise_(std::move(precise)) {
  if (n_max < n_min) throw Error(ErrorCode::InvalidParams, "empty table range");
  const auto count = static_cast<std::size_t>(n_max - n_min + 1);
  if (values_.size() != count || (!precise_.empty() && precise_.size() != count)) {
    throw Error(ErrorCode::GridMismatch, "table size does not match its index range");
  }
}

double BesselTable::operator()(int n) const {
  if (n < n_min_ || n > n_max_) {
    throw Error(ErrorCode::OffGrid, "table index " + std::to_string(n) + " outside [" + std::to_string(n_min_) +
                                        ", " + std::to_string(n_max_) + "]");
  }
  return values_[static_cast<std::size_t>(n - n_min_)];
}

BigFloat BesselTable::precise(int n, const PrecisionCtx& ctx) const {
  if (n < n_min_ || n > n_max_) {
    throw Error(ErrorCode::OffGrid, "table index " + std::to_string(n) + " outside table range");
  }
  if (has_precise()) return precise_[static_cast<std::size_t>(n - n_min_)];
  return jv_lattice(n, params_, ctx);
}

BesselTable jv_table(const QParams& p, int n_min, int n_max, const PrecisionCtx& ctx) {
  std::vector<double> values;
  std::vector<BigFloat> precise;
  for (int n = n_min; n <= n_max; ++n) {
    precise.push_back(jv_lattice(n, p, ctx));
    values.push_back(precise.back().to_double());
  }
  return BesselTable(p, n_min, n_max, std::move(values), std::move(precise));
}

BesselTable jv_table(const LatticeGrid& grid, const PrecisionCtx& ctx,
                     const std::optional<std::filesystem::path>& cache_dir) {
  const QParams& p = grid.params();
  const int n_min = 2 * grid.n_lo();
  const int n_max = 2 * grid.n_hi();
  if (!cache_dir) return jv_table(p, n_min, n_max, ctx);
  const std::filesystem::path file = *cache_dir / ("jv_q" + format17(p.q()) + "_v" + format17(p.v()) + "_n" +
                                                   std::to_string(n_min) + "_" + std::to_string(n_max) + "_d" +
                                                   std::to_string(ctx.work_digits) + ".csv");
  if (std::filesystem::exists(file)) {
    BesselTable cached = load_table_csv(file, p);
    if (cached.n_min() == n_min && cached.n_max() == n_max) return cached;
  }
  BesselTable table = jv_table(p, n_min, n_max, ctx);
  std::filesystem::create_directories(*cache_dir);
  save_table_csv(table, file);
  return table;
}

void save_table_csv(const BesselTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot open " + path.string() + " for writing");
  out << "n,jv\n";
  for (int n = table.n_min(); n <= table.n_max(); ++n) out << n << ',' << format17(table(n)) << '\n';
  if (!out) throw Error(ErrorCode::ParseError, "write failed for " + path.string());
}

BesselTable load_table_csv(const std::filesystem::path& path, const QParams& p) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "n,jv") throw Error(ErrorCode::ParseError, path.string() + ": expected header n,jv");
  std::vector<double> values;
  int n_min = 0;
  int expected = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::ParseError, path.string() + ": malformed row");
    int n = 0;
    double value = 0.0;
    try {
      n = std::stoi(line.substr(0, comma));
      value = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, path.string() + ": malformed number");
    }
    if (values.empty()) {
      n_min = n;
    } else if (n != expected) {
      throw Error(ErrorCode::ParseError, path.string() + ": table indices must be consecutive");
    }
    expected = n + 1;
    values.push_back(value);
  }
  if (values.empty()) throw Error(ErrorCode::ParseError, path.string() + ": no data rows");
  const int n_max = n_min + static_cast<int>(values.size()) - 1;
  return BesselTable(p, n_min, n_max, std::move(values));
}

CheckEntry decay_bound_check(const BesselTable& table, const PrecisionCtx& ctx) {
  const QParams& p = table.params();
  double worst = 0.0;
  for (int n = table.n_min(); n <= table.n_max(); ++n) {
    const double log_abs = table.precise(n, ctx).log_abs();
    worst = std::max(worst, std::exp(log_abs - jv_log_bound(n, p, ctx)));
  }
  CheckEntry e = CheckEntry::gated("decay_bound", "|j_v(q^n)| <= C q^{n^2-(2v+1)n} (n<0), <= C (n>=0)", worst,
                                   1.0 + 1e-12);
  return e;
}

double eigen_residual(const LatticeGrid& grid, int lambda_exp, const BesselTable& table, const PrecisionCtx& ctx) {
  const QParams& p = grid.params();
  const mpfr_prec_t bits = bits_for_digits(ctx.work_digits + 10);
  const BigFloat q(p.q(), bits);
  const BigFloat one(1L, bits);
  const BigFloat q2v = q.pow(BigFloat(2.0 * p.v(), bits));
  const BigFloat lambda2 = q.pow(2L * lambda_exp);
  double worst = 0.0;
  for (int n = grid.n_lo() + 1; n <= grid.n_hi() - 1; ++n) {
    const int m = lambda_exp + n;
    const BigFloat jm = table.precise(m, ctx);
    const BigFloat bracket = table.precise(m - 1, ctx) - (one + q2v) * jm + q2v * table.precise(m + 1, ctx);
    const BigFloat delta = q.pow(-2L * n) * bracket;
    const BigFloat rhs = lambda2 * jm;
    const double r = (delta + rhs).abs().to_double() / (1.0 + rhs.abs().to_double());
    worst = std::max(worst, r);
  }
  return worst;
}

double eigen_residual_binary64(const LatticeGrid& grid, int lambda_exp, const BesselTable& table,
                               const IndexWindow& window) {
  const QParams& p = grid.params();
  const double q2v = std::pow(p.q(), 2.0 * p.v());
  const double lambda2 = std::pow(p.q(), 2.0 * lambda_exp);
  double worst = 0.0;
  const int lo = std::max(window.lo, grid.n_lo() + 1);
  const int hi = std::min(window.hi, grid.n_hi() - 1);
  for (int n = lo; n <= hi; ++n) {
    const int m = lambda_exp + n;
    const double x = grid.x(n);
    const double delta = (table(m - 1) - (1.0 + q2v) * table(m) + q2v * table(m + 1)) / (x * x);
    const double rhs = lambda2 * table(m);
    worst = std::max(worst, std::abs(delta + rhs) / (1.0 + std::abs(rhs)));
  }
  return worst;
}

}  // namespace qfourier
