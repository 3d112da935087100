#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "qfourier/bigfloat.hpp"
#include "qfourier/lattice.hpp"
#include "qfourier/qseries.hpp"
#include "qfourier/report.hpp"

namespace qfourier {

// Estimated decimal digits lost to cancellation when summing the series at x:
// log10(max term) minus log10 of the decay bound at x.
double jv_cancellation_digits(double x, const QParams& p);

// Normalized q-Bessel function j_v(x, q^2). Uses binary64 when the estimated
// cancellation is at most 6 digits, otherwise the certified high-precision path.
double jv(double x, const QParams& p, const PrecisionCtx& ctx);

// Certified high-precision value, returned at bits_for_digits(work_digits + 10).
// Throws PrecisionExhausted when the rounding error bound cannot be certified.
BigFloat jv_precise(double x, const QParams& p, const PrecisionCtx& ctx);
// Same, with the argument q^n formed exactly at working precision.
BigFloat jv_lattice(int n, const QParams& p, const PrecisionCtx& ctx);

// Constant of the decay bound: (-q^2;q^2)_inf (-q^{2v+2};q^2)_inf / (q^{2v+2};q^2)_inf.
double jv_bound_constant(const QParams& p, const PrecisionCtx& ctx);
// Natural log of the decay bound at q^n (constant times q^{n^2-(2v+1)n} for n < 0).
double jv_log_bound(int n, const QParams& p, const PrecisionCtx& ctx);

// j_v(q^n, q^2) for n_min <= n <= n_max, rounded from the high-precision path.
// The precise values are kept alongside unless the table came from a cache file.
class BesselTable {
public:
  BesselTable(QParams params, int n_min, int n_max, std::vector<double> values,
              std::vector<BigFloat> precise = {});

  const QParams& params() const { return params_; }
  int n_min() const { return n_min_; }
  int n_max() const { return n_max_; }
  bool covers(int lo, int hi) const { return n_min_ <= lo && hi <= n_max_; }
  std::span<const double> values() const { return values_; }

  // Throws OffGrid outside [n_min, n_max].
  double operator()(int n) const;
  bool has_precise() const { return !precise_.empty(); }
  // Stored precise value, or a fresh evaluation when none is stored.
  BigFloat precise(int n, const PrecisionCtx& ctx) const;

private:
  QParams params_;
  int n_min_;
  int n_max_;
  std::vector<double> values_;
  std::vector<BigFloat> precise_;
};

BesselTable jv_table(const QParams& p, int n_min, int n_max, const PrecisionCtx& ctx);
// Covers [2 n_lo, 2 n_hi]. With a cache directory, reuses or writes a CSV keyed
// by (q, v, n_min, n_max, work_digits).
BesselTable jv_table(const LatticeGrid& grid, const PrecisionCtx& ctx,
                     const std::optional<std::filesystem::path>& cache_dir = std::nullopt);

// CSV with header `n,jv`, 17 significant digits.
void save_table_csv(const BesselTable& table, const std::filesystem::path& path);
BesselTable load_table_csv(const std::filesystem::path& path, const QParams& p);

// Max over the table of |j_v(q^n)| / bound(n); passes iff <= 1 + 1e-12.
CheckEntry decay_bound_check(const BesselTable& table, const PrecisionCtx& ctx);

// Max over interior n of |Delta j_v(lambda .)(q^n) + lambda^2 j_v(lambda q^n)| / (1 + |lambda^2 j_v(lambda q^n)|)
// with lambda = q^lambda_exp, evaluated from the precise table values.
double eigen_residual(const LatticeGrid& grid, int lambda_exp, const BesselTable& table, const PrecisionCtx& ctx);
// Same quantity evaluated from the binary64 table values over the exponents in `window`.
double eigen_residual_binary64(const LatticeGrid& grid, int lambda_exp, const BesselTable& table,
                               const IndexWindow& window);

}  // namespace qfourier
