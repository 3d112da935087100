#include "qfourier/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "qfourier/error.hpp"
#include "qfourier/summation.hpp"

namespace qfourier {

LatticeGrid::LatticeGrid(QParams params, int n_lo, int n_hi) : params_(params), n_lo_(n_lo), n_hi_(n_hi) {
  if (!(n_lo < 0 && n_hi > 0)) {
    throw Error(ErrorCode::InvalidParams, "grid must straddle x = 1 (n_lo < 0 < n_hi), got [" +
                                              std::to_string(n_lo) + ", " + std::to_string(n_hi) + "]");
  }
  if (n_hi - n_lo + 1 < 8) {
    throw Error(ErrorCode::InvalidParams, "grid must have at least 8 points");
  }
}

std::size_t LatticeGrid::index(int n) const {
  if (!contains(n)) {
    throw Error(ErrorCode::OffGrid, "exponent " + std::to_string(n) + " outside grid [" + std::to_string(n_lo_) +
                                        ", " + std::to_string(n_hi_) + "]");
  }
  return static_cast<std::size_t>(n - n_lo_);
}

double LatticeGrid::x(int n) const { return std::pow(params_.q(), n); }

double LatticeGrid::weight(int n) const {
  return (1.0 - params_.q()) * std::pow(params_.q(), n * params_.weight_exponent());
}

std::optional<int> LatticeGrid::exponent_of(double x, double rel_tol) const {
  if (!(x > 0.0) || !std::isfinite(x)) return std::nullopt;
  const int n = static_cast<int>(std::lround(std::log(x) / std::log(params_.q())));
  if (!contains(n)) return std::nullopt;
  const double xn = this->x(n);
  if (std::abs(x - xn) > rel_tol * xn) return std::nullopt;
  return n;
}

LatticeGrid default_grid(const QParams& p) {
  if (p.v() >= 0.0 && p.q() == 0.5) return LatticeGrid(p, -10, 40);
  if (p.v() >= 0.0 && p.q() == 0.8) return LatticeGrid(p, -20, 120);
  const double l = std::log10(1.0 / p.q());
  const int n_lo = std::min(-1, -static_cast<int>(std::lround(5.5 / std::sqrt(l))));
  int n_hi = static_cast<int>(std::ceil(std::max(12.0 / l, 14.0 / (p.weight_exponent() * l))));
  // Raise n_hi until the kernel's high-side tail c^2 (1-q) B0^3 q^{(n_hi+1)A} / (1 - q^A) is below 1e-18.
  const PrecisionCtx ctx;
  const double q2 = p.q2();
  const double qa = std::pow(q2, p.v() + 1.0);
  const double log_b0 = std::log(qpoch_inf(-q2, q2, ctx)) + std::log(qpoch_inf(-qa, q2, ctx)) -
                        std::log(qpoch_inf(qa, q2, ctx));
  const double a_lq = p.weight_exponent() * std::log(p.q());
  const double log_pref = 2.0 * std::log(c_qv(p, ctx)) + std::log1p(-p.q()) + 3.0 * log_b0 - std::log1p(-std::exp(a_lq));
  const double target = std::log(1e-18);
  const int needed = static_cast<int>(std::ceil((target - log_pref) / a_lq)) - 1;
  n_hi = std::max({n_hi, needed, 1, n_lo + 7});
  return LatticeGrid(p, n_lo, n_hi);
}

GridFn::GridFn(LatticeGrid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error(ErrorCode::GridMismatch, "expected " + std::to_string(grid_.size()) + " values, got " +
                                             std::to_string(values_.size()));
  }
}

GridFn GridFn::zeros(const LatticeGrid& grid) { return GridFn(grid, std::vector<double>(grid.size(), 0.0)); }

GridFn GridFn::constant(const LatticeGrid& grid, double value) {
  return GridFn(grid, std::vector<double>(grid.size(), value));
}

GridFn GridFn::from_exponent(const LatticeGrid& grid, const std::function<double(int)>& f) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = f(grid.exponent(i));
  return GridFn(grid, std::move(values));
}

void require_same_grid(const GridFn& f, const GridFn& g) {
  if (!(f.grid() == g.grid())) throw Error(ErrorCode::GridMismatch, "functions live on different grids");
}

namespace {

template <typename Op>
GridFn combine(const GridFn& f, const GridFn& g, Op op) {
  require_same_grid(f, g);
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(f[i], g[i]);
  return GridFn(f.grid(), std::move(out));
}

}  // namespace

GridFn operator+(const GridFn& f, const GridFn& g) {
  return combine(f, g, [](double a, double b) { return a + b; });
}

GridFn operator-(const GridFn& f, const GridFn& g) {
  return combine(f, g, [](double a, double b) { return a - b; });
}

GridFn pointwise_product(const GridFn& f, const GridFn& g) {
  return combine(f, g, [](double a, double b) { return a * b; });
}

GridFn operator*(double a, const GridFn& f) {
  std::vector<double> out(f.values().begin(), f.values().end());
  for (double& v : out) v *= a;
  return GridFn(f.grid(), std::move(out));
}

double jackson_integral(const GridFn& f) {
  const LatticeGrid& grid = f.grid();
  CompensatedSum sum;
  for (std::size_t i = 0; i < f.size(); ++i) sum.add(grid.weight(grid.exponent(i)) * f[i]);
  return sum.value();
}

double inner(const GridFn& f, const GridFn& g) { return jackson_integral(pointwise_product(f, g)); }

double norm_p(const GridFn& f, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidParams, "norm order must satisfy p >= 1");
  const LatticeGrid& grid = f.grid();
  CompensatedSum sum;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::abs(f[i]);
    sum.add(grid.weight(grid.exponent(i)) * (p == 2.0 ? a * a : std::pow(a, p)));
  }
  return p == 2.0 ? std::sqrt(sum.value()) : std::pow(sum.value(), 1.0 / p);
}

double sup_norm(const GridFn& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

GridFn delta_fn(const LatticeGrid& grid, int n) {
  std::vector<double> values(grid.size(), 0.0);
  values[grid.index(n)] = 1.0 / grid.weight(n);
  return GridFn(grid, std::move(values));
}

GridFn delta_fn(const LatticeGrid& grid, double x) {
  const auto n = grid.exponent_of(x);
  if (!n) throw Error(ErrorCode::OffGrid, "point " + std::to_string(x) + " is not on the grid");
  return delta_fn(grid, *n);
}

void save_csv(const GridFn& f, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot open " + path.string() + " for writing");
  out.precision(17);
  out << "n,x,value\n";
  const LatticeGrid& grid = f.grid();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const int n = grid.exponent(i);
    out << n << ',' << grid.x(n) << ',' << f[i] << '\n';
  }
  if (!out) throw Error(ErrorCode::ParseError, "write failed for " + path.string());
}

namespace {

struct CsvRow {
  int n;
  double x;
  double value;
};

std::vector<CsvRow> read_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::vector<CsvRow> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!header_seen) {
      header_seen = true;
      std::string compact;
      for (char ch : line) {
        if (ch != ' ' && ch != '\t') compact += ch;
      }
      if (compact == "n,x,value") continue;
    }
    std::stringstream ss(line);
    std::string a, b, c, extra;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c, ',') ||
        std::getline(ss, extra, ',')) {
      throw Error(ErrorCode::ParseError, path.string() + ":" + std::to_string(line_no) + ": expected 3 columns");
    }
    try {
      std::size_t used = 0;
      CsvRow row{};
      row.n = std::stoi(a, &used);
      row.x = std::stod(b);
      row.value = std::stod(c);
      rows.push_back(row);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, path.string() + ":" + std::to_string(line_no) + ": malformed number");
    }
  }
  if (rows.empty()) throw Error(ErrorCode::ParseError, path.string() + ": no data rows");
  return rows;
}

GridFn rows_to_fn(const std::vector<CsvRow>& rows, const LatticeGrid& grid) {
  if (rows.size() != grid.size()) {
    throw Error(ErrorCode::GridMismatch, "file has " + std::to_string(rows.size()) + " rows, grid has " +
                                             std::to_string(grid.size()) + " points");
  }
  std::vector<double> values(grid.size());
  std::vector<bool> seen(grid.size(), false);
  for (const CsvRow& row : rows) {
    if (!grid.contains(row.n)) {
      throw Error(ErrorCode::GridMismatch, "exponent " + std::to_string(row.n) + " not on grid");
    }
    const std::size_t i = grid.index(row.n);
    if (seen[i]) throw Error(ErrorCode::GridMismatch, "duplicate exponent " + std::to_string(row.n));
    const double xn = grid.x(row.n);
    if (!(std::abs(row.x - xn) <= 1e-12 * xn)) {
      throw Error(ErrorCode::GridMismatch, "x column does not equal q^n at n = " + std::to_string(row.n));
    }
    seen[i] = true;
    values[i] = row.value;
  }
  return GridFn(grid, std::move(values));
}

}  // namespace

GridFn load_csv(const std::filesystem::path& path, const LatticeGrid& grid) {
  return rows_to_fn(read_rows(path), grid);
}

GridFn load_csv(const std::filesystem::path& path, const QParams& params) {
  const std::vector<CsvRow> rows = read_rows(path);
  int lo = rows.front().n;
  int hi = rows.front().n;
  for (const CsvRow& row : rows) {
    lo = std::min(lo, row.n);
    hi = std::max(hi, row.n);
  }
  LatticeGrid grid = [&] {
    try {
      return LatticeGrid(params, lo, hi);
    } catch (const Error& e) {
      throw Error(ErrorCode::GridMismatch, std::string("file does not describe a valid grid: ") + e.what());
    }
  }();
  return rows_to_fn(rows, grid);
}

}  // namespace qfourier
