#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qfourier/qseries.hpp"

namespace qfourier {

// Inclusive range of lattice exponents.
struct IndexWindow {
  int lo = 0;
  int hi = -1;

  bool contains(int n) const { return lo <= n && n <= hi; }
  int size() const { return hi >= lo ? hi - lo + 1 : 0; }
  bool empty() const { return hi < lo; }
  bool operator==(const IndexWindow&) const = default;
};

// Points x_n = q^n for n_lo <= n <= n_hi. Points are addressed by exponent.
class LatticeGrid {
public:
  LatticeGrid(QParams params, int n_lo, int n_hi);

  const QParams& params() const { return params_; }
  int n_lo() const { return n_lo_; }
  int n_hi() const { return n_hi_; }
  std::size_t size() const { return static_cast<std::size_t>(n_hi_ - n_lo_ + 1); }
  IndexWindow range() const { return {n_lo_, n_hi_}; }

  bool contains(int n) const { return n_lo_ <= n && n <= n_hi_; }
  // Throws OffGrid when n is outside the grid.
  std::size_t index(int n) const;
  int exponent(std::size_t i) const { return n_lo_ + static_cast<int>(i); }

  double x(int n) const;
  // (1-q) q^{n(2v+2)}: the Jackson quadrature weight at q^n.
  double weight(int n) const;
  // Exponent n with q^n equal to x within rel_tol, if any.
  std::optional<int> exponent_of(double x, double rel_tol = 1e-12) const;

  bool operator==(const LatticeGrid&) const = default;

private:
  QParams params_;
  int n_lo_;
  int n_hi_;
};

// Suite grid: [-10, 40] at q = 0.5 and [-20, 120] at q = 0.8 for v >= 0. Otherwise
// n_lo = -round(5.5/sqrt(L)) with L = log10(1/q), and n_hi = ceil(max(12/L, 14/((2v+2)L))),
// raised until the high-side kernel truncation bound is below 1e-18.
LatticeGrid default_grid(const QParams& p);

// Real even function sampled on a grid; entry k holds f(q^{n_lo + k}).
class GridFn {
public:
  GridFn(LatticeGrid grid, std::vector<double> values);

  static GridFn zeros(const LatticeGrid& grid);
  static GridFn constant(const LatticeGrid& grid, double value);
  static GridFn from_exponent(const LatticeGrid& grid, const std::function<double(int)>& f);

  const LatticeGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  // Value at exponent n; throws OffGrid.
  double at(int n) const { return values_[grid_.index(n)]; }

private:
  LatticeGrid grid_;
  std::vector<double> values_;
};

// Throws GridMismatch unless both functions live on the same grid.
void require_same_grid(const GridFn& f, const GridFn& g);

GridFn operator+(const GridFn& f, const GridFn& g);
GridFn operator-(const GridFn& f, const GridFn& g);
GridFn operator*(double a, const GridFn& f);
GridFn pointwise_product(const GridFn& f, const GridFn& g);

// (1-q) sum_n q^{n(2v+2)} f(q^n).
double jackson_integral(const GridFn& f);
double inner(const GridFn& f, const GridFn& g);
double norm_p(const GridFn& f, double p);
double sup_norm(const GridFn& f);
// Discrete reproducing delta at q^n: 1/((1-q) x^{2v+2}) at x = q^n, zero elsewhere.
GridFn delta_fn(const LatticeGrid& grid, int n);
GridFn delta_fn(const LatticeGrid& grid, double x);

// CSV with header `n,x,value`, values at 17 significant digits.
void save_csv(const GridFn& f, const std::filesystem::path& path);
GridFn load_csv(const std::filesystem::path& path, const LatticeGrid& grid);
// Infers the grid range from the file.
GridFn load_csv(const std::filesystem::path& path, const QParams& params);

}  // namespace qfourier
