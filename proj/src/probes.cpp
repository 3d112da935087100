#include "qfourier/probes.hpp"

#include <cmath>

#include "qfourier/error.hpp"

namespace qfourier {

namespace {

GridFn unit_l2(const LatticeGrid& grid, std::vector<double> values) {
  GridFn f(grid, std::move(values));
  const double n = norm_p(f, 2.0);
  return n > 0.0 ? (1.0 / n) * f : f;
}

void require_window(const LatticeGrid& grid, const IndexWindow& window) {
  if (window.empty() || !grid.contains(window.lo) || !grid.contains(window.hi)) {
    throw Error(ErrorCode::OffWindow, "probe window must lie inside the grid");
  }
}

}  // namespace

double ProbeFactory::uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

double ProbeFactory::normal() {
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  const double u = 1.0 - uniform();
  const double w = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * w);
}

GridFn ProbeFactory::dense(const LatticeGrid& grid, const IndexWindow& window) {
  require_window(grid, window);
  std::vector<double> values(grid.size(), 0.0);
  for (int n = window.lo; n <= window.hi; ++n) values[grid.index(n)] = normal();
  return unit_l2(grid, std::move(values));
}

GridFn ProbeFactory::bump(const LatticeGrid& grid, const IndexWindow& window) {
  require_window(grid, window);
  std::vector<double> values(grid.size(), 0.0);
  const int count = 1 + static_cast<int>(uniform() * 3.0);
  for (int k = 0; k < count; ++k) {
    const int center = window.lo + static_cast<int>(uniform() * window.size());
    const double amp = 0.5 + uniform();
    for (int d = -1; d <= 1; ++d) {
      const int n = center + d;
      if (window.contains(n)) values[grid.index(n)] += amp * (d == 0 ? 1.0 : 0.5);
    }
  }
  return unit_l2(grid, std::move(values));
}

std::vector<GridFn> ProbeFactory::mixed(const LatticeGrid& grid, const IndexWindow& window, int count) {
  std::vector<GridFn> out;
  for (int i = 0; i < count; ++i) out.push_back(i % 2 == 0 ? bump(grid, window) : dense(grid, window));
  return out;
}

GridFn probability_bump(const LatticeGrid& grid, int center, double c) {
  std::vector<double> values(grid.size(), 0.0);
  for (int d = -1; d <= 1; ++d) {
    if (grid.contains(center + d)) values[grid.index(center + d)] = d == 0 ? 1.0 : 0.5;
  }
  GridFn rho(grid, std::move(values));
  return (1.0 / (c * jackson_integral(rho))) * rho;
}

GridFn restrict_to(const GridFn& f, const IndexWindow& window) {
  const LatticeGrid& grid = f.grid();
  return GridFn::from_exponent(grid, [&](int n) { return window.contains(n) ? f.at(n) : 0.0; });
}

}  // namespace qfourier
