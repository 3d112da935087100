#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qfourier/lattice.hpp"

namespace qfourier {

// Seeded test functions supported inside a window, scaled to unit L2 norm.
// Uses mt19937_64 with a fixed integer-to-double mapping so sequences are
// reproducible across standard libraries.
class ProbeFactory {
public:
  explicit ProbeFactory(std::uint64_t seed) : rng_(seed) {}

  // Independent standard normal amplitudes at every window point.
  GridFn dense(const LatticeGrid& grid, const IndexWindow& window);
  // One to three nonnegative three-point bumps.
  GridFn bump(const LatticeGrid& grid, const IndexWindow& window);
  // Alternates bump and dense probes, starting with a bump.
  std::vector<GridFn> mixed(const LatticeGrid& grid, const IndexWindow& window, int count);

  double uniform();
  double normal();

private:
  std::mt19937_64 rng_;
};

// Nonnegative bump with weights (1/2, 1, 1/2) around q^center, scaled so that
// c * jackson_integral(rho) = 1.
GridFn probability_bump(const LatticeGrid& grid, int center, double c);

// Restricts f to the window (zero elsewhere).
GridFn restrict_to(const GridFn& f, const IndexWindow& window);

}  // namespace qfourier
