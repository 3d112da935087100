#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "qfourier/precision.hpp"
#include "qfourier/report.hpp"

namespace qfourier {

struct SuiteConfig {
  // Cells are the Cartesian product of q_list and v_list unless `cells` is non-empty.
  std::vector<double> q_list{0.5};
  std::vector<double> v_list{0.5};
  std::vector<std::pair<double, double>> cells;
  // Grid override; both or neither.
  std::optional<int> n_lo;
  std::optional<int> n_hi;
  // Number of kernel window points (4 to 24).
  int window = 16;
  PrecisionCtx precision;
  Tolerances tolerances;
  std::uint64_t seed = 42;
  // Probes per cell for inversion and Plancherel.
  int probe_count = 100;
  // Probe pairs for the product formula and commutativity.
  int pair_count = 20;
  std::optional<std::filesystem::path> table_cache;

  // (q, v) pairs in run order.
  std::vector<std::pair<double, double>> resolved_cells() const;
  // Throws InvalidParams on any invalid cell, window, grid override or negative tolerance.
  void validate() const;
};

// q = 0.5 with v in {0, 0.5, 1.5}, and q = 0.8 with v = 0.5.
SuiteConfig default_suite();

// Runs every registered identity for one (q, v) cell.
CellReport run_cell(double q, double v, const SuiteConfig& config);

CheckReport run_check(const SuiteConfig& config);

}  // namespace qfourier
