#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qfourier {

// One checked identity. Ungated entries carry no tolerance and always pass.
struct CheckEntry {
  std::string name;
  std::string anchor;
  double residual = 0.0;
  std::optional<double> tolerance;
  bool pass = true;

  static CheckEntry gated(std::string name, std::string anchor, double residual, double tolerance);
  static CheckEntry reported(std::string name, std::string anchor, double residual);
};

struct RunEnvironment {
  double q = 0.0;
  double v = 0.0;
  int n_lo = 0;
  int n_hi = 0;
  int window_lo = 0;
  int window_hi = -1;
  int digits = 0;
  double tail_tol = 0.0;
  std::uint64_t seed = 0;
  double runtime_s = 0.0;
};

// Results for one (q, v) cell.
struct CellReport {
  RunEnvironment environment;
  std::vector<CheckEntry> entries;

  bool pass() const;
};

struct CheckReport {
  std::vector<CellReport> cells;

  bool pass() const;
  std::vector<const CheckEntry*> failures() const;
};

// Tolerance lookup with per-name overrides; the name "*" overrides every gate.
class Tolerances {
public:
  Tolerances() = default;
  explicit Tolerances(std::map<std::string, double> overrides) : overrides_(std::move(overrides)) {}

  double get(const std::string& name, double fallback) const;
  const std::map<std::string, double>& overrides() const { return overrides_; }

private:
  std::map<std::string, double> overrides_;
};

nlohmann::ordered_json to_json(const CheckEntry& entry);
nlohmann::ordered_json to_json(const CellReport& cell, bool include_runtime = true);
nlohmann::ordered_json to_json(const CheckReport& report, bool include_runtime = true);

}  // namespace qfourier
