#include "qfourier/report.hpp"

#include <cmath>

namespace qfourier {

CheckEntry CheckEntry::gated(std::string name, std::string anchor, double residual, double tolerance) {
  CheckEntry e;
  e.name = std::move(name);
  e.anchor = std::move(anchor);
  e.residual = residual;
  e.tolerance = tolerance;
  e.pass = std::isfinite(residual) && residual <= tolerance;
  return e;
}

CheckEntry CheckEntry::reported(std::string name, std::string anchor, double residual) {
  CheckEntry e;
  e.name = std::move(name);
  e.anchor = std::move(anchor);
  e.residual = residual;
  e.pass = true;
  return e;
}

bool CellReport::pass() const {
  for (const CheckEntry& e : entries) {
    if (!e.pass) return false;
  }
  return true;
}

bool CheckReport::pass() const {
  for (const CellReport& c : cells) {
    if (!c.pass()) return false;
  }
  return true;
}

std::vector<const CheckEntry*> CheckReport::failures() const {
  std::vector<const CheckEntry*> out;
  for (const CellReport& c : cells) {
    for (const CheckEntry& e : c.entries) {
      if (!e.pass) out.push_back(&e);
    }
  }
  return out;
}

double Tolerances::get(const std::string& name, double fallback) const {
  if (const auto it = overrides_.find(name); it != overrides_.end()) return it->second;
  if (const auto it = overrides_.find("*"); it != overrides_.end()) return it->second;
  return fallback;
}

namespace {

nlohmann::ordered_json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

nlohmann::ordered_json to_json(const CheckEntry& entry) {
  nlohmann::ordered_json j;
  j["name"] = entry.name;
  j["anchor"] = entry.anchor;
  j["residual"] = number_or_null(entry.residual);
  j["tolerance"] = entry.tolerance ? nlohmann::ordered_json(*entry.tolerance) : nlohmann::ordered_json(nullptr);
  j["gated"] = entry.tolerance.has_value();
  j["pass"] = entry.pass;
  return j;
}

nlohmann::ordered_json to_json(const CellReport& cell, bool include_runtime) {
  const RunEnvironment& env = cell.environment;
  nlohmann::ordered_json e;
  e["q"] = env.q;
  e["v"] = env.v;
  e["grid"] = {env.n_lo, env.n_hi};
  e["window"] = {env.window_lo, env.window_hi};
  e["digits"] = env.digits;
  e["tail_tol"] = env.tail_tol;
  e["seed"] = env.seed;
  if (include_runtime) e["runtime_s"] = env.runtime_s;
  nlohmann::ordered_json j;
  j["environment"] = e;
  j["pass"] = cell.pass();
  j["identities"] = nlohmann::ordered_json::array();
  for (const CheckEntry& entry : cell.entries) j["identities"].push_back(to_json(entry));
  return j;
}

nlohmann::ordered_json to_json(const CheckReport& report, bool include_runtime) {
  nlohmann::ordered_json j;
  j["pass"] = report.pass();
  j["cells"] = nlohmann::ordered_json::array();
  for (const CellReport& cell : report.cells) j["cells"].push_back(to_json(cell, include_runtime));
  return j;
}

}  // namespace qfourier
