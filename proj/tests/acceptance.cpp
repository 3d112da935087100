// Acceptance suite: one PASS/FAIL line per criterion over the default (q, v) cells.

#include <cmath>
#include <cstdio>
#include <functional>
#include <initializer_list>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "qfourier/bessel.hpp"
#include "qfourier/suite.hpp"

using namespace qfourier;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::function<bool(const CellReport&, const CheckEntry&)> selects;
};

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

bool any_of(const std::string& name, std::initializer_list<const char*> names) {
  for (const char* n : names) {
    if (name == n) return true;
  }
  return false;
}

// Worst entry first by failure, then by residual relative to tolerance.
double severity(const CheckEntry& e) {
  const double tol = *e.tolerance;
  if (tol > 0.0) return e.residual / tol;
  return e.residual > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

struct Worst {
  const CheckEntry* entry = nullptr;
  std::string cell;
  std::size_t count = 0;
  bool pass = true;
};

void print_line(int id, const std::string& title, bool pass, const std::string& detail) {
  std::printf("%s %2d %-28s %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
}

// Exact-rational j_v at q = 1/2 against the production table, n from -8 to the table top.
bool oracle_criterion() {
  const PrecisionCtx ctx;
  double worst = 0.0;
  int worst_n = 0;
  double worst_v = 0.0;
  int points = 0;
  for (auto [v, two_v_plus_2] : {std::pair{0.0, 2}, std::pair{0.5, 3}, std::pair{1.5, 5}}) {
    const LatticeGrid grid = default_grid(QParams(0.5, v));
    const BesselTable table = jv_table(grid, ctx);
    for (int n = -8; n <= table.n_max(); ++n) {
      const double d = oracle::ulp_distance(table(n), oracle::jv_half_exact(n, two_v_plus_2));
      ++points;
      if (d > worst) {
        worst = d;
        worst_n = n;
        worst_v = v;
      }
    }
  }
  const bool pass = worst <= 1.0;
  char detail[160];
  if (worst > 0.0) {
    std::snprintf(detail, sizeof detail, "max %.0f ulp over %d points (tol 1 ulp) at n=%d v=%g", worst, points, worst_n,
                  worst_v);
  } else {
    std::snprintf(detail, sizeof detail, "max 0 ulp over %d points (tol 1 ulp)", points);
  }
  print_line(12, "oracle equivalence", pass, detail);
  return pass;
}

}  // namespace

int main() {
  const SuiteConfig config = default_suite();
  std::vector<CellReport> cells;
  for (const auto& [q, v] : config.resolved_cells()) {
    cells.push_back(run_cell(q, v, config));
    std::printf("cell q=%g v=%g: %zu entries, %.1f s\n", q, v, cells.back().entries.size(),
                cells.back().environment.runtime_s);
  }

  const std::vector<Criterion> criteria = {
      {1, "inversion", [](const CellReport&, const CheckEntry& e) { return e.name == "inversion"; }},
      {2, "plancherel", [](const CellReport&, const CheckEntry& e) { return e.name == "plancherel"; }},
      {3, "orthogonality",
       [](const CellReport&, const CheckEntry& e) { return starts_with(e.name, "orthogonality_"); }},
      {4, "decay bound", [](const CellReport&, const CheckEntry& e) { return e.name == "decay_bound"; }},
      {5, "eigen relation",
       [](const CellReport&, const CheckEntry& e) { return starts_with(e.name, "eigen_relation"); }},
      {6, "kernel identities",
       [](const CellReport&, const CheckEntry& e) {
         return any_of(e.name, {"kernel_symmetry", "kernel_row_sum", "kernel_projection"});
       }},
      {7, "positivity",
       [](const CellReport& c, const CheckEntry& e) { return c.environment.v >= 0.0 && e.name == "positivity"; }},
      {8, "Markov axioms", [](const CellReport&, const CheckEntry& e) { return starts_with(e.name, "markov_"); }},
      {9, "product formula",
       [](const CellReport&, const CheckEntry& e) { return any_of(e.name, {"product_formula", "commutativity"}); }},
      {10, "eigen/multiplier calculus",
       [](const CellReport&, const CheckEntry& e) {
         return any_of(e.name,
                       {"translation_eigen", "multiplier_action", "hypergroup_expansion", "hypergroup_window_growth"});
       }},
      {11, "heat",
       [](const CellReport&, const CheckEntry& e) {
         return (starts_with(e.name, "gauss_transform[") || starts_with(e.name, "gauss_mass[") ||
                 starts_with(e.name, "heat_spectral[") ||
                 (starts_with(e.name, "heat_equation[") && e.name != "heat_equation[t=0.37]") ||
                 any_of(e.name, {"qexp_difference", "amplitude_quasi_periodicity"}));
       }},
  };

  bool all_pass = true;
  for (const Criterion& crit : criteria) {
    Worst w;
    for (const CellReport& cell : cells) {
      for (const CheckEntry& e : cell.entries) {
        if (!e.tolerance || !crit.selects(cell, e)) continue;
        ++w.count;
        w.pass = w.pass && e.pass;
        if (w.entry == nullptr || severity(e) > severity(*w.entry)) {
          w.entry = &e;
          char buf[64];
          std::snprintf(buf, sizeof buf, "q=%g v=%g", cell.environment.q, cell.environment.v);
          w.cell = buf;
        }
      }
    }
    if (w.count == 0) {
      print_line(crit.id, crit.title, false, "no gated entries");
      all_pass = false;
      continue;
    }
    char detail[256];
    std::snprintf(detail, sizeof detail, "worst %s = %.3g (tol %.3g) at %s, %zu entries", w.entry->name.c_str(),
                  w.entry->residual, *w.entry->tolerance, w.cell.c_str(), w.count);
    print_line(crit.id, crit.title, w.pass, detail);
    all_pass = all_pass && w.pass;
  }
  all_pass = oracle_criterion() && all_pass;
  std::printf("%s\n", all_pass ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all_pass ? 0 : 1;
}
