#include <set>

#include "doctest.h"
#include "qfourier/error.hpp"
#include "qfourier/suite.hpp"

using namespace qfourier;

namespace {

SuiteConfig small_config() {
  SuiteConfig config;
  config.probe_count = 10;
  config.pair_count = 4;
  return config;
}

const CheckReport& default_report() {
  static const CheckReport report = run_check(small_config());
  return report;
}

}  // namespace

TEST_CASE("config validation") {
  SuiteConfig config;
  CHECK_NOTHROW(config.validate());
  config.q_list = {1.5};
  CHECK_THROWS_AS(config.validate(), Error);
  config = SuiteConfig();
  config.window = 3;
  CHECK_THROWS_AS(config.validate(), Error);
  config.window = 25;
  CHECK_THROWS_AS(config.validate(), Error);
  config = SuiteConfig();
  config.tolerances = Tolerances({{"inversion", -1.0}});
  CHECK_THROWS_AS(config.validate(), Error);
  config = SuiteConfig();
  config.n_lo = -5;
  CHECK_THROWS_AS(config.validate(), Error);
}

TEST_CASE("cell resolution") {
  SuiteConfig config;
  config.q_list = {0.5, 0.8};
  config.v_list = {0.0, 0.5};
  CHECK(config.resolved_cells().size() == 4);
  CHECK(default_suite().resolved_cells() ==
        std::vector<std::pair<double, double>>{{0.5, 0.0}, {0.5, 0.5}, {0.5, 1.5}, {0.8, 0.5}});
}

TEST_CASE("default cell passes") {
  const CheckReport& report = default_report();
  REQUIRE(report.cells.size() == 1);
  for (const CheckEntry* e : report.failures()) MESSAGE(e->name << " " << e->residual);
  CHECK(report.pass());
  const RunEnvironment& env = report.cells[0].environment;
  CHECK(env.q == 0.5);
  CHECK(env.v == 0.5);
  CHECK(env.n_lo == -10);
  CHECK(env.n_hi == 40);
  CHECK(env.seed == 42);
}

TEST_CASE("entries are named and described") {
  std::set<std::string> names;
  for (const CheckEntry& e : default_report().cells[0].entries) {
    CHECK(!e.name.empty());
    CHECK(!e.anchor.empty());
    CHECK(names.insert(e.name).second);
    if (e.tolerance) CHECK(e.pass == (e.residual <= *e.tolerance));
  }
  for (const char* required : {"inversion", "plancherel", "kernel_row_sum", "positivity", "product_formula",
                               "hypergroup_expansion", "heat_equation[t=1]", "qexp_difference"}) {
    CHECK(names.count(required) == 1);
  }
}

TEST_CASE("report JSON is deterministic without runtime") {
  const SuiteConfig config = small_config();
  const auto a = to_json(run_check(config), false).dump();
  const auto b = to_json(default_report(), false).dump();
  CHECK(a == b);
  CHECK(a.find("runtime") == std::string::npos);
  CHECK(to_json(default_report(), true).dump().find("runtime") != std::string::npos);
}

TEST_CASE("global tolerance override fails the report") {
  SuiteConfig config = small_config();
  config.tolerances = Tolerances({{"*", 0.0}});
  const CheckReport report = run_check(config);
  CHECK_FALSE(report.pass());
  CHECK(!report.failures().empty());
}
