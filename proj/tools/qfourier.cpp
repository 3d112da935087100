#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qfourier/bessel.hpp"
#include "qfourier/error.hpp"
#include "qfourier/heat.hpp"
#include "qfourier/lattice.hpp"
#include "qfourier/suite.hpp"
#include "qfourier/transform.hpp"
#include "qfourier/translation.hpp"

namespace fs = std::filesystem;
using namespace qfourier;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitPrecision = 3;

// Options shared by every subcommand. Unset optionals fall back to the environment, then defaults.
struct CommonOptions {
  double q = 0.5;
  double v = 0.5;
  std::optional<int> n_lo;
  std::optional<int> n_hi;
  std::optional<int> digits;
  std::optional<double> tail_tol;
  std::optional<std::string> table_cache;

  void add_to(CLI::App* app, bool with_qv = true) {
    if (with_qv) {
      app->add_option("--q", q, "Lattice base, 0 < q < 1")->capture_default_str();
      app->add_option("--v", v, "Bessel order, v > -1")->capture_default_str();
    }
    app->add_option("--nlo", n_lo, "Lowest grid exponent");
    app->add_option("--nhi", n_hi, "Highest grid exponent");
    app->add_option("--digits", digits, "Working decimal digits (env QF_DIGITS)");
    app->add_option("--tail-tol", tail_tol, "Series tail tolerance (env QF_TAIL_TOL)");
    app->add_option("--table-cache", table_cache, "Directory for cached Bessel tables (env QF_TABLE_CACHE)");
  }

  PrecisionCtx precision() const {
    PrecisionCtx ctx = PrecisionCtx::from_env();
    if (digits) ctx.work_digits = *digits;
    if (tail_tol) ctx.tail_tol = *tail_tol;
    ctx.validate();
    return ctx;
  }

  std::optional<fs::path> cache_dir() const {
    if (table_cache) return fs::path(*table_cache);
    if (const char* env = std::getenv("QF_TABLE_CACHE"); env != nullptr && *env != '\0') return fs::path(env);
    return std::nullopt;
  }

  LatticeGrid grid(const QParams& p) const {
    if (n_lo.has_value() != n_hi.has_value()) throw Error(ErrorCode::InvalidParams, "set both --nlo and --nhi");
    return n_lo ? LatticeGrid(p, *n_lo, *n_hi) : default_grid(p);
  }
};

// Shortest decimal text that reads back to the same double.
std::string shortest(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidParams, flag + " expects comma-separated numbers, got '" + text + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::InvalidParams, flag + " is empty");
  return out;
}

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const std::string& item : items) {
    const auto eq = item.rfind('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::InvalidParams, "--tol expects name=value, got '" + item + "'");
    }
    out[item.substr(0, eq)] = parse_list(item.substr(eq + 1), "--tol").front();
  }
  return out;
}

void write_json(const nlohmann::ordered_json& j, const std::optional<std::string>& path) {
  if (!path || *path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(*path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + *path);
  out << j.dump(2) << "\n";
}

std::shared_ptr<const BesselTable> table_for(const LatticeGrid& grid, const CommonOptions& opts,
                                             const PrecisionCtx& ctx) {
  return std::make_shared<const BesselTable>(jv_table(grid, ctx, opts.cache_dir()));
}

int cmd_check(const CommonOptions& opts, const std::optional<std::string>& q_list,
              const std::optional<std::string>& v_list, bool full_suite, int window, std::uint64_t seed,
              const std::vector<std::string>& tols, const std::optional<std::string>& json_path, int probes) {
  SuiteConfig config = full_suite ? default_suite() : SuiteConfig{};
  if (q_list || v_list) {
    config.cells.clear();
    config.q_list = q_list ? parse_list(*q_list, "--q") : std::vector<double>{opts.q};
    config.v_list = v_list ? parse_list(*v_list, "--v") : std::vector<double>{opts.v};
  }
  config.n_lo = opts.n_lo;
  config.n_hi = opts.n_hi;
  config.window = window;
  config.precision = opts.precision();
  config.tolerances = Tolerances(parse_tolerances(tols));
  config.seed = seed;
  config.probe_count = probes;
  config.table_cache = opts.cache_dir();
  config.validate();

  const CheckReport report = run_check(config);
  for (const CellReport& cell : report.cells) {
    const RunEnvironment& env = cell.environment;
    std::size_t failed = 0;
    for (const CheckEntry& e : cell.entries) failed += e.pass ? 0 : 1;
    std::cerr << "q=" << env.q << " v=" << env.v << " grid [" << env.n_lo << "," << env.n_hi << "] window ["
              << env.window_lo << "," << env.window_hi << "]: " << cell.entries.size() - failed << "/"
              << cell.entries.size() << " pass\n";
    for (const CheckEntry& e : cell.entries) {
      if (e.pass) continue;
      std::cerr << "  FAIL " << e.name << " residual=" << std::setprecision(6) << e.residual
                << " tolerance=" << *e.tolerance << "\n";
    }
  }
  if (json_path) write_json(to_json(report), json_path);
  return report.pass() ? kExitPass : kExitFailed;
}

int cmd_transform(const CommonOptions& opts, const std::string& in, const std::string& out) {
  const PrecisionCtx ctx = opts.precision();
  const QParams p(opts.q, opts.v);
  const GridFn f = load_csv(in, p);
  const TransformOp op(f.grid(), table_for(f.grid(), opts, ctx), ctx);
  save_csv(op.forward(f), out);
  return kExitPass;
}

int cmd_kernel(const CommonOptions& opts, double x, double y, int window_points,
               const std::optional<std::string>& out, const std::optional<std::string>& json_path) {
  const PrecisionCtx ctx = opts.precision();
  const QParams p(opts.q, opts.v);
  const LatticeGrid grid = opts.grid(p);
  const auto a = grid.exponent_of(x);
  const auto b = grid.exponent_of(y);
  if (!a || !b) throw Error(ErrorCode::OffGrid, "--x and --y must be lattice points q^n on the grid");
  const Kernel3 K = make_kernel(grid, table_for(grid, opts, ctx), ctx, window_points);
  if (!K.window().contains(*a) || !K.window().contains(*b)) {
    throw Error(ErrorCode::OffWindow, "kernel rows are trusted only for exponents in [" +
                                          std::to_string(K.window().lo) + ", " + std::to_string(K.window().hi) + "]");
  }
  const GridFn row = GridFn::from_exponent(grid, [&](int z) { return K(*a, *b, z); });
  if (out) save_csv(row, *out);
  const double sum = kernel_row_sum(K, *a, *b);
  nlohmann::ordered_json j;
  j["q"] = p.q();
  j["v"] = p.v();
  j["x"] = x;
  j["y"] = y;
  j["window"] = {K.window().lo, K.window().hi};
  j["row_sum"] = sum;
  j["row_sum_defect"] = std::abs(sum - 1.0);
  write_json(j, json_path);
  return std::abs(sum - 1.0) <= 1e-8 ? kExitPass : kExitFailed;
}

int cmd_scan(const CommonOptions& opts, const std::string& q_list, const std::string& v_list, int window_points,
             const std::string& out_path) {
  const PrecisionCtx ctx = opts.precision();
  const std::vector<double> qs = parse_list(q_list, "--q-list");
  const std::vector<double> vs = parse_list(v_list, "--v-list");
  for (double q : qs) {
    for (double v : vs) QParams(q, v);
  }
  std::ofstream out(out_path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + out_path);
  out << "q,v,min_kernel,argmin_a,argmin_b,argmin_c,nonnegative\n";
  bool gated_ok = true;
  for (double q : qs) {
    for (double v : vs) {
      const PositivityResult r = positivity_min(QParams(q, v), window_points, ctx);
      out << shortest(q) << "," << shortest(v) << "," << shortest(r.min_kernel) << "," << r.a << "," << r.b << "," << r.c << ","
          << (r.nonnegative ? 1 : 0) << "\n";
      std::cerr << "q=" << q << " v=" << v << " min_kernel=" << r.min_kernel << "\n";
      if (v >= 0.0 && r.min_kernel < -1e-10) gated_ok = false;
    }
  }
  return gated_ok ? kExitPass : kExitFailed;
}

int cmd_heat(const CommonOptions& opts, double t, const std::string& in, const std::optional<std::string>& out,
             bool residual, int window_points, const std::optional<std::string>& json_path) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidParams, "--t must be positive");
  const PrecisionCtx ctx = opts.precision();
  const QParams p(opts.q, opts.v);
  const GridFn f = load_csv(in, p);
  const Kernel3 K = make_kernel(f.grid(), table_for(f.grid(), opts, ctx), ctx, window_points);
  if (out) save_csv(heat_apply(f, t, K, ctx), *out);
  if (!residual) return kExitPass;
  const HeatResidual r = heat_residual(f, t, K, ctx);
  nlohmann::ordered_json j;
  j["t"] = r.t;
  j["residual"] = r.residual;
  j["mass_defect"] = r.mass_defect;
  write_json(j, json_path);
  return kExitPass;
}

int cmd_table(const CommonOptions& opts, const std::string& out) {
  const PrecisionCtx ctx = opts.precision();
  const LatticeGrid grid = opts.grid(QParams(opts.q, opts.v));
  save_table_csv(jv_table(grid, ctx, opts.cache_dir()), out);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-Bessel Fourier analysis on the q-lattice: identity checks, transforms, kernels and heat flow"};
  app.require_subcommand(1);

  CommonOptions check_opts;
  std::optional<std::string> check_q;
  std::optional<std::string> check_v;
  bool check_suite = false;
  int check_window = 16;
  std::uint64_t check_seed = 42;
  int check_probes = 100;
  std::vector<std::string> check_tols;
  std::optional<std::string> check_json;
  CLI::App* check = app.add_subcommand("check", "Run the identity suite and write a JSON report");
  check_opts.add_to(check, false);
  check->add_option("--q", check_q, "Comma-separated q values (default 0.5)");
  check->add_option("--v", check_v, "Comma-separated v values (default 0.5)");
  check->add_flag("--suite", check_suite, "Run the default suite: q=0.5 with v in {0,0.5,1.5} and q=0.8 with v=0.5");
  check->add_option("--window", check_window, "Kernel window points")->capture_default_str();
  check->add_option("--seed", check_seed, "Probe seed")->capture_default_str();
  check->add_option("--probes", check_probes, "Probes per cell for inversion and Plancherel")->capture_default_str();
  check->add_option("--tol", check_tols, "Tolerance override name=value ('*' for all)");
  check->add_option("--json,--out", check_json, "Report path ('-' for stdout)");

  CommonOptions transform_opts;
  std::string transform_in;
  std::string transform_out;
  CLI::App* transform = app.add_subcommand("transform", "Apply the q-Bessel Fourier transform to a CSV function");
  transform_opts.add_to(transform);
  transform->add_option("--in", transform_in, "Input CSV (n,x,value)")->required();
  transform->add_option("--out", transform_out, "Output CSV")->required();

  CommonOptions kernel_opts;
  double kernel_x = 1.0;
  double kernel_y = 1.0;
  int kernel_window = 16;
  std::optional<std::string> kernel_out;
  std::optional<std::string> kernel_json;
  CLI::App* kernel = app.add_subcommand("kernel", "Write the row z -> D_v(x, y, z) and its weighted sum");
  kernel_opts.add_to(kernel);
  kernel->add_option("--x", kernel_x, "Lattice point x")->capture_default_str();
  kernel->add_option("--y", kernel_y, "Lattice point y")->capture_default_str();
  kernel->add_option("--window", kernel_window, "Kernel window points")->capture_default_str();
  kernel->add_option("--out", kernel_out, "Row CSV (n,x,value)");
  kernel->add_option("--json", kernel_json, "Row-sum JSON path ('-' for stdout)");

  CommonOptions scan_opts;
  std::string scan_q = "0.3,0.5,0.7,0.9";
  std::string scan_v = "-0.7,-0.3,0,0.5,1.5";
  int scan_window = 16;
  std::string scan_out;
  CLI::App* scan = app.add_subcommand("scan-positivity", "Minimum of the translation kernel over (q, v)");
  scan_opts.add_to(scan, false);
  scan->add_option("--q-list", scan_q, "Comma-separated q values")->capture_default_str();
  scan->add_option("--v-list", scan_v, "Comma-separated v values")->capture_default_str();
  scan->add_option("--window", scan_window, "Kernel window points")->capture_default_str();
  scan->add_option("--out", scan_out, "Output CSV")->required();

  CommonOptions heat_opts;
  double heat_t = 1.0;
  std::string heat_in;
  std::optional<std::string> heat_out;
  bool heat_residual_flag = false;
  int heat_window = 16;
  std::optional<std::string> heat_json;
  CLI::App* heat = app.add_subcommand("heat", "Apply the q-heat semigroup P_t to a CSV function");
  heat_opts.add_to(heat);
  heat->add_option("--t", heat_t, "Time t > 0")->capture_default_str();
  heat->add_option("--in", heat_in, "Input CSV (n,x,value)")->required();
  heat->add_option("--out", heat_out, "Output CSV");
  heat->add_flag("--residual", heat_residual_flag, "Emit JSON {t, residual, mass_defect}");
  heat->add_option("--window", heat_window, "Kernel window points")->capture_default_str();
  heat->add_option("--json", heat_json, "Residual JSON path ('-' for stdout)");

  CommonOptions table_opts;
  std::string table_out;
  CLI::App* table = app.add_subcommand("table", "Write j_v(q^n, q^2) over [2 n_lo, 2 n_hi] as CSV (n,jv)");
  table_opts.add_to(table);
  table->add_option("--out", table_out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (*check) {
      return cmd_check(check_opts, check_q, check_v, check_suite, check_window, check_seed, check_tols, check_json,
                       check_probes);
    }
    if (*transform) return cmd_transform(transform_opts, transform_in, transform_out);
    if (*kernel) return cmd_kernel(kernel_opts, kernel_x, kernel_y, kernel_window, kernel_out, kernel_json);
    if (*scan) return cmd_scan(scan_opts, scan_q, scan_v, scan_window, scan_out);
    if (*heat) return cmd_heat(heat_opts, heat_t, heat_in, heat_out, heat_residual_flag, heat_window, heat_json);
    if (*table) return cmd_table(table_opts, table_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::PrecisionExhausted ? kExitPrecision : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
