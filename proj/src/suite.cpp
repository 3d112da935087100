#include "qfourier/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "qfourier/bessel.hpp"
#include "qfourier/error.hpp"
#include "qfourier/heat.hpp"
#include "qfourier/lattice.hpp"
#include "qfourier/probes.hpp"
#include "qfourier/qseries.hpp"
#include "qfourier/transform.hpp"
#include "qfourier/translation.hpp"

namespace qfourier {

std::vector<std::pair<double, double>> SuiteConfig::resolved_cells() const {
  if (!cells.empty()) return cells;
  std::vector<std::pair<double, double>> out;
  for (double q : q_list) {
    for (double v : v_list) out.emplace_back(q, v);
  }
  return out;
}

void SuiteConfig::validate() const {
  const auto all = resolved_cells();
  if (all.empty()) throw Error(ErrorCode::InvalidParams, "no (q, v) cells to check");
  for (const auto& [q, v] : all) QParams(q, v);
  if (window < 4 || window > 24) throw Error(ErrorCode::InvalidParams, "window must be between 4 and 24 points");
  if (n_lo.has_value() != n_hi.has_value()) throw Error(ErrorCode::InvalidParams, "set both n_lo and n_hi or neither");
  if (probe_count < 2 || pair_count < 1) throw Error(ErrorCode::InvalidParams, "need at least 2 probes and 1 pair");
  precision.validate();
  for (const auto& [name, tol] : tolerances.overrides()) {
    if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidParams, "tolerance for " + name + " must be nonnegative");
  }
}

SuiteConfig default_suite() {
  SuiteConfig c;
  c.cells = {{0.5, 0.0}, {0.5, 0.5}, {0.5, 1.5}, {0.8, 0.5}};
  return c;
}

namespace {

class EntrySink {
public:
  EntrySink(std::vector<CheckEntry>& out, const Tolerances& tol) : out_(out), tol_(tol) {}

  void gated(const std::string& name, const std::string& anchor, double residual, double tolerance) {
    out_.push_back(CheckEntry::gated(name, anchor, residual, tol_.get(name, tolerance)));
  }
  void reported(const std::string& name, const std::string& anchor, double residual) {
    out_.push_back(CheckEntry::reported(name, anchor, residual));
  }

private:
  std::vector<CheckEntry>& out_;
  const Tolerances& tol_;
};

std::string power_label(int k) {
  if (k == 0) return "1";
  if (k == 1) return "q";
  return "q^" + std::to_string(k);
}

double max_of(const std::vector<GridFn>& fs, const std::function<double(const GridFn&)>& fn) {
  double worst = 0.0;
  for (const GridFn& f : fs) worst = std::max(worst, fn(f));
  return worst;
}

void qseries_entries(EntrySink& out, const QParams& p, const PrecisionCtx& ctx) {
  double inverse = 0.0;
  for (double base : {p.q(), p.q2()}) {
    for (double z : {-4.0, -1.0, -0.5, 0.0, 0.3, 0.9}) {
      inverse = std::max(inverse, std::abs(qexp(z, base, ctx) * qpoch_inf(z, base, ctx) - 1.0));
    }
  }
  out.gated("qexp_product_inverse", "e(z,q) (z;q)_inf = 1", inverse, 1e-12);

  double split = 0.0;
  for (double a : {-0.7, 0.3, 0.6}) {
    const double full = qpoch_inf(a, p.q(), ctx);
    for (unsigned k : {1u, 5u, 10u}) {
      const double head = qpoch_finite(a, p.q(), k);
      const double tail = qpoch_inf(a * std::pow(p.q(), k), p.q(), ctx);
      split = std::max(split, std::abs(head * tail - full) / std::abs(full));
    }
  }
  out.gated("qpoch_split", "(a;q)_inf = (a;q)_K (aq^K;q)_inf", split, 1e-13);

  out.gated("amplitude_quasi_periodicity", "A(q^{2m}) q^{2m(v+1)} constant for m in -3..3",
            amplitude_quasi_periodicity(p, 1.0, -3, 3, ctx), 1e-10);
  out.reported("amplitude_quasi_periodicity_off_lattice", "A(q^{2m} t) q^{2m(v+1)} constant at t = 0.3",
               amplitude_quasi_periodicity(p, 0.3, -3, 3, ctx));
  out.gated("qexp_difference", "e(z,q^2) - e(q^2 z,q^2) = z e(z,q^2) at 20 points z < 0",
            qexp_difference_defect(p, qexp_sample_points(), ctx), 1e-12);
}

double table_ulp_spread(const LatticeGrid& grid, const BesselTable& table, const PrecisionCtx& ctx) {
  PrecisionCtx wide = ctx;
  wide.work_digits = ctx.work_digits + 30;
  const BesselTable other = jv_table(grid.params(), table.n_min(), table.n_max(), wide);
  double worst = 0.0;
  for (int n = table.n_min(); n <= table.n_max(); ++n) {
    const double a = table(n);
    const double b = other(n);
    if (a == b) continue;
    const double ulp = std::nextafter(std::abs(a), std::numeric_limits<double>::infinity()) - std::abs(a);
    worst = std::max(worst, std::abs(a - b) / ulp);
  }
  return worst;
}

void bessel_entries(EntrySink& out, const LatticeGrid& grid, const BesselTable& table, const IndexWindow& interior,
                    const PrecisionCtx& ctx) {
  const CheckEntry decay = decay_bound_check(table, ctx);
  out.gated(decay.name, "|j_v(q^n)| <= decay bound, both branches", decay.residual, 1.0 + 1e-12);
  for (int lam : {-2, 0, 1, 3}) {
    const std::string label = "lambda=" + power_label(lam);
    out.gated("eigen_relation[" + label + "]", "Delta j_v(lambda x) = -lambda^2 j_v(lambda x), binary64 table",
              eigen_residual_binary64(grid, lam, table, interior), 1e-9);
    out.gated("eigen_relation_precise[" + label + "]",
              "Delta j_v(lambda x) = -lambda^2 j_v(lambda x), working precision, full grid",
              eigen_residual(grid, lam, table, ctx), 1e-9);
  }
  out.gated("table_precision_stability", "table at +30 digits differs by at most 1 ulp",
            table_ulp_spread(grid, table, ctx), 1.0);
}

void transform_entries(EntrySink& out, const TransformOp& op, const SuiteConfig& config) {
  const LatticeGrid& grid = op.grid();
  const IndexWindow interior = op.interior();
  ProbeFactory factory(config.seed);
  const std::vector<GridFn> probes = factory.mixed(grid, interior, config.probe_count);

  out.gated("inversion", "F(F f) = f", max_of(probes, [&](const GridFn& f) { return inversion_residual(f, op); }),
            1e-9);
  out.gated("plancherel", "||F f||_2 = ||f||_2",
            max_of(probes, [&](const GridFn& f) { return plancherel_defect(f, op); }), 1e-9);
  out.gated("inversion_delta", "F(F delta_1) = delta_1", inversion_residual(delta_fn(grid, 0), op), 1e-9);

  const OrthogonalityResult orth = orthogonality_matrix(op);
  out.gated("orthogonality_offdiag", "<psi_x, psi_y> (1-q) x^{v+1} y^{v+1} = 0 for x != y", orth.max_offdiag, 1e-9);
  out.gated("orthogonality_diag", "<psi_x, psi_x> = 1/((1-q) x^{2v+2})", orth.max_diag_rel, 1e-9);

  // The matrix depends on (n, m) only through the kernel c j_v(q^{n+m}) times the column weight.
  double transpose = 0.0;
  for (int n = grid.n_lo(); n <= grid.n_hi(); ++n) {
    for (int m = grid.n_lo(); m <= grid.n_hi(); ++m) {
      if (op.kernel(n, m) != op.kernel(m, n)) transpose += 1.0;
      if (op.entry(n, m) != op.kernel(n, m) * grid.weight(m)) transpose += 1.0;
    }
  }
  out.gated("self_transpose", "M[n,m] / w_m = M[m,n] / w_n exactly (count of mismatches)", transpose, 0.0);

  // Basis completeness: expansion in psi_x / ||psi_x|| and resummation.
  const double completeness = max_of(probes, [&](const GridFn& f) {
    std::vector<double> coeffs;
    for (int x = grid.n_lo(); x <= grid.n_hi(); ++x) coeffs.push_back(inner(f, normalized_basis(op, x)));
    GridFn sum = GridFn::zeros(grid);
    for (int x = grid.n_lo(); x <= grid.n_hi(); ++x) {
      sum = sum + coeffs[static_cast<std::size_t>(x - grid.n_lo())] * normalized_basis(op, x);
    }
    return norm_p(sum - f, 2.0) / norm_p(f, 2.0);
  });
  out.gated("basis_completeness", "f = sum_x <f, psi_x> psi_x / ||psi_x||^2", completeness, 1e-9);

  // Decay at infinity: L1-normalized nonnegative probes.
  double decay = 0.0;
  double sup_ratio = 0.0;
  double sup_j = 0.0;
  for (double x : op.table().values()) sup_j = std::max(sup_j, std::abs(x));
  for (std::size_t i = 0; i < probes.size(); i += 2) {
    const GridFn f = (1.0 / norm_p(probes[i], 1.0)) * probes[i];
    const GridFn ff = op.forward(f);
    const double s = sup_norm(ff);
    decay = std::max(decay, std::abs(ff.at(grid.n_lo())) / s);
    sup_ratio = std::max(sup_ratio, s / (op.c() * sup_j));
  }
  out.gated("decay_at_infinity", "|F f(q^{n_lo})| / sup|F f| for ||f||_1 = 1", decay, 1e-6);
  out.gated("l1_sup_bound", "sup|F f| <= c sup|j_v| for ||f||_1 = 1", sup_ratio, 1.0 + 1e-12);

  const IndexWindow inner_window{interior.lo + 2, interior.hi - 2};
  ProbeFactory delta_factory(config.seed + 1);
  double multiplier = 0.0;
  for (int i = 0; i < 10; ++i) {
    multiplier = std::max(multiplier, delta_multiplier_defect(delta_factory.bump(grid, inner_window), op));
  }
  out.gated("delta_multiplier", "F[Delta f] = -x^2 F f", multiplier, 1e-8);
}

void translation_entries(EntrySink& out, const Kernel3& K, const TransformOp& op, const PositivityResult& pos,
                         const SuiteConfig& config) {
  const LatticeGrid& grid = K.grid();
  const IndexWindow& w = K.window();
  const double v = grid.params().v();

  out.gated("kernel_symmetry", "D(x,y,z) invariant under permutations (count of violations)",
            static_cast<double>(kernel_symmetry_violations(K)), 0.0);
  out.gated("kernel_row_sum", "(1-q) sum_z z^{2v+2} D(x,y,z) = 1", kernel_row_sum_defect(K), 1e-8);
  double projection = 0.0;
  for (int t = w.lo; t <= w.hi; ++t) projection = std::max(projection, kernel_projection_defect(K, t));
  out.gated("kernel_projection", "int D(x,y,z) j_v(xt) x^{2v+1} d_qx = j_v(yt) j_v(zt)", projection, 1e-8);

  if (v >= 0.0) {
    out.gated("positivity", "-min D over the window", -pos.min_kernel, 1e-10);
  } else {
    out.reported("positivity", "-min D over the window (v < 0, observational)", -pos.min_kernel);
  }
  out.reported("positivity_nonnegative_flag", "1 when every entry >= -10^{-(digits-5)}", pos.nonnegative ? 1.0 : 0.0);

  ProbeFactory factory(config.seed + 2);
  const std::vector<GridFn> probes = factory.mixed(grid, w, 20);
  std::vector<int> xs;
  for (int k = 0; k < 5; ++k) xs.push_back(w.lo + k * (w.size() - 1) / 4);

  auto markov_entries = [&](const std::string& tag, const std::string& what, const MarkovReport& r) {
    out.gated("markov_unit[" + tag + "]", what + ": K1 = 1", r.unit_defect, 1e-8);
    out.gated("markov_symmetry[" + tag + "]", what + ": <Kf,g> = <f,Kg>", r.symmetry_defect, 1e-8);
    out.gated("markov_contraction[" + tag + "]", what + ": ||Kf||_2 <= ||f||_2", r.contraction_defect, 1e-8);
    out.gated("markov_jensen[" + tag + "]", what + ": (Kf)^2 <= K(f^2)", r.jensen_defect, 1e-8);
    out.gated("markov_sup[" + tag + "]", what + ": ||Kf||_inf <= ||f||_inf", r.sup_defect, 1e-8);
    out.gated("markov_positivity[" + tag + "]", what + ": f >= 0 implies Kf >= 0", r.positivity_defect, 1e-8);
    out.gated("markov_mass[" + tag + "]", what + ": int Kf = int f", r.mass_defect, 1e-8);
  };
  markov_entries("translation", "T_x at 5 window points", markov_check(K, xs, probes, pos.min_kernel));
  const GridFn rho = probability_bump(grid, (w.lo + w.hi) / 2, K.c());
  markov_entries("bump", "f -> f * rho, rho a probability bump",
                 markov_check([&](const GridFn& f) { return convolve(f, rho, K); }, grid, w, probes, pos.min_kernel));
  const double q2 = grid.params().q2();
  for (const auto& [t, label] : {std::pair{q2, "q^2"}, std::pair{1.0, "1"}, std::pair{1.0 / q2, "q^-2"}}) {
    markov_entries(std::string("gauss,t=") + label, "f -> f * G(., t)",
                   heat_markov_check(t, K, probes, pos.min_kernel, config.precision));
  }

  double product = 0.0;
  double commute = 0.0;
  const int pairs = std::min<int>(config.pair_count, static_cast<int>(probes.size()));
  for (int k = 0; k < pairs; ++k) {
    const GridFn& f = probes[static_cast<std::size_t>(k)];
    const GridFn& g = probes[static_cast<std::size_t>((k + 3) % static_cast<int>(probes.size()))];
    const GridFn fg = convolve(f, g, K);
    const GridFn gf = convolve(g, f, K);
    product = std::max(product, norm_p(op.forward(fg) - pointwise_product(op.forward(f), op.forward(g)), 2.0));
    commute = std::max(commute, norm_p(fg - gf, 2.0));
  }
  out.gated("product_formula", "F(f * g) = F f F g", product, 1e-8);
  out.gated("commutativity", "f * g = g * f", commute, 1e-8);

  double eigen = 0.0;
  for (int n = -2; n <= 4; ++n) {
    for (int x : xs) eigen = std::max(eigen, eigen_check(K, op, n, x));
  }
  out.gated("translation_eigen", "T_x f_n = (f_n(x)/f_n(0)) f_n for n in -2..4", eigen, 1e-8);
  out.gated("multiplier_action", "f_n * rho = c_n f_n", multiplier_action_defect(rho, K, op), 1e-8);

  const IndexWindow all = grid.range();
  const IndexWindow n14{grid.n_lo(), std::min(grid.n_hi(), grid.n_lo() + 13)};
  const IndexWindow n20{grid.n_lo(), std::min(grid.n_hi(), grid.n_lo() + 19)};
  const double d14 = hypergroup_expansion_defect(K, op, n14);
  const double d20 = hypergroup_expansion_defect(K, op, n20);
  out.gated("hypergroup_expansion", "D = sum_n f_n f_n f_n / f_n(0) over the grid",
            hypergroup_expansion_defect(K, op, all), 1e-7);
  out.reported("hypergroup_expansion[W=14]", "expansion truncated to 14 terms from n_lo", d14);
  out.reported("hypergroup_expansion[W=20]", "expansion truncated to 20 terms from n_lo", d20);
  out.gated("hypergroup_window_growth", "defect(W=20) - defect(W=14) <= 0", d20 - d14, 0.0);
}

void heat_entries(EntrySink& out, const Kernel3& K, const TransformOp& op, const SuiteConfig& config) {
  const LatticeGrid& grid = K.grid();
  const PrecisionCtx& ctx = config.precision;
  const double q2 = grid.params().q2();
  ProbeFactory factory(config.seed + 3);
  const std::vector<GridFn> probes = factory.mixed(grid, K.window(), 6);
  const std::vector<std::pair<double, std::string>> times = {
      {q2 * q2, "q^4"}, {q2, "q^2"}, {1.0, "1"}, {1.0 / q2, "q^-2"}};
  for (const auto& [t, label] : times) {
    const std::string tag = "[t=" + label + "]";
    out.gated("gauss_transform" + tag, "F[e(-t y^2, q^2)] = G(., t)", gauss_transform_defect(t, op, ctx), 1e-8);
    out.gated("gauss_mass" + tag, "c ||G(., t)||_1 = 1", gauss_mass_defect(gauss_kernel(t, grid, ctx), K.c()), 1e-8);
    out.gated("heat_spectral" + tag, "F(P_t f) = e(-t x^2, q^2) F f",
              max_of(probes, [&](const GridFn& f) { return heat_spectral_defect(f, t, K, op, ctx); }), 1e-8);
    out.gated("heat_equation" + tag, "Delta u = (1-q^2) D_{q^2,t} u",
              max_of(probes, [&](const GridFn& f) { return heat_residual(f, t, K, ctx).residual; }), 1e-7);
    out.gated("heat_multiplier" + tag, "multiplier of G(., t) is e(-t x^2, q^2)", heat_multiplier_defect(t, K, ctx),
              1e-8);
  }
  const double t_off = 0.37;
  out.gated("heat_equation[t=0.37]", "Delta u = (1-q^2) D_{q^2,t} u off the time lattice",
            max_of(probes, [&](const GridFn& f) { return heat_residual(f, t_off, K, ctx).residual; }), 1e-6);
  out.reported("semigroup_composition[t=1,s=q^2]", "||P_t P_s f - P_{t+s} f||_2 / ||f||_2 (not a theorem)",
               semigroup_defect(probes.front(), 1.0, q2, K, ctx));
}

}  // namespace

CellReport run_cell(double q, double v, const SuiteConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const PrecisionCtx& ctx = config.precision;
  const QParams p(q, v);
  const LatticeGrid grid = config.n_lo ? LatticeGrid(p, *config.n_lo, *config.n_hi) : default_grid(p);
  auto table = std::make_shared<const BesselTable>(jv_table(grid, ctx, config.table_cache));
  const TransformOp op(grid, table, ctx);
  const IndexWindow window = kernel_window(grid, *table, config.window, ctx);
  const Kernel3 K(grid, table, window, ctx);
  const PositivityResult pos = positivity_min(grid, *table, window, ctx);

  CellReport cell;
  EntrySink out(cell.entries, config.tolerances);
  qseries_entries(out, p, ctx);
  bessel_entries(out, grid, *table, op.interior(), ctx);
  transform_entries(out, op, config);
  translation_entries(out, K, op, pos, config);
  heat_entries(out, K, op, config);

  RunEnvironment& env = cell.environment;
  env.q = q;
  env.v = v;
  env.n_lo = grid.n_lo();
  env.n_hi = grid.n_hi();
  env.window_lo = window.lo;
  env.window_hi = window.hi;
  env.digits = ctx.work_digits;
  env.tail_tol = ctx.tail_tol;
  env.seed = config.seed;
  env.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return cell;
}

CheckReport run_check(const SuiteConfig& config) {
  config.validate();
  CheckReport report;
  for (const auto& [q, v] : config.resolved_cells()) report.cells.push_back(run_cell(q, v, config));
  return report;
}

}  // namespace qfourier
