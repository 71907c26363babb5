#include "verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <stdexcept>

#include "advdiff/counterexamples.hpp"
#include "advdiff/diagnostics.hpp"
#include "advdiff/estimates.hpp"
#include "advdiff/kernels.hpp"
#include "advdiff/mixed_norm.hpp"
#include "advdiff/serialize.hpp"
#include "advdiff/solver.hpp"

namespace advdiff::verify {

bool Check::passed() const {
  switch (op) {
    case Comparison::LessEqual: return measured <= bound;
    case Comparison::Less: return measured < bound;
    case Comparison::GreaterEqual: return measured >= bound;
  }
  return false;
}

bool CriterionResult::passed() const {
  if (!error.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

const std::vector<std::string>& criterion_ids() {
  static const std::vector<std::string> ids{"A1", "A2", "A3", "A4",  "A5",  "A6",
                                            "A7", "A8", "A9", "A10", "A11", "A12"};
  return ids;
}

namespace {

// Summary of one solver run, kept for the scheme-invariant criterion.
struct RunSummary {
  std::string label;
  double mass_defect;
  double l1_excess;
};

double rel_l2(const ScalarField& a, const ScalarField& b) {
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a[i] - b[i];
  return lp_norm(a.grid(), diff, 2.0) / lp_norm(b, 2.0);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// 30 times in [0.5, 0.99], geometric in 1 - t.
std::vector<double> blowup_times() {
  std::vector<double> t(30);
  for (int k = 0; k < 30; ++k) t[static_cast<std::size_t>(k)] = 1.0 - 0.5 * std::pow(0.01 / 0.5, k / 29.0);
  return t;
}

template <class F>
double blowup_slope(F&& norm) {
  NormSeries s(2.0);
  for (double t : blowup_times()) s.push(t, norm(t));
  return fit_blowup_exponent(s, 0.5, 0.99);
}

}  // namespace

struct Suite::Cache {
  std::map<std::string, RunSummary> runs;
  std::optional<double> gamma;  // selected in A5, reused by A6
};

Suite::Suite(Settings settings) : settings_(std::move(settings)), cache_(std::make_unique<Cache>()) {}
Suite::~Suite() = default;

namespace {

struct Context {
  const Settings& settings;
  std::map<std::string, RunSummary>& runs;
  std::optional<double>& gamma;

  double tol(const std::string& key) const { return settings.tolerance.at(key); }
  void remember(const std::string& label, const SolveResult& r) { runs[label] = {label, r.mass_defect, r.l1_excess}; }
};

// --- A1: solver against the closed-form self-similar solution ---------------
void a1(Context& ctx, CriterionResult& out) {
  const SelfSimilarProfile1D prof;
  const double L = 60.0;
  const auto grid = make_grid(GridKind::Line, 1, L, ctx.settings.a1_n);
  SolveProblem pb{grid, ScalarField::sample(grid, [&](double x) { return selfsim_solution(prof, 0.0, x); }),
                  VelocityFieldSpec::selfsim_1d()};
  pb.t_end = 0.9;
  for (int k = 1; k <= 9; ++k) pb.output_times.push_back(0.1 * k);
  pb.output_times.back() = 0.9;
  pb.boundary.left = [&](double t) { return selfsim_solution(prof, t, -L); };
  pb.boundary.right = [&](double t) { return selfsim_solution(prof, t, L); };
  const SolveResult r = solve(pb);
  ctx.remember("A1", r);
  const auto exact = ScalarField::sample(grid, [&](double x) { return selfsim_solution(prof, 0.9, x); });
  const double err = rel_l2(r.final, exact);
  out.checks.push_back({"rel_l2_error", err, ctx.tol("A1"), Comparison::LessEqual});
  out.detail = "n=" + std::to_string(grid.size()) + " steps=" + std::to_string(r.steps) +
               " stop=" + to_string(r.stop_reason);
}

// --- A2: 1D exponent from closed-form quadrature -----------------------------
void a2(Context& ctx, CriterionResult& out) {
  const SelfSimilarProfile1D prof;
  const auto grid = make_grid(GridKind::Line, 1, 100.0, 200001);
  const double slope = blowup_slope([&](double t) { return selfsim_lp_norm(prof, t, 2.0, grid); });
  out.checks.push_back({"|slope-1/8|", std::abs(slope - 0.125), ctx.tol("A2"), Comparison::LessEqual});
  out.detail = "slope=" + fmt(slope);
}

// --- A3: radial exponents -----------------------------------------------------
void a3(Context& ctx, CriterionResult& out) {
  for (int d : {2, 3}) {
    const SelfSimilarProfileRadial prof(d);
    const auto grid = make_grid(GridKind::Radial, d, 100.0, 100001);
    const double p = d / (d - 1.0);
    const double s_p = blowup_slope([&](double t) { return selfsim_lp_norm(prof, t, p, grid); });
    const double s_2 = blowup_slope([&](double t) { return selfsim_lp_norm(prof, t, 2.0, grid); });
    const std::string tag = "d" + std::to_string(d);
    out.checks.push_back({tag + "_|slope_p-3/8|", std::abs(s_p - 0.375), ctx.tol("A3"), Comparison::LessEqual});
    out.checks.push_back(
        {tag + "_|slope_2-(d/4-1/8)|", std::abs(s_2 - (d / 4.0 - 0.125)), ctx.tol("A3"), Comparison::LessEqual});
    out.detail += tag + ": " + fmt(s_p) + ", " + fmt(s_2) + " ";
  }
}

// --- A4: ||b(t)||_{L^d} is independent of t ---------------------------------
void a4(Context& ctx, CriterionResult& out) {
  for (int d : {2, 3}) {
    const auto b = VelocityFieldSpec::selfsim_radial(d);
    const auto grid = make_grid(GridKind::Radial, d, 200.0, 200001);
    const double n0 = velocity_lq_norm(b, 0.0, grid, d);
    double worst = 0.0;
    for (double t : {0.5, 0.9}) worst = std::max(worst, std::abs(velocity_lq_norm(b, t, grid, d) / n0 - 1.0));
    out.checks.push_back({"d" + std::to_string(d) + "_rel_variation", worst, ctx.tol("A4"), Comparison::LessEqual});
    out.detail += "d" + std::to_string(d) + ": ||b||_d=" + fmt(n0) + " ";
  }
}

// --- A5: perturbation budgets of the Gaussian construction --------------------
double a5_beta() { return choose_beta(2.0, 2.0, 1); }

double selected_gamma(Context& ctx) {
  if (!ctx.gamma) ctx.gamma = select_gamma(1, a5_beta(), 6.0, ctx.tol("A5"));
  return *ctx.gamma;
}

void a5(Context& ctx, CriterionResult& out) {
  const double beta = a5_beta();
  const double gamma = selected_gamma(ctx);
  const auto spec = make_gaussian_spec(1, gamma, beta, 6.0);
  const double source = gaussian_source_l1(spec).value;
  const double trunc = datum_truncation_l1(spec);
  out.checks.push_back({"source_l1", source, ctx.tol("A5"), Comparison::Less});
  out.checks.push_back({"datum_truncation_l1", trunc, ctx.tol("A5"), Comparison::Less});
  out.detail = "gamma=" + fmt(gamma) + " beta=" + fmt(beta);
}

// --- A6: concentration ---------------------------------------------------------
void a6(Context& ctx, CriterionResult& out) {
  const double gamma = selected_gamma(ctx);
  const auto spec = make_gaussian_spec(1, gamma, a5_beta(), 6.0);
  const auto grid = make_grid(GridKind::Line, 1, ctx.settings.a6_extent, ctx.settings.a6_n);
  SolveProblem pb{grid, gaussian_initial_datum(spec, grid), VelocityFieldSpec::gaussian(spec)};
  pb.t_end = ctx.settings.a6_t_end;
  for (double s : {0.5, 0.1, 0.01}) pb.output_times.push_back(1.0 - s);
  pb.output_times.push_back(pb.t_end);
  pb.ball_radii = {0.5};
  pb.record_steps = false;
  const SolveResult r = solve(pb);
  ctx.remember("A6", r);
  const double m = r.stop_reason == StopReason::ReachedEnd ? r.ball_mass[0].back() : 0.0;
  out.checks.push_back({"mass_in_ball_0.5", m, ctx.tol("A6"), Comparison::GreaterEqual});
  out.detail = "gamma=" + fmt(gamma) + " n=" + std::to_string(grid.size()) + " steps=" + std::to_string(r.steps) +
               " stop=" + to_string(r.stop_reason);
}

// --- A7: scaling law of ||grad G(t)||_{q*} -------------------------------------
void a7(Context& ctx, CriterionResult& out) {
  const std::vector<double> ts{0.25, 0.5, 1.0, 2.0};
  const std::pair<int, double> cases[] = {{1, 2.0}, {2, 1.5}, {3, 1.0}};
  for (const auto& [d, qs] : cases) {
    std::vector<double> lx, ly;
    for (double t : ts) {
      lx.push_back(std::log(t));
      ly.push_back(std::log(grad_heat_kernel_lq_norm(t, qs, d)));
    }
    const double slope = least_squares(lx, ly).slope;
    const double expected = (d - qs * (d + 1.0)) / (2.0 * qs);
    out.checks.push_back(
        {"d" + std::to_string(d) + "_|slope-e|", std::abs(slope - expected), ctx.tol("A7"), Comparison::LessEqual});
  }
}

// --- A8: mild solution against the IMEX solver --------------------------------
ScalarField a8_datum(const SpatialGrid& grid) {
  const HeatKernelQuery q(0.25, 1);
  return ScalarField::sample(grid, [&](double x) { return heat_kernel(q, x - 0.3); });
}

void a8(Context& ctx, CriterionResult& out) {
  const auto grid = make_grid(GridKind::Line, 1, 10.0, 2001);
  const auto u0 = a8_datum(grid);
  const auto b = VelocityFieldSpec::compact_bump(2.0, 1.0);
  const MildSolution mild = mild_solve(u0, b, 0.05, 26, 8);
  SolveProblem pb{grid, u0, b};
  pb.t_end = 0.05;
  const SolveResult r = solve(pb);
  ctx.remember("A8", r);
  out.checks.push_back({"rel_l2_discrepancy", rel_l2(mild.final, r.final), ctx.tol("A8"), Comparison::LessEqual});
  out.detail = "picard=" + std::to_string(mild.iterations) + " last_diff=" + fmt(mild.last_difference);
}

// --- A9: energy envelopes dominate the simulated norms -------------------------
void a9(Context& ctx, CriterionResult& out) {
  const auto grid = make_grid(GridKind::Line, 1, 20.0, 4001);
  const HeatKernelQuery q(0.25, 1);
  const auto u0 = ScalarField::sample(grid, [&](double x) { return heat_kernel(q, x); });
  const auto b = VelocityFieldSpec::compact_bump(1.0, 1.0);
  const ExponentTriple triple(4.0, 2.0, 1);
  SolveProblem pb{grid, u0, b};
  pb.t_end = 1.0;
  for (int k = 1; k <= 20; ++k) pb.output_times.push_back(0.05 * k);
  pb.output_times.back() = 1.0;
  pb.norm_ps = {1.0, 2.0, 4.0, kInf};
  const SolveResult r = solve(pb);
  ctx.remember("A9", r);

  const GnlConstant gnl = empirical_gnl_constant(grid, kInf, ctx.settings.seed);
  const GronwallInputs inputs{&grid, gnl.constant};
  const NormSeries g2 = gronwall_bound(b, triple, lp_norm(u0, 2.0), r.times, inputs);
  const NormSeries g4 = higher_norm_bound(b, triple, 2.0, lp_norm(u0, 4.0), r.times, inputs);
  double w2 = 0.0, w4 = 0.0;
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    w2 = std::max(w2, r.series[1].entries()[k].value / g2.entries()[k].value);
    w4 = std::max(w4, r.series[2].entries()[k].value / g4.entries()[k].value);
  }
  out.checks.push_back({"max_l2/bound", w2, 1.0, Comparison::LessEqual});
  out.checks.push_back({"max_l4/bound", w4, 1.0, Comparison::LessEqual});
  out.detail = "regime=" + to_string(classify(triple).regime) + " C_GNL=" + fmt(gnl.constant) +
               " final bounds " + fmt(g2.back().value) + ", " + fmt(g4.back().value);
}

// --- A10: scheme invariants, GNL identity, classification table ---------------
void a10(Context& ctx, CriterionResult& out) {
  // Solver runs of A1-A9 that have not been executed in this suite yet.
  const std::pair<const char*, void (*)(Context&, CriterionResult&)> producers[] = {
      {"A1", a1}, {"A6", a6}, {"A8", a8}, {"A9", a9}};
  for (const auto& [label, fn] : producers) {
    if (ctx.runs.count(label)) continue;
    CriterionResult scratch;
    fn(ctx, scratch);
  }
  double mass = 0.0, l1 = 0.0;
  for (const auto& [label, run] : ctx.runs) {
    mass = std::max(mass, run.mass_defect);
    l1 = std::max(l1, run.l1_excess);
    out.detail += label + ": mass " + fmt(run.mass_defect) + " l1 " + fmt(run.l1_excess) + "; ";
  }
  out.checks.push_back({"max_mass_defect", mass, ctx.tol("A10.mass"), Comparison::LessEqual});
  out.checks.push_back({"max_l1_excess", l1, ctx.tol("A10.l1"), Comparison::LessEqual});

  const auto grid = make_grid(GridKind::Line, 1, 20.0, 4001);
  double gnl_dev = 0.0;
  for (const auto& f : gnl_corpus(grid, ctx.settings.seed, 100)) gnl_dev = std::max(gnl_dev, std::abs(gnl_ratio(f, 2.0) - 1.0));
  out.checks.push_back({"gnl_identity_dev", gnl_dev, 0.0, Comparison::LessEqual});

  struct Row {
    double r, q;
    int d;
    Regime expected;
  };
  const Row table[] = {
      {kInf, 2, 2, Regime::Borderline},       {kInf, 3, 3, Regime::Borderline},
      {4, 2, 1, Regime::EnergyEstimate},      {2, 2, 2, Regime::BlowupPossible},
      {4, 4, 1, Regime::EnergyEstimate},      {8, 4, 2, Regime::EnergyEstimate},
      {2, 4, 2, Regime::BlowupPossible},      {kInf, kInf, 3, Regime::EnergyEstimate},
      {1, 1, 1, Regime::BlowupPossible},      {4, 8, 3, Regime::EnergyEstimate},
      {10, 2, 1, Regime::StrictDuhamel},      {kInf, 1.5, 1, Regime::OutsideStatedRange},
  };
  int wrong = 0;
  for (const Row& row : table)
    if (classify(ExponentTriple(row.r, row.q, row.d)).regime != row.expected) ++wrong;
  out.checks.push_back({"classify_mismatches", static_cast<double>(wrong), 0.0, Comparison::LessEqual});
}

// --- A11: criticality of the scaling ------------------------------------------
void a11(Context& ctx, CriterionResult& out) {
  CustomDrift drift{"smooth_gaussian", {}, [](double t, double x) { return (1.0 + t * t) * std::exp(-x * x); }, 1, {}};
  const auto b = VelocityFieldSpec::custom(drift);
  const auto grid = make_grid(GridKind::Line, 1, 40.0, 20001);
  const std::size_t nt = 2001;
  auto ratio = [&](double r, double q, double lambda) {
    return mixed_norm(scaling_transform(b, lambda), r, q, 0.0, 1.0 / lambda, grid, nt) /
           mixed_norm(b, r, q, 0.0, 1.0, grid, nt);
  };
  double line_dev = 0.0;
  for (double lambda : {0.25, 4.0}) line_dev = std::max(line_dev, std::abs(ratio(4.0, 2.0, lambda) - 1.0));
  out.checks.push_back({"critical_|ratio-1|", line_dev, ctx.tol("A11.line"), Comparison::LessEqual});

  const ExponentTriple off(2.0, 2.0, 1);
  std::vector<double> lx, ly;
  for (int k = 0; k <= 6; ++k) {
    const double lambda = std::pow(10.0, -1.5 + 0.5 * k);
    lx.push_back(std::log(lambda));
    ly.push_back(std::log(ratio(off.r, off.q, lambda)));
  }
  const double slope = least_squares(lx, ly).slope;
  const double derived = scaling_norm_exponent(off);
  out.checks.push_back({"|slope-(1-S)/2|", std::abs(slope - derived), ctx.tol("A11.slope"), Comparison::LessEqual});
  out.detail = "off-line (2,2,1): slope=" + fmt(slope) + " (1-S)/2=" + fmt(derived) +
               " (S-1)/2=" + fmt(-derived);
}

// --- A12: profile ODE residuals and positivity --------------------------------
void a12(Context& ctx, CriterionResult& out) {
  const double h = 1e-3;
  auto scan = [&](const std::string& tag, auto&& residual, double lo, double hi,
                  std::vector<double> junctions) {
    double away = 0.0, near = 0.0;
    const std::size_t n = 40001;
    for (std::size_t i = 0; i < n; ++i) {
      const double y = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
      const double res = std::abs(residual(y));
      bool close = false;
      for (double j : junctions) close = close || std::abs(std::abs(y) - j) <= h;
      (close ? near : away) = std::max(close ? near : away, res);
    }
    // Junction points themselves.
    for (double j : junctions)
      for (double y : {j - h, j, j + h}) near = std::max(near, std::abs(residual(y)));
    out.checks.push_back({tag + "_away", away, ctx.tol("A12.away"), Comparison::LessEqual});
    out.checks.push_back({tag + "_near", near, ctx.tol("A12.near"), Comparison::LessEqual});
  };
  auto positivity = [&](const std::string& tag, auto&& u, double lo, double hi) {
    double mn = kInf;
    const std::size_t n = 100001;
    for (std::size_t i = 0; i < n; ++i)
      mn = std::min(mn, u(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1)));
    // -min u <= 0 means positive everywhere on the lattice.
    out.checks.push_back({tag + "_-min_u", -mn, 0.0, Comparison::Less});
  };

  const SelfSimilarProfile1D p1;
  scan("d1", [&](double y) { return profile_ode_residual(p1, y, h); }, -20.0, 20.0, {SelfSimilarProfile1D::M});
  positivity("d1", [&](double y) { return p1(y).u; }, -100.0, 100.0);
  for (int d : {2, 3, 5}) {
    const SelfSimilarProfileRadial pr(d);
    const std::string tag = "d" + std::to_string(d);
    scan(tag, [&](double r) { return profile_ode_residual(pr, r, h); }, 1e-3, 20.0, {pr.M() - 1.0, pr.M()});
    positivity(tag, [&](double r) { return pr(r).u; }, 0.0, 100.0);
  }
}

using Runner = void (*)(Context&, CriterionResult&);

const std::map<std::string, std::pair<std::string, Runner>>& registry() {
  static const std::map<std::string, std::pair<std::string, Runner>> r{
      {"A1", {"solver vs closed-form 1D self-similar solution", a1}},
      {"A2", {"1D L2 blow-up exponent", a2}},
      {"A3", {"radial blow-up exponents", a3}},
      {"A4", {"borderline field L^d norm constant in t", a4}},
      {"A5", {"Gaussian construction budgets", a5}},
      {"A6", {"concentration in |x| <= 0.5", a6}},
      {"A7", {"grad G scaling law", a7}},
      {"A8", {"mild vs IMEX", a8}},
      {"A9", {"energy envelopes", a9}},
      {"A10", {"scheme invariants, GNL identity, classification", a10}},
      {"A11", {"scaling criticality", a11}},
      {"A12", {"profile residuals and positivity", a12}},
  };
  return r;
}

}  // namespace

CriterionResult Suite::run(const std::string& id) {
  const auto& reg = registry();
  const auto it = reg.find(id);
  if (it == reg.end()) throw std::invalid_argument("verify: unknown criterion '" + id + "'");
  CriterionResult out;
  out.id = id;
  out.title = it->second.first;
  Context ctx{settings_, cache_->runs, cache_->gamma};
  const WarningCapture quiet;
  const auto start = std::chrono::steady_clock::now();
  try {
    it->second.second(ctx, out);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (settings_.enforce_runtime)
    out.checks.push_back({"runtime_s", out.seconds, settings_.runtime_limit.at(id), Comparison::LessEqual});
  return out;
}

std::vector<CriterionResult> Suite::run_all(const std::vector<std::string>& ids) {
  std::vector<CriterionResult> out;
  for (const auto& id : ids) out.push_back(run(id));
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream s;
  s << r.id << (r.id.size() < 3 ? "  " : " ") << (r.passed() ? "PASS" : "FAIL") << "  " << r.title << " |";
  for (const Check& c : r.checks) {
    const char* op = c.op == Comparison::LessEqual ? "<=" : c.op == Comparison::Less ? "<" : ">=";
    s << ' ' << c.name << '=' << fmt(c.measured) << ' ' << op << ' ' << fmt(c.bound) << (c.passed() ? "" : " (!)")
      << ';';
  }
  if (!r.error.empty()) s << " error: " << r.error << ';';
  if (!r.detail.empty()) s << " [" << r.detail << ']';
  char buf[32];
  std::snprintf(buf, sizeof buf, " %.2fs", r.seconds);
  s << buf;
  return s.str();
}

}  // namespace advdiff::verify
