#include "commands.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "advdiff/counterexamples.hpp"
#include "advdiff/diagnostics.hpp"
#include "advdiff/estimates.hpp"
#include "advdiff/kernels.hpp"
#include "advdiff/mixed_norm.hpp"
#include "advdiff/serialize.hpp"
#include "advdiff/solver.hpp"
#include "verify.hpp"

namespace advdiff::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr long kMaxNodes = 50'000'000;

json number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

std::string norm_label(double p) { return "L" + format_number(p); }

// Manifest skeleton shared by all subcommands.
json manifest(const std::string& command, const Config& cfg, const std::vector<std::string>& outputs,
              const std::vector<std::string>& warnings) {
  json j = {{"schema_version", kSchemaVersion},
            {"command", command},
            {"config", cfg.resolved()},
            {"config_hash", cfg.hash()},
            {"outputs", outputs},
            {"warnings", warnings}};
  return j;
}

void write_json(const fs::path& path, const json& j) { atomic_write(path, j.dump(2) + "\n"); }

std::vector<std::string> relay(const WarningCapture& capture) {
  for (const auto& m : capture.messages()) std::cerr << "warning: " << m << '\n';
  return capture.messages();
}

std::vector<double> output_times(double t0, double t_end, long count, bool geometric) {
  std::vector<double> t;
  for (long k = 1; k <= count; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(count);
    t.push_back(geometric ? 1.0 - (1.0 - t0) * std::pow((1.0 - t_end) / (1.0 - t0), f) : t0 + (t_end - t0) * f);
  }
  t.back() = t_end;
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(Config& cfg, const fs::path& out_dir) {
  const std::string family =
      cfg.get_choice("simulate.family", "selfsim1d", {"selfsim1d", "selfsim_radial", "gaussian", "zero", "compact"});
  const bool selfsim = family == "selfsim1d" || family == "selfsim_radial";
  const bool singular = selfsim || family == "gaussian";
  const long d = cfg.get_int("simulate.d", family == "selfsim_radial" ? 3 : 1, 1, 16);
  if ((family == "selfsim1d" || family == "compact") && d != 1) cfg.fail("simulate.d", family + " is one-dimensional");
  if (family == "selfsim_radial" && d < 2) cfg.fail("simulate.d", "selfsim_radial needs d >= 2");

  const double t0 = cfg.get_double("simulate.t0", 0.0);
  const double t_end = cfg.get_double("simulate.t_end", family == "gaussian" ? 0.999 : selfsim ? 0.9 : 1.0);
  if (!(t0 >= 0.0 && t0 < t_end)) cfg.fail("simulate.t_end", "need 0 <= t0 < t_end");
  if (singular && !(t_end < 1.0)) cfg.fail("simulate.t_end", "must be below the blow-up time 1");
  const long n_out = cfg.get_int("simulate.outputs", 10, 1, 1'000'000);
  const bool geometric =
      cfg.get_choice("simulate.output_spacing", singular ? "geometric" : "uniform", {"uniform", "geometric"}) ==
      "geometric";
  if (geometric && !(t_end < 1.0)) cfg.fail("simulate.output_spacing", "geometric spacing needs t_end < 1");
  const std::vector<double> norms = cfg.get_list("simulate.norms", "1,2,inf");
  for (double p : norms)
    if (!(p >= 1.0)) cfg.fail("simulate.norms", "norm exponents must be >= 1");
  const bool snapshot = cfg.get_bool("simulate.snapshot", false);
  const std::string boundary =
      cfg.get_choice("simulate.boundary", selfsim ? "closed_form" : "zero", {"closed_form", "zero"});
  if (boundary == "closed_form" && !selfsim) cfg.fail("simulate.boundary", "closed_form data needs a self-similar family");

  const long default_n = family == "gaussian" ? 16384 : family == "selfsim1d" ? 8192 : family == "selfsim_radial" ? 20001 : 4001;
  const double default_extent = family == "gaussian" ? 16.0 : selfsim ? 60.0 : 20.0;
  const long n = cfg.get_int("grid.n", default_n, 3, kMaxNodes);
  const double extent = cfg.get_double("grid.extent", default_extent);
  if (!(extent > 0.0)) cfg.fail("grid.extent", "must be positive");

  const double cfl = cfg.get_double("solver.cfl", 0.4);
  const double diffusion_ratio = cfg.get_double("solver.diffusion_ratio", 2.0);
  const AdvectionScheme scheme = cfg.get_choice("solver.advection", "vanleer", {"vanleer", "upwind1"}) == "upwind1"
                                     ? AdvectionScheme::Upwind1
                                     : AdvectionScheme::VanLeer;
  const double ceiling = cfg.get_double("solver.norm_ceiling", 1e6);

  const SpatialGrid grid = d == 1 ? make_grid(GridKind::Line, 1, extent, static_cast<std::size_t>(n))
                                  : make_grid(GridKind::Radial, static_cast<int>(d), extent, static_cast<std::size_t>(n));

  // Family parameters.
  std::optional<VelocityFieldSpec> b;
  std::optional<ScalarField> u0;
  std::vector<double> ball_radii;
  SelfSimilarProfile1D profile_1d;
  std::shared_ptr<SelfSimilarProfileRadial> profile_r;
  json family_info = json::object();

  if (family == "gaussian") {
    const std::string gamma_text = cfg.get_string("gaussian.gamma", "auto");
    const std::string beta_text = cfg.get_string("gaussian.beta", "auto");
    const double rc = cfg.get_double("gaussian.datum_cutoff_radius", 6.0);
    const double budget = cfg.get_double("gaussian.budget", 0.1);
    const bool truncate = cfg.get_bool("gaussian.truncate_drift", true);
    double beta = 0.0;
    if (beta_text == "auto") {
      const double tr = cfg.get_double("gaussian.target_r", 2.0);
      const double tq = cfg.get_double("gaussian.target_q", 2.0);
      if (!(2.0 * reciprocal(tr) + d * reciprocal(tq) > 1.0))
        cfg.fail("gaussian.target_q", "target (r, q) must satisfy 2/r + d/q > 1");
      beta = choose_beta(tr, tq, static_cast<int>(d));
    } else {
      const auto v = parse_number(beta_text);
      if (!v) cfg.fail("gaussian.beta", "expected 'auto' or a number");
      beta = *v;
    }
    double gamma = 0.0;
    if (gamma_text == "auto" || gamma_text == "from-config") {
      gamma = select_gamma(static_cast<int>(d), beta, rc, budget);
    } else {
      const auto v = parse_number(gamma_text);
      if (!v) cfg.fail("gaussian.gamma", "expected 'auto', 'from-config' or a number");
      gamma = *v;
    }
    cfg.echo("gaussian.beta", format_number(beta));
    cfg.echo("gaussian.gamma", format_number(gamma));
    cfg.echo("gaussian.selection", gamma_text == "auto" || gamma_text == "from-config" ? "auto" : "given");
    ball_radii.push_back(cfg.get_double("diagnostics.ball_radius", 0.5));
    GaussianPerturbationSpec spec = make_gaussian_spec(static_cast<int>(d), gamma, beta, rc);
    spec.truncate_drift = truncate;
    b = VelocityFieldSpec::gaussian(spec);
    u0 = gaussian_initial_datum(spec, grid, budget);
    family_info = json::parse(to_json(spec));
  } else if (family == "selfsim1d") {
    b = VelocityFieldSpec::selfsim_1d();
    u0 = ScalarField::sample(grid, [&](double x) { return selfsim_solution(profile_1d, t0, x); });
    family_info = json::parse(to_json(profile_1d));
  } else if (family == "selfsim_radial") {
    const double steep = cfg.get_double("selfsim.cutoff_steepness", 1.5);
    profile_r = std::make_shared<SelfSimilarProfileRadial>(static_cast<int>(d), steep);
    b = VelocityFieldSpec::selfsim_radial(static_cast<int>(d), steep);
    u0 = ScalarField::sample(grid, [&](double r) { return selfsim_solution(*profile_r, t0, r); });
    family_info = json::parse(to_json(*profile_r));
  } else {
    if (family == "compact") {
      const double strength = cfg.get_double("compact.strength", 1.0);
      const double radius = cfg.get_double("compact.radius", 1.0);
      b = VelocityFieldSpec::compact_bump(strength, radius);
    } else {
      b = VelocityFieldSpec::zero(static_cast<int>(d));
    }
    const double width = cfg.get_double("initial.width_time", 0.25);
    const double center = d == 1 ? cfg.get_double("initial.center", 0.0) : 0.0;
    if (!(width > 0.0)) cfg.fail("initial.width_time", "must be positive");
    const HeatKernelQuery q(width, static_cast<int>(d));
    u0 = ScalarField::sample(grid, [&](double x) { return heat_kernel(q, x - center); });
    family_info = json::parse(to_json(*b));
  }
  cfg.check_unused();

  SolveProblem pb{grid, *u0, *b};
  pb.t0 = t0;
  pb.t_end = t_end;
  pb.output_times = output_times(t0, t_end, n_out, geometric);
  pb.cfl_safety = cfl;
  pb.diffusion_ratio = diffusion_ratio;
  pb.advection = scheme;
  pb.norm_ps = norms;
  pb.norm_ceiling = ceiling;
  pb.ball_radii = ball_radii;
  pb.record_steps = false;
  if (boundary == "closed_form") {
    if (family == "selfsim1d") {
      pb.boundary.left = [&](double t) { return selfsim_solution(profile_1d, t, -extent); };
      pb.boundary.right = [&](double t) { return selfsim_solution(profile_1d, t, extent); };
    } else {
      pb.boundary.right = [&](double t) { return selfsim_solution(*profile_r, t, extent); };
    }
  }

  const WarningCapture capture;
  const SolveResult r = solve(pb);

  std::vector<std::string> header{"t"};
  for (double p : norms) header.push_back(norm_label(p));
  header.push_back("mass");
  for (double rad : ball_radii) header.push_back("mass_in_ball_" + format_number(rad));
  CsvTable table(header);
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    std::vector<double> row{r.times[k]};
    for (const auto& s : r.series) row.push_back(s.entries()[k].value);
    row.push_back(r.mass[k]);
    for (const auto& bm : r.ball_mass) row.push_back(bm[k]);
    table.add_row(row);
  }
  std::vector<std::string> outputs{"simulate.csv"};
  atomic_write(out_dir / "simulate.csv", table.str());
  if (snapshot) {
    CsvTable snap({d == 1 ? "x" : "r", "u"});
    for (std::size_t i = 0; i < grid.size(); ++i) snap.add_row({grid.node(i), r.final[i]});
    atomic_write(out_dir / "simulate_snapshot.csv", snap.str());
    outputs.push_back("simulate_snapshot.csv");
  }

  json j = manifest("simulate", cfg, outputs, relay(capture));
  j["family"] = family_info;
  j["result"] = {{"stop_reason", to_string(r.stop_reason)},
                 {"t_reached", r.t_reached},
                 {"steps", r.steps},
                 {"min_dt", r.min_dt},
                 {"max_dt", r.max_dt},
                 {"mass_defect", r.mass_defect},
                 {"l1_excess", r.l1_excess},
                 {"min_value_ratio", r.min_value_ratio},
                 {"boundary_ratio", r.boundary_ratio}};
  write_json(out_dir / "simulate.json", j);
  std::cout << "simulate: " << to_string(r.stop_reason) << " at t=" << format_number(r.t_reached) << " after "
            << r.steps << " steps\n";
  return r.stop_reason == StopReason::Instability ? kExitNumerical : kExitOk;
}

// ---------------------------------------------------------------------------
// profile

int cmd_profile(Config& cfg, const fs::path& out_dir) {
  const long d = cfg.get_int("profile.d", 1, 1, 16);
  const double lo = cfg.get_double("profile.min", d == 1 ? -10.0 : 0.0);
  const double hi = cfg.get_double("profile.max", 10.0);
  const long n = cfg.get_int("profile.n", 2001, 2, kMaxNodes);
  const double h = cfg.get_double("profile.h", 1e-3);
  const double steep = d >= 2 ? cfg.get_double("profile.cutoff_steepness", 1.5) : 1.5;
  if (!(hi > lo)) cfg.fail("profile.max", "must exceed profile.min");
  if (d >= 2 && lo < 0.0) cfg.fail("profile.min", "radial lattices start at r >= 0");
  if (!(h > 0.0)) cfg.fail("profile.h", "must be positive");
  cfg.check_unused();

  const WarningCapture capture;
  std::vector<double> junctions;
  json info;
  std::function<ProfilePoint(double)> eval;
  std::function<double(double)> residual;
  SelfSimilarProfile1D p1;
  std::shared_ptr<SelfSimilarProfileRadial> pr;
  json integrals = json::object();
  if (d == 1) {
    junctions = {SelfSimilarProfile1D::M};
    eval = [&](double y) { return p1(y); };
    residual = [&](double y) { return profile_ode_residual(p1, y, h); };
    info = json::parse(to_json(p1));
    const auto grid = make_grid(GridKind::Line, 1, 100.0, 200001);
    const double l2 = selfsim_lp_norm(p1, 0.0, 2.0, grid);
    integrals["int_u^2"] = l2 * l2;
  } else {
    pr = std::make_shared<SelfSimilarProfileRadial>(static_cast<int>(d), steep);
    junctions = {pr->M() - 1.0, pr->M()};
    eval = [&](double r) { return (*pr)(r); };
    residual = [&](double r) { return profile_ode_residual(*pr, r, h); };
    info = json::parse(to_json(*pr));
    // int_0^inf (u^{d/(d-1)} + u^2) r^{d-1} dr, from the L^p norms over R^d.
    const auto grid = make_grid(GridKind::Radial, static_cast<int>(d), 100.0, 100001);
    const double p = d / (d - 1.0);
    const double sigma = sphere_area(static_cast<int>(d));
    const double a = std::pow(selfsim_lp_norm(*pr, 0.0, p, grid), p) / sigma;
    const double b2 = std::pow(selfsim_lp_norm(*pr, 0.0, 2.0, grid), 2.0) / sigma;
    integrals["int_u^p_r^(d-1)"] = a;
    integrals["int_u^2_r^(d-1)"] = b2;
    integrals["sum"] = a + b2;
    integrals["p"] = p;
  }

  const bool radial = d >= 2;
  CsvTable table({radial ? "r" : "y", "U", "u", "du", "b", "residual"});
  double away = 0.0, near = 0.0;
  for (long i = 0; i < n; ++i) {
    const double y = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    const ProfilePoint pt = eval(y);
    // The residual stencil needs r > 2h on radial lattices.
    const bool has_res = !radial || y > 2.0 * h;
    const double res = has_res ? residual(y) : std::nan("");
    if (has_res) {
      bool close = false;
      for (double jn : junctions) close = close || std::abs(std::abs(y) - jn) <= h;
      (close ? near : away) = std::max(close ? near : away, std::abs(res));
    }
    table.add_text_row({format_number(y), format_number(pt.U), format_number(pt.u), format_number(pt.du),
                        format_number(pt.b), has_res ? format_number(res) : ""});
  }
  atomic_write(out_dir / "profile.csv", table.str());
  json j = manifest("profile", cfg, {"profile.csv"}, relay(capture));
  j["profile"] = info;
  j["junctions"] = junctions;
  j["max_residual_away"] = away;
  j["max_residual_near"] = near;
  j["norm_integrals"] = integrals;
  write_json(out_dir / "profile.json", j);
  std::cout << "profile: d=" << d << " max residual " << format_number(away) << " (away), "
            << format_number(near) << " (near junctions)\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// phase

int cmd_phase(Config& cfg, const fs::path& out_dir) {
  const long d = cfg.get_int("phase.d", 2, 1, 16);
  const std::vector<double> rs = cfg.get_list("phase.r", "2,3,4,inf");
  const std::vector<double> qs = cfg.get_list("phase.q", "2,3,4,inf");
  const double b_norm = cfg.get_double("phase.b_norm", 1.0);
  for (double v : rs)
    if (!(v >= 1.0)) cfg.fail("phase.r", "exponents must lie in [1, inf]");
  for (double v : qs)
    if (!(v >= 1.0)) cfg.fail("phase.q", "exponents must lie in [1, inf]");
  if (!(b_norm > 0.0)) cfg.fail("phase.b_norm", "must be positive");
  cfg.check_unused();

  const WarningCapture capture;
  auto flag = [](bool v) { return std::string(v ? "1" : "0"); };
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  CsvTable table({"r", "q", "d", "sum", "regime", "energy_estimate", "strict_duhamel", "borderline",
                  "blowup_possible", "gnl_alpha", "beta_lo", "beta_hi", "beta", "duhamel_beta",
                  "duhamel_clamped", "duhamel_n"});
  json rows = json::array();
  for (double r : rs) {
    for (double q : qs) {
      const RegimeClassification c = classify(ExponentTriple(r, q, static_cast<int>(d)));
      std::optional<DuhamelStep> step;
      if (c.strict_duhamel)
        step = duhamel_timestep_bound(b_norm, r, q, static_cast<int>(d));
      table.add_text_row(
          {format_number(r), format_number(q), std::to_string(d), format_number(c.sum), to_string(c.regime),
           flag(c.energy_estimate), flag(c.strict_duhamel), flag(c.borderline), flag(c.blowup_possible),
           opt(c.gnl_alpha), c.beta_interval ? format_number(c.beta_interval->first) : "",
           c.beta_interval ? format_number(c.beta_interval->second) : "", opt(c.beta_choice),
           step ? format_number(step->beta) : "", step ? flag(step->clamped) : "",
           step ? std::to_string(step->iterations) : ""});
      json row = json::parse(to_json(c));
      if (step) row["witnesses"]["duhamel"] = {{"beta", step->beta}, {"clamped", step->clamped},
                                               {"alpha", step->alpha}, {"iterations", step->iterations}};
      rows.push_back(row);
    }
  }
  atomic_write(out_dir / "phase.csv", table.str());
  json j = manifest("phase", cfg, {"phase.csv"}, relay(capture));
  j["rows"] = rows;
  write_json(out_dir / "phase.json", j);
  std::cout << "phase: " << rows.size() << " rows (d=" << d << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// duhamel

int cmd_duhamel(Config& cfg, const fs::path& out_dir) {
  const double r = cfg.get_double("duhamel.r", 4.0);
  const double q = cfg.get_double("duhamel.q", 4.0);
  const std::string drift = cfg.get_choice("duhamel.drift", "compact", {"compact", "zero"});
  const double strength = drift == "compact" ? cfg.get_double("compact.strength", 1.0) : 0.0;
  const double radius = drift == "compact" ? cfg.get_double("compact.radius", 1.0) : 1.0;
  const double t_end = cfg.get_double("duhamel.t_end", 0.05);
  const long nt = cfg.get_int("duhamel.nt", 26, 2, 100000);
  const long picard = cfg.get_int("duhamel.picard", 8, 1, 1000);
  const std::vector<double> ps = cfg.get_list("duhamel.norms", "1,2,inf");
  const long n = cfg.get_int("grid.n", 2001, 3, 200001);
  const double extent = cfg.get_double("grid.extent", 10.0);
  const double width = cfg.get_double("initial.width_time", 0.25);
  const double center = cfg.get_double("initial.center", 0.3);
  for (double p : ps)
    if (p != 1.0 && p != 2.0 && p != kInf) cfg.fail("duhamel.norms", "the mild solver tracks p in {1, 2, inf}");
  if (!(t_end > 0.0)) cfg.fail("duhamel.t_end", "must be positive");
  if (!(extent > 0.0)) cfg.fail("grid.extent", "must be positive");
  if (!(width > 0.0)) cfg.fail("initial.width_time", "must be positive");
  cfg.check_unused();

  const WarningCapture capture;
  const auto grid = make_grid(GridKind::Line, 1, extent, static_cast<std::size_t>(n));
  const auto b = drift == "compact" ? VelocityFieldSpec::compact_bump(strength, radius) : VelocityFieldSpec::zero(1);
  const HeatKernelQuery kq(width, 1);
  const auto u0 = ScalarField::sample(grid, [&](double x) { return heat_kernel(kq, x - center); });

  // ||b||_{L^r(0,1; L^q)}; stationary drifts make the time integral trivial.
  const double b_norm = mixed_norm(b, r, q, 0.0, 1.0, grid, 2);
  json step_json;
  if (b_norm > 0.0) {
    const DuhamelStep s = duhamel_timestep_bound(b_norm, r, q, 1);
    step_json = {{"beta", s.beta},     {"raw_beta", s.raw_beta}, {"clamped", s.clamped},
                 {"alpha", s.alpha},   {"r_star", number(s.r_star)}, {"q_star", number(s.q_star)},
                 {"kernel_constant", s.kernel_constant}, {"iterations", s.iterations},
                 {"overall_constant", s.overall_constant}};
  } else {
    // Zero drift: no step restriction, the heat semigroup alone.
    const ExponentTriple t(r, q, 1);
    if (!(t.scaling_sum() < 1.0)) throw std::invalid_argument("duhamel: requires 2/r + d/q < 1");
    step_json = {{"beta", 1.0}, {"raw_beta", "inf"}, {"clamped", true}, {"iterations", 1}, {"overall_constant", 4.0}};
  }

  const MildSolution m = mild_solve(u0, b, t_end, static_cast<std::size_t>(nt), static_cast<int>(picard));
  const double u0_l1 = lp_norm(u0, 1.0), u0_inf = lp_norm(u0, kInf);
  CsvTable table({"t", "L1", "L2", "Linf"});
  for (std::size_t k = 0; k < m.times.size(); ++k)
    table.add_row({m.times[k], m.series[0].entries()[k].value, m.series[1].entries()[k].value,
                   m.series[2].entries()[k].value});
  json ratios = json::object();
  for (double p : ps) {
    const std::size_t idx = p == 1.0 ? 0 : p == 2.0 ? 1 : 2;
    double sup = 0.0;
    for (const auto& e : m.series[idx].entries()) sup = std::max(sup, e.value);
    ratios[norm_label(p)] = sup / interpolation_bound(u0_l1, u0_inf, p);
  }
  double l1_max = 0.0;
  for (const auto& e : m.series[0].entries()) l1_max = std::max(l1_max, e.value);

  atomic_write(out_dir / "duhamel.csv", table.str());
  json j = manifest("duhamel", cfg, {"duhamel.csv"}, relay(capture));
  j["b_norm"] = b_norm;
  j["step"] = step_json;
  j["picard"] = {{"iterations", m.iterations}, {"last_difference", m.last_difference}};
  j["sup_norm_over_interpolation_bound"] = ratios;
  j["max_l1_over_initial"] = l1_max / u0_l1;
  write_json(out_dir / "duhamel.json", j);
  std::cout << "duhamel: beta=" << step_json["beta"].dump() << " picard iterations " << m.iterations << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(Config& cfg, const fs::path& out_dir) {
  verify::Settings s;
  std::vector<std::string> ids = verify::criterion_ids();
  if (auto only = cfg.take("verify.only")) {
    cfg.echo("verify.only", *only);
    ids.clear();
    std::string rest = *only;
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const std::size_t comma = std::min(rest.find(',', pos), rest.size());
      std::string id = rest.substr(pos, comma - pos);
      id.erase(std::remove_if(id.begin(), id.end(), [](unsigned char c) { return std::isspace(c) != 0; }), id.end());
      const auto& all = verify::criterion_ids();
      if (std::find(all.begin(), all.end(), id) == all.end()) cfg.fail("verify.only", "unknown criterion '" + id + "'");
      ids.push_back(id);
      pos = comma + 1;
    }
  }
  for (auto& [key, value] : s.tolerance) value = cfg.get_double("verify.tolerance." + key, value);
  s.enforce_runtime = cfg.get_bool("verify.runtime_checks", true);
  s.a1_n = static_cast<std::size_t>(cfg.get_int("verify.a1_n", static_cast<long>(s.a1_n), 3, kMaxNodes));
  s.a6_n = static_cast<std::size_t>(cfg.get_int("verify.a6_n", static_cast<long>(s.a6_n), 3, kMaxNodes));
  s.a6_extent = cfg.get_double("verify.a6_extent", s.a6_extent);
  s.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 42, 0, std::numeric_limits<long>::max()));
  cfg.check_unused();

  verify::Suite suite(s);
  json results = json::array();
  bool all = true;
  for (const auto& id : ids) {
    const verify::CriterionResult r = suite.run(id);
    std::cout << verify::format_line(r) << std::endl;
    all = all && r.passed();
    json checks = json::array();
    for (const auto& c : r.checks) {
      if (c.name == "runtime_s") continue;  // keeps the file byte-deterministic
      checks.push_back({{"name", c.name}, {"measured", number(c.measured)}, {"bound", number(c.bound)},
                        {"passed", c.passed()}});
    }
    results.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed()}, {"checks", checks},
                       {"detail", r.detail}, {"error", r.error}});
  }
  json j = manifest("verify", cfg, {}, {});
  j["criteria"] = results;
  j["passed"] = all;
  write_json(out_dir / "verify.json", j);
  std::cout << (all ? "verify: all criteria passed\n" : "verify: FAILURES\n");
  return all ? kExitOk : kExitAcceptance;
}

}  // namespace advdiff::cli
