// advdiff: experiment driver (simulate | profile | phase | duhamel | verify).

#include <CLI11.hpp>

#include <exception>
#include <map>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "commands.hpp"

namespace {

struct Flag {
  std::string name;  // CLI option, e.g. "--t-end"
  std::string key;   // config key it overrides
  std::string help;
};

}  // namespace

int main(int argc, char** argv) {
  using namespace advdiff::cli;

  CLI::App app{"Advection-diffusion blow-up and regularity experiments"};
  app.require_subcommand(1);
  std::string config_path, out_dir = "out";
  long seed = -1, threads = 1;
  std::vector<std::string> sets;
  app.add_option("--config", config_path, "Flat key = value config file");
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", seed, "PRNG seed (config key 'seed', default 42)");
  app.add_option("--threads", threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--set", sets, "Config override key=value (repeatable)");

  const std::vector<std::pair<std::string, std::vector<Flag>>> commands{
      {"simulate",
       {{"--family", "simulate.family", "selfsim1d | selfsim_radial | gaussian | zero | compact"},
        {"--d", "simulate.d", "dimension"},
        {"--t-end", "simulate.t_end", "final time"},
        {"--n", "grid.n", "grid nodes"},
        {"--L", "grid.extent", "grid half-width (line) or radius"},
        {"--norms", "simulate.norms", "tracked norms, e.g. 1,2,inf"},
        {"--gamma", "gaussian.gamma", "number, auto or from-config"},
        {"--beta", "gaussian.beta", "number or auto"},
        {"--advection", "solver.advection", "vanleer | upwind1"}}},
      {"profile", {{"--d", "profile.d", "dimension"}}},
      {"phase",
       {{"--d", "phase.d", "dimension"},
        {"--r", "phase.r", "time exponents, e.g. 2,3,4,inf"},
        {"--q", "phase.q", "space exponents"}}},
      {"duhamel",
       {{"--r", "duhamel.r", "time exponent"},
        {"--q", "duhamel.q", "space exponent"},
        {"--drift", "duhamel.drift", "compact | zero"}}},
      {"verify", {{"--only", "verify.only", "comma-separated criterion ids, e.g. A2"}}},
  };

  const std::map<std::string, std::string> about{
      {"simulate", "Run the FV-IMEX solver on a drift family and record norms"},
      {"profile", "Tabulate a self-similar profile and its ODE residual"},
      {"phase", "Classify exponent triples on an (r, q) grid"},
      {"duhamel", "Picard iteration for the mild formulation"},
      {"verify", "Run acceptance criteria A1-A12"},
  };

  // Flag values, keyed by config key per subcommand.
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, flags] : commands) {
    CLI::App* sub = app.add_subcommand(name, about.at(name));
    subs[name] = sub;
    for (const Flag& f : flags) sub->add_option(f.name, values[name][f.key], f.help + " (" + f.key + ")");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  std::string command;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) command = name;

  try {
    Config cfg = config_path.empty() ? Config{} : Config::load(config_path);
    for (const std::string& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
      cfg.set(s.substr(0, eq), s.substr(eq + 1), "--set " + s.substr(0, eq));
    }
    for (const auto& [key, value] : values[command])
      if (!value.empty()) cfg.set(key, value, "flag for " + key);
    if (seed >= 0) cfg.set("seed", std::to_string(seed), "--seed");
    cfg.get_int("seed", 42, 0, std::numeric_limits<long>::max());
    // Threads only schedule work; outputs do not depend on the count.
    (void)threads;

    if (command == "simulate") return cmd_simulate(cfg, out_dir);
    if (command == "profile") return cmd_profile(cfg, out_dir);
    if (command == "phase") return cmd_phase(cfg, out_dir);
    if (command == "duhamel") return cmd_duhamel(cfg, out_dir);
    return cmd_verify(cfg, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}
