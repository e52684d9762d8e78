// Command-line front end: evolve | sweep | trajectories | figure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gaussent/harness/commands.hpp"
#include "gaussent/harness/config.hpp"

using namespace gaussent::harness;

int main(int argc, char** argv) {
  CLI::App app{"Gaussian two-ensemble continuous-measurement simulator"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::string config_path;
  std::optional<std::string> out, engine, figure, records;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> ntraj;
  std::optional<int> samples;
  std::optional<unsigned> workers;
  std::optional<double> alpha0, eta, omega, kappa_sq, gamma_over_detuning, t_end, tau, dt;
  std::vector<std::string> sweeps;

  app.add_option("--config", config_path, "key=value config file with [run], [params], [sweep], [figure]");
  app.add_option("--out", out, "output CSV path, - for stdout");
  app.add_option("--engine", engine, "discrete, ode, doubling or analytic");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--ntraj", ntraj, "number of trajectories");
  app.add_option("--samples", samples, "output rows (evolve, sweep, figures)");
  app.add_option("--dt", dt, "ODE step (0 = default)");
  app.add_option("--workers", workers, "worker threads (0 = all cores)");
  app.add_option("--alpha0", alpha0, "resonant optical density");
  app.add_option("--eta", eta, "depumping rate");
  app.add_option("--omega", omega, "Larmor angular frequency");
  app.add_option("--kappa-sq", kappa_sq, "interaction rate kappa~^2 (defaults to eta*alpha0)");
  app.add_option("--gamma-over-detuning", gamma_over_detuning, "Gamma / Delta_det (default 0.005)");
  app.add_option("--t-end", t_end, "final time");
  app.add_option("--tau", tau, "light slice duration");
  app.add_option("--figure", figure, "fig2, fig3, fig4 or fig5");
  app.add_option("--records", records, "trajectories: also dump every slice to this CSV");
  app.add_option("--sweep", sweeps, "sweep axis NAME=VALUES, e.g. alpha0=log(10,1000,9)");

  auto* evolve_cmd = app.add_subcommand("evolve", "time series of one configuration");
  auto* sweep_cmd = app.add_subcommand("sweep", "grid over up to two parameters");
  auto* traj_cmd = app.add_subcommand("trajectories", "Monte Carlo ensemble of conditional means");
  auto* figure_cmd = app.add_subcommand("figure", "figure data sets");

  CLI11_PARSE(app, argc, argv);

  RunConfig config;
  try {
    if (!config_path.empty()) apply_config_file(config_path, config);
    if (*evolve_cmd) config.mode = Mode::Evolve;
    if (*sweep_cmd) config.mode = Mode::Sweep;
    if (*traj_cmd) config.mode = Mode::Trajectories;
    if (*figure_cmd) config.mode = Mode::Figure;
    if (app.get_subcommands().empty() && config_path.empty()) {
      std::cerr << app.help();
      return kExitUsage;
    }
    if (out) config.output_path = *out;
    if (engine) config.engine = parse_engine(*engine);
    if (figure) config.figure_id = *figure;
    if (records) config.record_path = *records;
    if (seed) config.seed = *seed;
    if (ntraj) config.n_traj = *ntraj;
    if (samples) config.samples = *samples;
    if (workers) config.workers = *workers;
    if (dt) config.dt = *dt;
    if (t_end) config.t_end = *t_end;
    const std::pair<const char*, const std::optional<double>*> params[] = {
        {"alpha0", &alpha0}, {"eta", &eta},   {"omega", &omega}, {"kappa_sq", &kappa_sq},
        {"gamma_over_detuning", &gamma_over_detuning}, {"tau", &tau}};
    for (const auto& [name, value] : params) {
      if (*value) config.params.set(name, **value);
    }
    for (const auto& s : sweeps) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("--sweep expects NAME=VALUES, got '" + s + "'");
      const std::string name = s.substr(0, eq);
      std::erase_if(config.sweep_axes, [&](const SweepAxis& a) { return a.name == name; });
      config.sweep_axes.push_back({name, parse_axis_values(s.substr(eq + 1))});
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return run(config, std::cerr);
}
