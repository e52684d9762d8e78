#include "gaussent/harness/commands.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gaussent/entanglement.hpp"
#include "gaussent/gaussian_core.hpp"
#include "gaussent/harness/csv.hpp"
#include "gaussent/harness/figures.hpp"
#include "gaussent/parallel.hpp"
#include "gaussent/rng.hpp"
#include "gaussent/trajectory.hpp"

namespace gaussent::harness {

namespace {

EvolutionOptions evolution_options(const RunConfig& config) {
  EvolutionOptions o;
  o.engine = config.engine;
  o.samples = config.samples > 0 ? config.samples : 200;
  o.dt = config.dt;
  return o;
}

std::optional<double> scaled(const std::optional<double>& v, double factor) {
  if (!v) return std::nullopt;
  return *v * factor;
}

}  // namespace

CommandOutput cmd_evolve(const RunConfig& config) {
  config.validate();
  const PhysicalParams params = config.params.resolve(config.t_end);
  const auto rows = evolve(params, config.t_end, evolution_options(config));

  CommandOutput out;
  std::ostringstream csv;
  CsvWriter w(csv);
  w.header({"t", "kappa_sq_t", "theta", "eta_t", "g11sd", "g22sd", "g33sd", "g44sd", "delta", "geof", "logneg",
            "geof_applicable"});
  for (const auto& r : rows) {
    out.physical = out.physical && r.physical;
    const bool applicable = sample_asymmetry(r.cov) <= kGeofSymmetryTolerance;
    w.row({r.t, r.kappa_sq_t, r.theta, r.eta_t, r.cov_sd(0, 0), r.cov_sd(1, 1), r.cov_sd(2, 2), r.cov_sd(3, 3),
           r.delta, r.geof, r.log_neg, std::int64_t{applicable ? 1 : 0}});
  }
  out.csv = csv.str();
  return out;
}

CommandOutput cmd_sweep(const RunConfig& config) {
  config.validate();
  const auto& axes = config.sweep_axes;
  std::size_t cells = 1;
  for (const auto& a : axes) cells *= a.values.size();

  struct Cell {
    std::vector<double> coords;
    PhysicalParams params;
    double t_end = 0.0;
    EvolutionRow last;
    EvolutionSummary summary;
    bool physical = true;
  };
  std::vector<Cell> results(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t rem = c;
    std::vector<double> coords(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
      coords[a] = axes[a].values[rem % axes[a].values.size()];
      rem /= axes[a].values.size();
    }
    results[c].coords = std::move(coords);
  }

  const EvolutionOptions options = evolution_options(config);
  parallel_for(cells, config.workers, [&](std::size_t c) {
    Cell& cell = results[c];
    ParamInputs inputs = config.params;
    cell.t_end = config.t_end;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      if (axes[a].name == "t_end") cell.t_end = cell.coords[a];
      else inputs.set(axes[a].name, cell.coords[a]);
    }
    cell.params = inputs.resolve(cell.t_end);
    const auto rows = evolve(cell.params, cell.t_end, options);
    for (const auto& r : rows) cell.physical = cell.physical && r.physical;
    cell.last = rows.back();
    cell.summary = summarize(rows);
  });

  CommandOutput out;
  std::ostringstream csv;
  CsvWriter w(csv);
  std::vector<std::string> header;
  for (const auto& a : axes) header.push_back("sweep_" + a.name);
  for (const char* name : {"alpha0", "eta", "kappa_sq", "omega", "t_end", "delta_end", "geof_end", "logneg_end",
                           "geof_max", "t_geof_max", "logneg_max", "t_logneg_max", "death_t", "death_eta_t"}) {
    header.emplace_back(name);
  }
  w.header(header);
  for (const auto& cell : results) {
    out.physical = out.physical && cell.physical;
    std::vector<CsvField> row(cell.coords.begin(), cell.coords.end());
    const auto& p = cell.params;
    const auto& s = cell.summary;
    for (CsvField f : std::vector<CsvField>{p.alpha0, p.eta, p.kappa_sq_rate, p.omega, cell.t_end, cell.last.delta,
                                            cell.last.geof, cell.last.log_neg, s.geof_max, s.t_geof_max,
                                            s.log_neg_max, s.t_log_neg_max, s.death_t, scaled(s.death_t, p.eta)}) {
      row.push_back(std::move(f));
    }
    w.row(row);
  }
  out.csv = csv.str();
  return out;
}

CommandOutput cmd_trajectories(const RunConfig& config) {
  config.validate();
  const PhysicalParams params = config.params.resolve(config.t_end);
  const auto n = static_cast<std::size_t>(config.n_traj);
  const auto finals = ensemble_final_means(params, config.t_end, n, config.seed, {}, config.workers);
  const double t = static_cast<double>(slice_count(params, config.t_end)) * params.tau;

  CommandOutput out;
  std::ostringstream csv;
  CsvWriter w(csv);
  w.header({"kind", "index", "seed", "t", "x1", "p1", "x2", "p2", "var_p", "mean_p", "stderr_var", "gamma33_sd"});
  const std::optional<double> none;
  std::vector<double> p1;
  p1.reserve(n);
  Vec4 sum = Vec4::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec4& m = finals[i];
    p1.push_back(m(kP1));
    sum += m;
    w.row({std::string("trajectory"), std::int64_t(i), stream_seed(config.seed, i), t, m(kX1), m(kP1), m(kX2), m(kP2),
           none, none, none, none});
  }
  const Mat4 cov = conditional_covariance(params, config.t_end);
  const double g33 = to_sum_diff_basis(cov)(kPPlus, kPPlus);
  out.physical = check_physical(cov);
  const Vec4 avg = sum / static_cast<double>(n);
  if (n >= 2) {
    const EnsembleStats st = summarize_ensemble(p1, t, g33);
    w.row({std::string("summary"), none, config.seed, t, avg(kX1), avg(kP1), avg(kX2), avg(kP2), st.var_of_mean_p,
           st.mean_of_mean_p, st.stderr, g33});
  } else {
    w.row({std::string("summary"), none, config.seed, t, avg(kX1), avg(kP1), avg(kX2), avg(kP2), none, avg(kP1), none,
           g33});
  }
  out.csv = csv.str();

  if (!config.record_path.empty()) {
    std::ostringstream rec;
    CsvWriter r(rec);
    r.header({"index", "slice", "t", "reading", "deviation", "x1", "p1", "x2", "p2"});
    for (std::size_t i = 0; i < n; ++i) {
      const TrajectoryRecord record = run_trajectory(params, config.t_end, stream_seed(config.seed, i));
      for (std::size_t k = 0; k < record.slices(); ++k) {
        const Vec4& m = record.cond_means[k];
        r.row({std::int64_t(i), std::int64_t(k), record.times[k], record.outcomes[k], record.deviations[k], m(kX1),
               m(kP1), m(kX2), m(kP2)});
      }
      const Vec4& m = record.final_mean;
      r.row({std::int64_t(i), std::int64_t(record.slices()), record.end_time(), none, none, m(kX1), m(kP1), m(kX2),
             m(kP2)});
    }
    out.records_csv = rec.str();
  }
  return out;
}

int run(const RunConfig& config, std::ostream& err) {
  CommandOutput out;
  try {
    switch (config.mode) {
      case Mode::Evolve: out = cmd_evolve(config); break;
      case Mode::Sweep: out = cmd_sweep(config); break;
      case Mode::Trajectories: out = cmd_trajectories(config); break;
      case Mode::Figure: out = cmd_figure(config); break;
    }
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  try {
    write_output(config.output_path, out.csv);
    if (!config.record_path.empty() && config.mode == Mode::Trajectories) {
      write_output(config.record_path, out.records_csv);
    }
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  if (!out.physical) {
    err << "error: a covariance matrix failed the physicality check\n";
    return kExitUnphysical;
  }
  return kExitOk;
}

}  // namespace gaussent::harness
