#include "gaussent/harness/figures.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gaussent/analytic.hpp"
#include "gaussent/entanglement.hpp"
#include "gaussent/gaussian_core.hpp"
#include "gaussent/harness/csv.hpp"
#include "gaussent/parallel.hpp"
#include "gaussent/riccati.hpp"

namespace gaussent::harness {

std::vector<double> default_alpha0_scan() {
  return {2, 3, 5, 7, 10, 15, 20, 30, 50, 70, 100, 150, 200, 300, 500, 700, 1000};
}

double rotation_for(double eta, double revolutions) { return 2.0 * std::numbers::pi * revolutions * eta; }

namespace {

constexpr double kPi = std::numbers::pi;

const SweepAxis* find_axis(const RunConfig& config, const std::string& name) {
  for (const auto& a : config.sweep_axes) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

std::vector<double> axis_or(const RunConfig& config, const std::string& name, std::vector<double> fallback) {
  const SweepAxis* a = find_axis(config, name);
  return a ? a->values : fallback;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int k = 0; k < n; ++k) v.push_back(a + (b - a) * k / (n - 1));
  return v;
}

// Lossless GEoF over (kappa_t, theta) from the doubling solution with kappa~^2 = 1.
CommandOutput fig2(const RunConfig& config) {
  const auto kappas = axis_or(config, "kappa_t", linspace(0.0, 10.0, 41));
  const auto thetas = axis_or(config, "theta", linspace(0.0, 4.0 * kPi, 49));
  struct Cell {
    double delta = 1, geof = 0, logneg = 0, geof_analytic = 0;
    bool physical = true;
  };
  std::vector<Cell> cells(kappas.size() * thetas.size());
  parallel_for(cells.size(), config.workers, [&](std::size_t c) {
    const double k2 = kappas[c / thetas.size()] * kappas[c / thetas.size()];
    const double theta = thetas[c % thetas.size()];
    Cell& cell = cells[c];
    Mat4 g = Mat4::Identity();
    if (k2 > 0.0) {
      g = solve_doubling(lossless_problem(1.0, theta / k2), Mat4::Identity(), k2);
      g = to_corotating_frame(g, theta);
    }
    cell.physical = check_physical(g);
    const EntanglementReport rep = analyze_entanglement(g);
    cell.delta = rep.epr_delta;
    cell.geof = rep.geof;
    cell.logneg = rep.log_neg;
    cell.geof_analytic = geof(std::sqrt(analytic::delta_sq(k2, theta)));
  });
  CommandOutput out;
  std::ostringstream csv;
  CsvWriter w(csv);
  w.header({"kappa_t", "kappa_sq_t", "theta", "delta", "geof", "logneg", "geof_analytic"});
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const double kt = kappas[c / thetas.size()];
    const auto& cell = cells[c];
    out.physical = out.physical && cell.physical;
    w.row({kt, kt * kt, thetas[c % thetas.size()], cell.delta, cell.geof, cell.logneg, cell.geof_analytic});
  }
  out.csv = csv.str();
  return out;
}

PhysicalParams lossy_params(const RunConfig& config, double alpha0, double omega) {
  ParamInputs in;
  in.alpha0 = alpha0;
  in.eta = config.params.eta.value_or(1.0);
  in.gamma_over_detuning = config.params.gamma_over_detuning;
  in.omega = omega;
  return in.resolve(1.0 / *in.eta);
}

EvolutionOptions ode_options(const RunConfig& config, int default_samples) {
  EvolutionOptions o;
  o.engine = Engine::Ode;
  o.samples = config.samples > 0 ? config.samples : default_samples;
  o.dt = config.dt;
  return o;
}

// GEoF and log-neg against time at alpha0 = 100 with absorption.
CommandOutput fig3(const RunConfig& config) {
  const double alpha0 = config.params.alpha0.value_or(100.0);
  const double eta = config.params.eta.value_or(1.0);
  const double t_end = 1.5 / eta;
  const EvolutionOptions opt = ode_options(config, 600);
  const PhysicalParams still = lossy_params(config, alpha0, 0.0);
  const PhysicalParams spun = lossy_params(config, alpha0, 100.0 * 2.0 * kPi / t_end);
  std::vector<EvolutionRow> a, b;
  parallel_for(2, config.workers, [&](std::size_t i) {
    if (i == 0) a = evolve(still, t_end, opt);
    else b = evolve(spun, t_end, opt);
  });
  CommandOutput out;
  std::ostringstream csv;
  CsvWriter w(csv);
  w.header({"t", "eta_t", "kappa_sq_t", "geof", "logneg", "geof_analytic", "geof_rotated", "logneg_rotated"});
  for (std::size_t k = 0; k < a.size(); ++k) {
    out.physical = out.physical && a[k].physical && b[k].physical;
    const double g_an = geof(analytic::lossy_norot_delta(alpha0, a[k].eta_t));
    w.row({a[k].t, a[k].eta_t, a[k].kappa_sq_t, a[k].geof, a[k].log_neg, g_an, b[k].geof, b[k].log_neg});
  }
  out.csv = csv.str();
  return out;
}

struct AlphaPoint {
  double alpha0 = 0;
  double epsilon = 0;
  EvolutionSummary still, spun;
  double geof_max_analytic = 0;
  std::optional<double> death_analytic;
  bool still_physical = true;
  bool spun_physical = true;
};

// Numerical runs to eta t = 3 with and without rotation (100 turns per 1/eta).
std::vector<AlphaPoint> alpha_scan(const RunConfig& config) {
  const auto alphas = axis_or(config, "alpha0", default_alpha0_scan());
  const double eta = config.params.eta.value_or(1.0);
  const double t_end = 3.0 / eta;
  const EvolutionOptions opt = ode_options(config, 3000);
  std::vector<AlphaPoint> points(alphas.size());
  parallel_for(2 * alphas.size(), config.workers, [&](std::size_t job) {
    AlphaPoint& pt = points[job / 2];
    const double alpha0 = alphas[job / 2];
    const bool rotate = job % 2 == 1;
    const PhysicalParams p = lossy_params(config, alpha0, rotate ? rotation_for(eta, 100.0) : 0.0);
    const auto rows = evolve(p, t_end, opt);
    bool physical = true;
    for (const auto& r : rows) physical = physical && r.physical;
    if (rotate) {
      pt.spun = summarize(rows);
      pt.spun_physical = physical;
    } else {
      pt.alpha0 = alpha0;
      pt.epsilon = p.epsilon();
      pt.still = summarize(rows);
      try {
        pt.geof_max_analytic = geof(analytic::lossy_norot_delta(alpha0, eta * analytic::t_crit(alpha0, eta)));
        pt.death_analytic = analytic::death_eta_t(alpha0);
      } catch (const std::domain_error&) {
        // no entangled interval
      }
      pt.still_physical = physical;
    }
  });
  return points;
}

std::optional<double> times(const std::optional<double>& t, double eta) {
  if (!t) return std::nullopt;
  return *t * eta;
}

CommandOutput fig4(const RunConfig& config) {
  const auto points = alpha_scan(config);
  CommandOutput out;
  std::ostringstream csv;
  CsvWriter w(csv);
  w.header({"alpha0", "epsilon", "geof_max", "logneg_max", "geof_max_rotated", "logneg_max_rotated",
            "geof_max_analytic"});
  for (const auto& p : points) {
    out.physical = out.physical && p.still_physical && p.spun_physical;
    w.row({p.alpha0, p.epsilon, p.still.geof_max, p.still.log_neg_max, p.spun.geof_max, p.spun.log_neg_max,
           p.geof_max_analytic});
  }
  out.csv = csv.str();
  return out;
}

CommandOutput fig5(const RunConfig& config) {
  const auto points = alpha_scan(config);
  const double eta = config.params.eta.value_or(1.0);
  CommandOutput out;
  std::ostringstream csv;
  CsvWriter w(csv);
  w.header({"alpha0", "epsilon", "death_eta_t", "death_eta_t_rotated", "death_eta_t_analytic"});
  for (const auto& p : points) {
    out.physical = out.physical && p.still_physical && p.spun_physical;
    w.row({p.alpha0, p.epsilon, times(p.still.death_t, eta), times(p.spun.death_t, eta), p.death_analytic});
  }
  out.csv = csv.str();
  return out;
}

}  // namespace

CommandOutput cmd_figure(const RunConfig& config) {
  if (config.figure_id == "fig2") return fig2(config);
  if (config.figure_id == "fig3") return fig3(config);
  if (config.figure_id == "fig4") return fig4(config);
  if (config.figure_id == "fig5") return fig5(config);
  throw std::invalid_argument("unknown figure '" + config.figure_id + "' (expected fig2, fig3, fig4 or fig5)");
}

}  // namespace gaussent::harness
