#include "gaussent/harness/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gaussent/analytic.hpp"
#include "gaussent/entanglement.hpp"
#include "gaussent/gaussian_core.hpp"
#include "gaussent/propagator.hpp"
#include "gaussent/riccati.hpp"
#include "gaussent/trajectory.hpp"

namespace gaussent::harness {

Engine parse_engine(const std::string& name) {
  if (name == "discrete") return Engine::Discrete;
  if (name == "ode") return Engine::Ode;
  if (name == "doubling") return Engine::Doubling;
  if (name == "analytic") return Engine::Analytic;
  throw std::invalid_argument("unknown engine '" + name + "' (expected discrete, ode, doubling or analytic)");
}

std::string engine_name(Engine engine) {
  switch (engine) {
    case Engine::Discrete: return "discrete";
    case Engine::Ode: return "ode";
    case Engine::Doubling: return "doubling";
    case Engine::Analytic: return "analytic";
  }
  return "?";
}

EvolutionRow make_row(const PhysicalParams& params, double t, const Mat4& cov) {
  EvolutionRow row;
  row.t = t;
  row.kappa_sq_t = params.kappa_sq_rate * t;
  row.theta = params.omega * t;
  row.eta_t = params.eta * t;
  row.cov = cov;
  row.cov_sd = to_sum_diff_basis(cov);
  row.physical = check_physical(cov);
  const EntanglementReport report = analyze_entanglement(cov);
  row.delta = report.epr_delta;
  row.geof = report.geof;
  row.log_neg = report.log_neg;
  return row;
}

namespace {

double sample_time(double t_end, int k, int samples) { return t_end * static_cast<double>(k) / samples; }

std::vector<EvolutionRow> run_discrete(const PhysicalParams& params, double t_end, int samples) {
  const std::size_t n = slice_count(params, t_end);
  std::vector<EvolutionRow> rows;
  rows.push_back(make_row(params, 0.0, Mat4::Identity()));
  NullOutcomes none;
  AtomicState state = AtomicState::coherent();
  std::size_t done = 0;
  for (int k = 1; k <= samples; ++k) {
    const auto target = static_cast<std::size_t>(std::llround(static_cast<double>(n) * k / samples));
    if (target <= done) continue;
    for (; done < target; ++done) state = step(state, params, none).state;
    const double t = static_cast<double>(done) * params.tau;
    rows.push_back(make_row(params, t, to_corotating_frame(state.cov, params.omega * t)));
  }
  return rows;
}

std::vector<EvolutionRow> run_ode(const PhysicalParams& params, double t_end, int samples, double dt) {
  const AtomicRiccati problem = lossy_problem(params);
  if (dt <= 0.0) dt = default_dt(problem, t_end);
  // Steps per sample chosen so the RK4 grid hits every sample time.
  const double per_sample = std::max(1.0, std::ceil(t_end / (samples * dt) - 1e-9));
  const auto series = integrate_ode(problem, Mat4::Identity(), t_end, t_end / (samples * per_sample),
                                    static_cast<int>(per_sample));
  std::vector<EvolutionRow> rows;
  rows.reserve(series.size());
  for (const auto& s : series) rows.push_back(make_row(params, s.t, to_corotating_frame(s.gamma, params.omega * s.t)));
  return rows;
}

std::vector<EvolutionRow> run_doubling(const PhysicalParams& params, double t_end, int samples) {
  if (params.eta > 0.0) throw std::invalid_argument("doubling engine: constant coefficients required (eta must be 0)");
  const AtomicRiccati problem = lossy_problem(params);
  std::vector<EvolutionRow> rows;
  for (int k = 0; k <= samples; ++k) {
    const double t = sample_time(t_end, k, samples);
    const Mat4 g = solve_doubling(problem, Mat4::Identity(), t);
    rows.push_back(make_row(params, t, to_corotating_frame(g, params.omega * t)));
  }
  return rows;
}

Mat4 analytic_sd(const PhysicalParams& params, double t) {
  Vec4 d;
  if (params.eta == 0.0) {
    const auto [ap, am] = analytic::a_plus_minus(params.kappa_sq_rate * t, params.omega * t);
    d << ap, 1.0 / am, 1.0 / ap, am;
  } else if (params.omega == 0.0) {
    const auto g = analytic::lossy_norot_covariances(params.alpha0, params.eta * t);
    d << g.g11, g.g22, g.g33, g.g44;
  } else {
    const auto [g11, g22] = analytic::rotated_lossy_covariances(params.alpha0, params.eta * t);
    d << g11, g22, g22, g11;
  }
  return d.asDiagonal();
}

std::vector<EvolutionRow> run_analytic(const PhysicalParams& params, double t_end, int samples) {
  std::vector<EvolutionRow> rows;
  for (int k = 0; k <= samples; ++k) {
    const double t = sample_time(t_end, k, samples);
    rows.push_back(make_row(params, t, from_sum_diff_basis(analytic_sd(params, t))));
  }
  return rows;
}

}  // namespace

std::vector<EvolutionRow> evolve(const PhysicalParams& params, double t_end, const EvolutionOptions& options) {
  params.validate();
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("evolve: t_end must be > 0");
  if (options.samples < 1) throw std::invalid_argument("evolve: samples must be >= 1");
  switch (options.engine) {
    case Engine::Discrete: return run_discrete(params, t_end, options.samples);
    case Engine::Ode: return run_ode(params, t_end, options.samples, options.dt);
    case Engine::Doubling: return run_doubling(params, t_end, options.samples);
    case Engine::Analytic: return run_analytic(params, t_end, options.samples);
  }
  throw std::invalid_argument("evolve: unknown engine");
}

std::optional<double> entanglement_death(std::span<const double> t, std::span<const double> measure, double high,
                                         double low) {
  if (t.size() != measure.size()) throw std::invalid_argument("entanglement_death: length mismatch");
  bool armed = false;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (measure[k] > high) armed = true;
    if (armed && measure[k] < low) {
      if (k == 0) return t[0];
      const double m0 = measure[k - 1], m1 = measure[k];
      const double w = (m0 - low) / (m0 - m1);
      return t[k - 1] + w * (t[k] - t[k - 1]);
    }
  }
  return std::nullopt;
}

EvolutionSummary summarize(std::span<const EvolutionRow> rows) {
  EvolutionSummary s;
  std::vector<double> t, g;
  t.reserve(rows.size());
  g.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.geof > s.geof_max) {
      s.geof_max = r.geof;
      s.t_geof_max = r.t;
    }
    if (r.log_neg > s.log_neg_max) {
      s.log_neg_max = r.log_neg;
      s.t_log_neg_max = r.t;
    }
    t.push_back(r.t);
    g.push_back(r.geof);
  }
  s.death_t = entanglement_death(t, g);
  return s;
}

}  // namespace gaussent::harness
