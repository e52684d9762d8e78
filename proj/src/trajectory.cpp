#include "gaussent/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gaussent/gaussian_core.hpp"
#include "gaussent/parallel.hpp"
#include "gaussent/rng.hpp"

namespace gaussent {

std::size_t slice_count(const PhysicalParams& params, double t_end) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("slice_count: t_end must be >= 0");
  return static_cast<std::size_t>(std::ceil(t_end / params.tau - 1e-9));
}

namespace {

TrajectoryRecord propagate(const PhysicalParams& params, std::size_t slices, OutcomeSource& outcomes,
                           const TrajectoryOptions& options) {
  params.validate();
  TrajectoryRecord rec;
  rec.params = params;
  rec.times.reserve(slices);
  rec.outcomes.reserve(slices);
  rec.deviations.reserve(slices);
  rec.cond_means.reserve(slices);
  if (options.keep_covariances) rec.covariances.reserve(slices);

  AtomicState state = AtomicState::coherent();
  for (std::size_t k = 0; k < slices; ++k) {
    rec.times.push_back(static_cast<double>(k) * params.tau);
    rec.cond_means.push_back(state.mean);
    if (options.keep_covariances) rec.covariances.push_back(state.cov);
    const StepResult r = step(state, params, outcomes);
    rec.outcomes.push_back(r.reading);
    rec.deviations.push_back(r.deviation);
    state = r.state;
  }
  rec.final_mean = state.mean;
  rec.final_cov = state.cov;
  return rec;
}

// Reading-driven source: converts chi~ to chi using the predicted <x_L>.
class ReadingOutcomes final : public OutcomeSource {
 public:
  explicit ReadingOutcomes(std::span<const double> readings) : readings_(readings) {}
  void predict(double mean_xl) { mean_xl_ = mean_xl; }
  double next(double) override {
    if (index_ >= readings_.size()) throw std::out_of_range("replay_readings: record exhausted");
    return readings_[index_++] - mean_xl_;
  }

 private:
  std::span<const double> readings_;
  std::size_t index_ = 0;
  double mean_xl_ = 0.0;
};

}  // namespace

TrajectoryRecord run_trajectory(const PhysicalParams& params, double t_end, std::uint64_t seed,
                                const TrajectoryOptions& options) {
  if (!(t_end > 0.0)) throw std::invalid_argument("run_trajectory: t_end must be > 0");
  GaussianOutcomes outcomes(seed, options.outcome_model);
  TrajectoryRecord rec = propagate(params, slice_count(params, t_end), outcomes, options);
  rec.seed = seed;
  return rec;
}

TrajectoryRecord replay_deviations(const PhysicalParams& params, std::span<const double> deviations,
                                   const TrajectoryOptions& options) {
  RecordedOutcomes outcomes(deviations);
  return propagate(params, deviations.size(), outcomes, options);
}

TrajectoryRecord replay_readings(const PhysicalParams& params, std::span<const double> readings) {
  params.validate();
  TrajectoryRecord rec;
  rec.params = params;
  ReadingOutcomes outcomes(readings);
  AtomicState state = AtomicState::coherent();
  for (std::size_t k = 0; k < readings.size(); ++k) {
    rec.times.push_back(static_cast<double>(k) * params.tau);
    rec.cond_means.push_back(state.mean);
    const SliceCoupling slice = SliceCoupling::at(params, state.elapsed_eta_t);
    outcomes.predict(propagate_mean(state.mean, slice, params.omega * params.tau)(kXL));
    const StepResult r = step(state, params, outcomes);
    rec.outcomes.push_back(r.reading);
    rec.deviations.push_back(r.deviation);
    state = r.state;
  }
  rec.final_mean = state.mean;
  rec.final_cov = state.cov;
  return rec;
}

CovarianceSchedule::CovarianceSchedule(const PhysicalParams& params, std::size_t slices) : params_(params) {
  params.validate();
  slices_.reserve(slices);
  NullOutcomes none;
  AtomicState state = AtomicState::coherent();
  for (std::size_t k = 0; k < slices; ++k) {
    Slice s;
    s.coupling = SliceCoupling::at(params, state.elapsed_eta_t);
    const StepResult r = step(state, params, none);
    s.gain = r.gain;
    s.light_variance = r.light_variance;
    s.cov_after = r.state.cov;
    slices_.push_back(s);
    state = r.state;
  }
}

namespace {

// Means-only replay of one trajectory on a precomputed schedule. The
// arithmetic mirrors step() so results agree bitwise with run_trajectory.
template <typename Visit>
void run_on_schedule(const CovarianceSchedule& schedule, std::uint64_t seed, OutcomeModel model, Visit&& visit) {
  GaussianOutcomes outcomes(seed, model);
  const double omega_tau = schedule.params().omega * schedule.params().tau;
  Vec4 mean = Vec4::Zero();
  std::size_t k = 0;
  for (const auto& s : schedule.slices()) {
    const Vec6 m = propagate_mean(mean, s.coupling, omega_tau);
    const double chi = outcomes.next(s.light_variance);
    mean = m.head<4>();
    mean += s.gain * chi;
    visit(++k, mean);
  }
}

}  // namespace

EnsembleStats summarize_ensemble(std::span<const double> values, double t, double gamma33_sd) {
  if (values.size() < 2) throw std::invalid_argument("summarize_ensemble: need at least 2 values");
  EnsembleStats st;
  st.t = t;
  st.n_traj = values.size();
  const double n = static_cast<double>(values.size());
  st.mean_of_mean_p = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - st.mean_of_mean_p) * (v - st.mean_of_mean_p);
  st.var_of_mean_p = ss / (n - 1.0);
  st.stderr = st.var_of_mean_p * std::sqrt(2.0 / (n - 1.0));
  st.mean_stderr = std::sqrt(st.var_of_mean_p / n);
  st.gamma33_sd = gamma33_sd;
  return st;
}

Mat4 conditional_covariance(const PhysicalParams& params, double t_end) {
  const CovarianceSchedule schedule(params, slice_count(params, t_end));
  return schedule.size() == 0 ? Mat4::Identity() : schedule.slices().back().cov_after;
}

std::vector<EnsembleStats> ensemble_variance_at(const PhysicalParams& params, std::span<const double> times,
                                                std::size_t n_traj, std::uint64_t master_seed,
                                                const TrajectoryOptions& options, unsigned workers) {
  if (n_traj < 2) throw std::invalid_argument("ensemble_variance: n_traj must be >= 2");
  if (times.empty()) return {};
  std::vector<std::size_t> checkpoints;
  checkpoints.reserve(times.size());
  for (double t : times) checkpoints.push_back(slice_count(params, t));
  const std::size_t last = *std::max_element(checkpoints.begin(), checkpoints.end());
  const CovarianceSchedule schedule(params, last);

  // values[c * n_traj + i]: <p1> of trajectory i at checkpoint c
  std::vector<double> values(checkpoints.size() * n_traj, 0.0);
  parallel_for(n_traj, workers, [&](std::size_t i) {
    run_on_schedule(schedule, stream_seed(master_seed, i), options.outcome_model,
                    [&](std::size_t k, const Vec4& mean) {
                      for (std::size_t c = 0; c < checkpoints.size(); ++c) {
                        if (checkpoints[c] == k) values[c * n_traj + i] = mean(kP1);
                      }
                    });
  });

  std::vector<EnsembleStats> out;
  out.reserve(checkpoints.size());
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    const std::size_t k = checkpoints[c];
    const double g33 = k == 0 ? 1.0 : to_sum_diff_basis(schedule.slices()[k - 1].cov_after)(kPPlus, kPPlus);
    out.push_back(summarize_ensemble(std::span<const double>(values).subspan(c * n_traj, n_traj),
                            static_cast<double>(k) * params.tau, g33));
  }
  return out;
}

EnsembleStats ensemble_variance(const PhysicalParams& params, double t_end, std::size_t n_traj,
                                std::uint64_t master_seed, const TrajectoryOptions& options, unsigned workers) {
  const double times[] = {t_end};
  return ensemble_variance_at(params, times, n_traj, master_seed, options, workers).front();
}

std::vector<Vec4> ensemble_final_means(const PhysicalParams& params, double t_end, std::size_t n_traj,
                                       std::uint64_t master_seed, const TrajectoryOptions& options,
                                       unsigned workers) {
  const CovarianceSchedule schedule(params, slice_count(params, t_end));
  std::vector<Vec4> finals(n_traj, Vec4::Zero());
  parallel_for(n_traj, workers, [&](std::size_t i) {
    run_on_schedule(schedule, stream_seed(master_seed, i), options.outcome_model,
                    [&](std::size_t, const Vec4& mean) { finals[i] = mean; });
  });
  return finals;
}

namespace {

bool same_params(const PhysicalParams& a, const PhysicalParams& b) {
  return a.alpha0 == b.alpha0 && a.eta == b.eta && a.kappa_sq_rate == b.kappa_sq_rate && a.omega == b.omega &&
         a.gamma_over_detuning == b.gamma_over_detuning && a.tau == b.tau;
}

}  // namespace

double weighted_estimator(const TrajectoryRecord& record, const PhysicalParams& params) {
  if (!same_params(record.params, params)) {
    throw std::invalid_argument("weighted_estimator: parameters do not match the record");
  }
  if (params.omega != 0.0) throw std::invalid_argument("weighted_estimator: kernel assumes omega = 0");
  const std::size_t n = record.slices();
  if (n == 0) return 0.0;

  const CovarianceSchedule schedule(params, n);
  const auto slices = schedule.slices();
  const double tau = params.tau;
  const double t_end = static_cast<double>(n) * tau;

  // Walk backwards accumulating int_{t_{k+1}}^T 2 kappa^2 gamma33 dt.
  double estimate = 0.0;
  double absorbed = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    const double g33 = to_sum_diff_basis(slices[k].cov_after)(kPPlus, kPPlus);
    const double kappa_tau = slices[k].coupling.kappa_tau;
    const double t_meas = static_cast<double>(k + 1) * tau;
    const double weight = std::exp(-0.5 * params.eta * (t_end - t_meas) - absorbed) * kappa_tau * g33;
    estimate += weight * record.outcomes[k];
    absorbed += 2.0 * kappa_tau * kappa_tau * g33;
  }
  return estimate;
}

double memory_time(double eta) {
  if (!(eta > 0.0)) throw std::domain_error("memory_time: eta must be > 0");
  return 2.0 / eta;
}

}  // namespace gaussent
