#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gaussent/params.hpp"
#include "gaussent/propagator.hpp"

namespace gaussent {

/// One stochastic realization. Entry k describes slice k, which starts at
/// times[k] = k tau: outcomes[k] is the detector read chi~ during the slice,
/// deviations[k] the innovation chi = chi~ - <x_L>, cond_means[k] the
/// conditional atomic means at the start of the slice (cond_means[0] = 0).
struct TrajectoryRecord {
  PhysicalParams params;
  std::uint64_t seed = 0;
  std::vector<double> times;
  std::vector<double> outcomes;
  std::vector<double> deviations;
  std::vector<Vec4> cond_means;
  std::vector<Mat4> covariances;  // atomic covariance at the start of each slice
  Vec4 final_mean = Vec4::Zero();
  Mat4 final_cov = Mat4::Identity();

  std::size_t slices() const { return outcomes.size(); }
  double end_time() const { return static_cast<double>(slices()) * params.tau; }
};

struct TrajectoryOptions {
  OutcomeModel outcome_model = OutcomeModel::HalfVariance;
  bool keep_covariances = false;
};

/// Number of slices covering [0, t_end]: ceil(t_end / tau) up to round-off.
std::size_t slice_count(const PhysicalParams& params, double t_end);

/// Steps the discrete propagator for slice_count(t_end) slices, drawing chi
/// from a counter-based stream keyed by `seed`.
TrajectoryRecord run_trajectory(const PhysicalParams& params, double t_end, std::uint64_t seed,
                                const TrajectoryOptions& options = {});

/// Same, replaying recorded innovations chi (one slice per entry).
TrajectoryRecord replay_deviations(const PhysicalParams& params, std::span<const double> deviations,
                                   const TrajectoryOptions& options = {});

/// Rebuilds the conditional means from actual detector reads chi~ by
/// subtracting the predicted <x_L> before each update.
TrajectoryRecord replay_readings(const PhysicalParams& params, std::span<const double> readings);

/// Deterministic per-slice data shared by every trajectory with the same
/// parameters: couplings, Kalman gains and conditioned covariances.
class CovarianceSchedule {
 public:
  struct Slice {
    SliceCoupling coupling;
    Vec4 gain = Vec4::Zero();
    double light_variance = 1.0;
    Mat4 cov_after = Mat4::Identity();
  };

  CovarianceSchedule(const PhysicalParams& params, std::size_t slices);

  const PhysicalParams& params() const { return params_; }
  std::span<const Slice> slices() const { return slices_; }
  std::size_t size() const { return slices_.size(); }

 private:
  PhysicalParams params_;
  std::vector<Slice> slices_;
};

struct EnsembleStats {
  double t = 0.0;
  std::size_t n_traj = 0;
  double var_of_mean_p = 0.0;   // sample variance of <p1(T)>
  double mean_of_mean_p = 0.0;
  double stderr = 0.0;          // standard error of var_of_mean_p, var sqrt(2/(n-1))
  double mean_stderr = 0.0;     // sqrt(var / n)
  double gamma33_sd = 1.0;      // Var(p1 + p2) of the conditional state at T
};

/// Monte Carlo over n_traj trajectories seeded stream_seed(master_seed, i).
/// Requires n_traj >= 2. `workers` = 0 uses all hardware threads; results do
/// not depend on the worker count.
EnsembleStats ensemble_variance(const PhysicalParams& params, double t_end, std::size_t n_traj,
                                std::uint64_t master_seed, const TrajectoryOptions& options = {},
                                unsigned workers = 0);

/// Same ensemble evaluated at several times (one pass up to the largest).
std::vector<EnsembleStats> ensemble_variance_at(const PhysicalParams& params, std::span<const double> times,
                                                std::size_t n_traj, std::uint64_t master_seed,
                                                const TrajectoryOptions& options = {}, unsigned workers = 0);

/// Final conditional means of every trajectory in the ensemble, in index order.
std::vector<Vec4> ensemble_final_means(const PhysicalParams& params, double t_end, std::size_t n_traj,
                                       std::uint64_t master_seed, const TrajectoryOptions& options = {},
                                       unsigned workers = 0);

/// Sample statistics of the final <p1> values of an ensemble (at least two).
EnsembleStats summarize_ensemble(std::span<const double> final_p1, double t, double gamma33_sd);

/// Conditional atomic covariance after slice_count(t_end) slices.
Mat4 conditional_covariance(const PhysicalParams& params, double t_end);

/// Recomputes <p1(T)> from the detector reads with the memory kernel
/// exp[-eta (T-t)/2 - int_t^T 2 kappa^2 gamma33_sd] kappa_tau gamma33_sd(t),
/// discretized on the slice grid. Without decay and rotation the kernel is
/// constant (equal weighting). Throws std::invalid_argument when `params`
/// differ from the record's or omega != 0.
double weighted_estimator(const TrajectoryRecord& record, const PhysicalParams& params);

/// Memory time 2/eta of early detection events. Throws std::domain_error for eta <= 0.
double memory_time(double eta);

}  // namespace gaussent
