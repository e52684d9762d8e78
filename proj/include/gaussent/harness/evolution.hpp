#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gaussent/params.hpp"
#include "gaussent/types.hpp"

namespace gaussent::harness {

enum class Engine { Discrete, Ode, Doubling, Analytic };

/// "discrete", "ode", "doubling" or "analytic"; throws std::invalid_argument otherwise.
Engine parse_engine(const std::string& name);
std::string engine_name(Engine engine);

/// One output sample of an evolution, in the frame co-rotating with the
/// Larmor precession (angle theta/2 per sample undone).
struct EvolutionRow {
  double t = 0.0;
  double kappa_sq_t = 0.0;  // kappa~^2 t
  double theta = 0.0;       // omega t
  double eta_t = 0.0;
  Mat4 cov = Mat4::Identity();     // (x1, p1, x2, p2)
  Mat4 cov_sd = Mat4::Identity();  // (x+, x-, p+, p-)
  double delta = 1.0;
  double geof = 0.0;
  double log_neg = 0.0;
  bool physical = true;
};

struct EvolutionOptions {
  Engine engine = Engine::Ode;
  int samples = 200;  // rows after t = 0
  double dt = 0.0;    // ODE step, 0 selects the default
};

/// Evolves the atomic covariance from the coherent state and samples it at
/// t_k = k t_end / samples (the discrete engine snaps to the slice grid).
///
/// The analytic engine uses the lossless closed form when eta = 0, the
/// no-rotation depumping form when omega = 0 and the reduced rotating pair
/// otherwise; photon absorption is ignored there. The doubling engine throws
/// std::invalid_argument with "constant coefficients required" for eta > 0.
std::vector<EvolutionRow> evolve(const PhysicalParams& params, double t_end, const EvolutionOptions& options);

/// Builds a row (sum/difference form, Delta, GEoF, log-neg, physicality)
/// from an atomic covariance that is already in the co-rotating frame.
EvolutionRow make_row(const PhysicalParams& params, double t, const Mat4& cov);

/// First time `measure` drops below `low` after having exceeded `high`,
/// linearly interpolated between samples. Empty if it never happens.
std::optional<double> entanglement_death(std::span<const double> t, std::span<const double> measure,
                                         double high = 1e-3, double low = 1e-6);

struct EvolutionSummary {
  double geof_max = 0.0;
  double t_geof_max = 0.0;
  double log_neg_max = 0.0;
  double t_log_neg_max = 0.0;
  std::optional<double> death_t;  // from GEoF
};

EvolutionSummary summarize(std::span<const EvolutionRow> rows);

}  // namespace gaussent::harness
