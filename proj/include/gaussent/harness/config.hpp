#pragma once

#include <cstdint>
#include <istream>
#include <utility>
#include <optional>
#include <string>
#include <vector>

#include "gaussent/harness/evolution.hpp"
#include "gaussent/params.hpp"

namespace gaussent::harness {

enum class Mode { Evolve, Sweep, Trajectories, Figure };

Mode parse_mode(const std::string& name);
std::string mode_name(Mode mode);

/// Physical inputs as given by the user; unset entries are derived in resolve().
struct ParamInputs {
  std::optional<double> alpha0;
  std::optional<double> eta;
  std::optional<double> kappa_sq;
  std::optional<double> omega;
  std::optional<double> gamma_over_detuning;
  std::optional<double> tau;

  /// Sets the named input ("alpha0", "eta", "kappa_sq", "omega",
  /// "gamma_over_detuning", "tau"). Throws std::invalid_argument for unknown names.
  void set(const std::string& name, double value);

  /// Fills the gaps: gamma_over_detuning defaults to 0.005, kappa_sq to
  /// eta*alpha0 (and alpha0 to kappa_sq/eta) when eta > 0, tau to
  /// recommended_tau(t_end). Validates the result.
  PhysicalParams resolve(double t_end) const;
};

struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

/// Parses "1, 2, 5", "lin(a, b, n)" or "log(a, b, n)".
std::vector<double> parse_axis_values(const std::string& text);

struct RunConfig {
  Mode mode = Mode::Evolve;
  ParamInputs params;
  double t_end = 1.0;
  std::string output_path = "-";
  std::vector<SweepAxis> sweep_axes;
  std::string figure_id;
  std::uint64_t seed = 1;
  std::int64_t n_traj = 1000;
  Engine engine = Engine::Ode;
  int samples = 0;  // output rows; 0 selects the command default
  double dt = 0.0;
  std::string record_path;  // trajectories: optional per-slice dump
  unsigned workers = 0;

  /// Mode-specific checks; throws std::invalid_argument.
  void validate() const;
};

/// Entries in file order.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Flat "key = value" text with [section] headers; '#' and ';' start
/// comments. Keys are stored as "section.key" ("key" before any section);
/// a repeated key throws std::invalid_argument.
ConfigEntries parse_config_text(std::istream& in);

/// Reads `path` and applies every entry to `config`. Recognized sections:
/// [run] mode, engine, t_end, out, seed, ntraj, samples, dt, records, workers;
/// [params] alpha0, eta, kappa_sq, omega, gamma_over_detuning, tau;
/// [sweep] one line per axis; [figure] id. Unknown keys throw std::invalid_argument.
void apply_config_file(const std::string& path, RunConfig& config);
void apply_config_entries(const ConfigEntries& entries, RunConfig& config);

/// Strict number parsing; throws std::invalid_argument naming `what`.
double parse_double(const std::string& text, const std::string& what);
std::int64_t parse_int(const std::string& text, const std::string& what);

}  // namespace gaussent::harness
