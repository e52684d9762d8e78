#include "gaussent/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace gaussent::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

const std::vector<std::string>& param_names() {
  static const std::vector<std::string> names = {"alpha0", "eta", "kappa_sq", "omega", "gamma_over_detuning", "tau"};
  return names;
}

}  // namespace

Mode parse_mode(const std::string& name) {
  if (name == "evolve") return Mode::Evolve;
  if (name == "sweep") return Mode::Sweep;
  if (name == "trajectories") return Mode::Trajectories;
  if (name == "figure") return Mode::Figure;
  throw std::invalid_argument("unknown mode '" + name + "'");
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::Evolve: return "evolve";
    case Mode::Sweep: return "sweep";
    case Mode::Trajectories: return "trajectories";
    case Mode::Figure: return "figure";
  }
  return "?";
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw std::invalid_argument(what + ": expected a finite number, got '" + text + "'");
  }
  return v;
}

std::int64_t parse_int(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::int64_t v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw std::invalid_argument(what + ": expected an integer, got '" + text + "'");
  }
  return v;
}

void ParamInputs::set(const std::string& name, double value) {
  if (name == "alpha0") alpha0 = value;
  else if (name == "eta") eta = value;
  else if (name == "kappa_sq") kappa_sq = value;
  else if (name == "omega") omega = value;
  else if (name == "gamma_over_detuning") gamma_over_detuning = value;
  else if (name == "tau") tau = value;
  else throw std::invalid_argument("unknown parameter '" + name + "'");
}

PhysicalParams ParamInputs::resolve(double t_end) const {
  PhysicalParams p;
  p.eta = eta.value_or(0.0);
  p.omega = omega.value_or(0.0);
  p.gamma_over_detuning = gamma_over_detuning.value_or(kDefaultGammaOverDetuning);
  p.alpha0 = alpha0.value_or(0.0);
  if (kappa_sq) {
    p.kappa_sq_rate = *kappa_sq;
    if (!alpha0 && p.eta > 0.0) p.alpha0 = p.kappa_sq_rate / p.eta;
  } else if (p.eta > 0.0) {
    p.kappa_sq_rate = p.eta * p.alpha0;
  }
  p.tau = tau ? *tau : recommended_tau(p, t_end);
  p.validate();
  return p;
}

std::vector<double> parse_axis_values(const std::string& text) {
  const std::string t = trim(text);
  const bool lin = t.rfind("lin(", 0) == 0;
  const bool log = t.rfind("log(", 0) == 0;
  if (lin || log) {
    if (t.back() != ')') throw std::invalid_argument("sweep axis: missing ')' in '" + text + "'");
    const auto parts = split(t.substr(4, t.size() - 5), ',');
    if (parts.size() != 3) throw std::invalid_argument("sweep axis: expected (start, stop, count) in '" + text + "'");
    const double a = parse_double(parts[0], "sweep start");
    const double b = parse_double(parts[1], "sweep stop");
    const std::int64_t n = parse_int(parts[2], "sweep count");
    if (n < 1) throw std::invalid_argument("sweep axis: count must be >= 1");
    if (log && !(a > 0.0 && b > 0.0)) throw std::invalid_argument("sweep axis: log range needs positive bounds");
    std::vector<double> v;
    for (std::int64_t k = 0; k < n; ++k) {
      const double f = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
      v.push_back(lin ? a + (b - a) * f : a * std::pow(b / a, f));
    }
    return v;
  }
  std::vector<double> v;
  for (const auto& item : split(t, ',')) v.push_back(parse_double(item, "sweep value"));
  return v;
}

void RunConfig::validate() const {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be > 0");
  if (samples < 0) throw std::invalid_argument("samples must be >= 0");
  if (dt < 0.0) throw std::invalid_argument("dt must be >= 0");
  if (mode == Mode::Sweep) {
    if (sweep_axes.size() > 2) throw std::invalid_argument("at most 2 sweep axes are supported");
    for (const auto& axis : sweep_axes) {
      if (axis.values.empty()) throw std::invalid_argument("sweep axis '" + axis.name + "' has no values");
      if (axis.name != "t_end" && std::find(param_names().begin(), param_names().end(), axis.name) == param_names().end()) {
        throw std::invalid_argument("cannot sweep unknown parameter '" + axis.name + "'");
      }
    }
  }
  if (mode == Mode::Trajectories && n_traj < 1) throw std::invalid_argument("ntraj must be >= 1");
  if (mode == Mode::Figure && figure_id.empty()) throw std::invalid_argument("figure mode needs a figure id");
}

ConfigEntries parse_config_text(std::istream& in) {
  ConfigEntries entries;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
    std::string full = section.empty() ? key : section + "." + key;
    for (const auto& e : entries) {
      if (e.first == full) throw std::invalid_argument("config line " + std::to_string(lineno) + ": duplicate key '" + full + "'");
    }
    entries.emplace_back(std::move(full), trim(line.substr(eq + 1)));
  }
  return entries;
}

void apply_config_entries(const ConfigEntries& entries, RunConfig& config) {
  for (const auto& [full, value] : entries) {
    const auto dot = full.find('.');
    const std::string section = dot == std::string::npos ? "run" : full.substr(0, dot);
    const std::string key = dot == std::string::npos ? full : full.substr(dot + 1);
    if (section == "run") {
      if (key == "mode") config.mode = parse_mode(value);
      else if (key == "engine") config.engine = parse_engine(value);
      else if (key == "t_end") config.t_end = parse_double(value, key);
      else if (key == "out") config.output_path = value;
      else if (key == "seed") config.seed = static_cast<std::uint64_t>(parse_int(value, key));
      else if (key == "ntraj") config.n_traj = parse_int(value, key);
      else if (key == "samples") config.samples = static_cast<int>(parse_int(value, key));
      else if (key == "dt") config.dt = parse_double(value, key);
      else if (key == "records") config.record_path = value;
      else if (key == "workers") config.workers = static_cast<unsigned>(parse_int(value, key));
      else throw std::invalid_argument("unknown config key '" + full + "'");
    } else if (section == "params") {
      config.params.set(key, parse_double(value, key));
    } else if (section == "sweep") {
      config.sweep_axes.push_back({key, parse_axis_values(value)});
    } else if (section == "figure") {
      if (key == "id") config.figure_id = value;
      else throw std::invalid_argument("unknown config key '" + full + "'");
    } else {
      throw std::invalid_argument("unknown config section '" + section + "'");
    }
  }
}

void apply_config_file(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
  apply_config_entries(parse_config_text(in), config);
}

}  // namespace gaussent::harness
