#pragma once

#include <string>
#include <vector>

#include "gaussent/harness/commands.hpp"

namespace gaussent::harness {

/// Figure data sets:
///   fig2  GEoF over a (kappa_t, theta) grid, lossless;
///   fig3  GEoF and log-neg against time at alpha0 = 100 with losses,
///         numerical, analytic and strongly rotated;
///   fig4  maximal entanglement against alpha0 with and without rotation;
///   fig5  eta t of entanglement death against alpha0.
/// Config values override the defaults (eta, gamma_over_detuning, an
/// alpha0 sweep axis for fig4/fig5, samples, dt).
CommandOutput cmd_figure(const RunConfig& config);

/// Default optical densities scanned by fig4 and fig5.
std::vector<double> default_alpha0_scan();

/// Larmor frequency giving `revolutions` full turns per 1/eta.
double rotation_for(double eta, double revolutions);

}  // namespace gaussent::harness
