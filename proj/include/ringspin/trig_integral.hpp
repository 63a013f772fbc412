#pragma once

// Exact integration of squared trigonometric sums over [0, T].
//
// For f(tau) = sum_a w_a exp(-i omega_a tau) with real weights,
//   int_0^T |f|^2 dtau = sum_{a,b} w_a w_b K(omega_a - omega_b),
// where K(0) = T and K(delta) = sin(delta T) / delta otherwise (the imaginary
// parts cancel pairwise).

#include <span>
#include <vector>

namespace ringspin {

struct Mode {
    double frequency;
    double weight;
};

/// Frequencies closer than this are treated as equal.
inline constexpr double frequency_tolerance = 1e-12;

/// Sorts by frequency, sums the weights of clusters within tolerance and drops zero weights.
std::vector<Mode> merge_modes(std::vector<Mode> modes, double tolerance = frequency_tolerance);

/// int_0^T |sum_a w_a exp(-i omega_a tau)|^2 dtau for T = t_max >= 0.
double integrate_power(std::span<const Mode> modes, double t_max,
                       double tolerance = frequency_tolerance);

}  // namespace ringspin
