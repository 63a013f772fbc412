#pragma once

// Least-squares fit of the averaged truncation error J^(m) to
//   J(x) = a + exp(-c x) / (x^d - b)
// and the trend of the fitted parameters across ring sizes.

#include <array>
#include <span>
#include <vector>

#include "ringspin/metrics.hpp"

namespace ringspin {

struct FitParams {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
};

struct FitPoint {
    double x;
    double j;
};

double decay_model(const FitParams& p, double x);

/// True when x^d - b keeps one sign (never zero) on [x_lo, x_hi], x_lo > 0.
bool pole_free(const FitParams& p, double x_lo, double x_hi);

struct FitOptions {
    int max_iterations = 200;
    /// Stop when ||step|| <= tolerance * (||params|| + tolerance).
    double relative_tolerance = 1e-10;
    /// Condition number of J^T J above which the fit is flagged as weakly identified.
    double condition_limit = 1e12;
};

struct FitResult {
    FitParams params;
    double rms = 0.0;
    int iterations = 0;
    bool converged = false;
    /// The supplied start had a pole inside the data range and was replaced by the default start.
    bool reinitialized = false;
    double condition_number = 0.0;
    bool ill_conditioned = false;
    /// RMS at the start and after every accepted step.
    std::vector<double> rms_history;
};

/// Default start: a = min J, b = 0, d = 2, c from a log-linear regression of (J - a) on x.
FitParams initial_guess(std::span<const FitPoint> points);

/// Damped Gauss-Newton (Levenberg-Marquardt) fit of decay_model. Without an explicit
/// start, runs from initial_guess() and a fixed grid of (b, c, d) starts and keeps the
/// lowest-residual result.
/// Needs at least 5 points with x > 0 and J >= 0; throws ConfigError otherwise.
/// Non-convergence is reported through FitResult::converged with the best parameters found.
FitResult fit_decay(std::span<const FitPoint> points, const FitOptions& options = {});
FitResult fit_decay(std::span<const FitPoint> points, const FitParams& start,
                    const FitOptions& options = {});

/// (m, J^(m)) for 2 <= m <= n_f - 1 taken from a full neighbour sweep.
std::vector<FitPoint> decay_points(std::span<const TransferMetrics> sweep);

struct FitSeriesEntry {
    int n;
    FitParams params;
    double rms;
};

enum class Parameter { a, b, c, d };

struct ParameterTrend {
    Parameter parameter;
    /// Least-squares slope of the parameter against n.
    double slope;
    /// -1 decreasing, +1 increasing.
    int expected_sign;
    bool consistent;
};

struct TrendReport {
    std::array<ParameterTrend, 4> trends;
    /// Slope of |a| against n is negative.
    bool a_toward_zero;
};

/// Needs at least 3 entries with strictly increasing n.
TrendReport fit_trends(std::span<const FitSeriesEntry> series);

const char* parameter_name(Parameter p);

}  // namespace ringspin
