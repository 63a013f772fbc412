#pragma once

// Brute-force reference implementations used to check the closed-form path.
// Deliberately simple: dense cyclic Jacobi, propagation through that
// decomposition, and composite Simpson quadrature.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ringspin/spectral.hpp"

namespace ringspin::oracle {

struct DenseEigenResult {
    /// Ascending.
    std::vector<double> eigenvalues;
    /// Column i belongs to eigenvalues[i].
    Eigen::MatrixXd eigenvectors;
};

/// Full decomposition of a real symmetric matrix (n <= 256) by cyclic Jacobi sweeps.
/// Throws ConfigError for non-square, non-symmetric or oversized input.
DenseEigenResult dense_eigen(const Eigen::MatrixXd& matrix);

/// Orthogonal projector onto span of the columns of vectors whose eigenvalue is within
/// tolerance of value.
Eigen::MatrixXd spectral_projector(std::span<const double> values, const Eigen::MatrixXd& vectors,
                                   double value, double tolerance);

/// exp(-i G tau) v computed as V exp(-i Lambda tau) V^T v from dense_eigen (n <= 64).
StateVector expm_propagate(const Eigen::MatrixXd& generator, const StateVector& initial,
                           double tau);

/// Composite Simpson rule for samples f(0), f(h), ..., f(T) on a uniform grid over [0, T].
/// Requires an odd sample count >= 3.
double simpson_integral(std::span<const double> samples, double t_max);

/// Samples first-row amplitudes p_1k(t) of one spectrum on a uniform Simpson grid over
/// [0, T]. The interval count is the smallest even number with spacing <= step.
class AmplitudeSampler {
public:
    AmplitudeSampler(const Spectrum& spectrum, double t_max, double step);

    std::size_t sample_count() const noexcept { return times_.size(); }
    std::span<const double> times() const noexcept { return times_; }

    /// p_1k(t_i) for every grid point, by direct summation over eigenvectors.
    std::vector<Complex> samples(int target) const;

private:
    Spectrum spectrum_;
    std::vector<double> times_;
    // phases_[a * times_.size() + i] = exp(-i lambda_a t_i)
    std::vector<Complex> phases_;
};

/// Simpson estimate of (1/T) int_0^T |p_1k|^2.
double avg_probability_quadrature(const AmplitudeSampler& sampler, int target);

/// Simpson estimate of J for one target; both samplers must share the grid.
double j_metric_quadrature(const AmplitudeSampler& approx, const AmplitudeSampler& reference,
                           int target);

}  // namespace ringspin::oracle
