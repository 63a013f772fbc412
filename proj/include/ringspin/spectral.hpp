#pragma once

// Closed-form diagonalisation of the circulant one-excitation generator and
// the resulting evolution operator.
//
// The eigenvectors depend only on the ring size; the eigenvalues depend on the
// neighbour count and couplings. A Spectrum pairs a shared Eigenbasis with the
// eigenvalues for one (n, m, profile), so sweeps over m reuse a single basis.

#include <complex>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ringspin/chain_model.hpp"

namespace ringspin {

using Complex = std::complex<double>;

enum class Branch { cosine, sine };

/// Which trigonometric vector a column of U holds: branch index m (1-based,
/// wave number p_m = 2 pi (m-1)/n) and cosine or sine shape.
struct ColumnLabel {
    int m;
    Branch branch;
    double wave_number;
};

/// Orthonormal real eigenvectors of every circulant generator on an n-ring.
///
/// Column order: even n -> (cos m=1, cos m=n/2+1, cos m=2, sin m=2, ..., cos n/2, sin n/2);
/// odd n -> (cos m=1, cos m=2, sin m=2, ..., cos (n+1)/2, sin (n+1)/2).
class Eigenbasis {
public:
    explicit Eigenbasis(int n);

    int n() const noexcept { return n_; }
    const Eigen::MatrixXd& matrix() const noexcept { return u_; }
    std::span<const ColumnLabel> columns() const noexcept { return labels_; }

    /// Number of distinct branches: n/2+1 (even) or (n+1)/2 (odd).
    int branch_count() const noexcept { return n_ / 2 + 1; }

    /// Columns belonging to branch m (one or two entries).
    std::vector<int> columns_of_branch(int m) const;

private:
    int n_;
    Eigen::MatrixXd u_;
    std::vector<ColumnLabel> labels_;
};

/// Eigenvector matrix U for an n-ring (columns ordered as in Eigenbasis).
Eigen::MatrixXd eigenvectors(int n);

/// Eigenvalue of branch m (1-based) for the given truncation.
double branch_eigenvalue(const ChainSpec& spec, const CouplingProfile& profile, int m);

/// Eigenvalues aligned with the columns of U, length n, with degenerate pairs repeated.
std::vector<double> eigenvalues(const ChainSpec& spec, const CouplingProfile& profile);

/// Eigen-decomposition for one (n, m, profile).
class Spectrum {
public:
    Spectrum(const ChainSpec& spec, const CouplingProfile& profile);
    Spectrum(const ChainSpec& spec, const CouplingProfile& profile,
             std::shared_ptr<const Eigenbasis> basis);

    const ChainSpec& spec() const noexcept { return spec_; }
    const Eigenbasis& basis() const noexcept { return *basis_; }
    const std::shared_ptr<const Eigenbasis>& shared_basis() const noexcept { return basis_; }
    std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
    int n() const noexcept { return spec_.n(); }

    /// Copy with every eigenvalue multiplied by factor (equivalent to scaling all couplings).
    Spectrum rescaled(double factor) const;

private:
    Spectrum(ChainSpec spec, std::shared_ptr<const Eigenbasis> basis, std::vector<double> values);

    ChainSpec spec_;
    std::shared_ptr<const Eigenbasis> basis_;
    std::vector<double> eigenvalues_;
};

/// Normalised one-excitation state sum_j a_j |j>.
class StateVector {
public:
    static constexpr double norm_tolerance = 1e-12;

    /// Throws ConfigError unless sum |a_j|^2 = 1 within norm_tolerance.
    explicit StateVector(Eigen::VectorXcd amplitudes);

    /// Excitation on 1-based site j.
    static StateVector site(int n, int j);
    /// Equal-weight superposition (the m = 1 eigenvector).
    static StateVector uniform(int n);

    int size() const noexcept { return static_cast<int>(amps_.size()); }
    const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
    Complex operator[](int j) const { return amps_(j - 1); }

private:
    struct Unchecked {};
    StateVector(Eigen::VectorXcd amplitudes, Unchecked) : amps_(std::move(amplitudes)) {}
    friend StateVector evolve(const Spectrum&, const StateVector&, double);

    Eigen::VectorXcd amps_;
};

/// Weights U_ja U_ka, one per column, so that p_jk(tau) = sum_a w_a exp(-i lambda_a tau).
std::vector<double> transfer_weights(const Eigenbasis& basis, int j, int k);

/// <j| exp(-i G tau) |k> for 1-based sites j, k.
Complex amplitude(const Spectrum& spectrum, int j, int k, double tau);
Complex amplitude(const ChainSpec& spec, const CouplingProfile& profile, int j, int k, double tau);

/// Full propagator U exp(-i Lambda tau) U^T.
Eigen::MatrixXcd propagator(const Spectrum& spectrum, double tau);

/// exp(-i G tau) applied to a normalised state.
StateVector evolve(const Spectrum& spectrum, const StateVector& initial, double tau);

/// Amplitudes for a list of site pairs on a list of times.
struct AmplitudeSet {
    std::vector<std::pair<int, int>> pairs;
    std::vector<double> times;
    /// values[p * times.size() + t] is the amplitude of pairs[p] at times[t].
    std::vector<Complex> values;

    Complex at(std::size_t pair_index, std::size_t time_index) const {
        return values[pair_index * times.size() + time_index];
    }
};

/// p_1k(tau) for k = 1..n_f; every other pair follows by translation and reflection.
AmplitudeSet first_row_amplitudes(const Spectrum& spectrum, std::span<const double> times);

}  // namespace ringspin
