#pragma once

// Ring geometry, dimensionless couplings and the one-excitation generator of a
// closed homogeneous XX chain.
//
// Couplings are stored as ratios d_k / d_1, so the nearest-neighbour coupling
// is 1 and time is measured in units where the generator has entries d̃_k with
// no extra prefactor. Site labels are 1-based everywhere in the public API.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ringspin {

/// Raised for any argument that violates a documented precondition.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Largest meaningful neighbour count on an n-ring: n/2 for even n, (n-1)/2 for odd n.
int derive_nf(int n);

/// Ring size together with the number of interacting neighbours kept.
class ChainSpec {
public:
    ChainSpec(int n, int m);

    /// All-node interaction, m = n_f.
    static ChainSpec all_node(int n) { return ChainSpec(n, derive_nf(n)); }

    int n() const noexcept { return n_; }
    int m() const noexcept { return m_; }
    int nf() const noexcept { return nf_; }
    bool is_all_node() const noexcept { return m_ == nf_; }
    bool even() const noexcept { return n_ % 2 == 0; }

    ChainSpec with_m(int m) const { return ChainSpec(n_, m); }

    friend bool operator==(const ChainSpec&, const ChainSpec&) = default;

private:
    int n_;
    int m_;
    int nf_;
};

enum class ProfileKind { dipolar, custom };

/// Coupling ratios d̃_1..d̃_K with d̃_1 = 1.
class CouplingProfile {
public:
    /// d̃_k = (sin(pi/n) / sin(pi k/n))^3 for k = 1..n_f.
    static CouplingProfile dipolar(int n);

    /// Arbitrary ratios; the first entry must be exactly 1.
    static CouplingProfile custom(std::vector<double> ratios);

    /// Reads one ratio per line (k ascending from 1); blank lines and '#' comments are skipped.
    static CouplingProfile from_file(const std::string& path);

    /// Coupling at cyclic distance k, 1 <= k <= size().
    double ratio(int k) const;

    std::span<const double> ratios() const noexcept { return ratios_; }
    int size() const noexcept { return static_cast<int>(ratios_.size()); }
    ProfileKind kind() const noexcept { return kind_; }

private:
    CouplingProfile(std::vector<double> ratios, ProfileKind kind);

    std::vector<double> ratios_;
    ProfileKind kind_;
};

/// Cyclic distance between 1-based sites j and k on an n-ring.
int ring_distance(int n, int j, int k);

/// Dense N x N generator: entry (j,k) = d̃_dist when 1 <= dist <= m, otherwise 0.
/// Throws ConfigError if the profile has fewer than m ratios.
Eigen::MatrixXd build_matrix(const ChainSpec& spec, const CouplingProfile& profile);

}  // namespace ringspin
