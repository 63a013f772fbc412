#pragma once

// Time-averaged transfer probabilities and the accuracy of the m-neighbour
// truncation, measured against all-node interaction.
//
// Every integral over [0, T] is evaluated in closed form (see trig_integral.hpp).

#include <span>
#include <vector>

#include "ringspin/chain_model.hpp"
#include "ringspin/spectral.hpp"

namespace ringspin {

/// Averaging horizon T in dimensionless time.
class TimeWindow {
public:
    explicit TimeWindow(double t_max);

    /// T = n.
    static TimeWindow for_ring(int n) { return TimeWindow(static_cast<double>(n)); }

    double t_max() const noexcept { return t_max_; }

private:
    double t_max_;
};

/// Targets n = 1..floor(n/2)+1: one representative per reflection class of transfers 1 -> n.
std::vector<int> independent_targets(int n);

/// Number of ring sites reached by transfer 1 -> target under reflection (1 or 2).
int reflection_multiplicity(int n, int target);

/// (1/T) int_0^T |p_1n(tau)|^2 dtau.
double avg_probability(const Spectrum& spectrum, int target, const TimeWindow& window);
double avg_probability(const ChainSpec& spec, const CouplingProfile& profile, int target,
                       const TimeWindow& window);

/// sqrt( int |p^(m)_1n - p^(nf)_1n|^2 / int |p^(nf)_1n|^2 ).
/// Both spectra must share the ring size. Throws std::domain_error on a zero denominator.
double j_metric(const Spectrum& approx, const Spectrum& reference, int target,
                const TimeWindow& window);
double j_metric(const ChainSpec& spec, const CouplingProfile& profile, int target,
                const TimeWindow& window);

/// Parity-weighted mean over the ring given values on independent_targets(n):
/// each target counts with its reflection multiplicity and the total weight is n.
double parity_average(int n, std::span<const double> values_on_targets);

struct TransferMetrics {
    ChainSpec spec;
    std::vector<int> targets;
    std::vector<double> p_avg;
    std::vector<double> j_of_n;
    double j_avg = 0.0;
};

TransferMetrics transfer_metrics(const ChainSpec& spec, const CouplingProfile& profile,
                                 const TimeWindow& window);

/// Metrics for every m = 1..n_f, sharing one eigenbasis and one reference spectrum.
std::vector<TransferMetrics> sweep_neighbours(int n, const CouplingProfile& profile,
                                              const TimeWindow& window);

/// Parity-weighted J^(m) for the given truncation.
double j_avg(const ChainSpec& spec, const CouplingProfile& profile, const TimeWindow& window);

struct ThresholdResult {
    int n = 0;
    int m_star = 0;
    double epsilon = 0.0;
    /// per_m_max_j[m-1] = max over targets of J^(m)(target).
    std::vector<double> per_m_max_j;
};

/// Smallest m such that max_n J^(m')(n) <= epsilon for every m' in [m, n_f].
ThresholdResult threshold_m(int n, const CouplingProfile& profile, double epsilon,
                            const TimeWindow& window);

/// Same, reusing per-m maxima that are already computed.
ThresholdResult threshold_from_maxima(int n, std::vector<double> per_m_max_j, double epsilon);

}  // namespace ringspin
