#include "ringspin/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ringspin/trig_integral.hpp"

namespace ringspin {

TimeWindow::TimeWindow(double t_max) : t_max_(t_max) {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw ConfigError("time window must be positive and finite");
    }
}

std::vector<int> independent_targets(int n) {
    derive_nf(n);
    std::vector<int> targets;
    for (int t = 1; t <= n / 2 + 1; ++t) {
        targets.push_back(t);
    }
    return targets;
}

int reflection_multiplicity(int n, int target) {
    if (target < 1 || target > n / 2 + 1) {
        throw ConfigError("target " + std::to_string(target) + " is not an independent target");
    }
    if (target == 1 || (n % 2 == 0 && target == n / 2 + 1)) {
        return 1;
    }
    return 2;
}

namespace {

void check_target(int n, int target) {
    if (target < 1 || target > n) {
        throw ConfigError("target site " + std::to_string(target) + " outside ring of " +
                          std::to_string(n));
    }
}

std::vector<Mode> amplitude_modes(const Spectrum& spectrum, int target) {
    const auto w = transfer_weights(spectrum.basis(), 1, target);
    const auto lam = spectrum.eigenvalues();
    std::vector<Mode> modes;
    modes.reserve(w.size());
    for (std::size_t a = 0; a < w.size(); ++a) {
        modes.push_back({lam[a], w[a]});
    }
    return merge_modes(std::move(modes));
}

// Modes of p^(approx) - p^(reference); both share the eigenvectors, so each
// column contributes +w at one frequency and -w at the other.
std::vector<Mode> difference_modes(const Spectrum& approx, const Spectrum& reference,
                                   int target) {
    const auto w = transfer_weights(reference.basis(), 1, target);
    const auto lam_a = approx.eigenvalues();
    const auto lam_r = reference.eigenvalues();
    std::vector<Mode> modes;
    modes.reserve(2 * w.size());
    for (std::size_t a = 0; a < w.size(); ++a) {
        if (lam_a[a] == lam_r[a]) {
            continue;
        }
        modes.push_back({lam_a[a], w[a]});
        modes.push_back({lam_r[a], -w[a]});
    }
    return merge_modes(std::move(modes));
}

}  // namespace

double avg_probability(const Spectrum& spectrum, int target, const TimeWindow& window) {
    check_target(spectrum.n(), target);
    const auto modes = amplitude_modes(spectrum, target);
    return integrate_power(modes, window.t_max()) / window.t_max();
}

double avg_probability(const ChainSpec& spec, const CouplingProfile& profile, int target,
                       const TimeWindow& window) {
    return avg_probability(Spectrum(spec, profile), target, window);
}

double j_metric(const Spectrum& approx, const Spectrum& reference, int target,
                const TimeWindow& window) {
    if (approx.n() != reference.n()) {
        throw ConfigError("spectra belong to rings of different size");
    }
    check_target(reference.n(), target);
    const auto diff = difference_modes(approx, reference, target);
    if (diff.empty()) {
        return 0.0;
    }
    const auto ref = amplitude_modes(reference, target);
    const double denominator = integrate_power(ref, window.t_max());
    if (!(denominator > 0.0)) {
        throw std::domain_error("reference amplitude vanishes on the window; J undefined");
    }
    const double numerator = std::max(0.0, integrate_power(diff, window.t_max()));
    return std::sqrt(numerator / denominator);
}

double j_metric(const ChainSpec& spec, const CouplingProfile& profile, int target,
                const TimeWindow& window) {
    auto basis = std::make_shared<const Eigenbasis>(spec.n());
    const Spectrum approx(spec, profile, basis);
    const Spectrum reference(ChainSpec::all_node(spec.n()), profile, basis);
    return j_metric(approx, reference, target, window);
}

double parity_average(int n, std::span<const double> values_on_targets) {
    const auto targets = independent_targets(n);
    if (values_on_targets.size() != targets.size()) {
        throw ConfigError("expected " + std::to_string(targets.size()) + " values, got " +
                          std::to_string(values_on_targets.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        sum += reflection_multiplicity(n, targets[i]) * values_on_targets[i];
    }
    return sum / n;
}

namespace {

TransferMetrics metrics_for(const Spectrum& approx, const Spectrum& reference,
                            const TimeWindow& window) {
    TransferMetrics out{approx.spec(), independent_targets(approx.n()), {}, {}, 0.0};
    for (int target : out.targets) {
        out.p_avg.push_back(avg_probability(approx, target, window));
        out.j_of_n.push_back(j_metric(approx, reference, target, window));
    }
    out.j_avg = parity_average(approx.n(), out.j_of_n);
    return out;
}

}  // namespace

TransferMetrics transfer_metrics(const ChainSpec& spec, const CouplingProfile& profile,
                                 const TimeWindow& window) {
    auto basis = std::make_shared<const Eigenbasis>(spec.n());
    const Spectrum approx(spec, profile, basis);
    const Spectrum reference(ChainSpec::all_node(spec.n()), profile, basis);
    return metrics_for(approx, reference, window);
}

std::vector<TransferMetrics> sweep_neighbours(int n, const CouplingProfile& profile,
                                              const TimeWindow& window) {
    const int nf = derive_nf(n);
    auto basis = std::make_shared<const Eigenbasis>(n);
    const Spectrum reference(ChainSpec::all_node(n), profile, basis);
    std::vector<TransferMetrics> out;
    out.reserve(static_cast<std::size_t>(nf));
    for (int m = 1; m <= nf; ++m) {
        out.push_back(metrics_for(Spectrum(ChainSpec(n, m), profile, basis), reference, window));
    }
    return out;
}

double j_avg(const ChainSpec& spec, const CouplingProfile& profile, const TimeWindow& window) {
    return transfer_metrics(spec, profile, window).j_avg;
}

ThresholdResult threshold_from_maxima(int n, std::vector<double> per_m_max_j, double epsilon) {
    const int nf = derive_nf(n);
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw ConfigError("epsilon must lie in (0, 1)");
    }
    if (static_cast<int>(per_m_max_j.size()) != nf) {
        throw ConfigError("need one maximum per m = 1..n_f");
    }
    int m_star = nf;
    for (int m = nf; m >= 1; --m) {
        if (per_m_max_j[static_cast<std::size_t>(m - 1)] > epsilon) {
            break;
        }
        m_star = m;
    }
    return ThresholdResult{n, m_star, epsilon, std::move(per_m_max_j)};
}

ThresholdResult threshold_m(int n, const CouplingProfile& profile, double epsilon,
                            const TimeWindow& window) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw ConfigError("epsilon must lie in (0, 1)");
    }
    const int nf = derive_nf(n);
    auto basis = std::make_shared<const Eigenbasis>(n);
    const Spectrum reference(ChainSpec::all_node(n), profile, basis);
    const auto targets = independent_targets(n);
    std::vector<double> maxima;
    maxima.reserve(static_cast<std::size_t>(nf));
    for (int m = 1; m <= nf; ++m) {
        const Spectrum approx(ChainSpec(n, m), profile, basis);
        double worst = 0.0;
        for (int target : targets) {
            worst = std::max(worst, j_metric(approx, reference, target, window));
        }
        maxima.push_back(worst);
    }
    return threshold_from_maxima(n, std::move(maxima), epsilon);
}

}  // namespace ringspin
