#include "ringspin/spectral.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace ringspin {

namespace {

// Plain summation is exact enough for the few dozen terms used at realistic
// ring sizes; very long rings switch to pairwise summation.
constexpr std::size_t pairwise_threshold = 10000;

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 16) {
        return std::accumulate(v.begin(), v.end(), 0.0);
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double wave_number(int n, int m) {
    return 2.0 * std::numbers::pi * (m - 1) / n;
}

}  // namespace

Eigenbasis::Eigenbasis(int n) : n_(n), u_(n, n) {
    derive_nf(n);

    auto add_column = [&](int m, Branch br) {
        const int col = static_cast<int>(labels_.size());
        const bool alternating = n % 2 == 0 && m == n / 2 + 1;
        const double amp = (m == 1 || alternating) ? 1.0 / std::sqrt(static_cast<double>(n))
                                                   : std::sqrt(2.0 / n);
        for (int k = 1; k <= n; ++k) {
            double v = amp;
            if (alternating) {
                v = (k % 2 == 0) ? amp : -amp;
            } else if (m > 1) {
                // (m-1) k reduced mod n keeps the argument in [0, 2 pi).
                const double phase = 2.0 * std::numbers::pi *
                                     static_cast<double>((static_cast<long long>(m - 1) * k) % n) / n;
                v = amp * (br == Branch::cosine ? std::cos(phase) : std::sin(phase));
            }
            u_(k - 1, col) = v;
        }
        labels_.push_back({m, br, wave_number(n, m)});
    };

    add_column(1, Branch::cosine);
    if (n % 2 == 0) {
        add_column(n / 2 + 1, Branch::cosine);
        for (int m = 2; m <= n / 2; ++m) {
            add_column(m, Branch::cosine);
            add_column(m, Branch::sine);
        }
    } else {
        for (int m = 2; m <= (n + 1) / 2; ++m) {
            add_column(m, Branch::cosine);
            add_column(m, Branch::sine);
        }
    }
}

std::vector<int> Eigenbasis::columns_of_branch(int m) const {
    std::vector<int> cols;
    for (int c = 0; c < n_; ++c) {
        if (labels_[static_cast<std::size_t>(c)].m == m) {
            cols.push_back(c);
        }
    }
    return cols;
}

Eigen::MatrixXd eigenvectors(int n) {
    return Eigenbasis(n).matrix();
}

double branch_eigenvalue(const ChainSpec& spec, const CouplingProfile& profile, int m) {
    const int n = spec.n();
    if (m < 1 || m > n / 2 + 1) {
        throw ConfigError("branch index " + std::to_string(m) + " out of range for n=" +
                          std::to_string(n));
    }
    if (profile.size() < spec.m()) {
        throw ConfigError("coupling profile shorter than m=" + std::to_string(spec.m()));
    }
    // Even ring with all-node interaction: the opposite site is reached once, not twice.
    const bool opposite_term = spec.even() && spec.is_all_node();
    const int paired = opposite_term ? spec.m() - 1 : spec.m();

    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(paired) + 1);
    for (int j = 1; j <= paired; ++j) {
        // (m-1) j reduced mod n keeps the cosine argument in [0, 2 pi).
        const long long idx = (static_cast<long long>(m - 1) * j) % n;
        terms.push_back(2.0 * profile.ratio(j) *
                        std::cos(2.0 * std::numbers::pi * static_cast<double>(idx) / n));
    }
    if (opposite_term) {
        terms.push_back(((m - 1) % 2 == 0 ? 1.0 : -1.0) * profile.ratio(n / 2));
    }
    if (terms.size() > pairwise_threshold) {
        return pairwise_sum(terms);
    }
    return std::accumulate(terms.begin(), terms.end(), 0.0);
}

namespace {

std::vector<double> column_eigenvalues(const ChainSpec& spec, const CouplingProfile& profile,
                                       const Eigenbasis& basis) {
    std::vector<double> by_branch(static_cast<std::size_t>(basis.branch_count()));
    for (int m = 1; m <= basis.branch_count(); ++m) {
        by_branch[static_cast<std::size_t>(m - 1)] = branch_eigenvalue(spec, profile, m);
    }
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(spec.n()));
    for (const auto& label : basis.columns()) {
        values.push_back(by_branch[static_cast<std::size_t>(label.m - 1)]);
    }
    return values;
}

}  // namespace

std::vector<double> eigenvalues(const ChainSpec& spec, const CouplingProfile& profile) {
    return column_eigenvalues(spec, profile, Eigenbasis(spec.n()));
}

Spectrum::Spectrum(const ChainSpec& spec, const CouplingProfile& profile)
    : Spectrum(spec, profile, std::make_shared<const Eigenbasis>(spec.n())) {}

Spectrum::Spectrum(const ChainSpec& spec, const CouplingProfile& profile,
                   std::shared_ptr<const Eigenbasis> basis)
    : spec_(spec), basis_(std::move(basis)) {
    if (!basis_ || basis_->n() != spec.n()) {
        throw ConfigError("eigenbasis does not match ring size");
    }
    eigenvalues_ = column_eigenvalues(spec, profile, *basis_);
}

Spectrum::Spectrum(ChainSpec spec, std::shared_ptr<const Eigenbasis> basis,
                   std::vector<double> values)
    : spec_(spec), basis_(std::move(basis)), eigenvalues_(std::move(values)) {}

Spectrum Spectrum::rescaled(double factor) const {
    std::vector<double> v(eigenvalues_);
    for (double& x : v) {
        x *= factor;
    }
    return Spectrum(spec_, basis_, std::move(v));
}

StateVector::StateVector(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0) {
        throw ConfigError("state vector is empty");
    }
    const double norm2 = amps_.squaredNorm();
    if (!(std::abs(norm2 - 1.0) <= norm_tolerance)) {
        throw ConfigError("state vector is not normalised (|a|^2 = " + std::to_string(norm2) + ")");
    }
}

StateVector StateVector::site(int n, int j) {
    if (j < 1 || j > n) {
        throw ConfigError("site " + std::to_string(j) + " outside ring of " + std::to_string(n));
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    v(j - 1) = 1.0;
    return StateVector(std::move(v));
}

StateVector StateVector::uniform(int n) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Constant(n, Complex(1.0 / std::sqrt(double(n)), 0.0));
    return StateVector(std::move(v));
}

std::vector<double> transfer_weights(const Eigenbasis& basis, int j, int k) {
    const int n = basis.n();
    if (j < 1 || j > n || k < 1 || k > n) {
        throw ConfigError("site pair (" + std::to_string(j) + ", " + std::to_string(k) +
                          ") outside ring of " + std::to_string(n));
    }
    const auto& u = basis.matrix();
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        w[static_cast<std::size_t>(a)] = u(j - 1, a) * u(k - 1, a);
    }
    return w;
}

Complex amplitude(const Spectrum& spectrum, int j, int k, double tau) {
    const auto w = transfer_weights(spectrum.basis(), j, k);
    const auto lam = spectrum.eigenvalues();
    Complex sum{0.0, 0.0};
    for (std::size_t a = 0; a < w.size(); ++a) {
        sum += w[a] * std::polar(1.0, -lam[a] * tau);
    }
    return sum;
}

Complex amplitude(const ChainSpec& spec, const CouplingProfile& profile, int j, int k,
                  double tau) {
    return amplitude(Spectrum(spec, profile), j, k, tau);
}

Eigen::MatrixXcd propagator(const Spectrum& spectrum, double tau) {
    const auto& u = spectrum.basis().matrix();
    const auto lam = spectrum.eigenvalues();
    Eigen::VectorXcd phase(spectrum.n());
    for (int a = 0; a < spectrum.n(); ++a) {
        phase(a) = std::polar(1.0, -lam[static_cast<std::size_t>(a)] * tau);
    }
    const Eigen::MatrixXcd uc = u.cast<Complex>();
    return uc * phase.asDiagonal() * uc.transpose();
}

StateVector evolve(const Spectrum& spectrum, const StateVector& initial, double tau) {
    if (initial.size() != spectrum.n()) {
        throw ConfigError("state dimension does not match ring size");
    }
    const auto& u = spectrum.basis().matrix();
    const auto lam = spectrum.eigenvalues();
    // Project onto eigenvectors, rotate phases, map back.
    Eigen::VectorXcd coeff = u.transpose().cast<Complex>() * initial.amplitudes();
    for (int a = 0; a < spectrum.n(); ++a) {
        coeff(a) *= std::polar(1.0, -lam[static_cast<std::size_t>(a)] * tau);
    }
    return StateVector(u.cast<Complex>() * coeff, StateVector::Unchecked{});
}

AmplitudeSet first_row_amplitudes(const Spectrum& spectrum, std::span<const double> times) {
    AmplitudeSet set;
    set.times.assign(times.begin(), times.end());
    const int nf = spectrum.spec().nf();
    const auto lam = spectrum.eigenvalues();
    set.values.reserve(static_cast<std::size_t>(nf) * times.size());
    for (int k = 1; k <= nf; ++k) {
        set.pairs.emplace_back(1, k);
        const auto w = transfer_weights(spectrum.basis(), 1, k);
        for (double tau : times) {
            Complex sum{0.0, 0.0};
            for (std::size_t a = 0; a < w.size(); ++a) {
                sum += w[a] * std::polar(1.0, -lam[a] * tau);
            }
            set.values.push_back(sum);
        }
    }
    return set;
}

}  // namespace ringspin
