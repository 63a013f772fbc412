#include "ringspin/chain_model.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace ringspin {

int derive_nf(int n) {
    if (n < 3) {
        throw ConfigError("ring needs at least 3 nodes, got " + std::to_string(n));
    }
    return n / 2;
}

ChainSpec::ChainSpec(int n, int m) : n_(n), m_(m), nf_(derive_nf(n)) {
    if (m < 1 || m > nf_) {
        throw ConfigError("neighbour count m=" + std::to_string(m) + " outside [1, " +
                          std::to_string(nf_) + "] for n=" + std::to_string(n));
    }
}

CouplingProfile::CouplingProfile(std::vector<double> ratios, ProfileKind kind)
    : ratios_(std::move(ratios)), kind_(kind) {}

CouplingProfile CouplingProfile::dipolar(int n) {
    const int nf = derive_nf(n);
    const double s1 = std::sin(std::numbers::pi / n);
    std::vector<double> r(static_cast<std::size_t>(nf));
    r[0] = 1.0;
    for (int k = 2; k <= nf; ++k) {
        const double q = s1 / std::sin(std::numbers::pi * k / n);
        r[static_cast<std::size_t>(k - 1)] = q * q * q;
    }
    return CouplingProfile(std::move(r), ProfileKind::dipolar);
}

CouplingProfile CouplingProfile::custom(std::vector<double> ratios) {
    if (ratios.empty()) {
        throw ConfigError("coupling profile is empty");
    }
    if (ratios.front() != 1.0) {
        throw ConfigError("coupling profile must start with d1 = 1");
    }
    for (double r : ratios) {
        if (!std::isfinite(r)) {
            throw ConfigError("coupling profile contains a non-finite ratio");
        }
    }
    return CouplingProfile(std::move(ratios), ProfileKind::custom);
}

CouplingProfile CouplingProfile::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open coupling profile '" + path + "'");
    }
    std::vector<double> ratios;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ss(line);
        double v = 0.0;
        if (!(ss >> v)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected a number");
        }
        std::string rest;
        if (ss >> rest) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": one ratio per line");
        }
        ratios.push_back(v);
    }
    return custom(std::move(ratios));
}

double CouplingProfile::ratio(int k) const {
    if (k < 1 || k > size()) {
        throw ConfigError("coupling index " + std::to_string(k) + " outside profile of length " +
                          std::to_string(size()));
    }
    return ratios_[static_cast<std::size_t>(k - 1)];
}

int ring_distance(int n, int j, int k) {
    const int d = std::abs(j - k) % n;
    return std::min(d, n - d);
}

Eigen::MatrixXd build_matrix(const ChainSpec& spec, const CouplingProfile& profile) {
    if (profile.size() < spec.m()) {
        throw ConfigError("coupling profile has " + std::to_string(profile.size()) +
                          " ratios, need at least m=" + std::to_string(spec.m()));
    }
    const int n = spec.n();
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    for (int j = 1; j <= n; ++j) {
        for (int k = 1; k <= n; ++k) {
            const int dist = ring_distance(n, j, k);
            if (dist >= 1 && dist <= spec.m()) {
                g(j - 1, k - 1) = profile.ratio(dist);
            }
        }
    }
    return g;
}

}  // namespace ringspin
