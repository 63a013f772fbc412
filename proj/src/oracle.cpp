#include "ringspin/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ringspin::oracle {

namespace {

constexpr int max_dense_size = 256;
constexpr int max_propagate_size = 64;
constexpr int max_sweeps = 100;

double off_diagonal_norm2(const Eigen::MatrixXd& a) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (i != j) {
                s += a(i, j) * a(i, j);
            }
        }
    }
    return s;
}

}  // namespace

DenseEigenResult dense_eigen(const Eigen::MatrixXd& matrix) {
    const Eigen::Index n = matrix.rows();
    if (n != matrix.cols() || n == 0) {
        throw ConfigError("dense_eigen needs a non-empty square matrix");
    }
    if (n > max_dense_size) {
        throw ConfigError("dense_eigen is limited to n <= 256");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (matrix(i, j) != matrix(j, i)) {
                throw ConfigError("dense_eigen needs a symmetric matrix");
            }
        }
    }

    Eigen::MatrixXd a = matrix;
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    const double scale = std::max(a.squaredNorm(), 1e-300);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm2(a) <= 1e-32 * scale) {
            break;
        }
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) {
                    continue;
                }
                // Rotation angle from the standard stable tan formula.
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });

    DenseEigenResult out;
    out.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index src = order[static_cast<std::size_t>(i)];
        out.eigenvalues.push_back(a(src, src));
        out.eigenvectors.col(i) = v.col(src);
    }
    return out;
}

Eigen::MatrixXd spectral_projector(std::span<const double> values, const Eigen::MatrixXd& vectors,
                                   double value, double tolerance) {
    const Eigen::Index n = vectors.rows();
    Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (std::abs(values[i] - value) <= tolerance) {
            const auto col = vectors.col(static_cast<Eigen::Index>(i));
            proj += col * col.transpose();
        }
    }
    return proj;
}

StateVector expm_propagate(const Eigen::MatrixXd& generator, const StateVector& initial,
                           double tau) {
    if (generator.rows() > max_propagate_size) {
        throw ConfigError("expm_propagate is limited to n <= 64");
    }
    if (generator.rows() != initial.size()) {
        throw ConfigError("state dimension does not match generator");
    }
    const auto eig = dense_eigen(generator);
    const Eigen::Index n = generator.rows();
    Eigen::MatrixXcd prop = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        const Complex phase = std::polar(1.0, -eig.eigenvalues[static_cast<std::size_t>(a)] * tau);
        const Eigen::VectorXd col = eig.eigenvectors.col(a);
        prop += phase * (col * col.transpose()).cast<Complex>();
    }
    Eigen::VectorXcd out = prop * initial.amplitudes();
    const double norm2 = out.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-10) {
        throw std::runtime_error("expm_propagate lost unitarity: |psi|^2 = " +
                                 std::to_string(norm2));
    }
    out /= std::sqrt(norm2);
    return StateVector(std::move(out));
}

double simpson_integral(std::span<const double> samples, double t_max) {
    if (samples.size() < 3 || samples.size() % 2 == 0) {
        throw ConfigError("Simpson rule needs an odd number (>= 3) of samples");
    }
    const std::size_t intervals = samples.size() - 1;
    const double h = t_max / static_cast<double>(intervals);
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i < intervals; ++i) {
        (i % 2 == 1 ? odd : even) += samples[i];
    }
    return h / 3.0 * (samples.front() + 4.0 * odd + 2.0 * even + samples.back());
}

AmplitudeSampler::AmplitudeSampler(const Spectrum& spectrum, double t_max, double step)
    : spectrum_(spectrum) {
    if (!(t_max > 0.0) || !(step > 0.0)) {
        throw ConfigError("quadrature needs positive horizon and step");
    }
    auto intervals = static_cast<std::size_t>(std::ceil(t_max / step - 1e-9));
    intervals = std::max<std::size_t>(2, intervals + intervals % 2);
    const double h = t_max / static_cast<double>(intervals);
    times_.resize(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i) {
        times_[i] = h * static_cast<double>(i);
    }
    const auto lam = spectrum.eigenvalues();
    phases_.resize(lam.size() * times_.size());
    for (std::size_t a = 0; a < lam.size(); ++a) {
        for (std::size_t i = 0; i < times_.size(); ++i) {
            phases_[a * times_.size() + i] = std::polar(1.0, -lam[a] * times_[i]);
        }
    }
}

std::vector<Complex> AmplitudeSampler::samples(int target) const {
    const auto& u = spectrum_.basis().matrix();
    const int n = spectrum_.n();
    if (target < 1 || target > n) {
        throw ConfigError("target outside ring");
    }
    std::vector<Complex> out(times_.size(), Complex{0.0, 0.0});
    for (int a = 0; a < n; ++a) {
        const double w = u(0, a) * u(target - 1, a);
        if (w == 0.0) {
            continue;
        }
        const Complex* ph = &phases_[static_cast<std::size_t>(a) * times_.size()];
        for (std::size_t i = 0; i < times_.size(); ++i) {
            out[i] += w * ph[i];
        }
    }
    return out;
}

double avg_probability_quadrature(const AmplitudeSampler& sampler, int target) {
    const auto p = sampler.samples(target);
    std::vector<double> f(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        f[i] = std::norm(p[i]);
    }
    const double t_max = sampler.times().back();
    return simpson_integral(f, t_max) / t_max;
}

double j_metric_quadrature(const AmplitudeSampler& approx, const AmplitudeSampler& reference,
                           int target) {
    if (approx.sample_count() != reference.sample_count() ||
        approx.times().back() != reference.times().back()) {
        throw ConfigError("samplers use different grids");
    }
    const auto pa = approx.samples(target);
    const auto pr = reference.samples(target);
    std::vector<double> num(pa.size());
    std::vector<double> den(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) {
        num[i] = std::norm(pa[i] - pr[i]);
        den[i] = std::norm(pr[i]);
    }
    const double t_max = reference.times().back();
    return std::sqrt(simpson_integral(num, t_max) / simpson_integral(den, t_max));
}

}  // namespace ringspin::oracle
