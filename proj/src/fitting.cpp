#include "ringspin/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

namespace ringspin {

double decay_model(const FitParams& p, double x) {
    return p.a + std::exp(-p.c * x) / (std::pow(x, p.d) - p.b);
}

bool pole_free(const FitParams& p, double x_lo, double x_hi) {
    // x^d is monotone in x for x > 0, so checking the ends is enough.
    const double lo = std::pow(x_lo, p.d) - p.b;
    const double hi = std::pow(x_hi, p.d) - p.b;
    return std::isfinite(lo) && std::isfinite(hi) && lo != 0.0 && hi != 0.0 &&
           std::signbit(lo) == std::signbit(hi);
}

namespace {

using Vec4 = Eigen::Vector4d;

Vec4 to_vec(const FitParams& p) { return {p.a, p.b, p.c, p.d}; }
FitParams from_vec(const Vec4& v) { return {v(0), v(1), v(2), v(3)}; }

std::vector<FitPoint> checked_sorted(std::span<const FitPoint> points) {
    if (points.size() < 5) {
        throw ConfigError("decay fit needs at least 5 points, got " +
                          std::to_string(points.size()));
    }
    for (const auto& pt : points) {
        if (!(pt.x > 0.0) || !std::isfinite(pt.x) || !(pt.j >= 0.0) || !std::isfinite(pt.j)) {
            throw ConfigError("decay fit needs x > 0 and finite J >= 0");
        }
    }
    std::vector<FitPoint> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(), [](const FitPoint& l, const FitPoint& r) {
        return l.x < r.x || (l.x == r.x && l.j < r.j);
    });
    return sorted;
}

struct Evaluation {
    Eigen::VectorXd residual;
    Eigen::MatrixXd jacobian;
    double cost = 0.0;  // 0.5 * |r|^2
    bool finite = false;
};

Evaluation evaluate(const std::vector<FitPoint>& pts, const FitParams& p) {
    const auto n = static_cast<Eigen::Index>(pts.size());
    Evaluation e{Eigen::VectorXd(n), Eigen::MatrixXd(n, 4), 0.0, true};
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = pts[static_cast<std::size_t>(i)].x;
        const double xd = std::pow(x, p.d);
        const double den = xd - p.b;
        const double ex = std::exp(-p.c * x);
        const double frac = ex / den;
        e.residual(i) = p.a + frac - pts[static_cast<std::size_t>(i)].j;
        e.jacobian(i, 0) = 1.0;
        e.jacobian(i, 1) = frac / den;
        e.jacobian(i, 2) = -x * frac;
        e.jacobian(i, 3) = -frac * xd * std::log(x) / den;
    }
    e.finite = e.residual.allFinite() && e.jacobian.allFinite();
    e.cost = 0.5 * e.residual.squaredNorm();
    return e;
}

double rms_of(const Evaluation& e) {
    return std::sqrt(e.residual.squaredNorm() / static_cast<double>(e.residual.size()));
}

}  // namespace

FitParams initial_guess(std::span<const FitPoint> points) {
    const auto pts = checked_sorted(points);
    double a0 = pts.front().j;
    for (const auto& pt : pts) {
        a0 = std::min(a0, pt.j);
    }
    // log(J - a0) ~ const - c x over points strictly above the floor.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (const auto& pt : pts) {
        const double excess = pt.j - a0;
        if (excess > 0.0) {
            const double y = std::log(excess);
            sx += pt.x;
            sy += y;
            sxx += pt.x * pt.x;
            sxy += pt.x * y;
            ++count;
        }
    }
    double c0 = 1.0;
    const double denom = count * sxx - sx * sx;
    if (count >= 2 && denom > 0.0) {
        c0 = -(count * sxy - sx * sy) / denom;
    }
    return {a0, 0.0, c0, 2.0};
}

FitResult fit_decay(std::span<const FitPoint> points, const FitOptions& options) {
    const auto pts = checked_sorted(points);
    const FitParams base = initial_guess(pts);
    FitResult best = fit_decay(pts, base, options);

    // The objective has several basins; retry from a fixed grid of shapes and keep the
    // lowest residual. The documented start always runs first and wins ties.
    for (double b0 : {0.0, 0.5, 0.9, -1.0}) {
        for (double d0 : {0.25, 0.5, 1.0, 2.0, 3.0}) {
            for (double c0 : {base.c, 0.0, 0.3}) {
                const FitParams start{base.a, b0, c0, d0};
                if (!pole_free(start, pts.front().x, pts.back().x)) {
                    continue;
                }
                FitResult r = fit_decay(pts, start, options);
                if (!r.reinitialized && r.rms < best.rms) {
                    best = r;
                }
            }
        }
    }
    return best;
}

FitResult fit_decay(std::span<const FitPoint> points, const FitParams& start,
                    const FitOptions& options) {
    const auto pts = checked_sorted(points);
    const double x_lo = pts.front().x;
    const double x_hi = pts.back().x;

    FitResult result;
    FitParams p = start;
    Evaluation cur = evaluate(pts, p);
    if (!pole_free(p, x_lo, x_hi) || !cur.finite) {
        p = initial_guess(pts);
        cur = evaluate(pts, p);
        result.reinitialized = true;
        if (!pole_free(p, x_lo, x_hi) || !cur.finite) {
            throw ConfigError("no pole-free starting point for the decay fit");
        }
    }

    // Marquardt scaling: damp with the diagonal of J^T J.
    Eigen::Matrix4d a_mat = cur.jacobian.transpose() * cur.jacobian;
    Vec4 grad = cur.jacobian.transpose() * cur.residual;
    double mu = 1e-3;
    double nu = 2.0;
    result.rms_history.push_back(rms_of(cur));

    int iter = 0;
    while (iter < options.max_iterations) {
        ++iter;
        if (cur.cost == 0.0 || grad.lpNorm<Eigen::Infinity>() <=
                                   std::numeric_limits<double>::epsilon() * 1e-2) {
            result.converged = true;
            break;
        }
        Vec4 scale = a_mat.diagonal().cwiseMax(1e-300);
        Eigen::Matrix4d damped = a_mat;
        damped.diagonal() += mu * scale;
        const Vec4 step = damped.ldlt().solve(-grad);
        if (!step.allFinite()) {
            mu *= nu;
            nu *= 2.0;
            continue;
        }
        const Vec4 pv = to_vec(p);
        if (step.norm() <= options.relative_tolerance * (pv.norm() + options.relative_tolerance)) {
            result.converged = true;
            break;
        }
        const FitParams trial = from_vec(pv + step);
        const Evaluation next = evaluate(pts, trial);
        const double predicted = 0.5 * step.dot(mu * scale.cwiseProduct(step) - grad);
        // Nothing left to gain beyond rounding: already at the minimum.
        if (predicted <= 4.0 * std::numeric_limits<double>::epsilon() * cur.cost) {
            result.converged = true;
            break;
        }
        const double rho = (next.finite && pole_free(trial, x_lo, x_hi) && predicted > 0.0)
                               ? (cur.cost - next.cost) / predicted
                               : -1.0;
        if (rho > 0.0) {
            p = trial;
            cur = next;
            a_mat = cur.jacobian.transpose() * cur.jacobian;
            grad = cur.jacobian.transpose() * cur.residual;
            result.rms_history.push_back(rms_of(cur));
            mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
            nu = 2.0;
        } else {
            mu *= nu;
            nu *= 2.0;
            if (!std::isfinite(mu) || mu > 1e300) {
                break;
            }
        }
    }

    result.params = p;
    result.rms = rms_of(cur);
    result.iterations = iter;

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(a_mat, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    result.condition_number = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    result.ill_conditioned = !(result.condition_number <= options.condition_limit);
    return result;
}

std::vector<FitPoint> decay_points(std::span<const TransferMetrics> sweep) {
    std::vector<FitPoint> pts;
    for (const auto& tm : sweep) {
        const int m = tm.spec.m();
        if (m >= 2 && m <= tm.spec.nf() - 1) {
            pts.push_back({static_cast<double>(m), tm.j_avg});
        }
    }
    return pts;
}

const char* parameter_name(Parameter p) {
    switch (p) {
        case Parameter::a: return "a";
        case Parameter::b: return "b";
        case Parameter::c: return "c";
        case Parameter::d: return "d";
    }
    return "?";
}

namespace {

double slope(std::span<const FitSeriesEntry> series, auto&& value) {
    double mx = 0.0, my = 0.0;
    for (const auto& e : series) {
        mx += e.n;
        my += value(e);
    }
    mx /= static_cast<double>(series.size());
    my /= static_cast<double>(series.size());
    double sxy = 0.0, sxx = 0.0;
    for (const auto& e : series) {
        sxy += (e.n - mx) * (value(e) - my);
        sxx += (e.n - mx) * (e.n - mx);
    }
    return sxy / sxx;
}

}  // namespace

TrendReport fit_trends(std::span<const FitSeriesEntry> series) {
    if (series.size() < 3) {
        throw ConfigError("trend report needs at least 3 ring sizes");
    }
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (series[i].n <= series[i - 1].n) {
            throw ConfigError("fit series must have strictly increasing n");
        }
    }
    auto make = [&](Parameter which, int expected, auto&& get) {
        const double s = slope(series, get);
        return ParameterTrend{which, s, expected, s * expected > 0.0};
    };
    TrendReport report{
        {make(Parameter::a, -1, [](const FitSeriesEntry& e) { return e.params.a; }),
         make(Parameter::b, -1, [](const FitSeriesEntry& e) { return e.params.b; }),
         make(Parameter::c, +1, [](const FitSeriesEntry& e) { return e.params.c; }),
         make(Parameter::d, -1, [](const FitSeriesEntry& e) { return e.params.d; })},
        slope(series, [](const FitSeriesEntry& e) { return std::abs(e.params.a); }) < 0.0};
    return report;
}

}  // namespace ringspin
