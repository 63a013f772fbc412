#include "ringspin/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <future>
#include <ostream>
#include <random>

#include "ringspin/fitting.hpp"
#include "ringspin/metrics.hpp"
#include "ringspin/oracle.hpp"
#include "ringspin/spectral.hpp"

namespace ringspin {

namespace {

constexpr const char* custom_prefix = "custom:";

int require_n(const RunConfig& config) {
    if (!config.n) {
        throw ConfigError("--n is required");
    }
    derive_nf(*config.n);
    return *config.n;
}

TimeWindow window_for(const RunConfig& config, int n) {
    return config.t_max ? TimeWindow(*config.t_max) : TimeWindow::for_ring(n);
}

void check_epsilon(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw ConfigError("--epsilon must lie in (0, 1)");
    }
}

// Runs work(n) for every ring size concurrently; results keep the input order.
template <class Work>
auto per_ring(const std::vector<int>& sizes, Work work) {
    using Result = decltype(work(0));
    std::vector<std::future<Result>> jobs;
    jobs.reserve(sizes.size());
    for (int n : sizes) {
        jobs.push_back(std::async(std::launch::async, work, n));
    }
    std::vector<Result> out;
    out.reserve(sizes.size());
    for (auto& job : jobs) {
        out.push_back(job.get());
    }
    return out;
}

long long as_int(int v) { return static_cast<long long>(v); }

}  // namespace

CouplingProfile resolve_profile(const RunConfig& config, int n) {
    if (config.profile == "dipolar") {
        return CouplingProfile::dipolar(n);
    }
    if (config.profile.rfind(custom_prefix, 0) == 0) {
        auto profile = CouplingProfile::from_file(config.profile.substr(std::string(custom_prefix).size()));
        if (profile.size() < derive_nf(n)) {
            throw ConfigError("custom profile has " + std::to_string(profile.size()) +
                              " ratios; n=" + std::to_string(n) + " needs " +
                              std::to_string(derive_nf(n)));
        }
        return profile;
    }
    throw ConfigError("unknown profile '" + config.profile + "' (use dipolar or custom:<path>)");
}

std::vector<int> ring_sizes(const RunConfig& config) {
    std::vector<int> sizes = config.n_list;
    if (sizes.empty() && config.n) {
        sizes.push_back(*config.n);
    }
    if (sizes.empty()) {
        throw ConfigError("--n or --n-list is required");
    }
    for (int n : sizes) {
        derive_nf(n);
    }
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    return sizes;
}

CommandResult cmd_spectrum(const RunConfig& config) {
    const int n = require_n(config);
    const ChainSpec spec(n, config.m.value_or(derive_nf(n)));
    const auto profile = resolve_profile(config, n);
    const Spectrum spectrum(spec, profile);
    const auto& basis = spectrum.basis();

    Table branches{"spectrum", {"m", "p_m", "lambda", "multiplicity"}, {}};
    for (int m = 1; m <= basis.branch_count(); ++m) {
        branches.add_row({as_int(m), 2.0 * std::numbers::pi * (m - 1) / n, branch_eigenvalue(spec, profile, m),
                          static_cast<long long>(basis.columns_of_branch(m).size())});
    }
    Table columns{"columns", {"column", "m", "branch", "lambda"}, {}};
    const auto lam = spectrum.eigenvalues();
    for (int c = 0; c < n; ++c) {
        const auto& label = basis.columns()[static_cast<std::size_t>(c)];
        columns.add_row({as_int(c + 1), as_int(label.m),
                         std::string(label.branch == Branch::cosine ? "cos" : "sin"),
                         lam[static_cast<std::size_t>(c)]});
    }
    return {{std::move(branches), std::move(columns)}, 0};
}

namespace {

std::vector<TransferMetrics> metrics_rows(const RunConfig& config, int n) {
    const auto profile = resolve_profile(config, n);
    const auto window = window_for(config, n);
    if (config.m) {
        return {transfer_metrics(ChainSpec(n, *config.m), profile, window)};
    }
    return sweep_neighbours(n, profile, window);
}

}  // namespace

CommandResult cmd_probmap(const RunConfig& config) {
    const int n = require_n(config);
    Table t{"probmap", {"M", "n", "P"}, {}};
    for (const auto& tm : metrics_rows(config, n)) {
        for (std::size_t i = 0; i < tm.targets.size(); ++i) {
            t.add_row({as_int(tm.spec.m()), as_int(tm.targets[i]), tm.p_avg[i]});
        }
    }
    return {{std::move(t)}, 0};
}

CommandResult cmd_jmap(const RunConfig& config) {
    const int n = require_n(config);
    Table per_target{"jmap", {"M", "n", "J"}, {}};
    Table averaged{"javg", {"M", "J"}, {}};
    for (const auto& tm : metrics_rows(config, n)) {
        for (std::size_t i = 0; i < tm.targets.size(); ++i) {
            per_target.add_row({as_int(tm.spec.m()), as_int(tm.targets[i]), tm.j_of_n[i]});
        }
        averaged.add_row({as_int(tm.spec.m()), tm.j_avg});
    }
    return {{std::move(per_target), std::move(averaged)}, 0};
}

CommandResult cmd_threshold(const RunConfig& config) {
    check_epsilon(config.epsilon);
    const auto sizes = ring_sizes(config);
    for (int n : sizes) {
        resolve_profile(config, n);
    }
    const auto results = per_ring(sizes, [&](int n) {
        return threshold_m(n, resolve_profile(config, n), config.epsilon, window_for(config, n));
    });
    Table summary{"threshold", {"N", "M_threshold", "epsilon", "T"}, {}};
    Table audit{"audit", {"N", "M", "max_J"}, {}};
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const auto& r = results[i];
        summary.add_row({as_int(r.n), as_int(r.m_star), r.epsilon,
                         window_for(config, r.n).t_max()});
        for (std::size_t m = 0; m < r.per_m_max_j.size(); ++m) {
            audit.add_row({as_int(r.n), static_cast<long long>(m + 1), r.per_m_max_j[m]});
        }
    }
    return {{std::move(summary), std::move(audit)}, 0};
}

CommandResult cmd_fit(const RunConfig& config) {
    const auto sizes = ring_sizes(config);
    for (int n : sizes) {
        if (derive_nf(n) < 6) {
            throw ConfigError("fit needs n_f >= 6 (at least 5 points with 2 <= M <= n_f - 1); n=" +
                              std::to_string(n));
        }
        resolve_profile(config, n);
    }
    struct PerRing {
        std::vector<FitPoint> points;
        FitResult fit;
    };
    const auto results = per_ring(sizes, [&](int n) {
        const auto sweep = sweep_neighbours(n, resolve_profile(config, n), window_for(config, n));
        PerRing r{decay_points(sweep), {}};
        r.fit = fit_decay(r.points);
        return r;
    });

    Table fits{"fit",
               {"N", "a", "b", "c", "d", "rms", "iterations", "converged", "condition_number"},
               {}};
    Table points{"points", {"N", "M", "J", "model"}, {}};
    std::vector<FitSeriesEntry> series;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const auto& f = results[i].fit;
        fits.add_row({as_int(sizes[i]), f.params.a, f.params.b, f.params.c, f.params.d, f.rms,
                      as_int(f.iterations), as_int(f.converged ? 1 : 0), f.condition_number});
        for (const auto& pt : results[i].points) {
            points.add_row({as_int(sizes[i]), static_cast<long long>(std::lround(pt.x)), pt.j,
                            decay_model(f.params, pt.x)});
        }
        series.push_back({sizes[i], f.params, f.rms});
    }
    CommandResult out{{std::move(fits), std::move(points)}, 0};
    if (series.size() >= 3) {
        const auto report = fit_trends(series);
        Table trends{"trends", {"parameter", "slope", "expected_sign", "consistent"}, {}};
        for (const auto& tr : report.trends) {
            trends.add_row({std::string(parameter_name(tr.parameter)), tr.slope,
                            as_int(tr.expected_sign), as_int(tr.consistent ? 1 : 0)});
        }
        trends.add_row({std::string("|a|"), std::string("-"), as_int(-1),
                        as_int(report.a_toward_zero ? 1 : 0)});
        out.tables.push_back(std::move(trends));
    }
    return out;
}

namespace {

struct Check {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    void observe(double err) { max_error = std::max(max_error, std::isnan(err) ? std::numeric_limits<double>::infinity() : err); }
    bool pass() const { return max_error <= tolerance; }
};

std::vector<Check> validate_ring(int n, const CouplingProfile& profile, double quad_step) {
    const int nf = derive_nf(n);
    auto basis = std::make_shared<const Eigenbasis>(n);
    const auto& u = basis->matrix();

    Check ortho{"orthonormality", 0.0, 1e-12};
    ortho.observe((u.transpose() * u - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());

    Check values{"eigenvalues_vs_dense", 0.0, 1e-10};
    Check projectors{"projectors_vs_dense", 0.0, 1e-8};
    Check residual{"spectral_residual", 0.0, 1e-10};
    Check propagate{"evolve_vs_expm", 0.0, 1e-8};
    Check quadrature{"j_closed_form_vs_simpson", 0.0, 1e-6};

    std::mt19937 rng(0x5eed + static_cast<unsigned>(n));
    std::normal_distribution<double> gauss;
    const double t_max = static_cast<double>(n);
    const Spectrum reference(ChainSpec::all_node(n), profile, basis);
    const oracle::AmplitudeSampler ref_sampler(reference, t_max, quad_step);
    const auto targets = independent_targets(n);

    for (int m = 1; m <= nf; ++m) {
        const ChainSpec spec(n, m);
        const Spectrum spectrum(spec, profile, basis);
        const Eigen::MatrixXd g = build_matrix(spec, profile);
        const auto dense = oracle::dense_eigen(g);

        std::vector<double> closed(spectrum.eigenvalues().begin(), spectrum.eigenvalues().end());
        std::vector<double> sorted = closed;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < n; ++i) {
            values.observe(std::abs(sorted[static_cast<std::size_t>(i)] -
                                    dense.eigenvalues[static_cast<std::size_t>(i)]));
        }
        for (double v : sorted) {
            const auto pc = oracle::spectral_projector(closed, u, v, 1e-9);
            const auto pd = oracle::spectral_projector(dense.eigenvalues, dense.eigenvectors, v, 1e-9);
            projectors.observe((pc - pd).cwiseAbs().maxCoeff());
        }
        const Eigen::Map<const Eigen::VectorXd> lam(closed.data(), n);
        residual.observe((g * u - u * lam.asDiagonal()).cwiseAbs().maxCoeff());

        for (int trial = 0; trial < 3; ++trial) {
            Eigen::VectorXcd v(n);
            for (int k = 0; k < n; ++k) {
                v(k) = Complex(gauss(rng), gauss(rng));
            }
            const StateVector psi(v / v.norm());
            for (double tau : {0.1, 1.0, t_max}) {
                const auto a = evolve(spectrum, psi, tau);
                const auto b = oracle::expm_propagate(g, psi, tau);
                propagate.observe((a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff());
            }
        }

        const oracle::AmplitudeSampler sampler(spectrum, t_max, quad_step);
        const TimeWindow window(t_max);
        for (int target : targets) {
            quadrature.observe(std::abs(j_metric(spectrum, reference, target, window) -
                                        oracle::j_metric_quadrature(sampler, ref_sampler, target)));
        }
    }
    return {ortho, values, projectors, residual, propagate, quadrature};
}

}  // namespace

CommandResult cmd_validate(const RunConfig& config) {
    if (!(config.quad_step > 0.0 && config.quad_step <= 0.1)) {
        throw ConfigError("--quad-step must lie in (0, 0.1]");
    }
    std::vector<int> sizes;
    if (config.n || !config.n_list.empty()) {
        sizes = ring_sizes(config);
    } else {
        for (int n = 3; n <= 16; ++n) {
            sizes.push_back(n);
        }
    }
    for (int n : sizes) {
        if (n > 64) {
            throw ConfigError("validate is limited to n <= 64");
        }
        resolve_profile(config, n);
    }
    const auto results = per_ring(sizes, [&](int n) {
        return validate_ring(n, resolve_profile(config, n), config.quad_step);
    });
    Table report{"validate", {"N", "check", "max_error", "tolerance", "pass"}, {}};
    bool all = true;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        for (const auto& c : results[i]) {
            report.add_row({as_int(sizes[i]), c.name, c.max_error, c.tolerance,
                            as_int(c.pass() ? 1 : 0)});
            all = all && c.pass();
        }
    }
    return {{std::move(report)}, all ? 0 : 1};
}

void emit(const CommandResult& result, const RunConfig& config, std::ostream& stream) {
    if (config.format == OutputFormat::json) {
        const auto text = to_json(result.tables).dump(2);
        if (config.out.empty()) {
            stream << text << '\n';
        } else {
            std::ofstream f(config.out);
            if (!f) {
                throw ConfigError("cannot write '" + config.out + "'");
            }
            f << text << '\n';
        }
        return;
    }
    if (config.out.empty()) {
        const bool labelled = result.tables.size() > 1;
        for (std::size_t i = 0; i < result.tables.size(); ++i) {
            if (i > 0) {
                stream << '\n';
            }
            if (labelled) {
                stream << "# " << result.tables[i].name << '\n';
            }
            write_csv(stream, result.tables[i]);
        }
        return;
    }
    const std::filesystem::path main_path(config.out);
    for (std::size_t i = 0; i < result.tables.size(); ++i) {
        auto path = main_path;
        if (i > 0) {
            path.replace_filename(main_path.stem().string() + "_" + result.tables[i].name + ".csv");
        }
        std::ofstream f(path);
        if (!f) {
            throw ConfigError("cannot write '" + path.string() + "'");
        }
        write_csv(f, result.tables[i]);
    }
}

}  // namespace ringspin
