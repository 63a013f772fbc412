// ringspin: one-excitation dynamics of closed dipolar XX rings under the
// m-neighbour truncation.
//
//   ringspin spectrum  --n 6 --m 3
//   ringspin probmap   --n 70
//   ringspin jmap      --n 70 --format json --out jmap.json
//   ringspin threshold --n-list 20,26,30,36,40,46,50,60,70
//   ringspin fit       --n-list 20,36,70
//   ringspin validate

#include <iostream>

#include <CLI11.hpp>

#include "ringspin/commands.hpp"

namespace {

using ringspin::CommandResult;
using ringspin::RunConfig;

void add_common(CLI::App* cmd, RunConfig& cfg, bool with_list, bool with_m) {
    cmd->add_option("--n", cfg.n, "ring size");
    if (with_list) {
        cmd->add_option("--n-list", cfg.n_list, "ring sizes (comma separated)")->delimiter(',');
    }
    if (with_m) {
        cmd->add_option("--m", cfg.m, "interacting-neighbour count (default: all M or n_f)");
    }
    cmd->add_option("--t-max", cfg.t_max, "averaging horizon T (default: n)");
    cmd->add_option("--profile", cfg.profile, "dipolar | custom:<path>")->capture_default_str();
    cmd->add_option("--format", cfg.format, "csv | json")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, ringspin::OutputFormat>{{"csv", ringspin::OutputFormat::csv},
                                                          {"json", ringspin::OutputFormat::json}},
            CLI::ignore_case));
    cmd->add_option("--out", cfg.out, "output path (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-excitation spin dynamics on closed XX rings"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto* spectrum = app.add_subcommand("spectrum", "closed-form eigenvalues per branch");
    add_common(spectrum, cfg, false, true);
    auto* probmap = app.add_subcommand("probmap", "time-averaged transfer probabilities P(M, n)");
    add_common(probmap, cfg, false, true);
    auto* jmap = app.add_subcommand("jmap", "truncation error J(M, n) and its parity average");
    add_common(jmap, cfg, false, true);
    auto* threshold = app.add_subcommand("threshold", "smallest M with J <= epsilon per ring size");
    add_common(threshold, cfg, true, false);
    threshold->add_option("--epsilon", cfg.epsilon, "accuracy threshold")->capture_default_str();
    auto* fit = app.add_subcommand("fit", "fit J(M) = a + exp(-cM)/(M^d - b) per ring size");
    add_common(fit, cfg, true, false);
    auto* validate = app.add_subcommand("validate", "closed form vs dense oracle and quadrature");
    add_common(validate, cfg, true, false);
    validate->add_option("--quad-step", cfg.quad_step, "Simpson step")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ringspin::exit_bad_config;
    }

    try {
        CommandResult result;
        if (*spectrum) {
            result = ringspin::cmd_spectrum(cfg);
        } else if (*probmap) {
            result = ringspin::cmd_probmap(cfg);
        } else if (*jmap) {
            result = ringspin::cmd_jmap(cfg);
        } else if (*threshold) {
            result = ringspin::cmd_threshold(cfg);
        } else if (*fit) {
            result = ringspin::cmd_fit(cfg);
        } else {
            result = ringspin::cmd_validate(cfg);
        }
        ringspin::emit(result, cfg, std::cout);
        return result.exit_code;
    } catch (const ringspin::ConfigError& e) {
        std::cerr << "ringspin: " << e.what() << '\n';
        return ringspin::exit_bad_config;
    }
}
