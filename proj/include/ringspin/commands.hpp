#pragma once

// Command implementations behind the `ringspin` tool. Each command turns a
// RunConfig into one or more tables; the tool decides where they are written.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ringspin/chain_model.hpp"
#include "ringspin/table.hpp"

namespace ringspin {

enum class OutputFormat { csv, json };

struct RunConfig {
    std::optional<int> n;
    std::vector<int> n_list;
    std::optional<int> m;
    std::optional<double> t_max;
    double epsilon = 0.1;
    /// "dipolar" or "custom:<path>".
    std::string profile = "dipolar";
    OutputFormat format = OutputFormat::csv;
    std::string out;
    /// Simpson step used by `validate` only.
    double quad_step = 1e-3;
};

struct CommandResult {
    std::vector<Table> tables;
    /// 0 success, 1 validation failure.
    int exit_code = 0;
};

/// Exit status for a rejected configuration.
inline constexpr int exit_bad_config = 2;

/// Dipolar profile for n, or the custom file (which must cover n_f ratios).
CouplingProfile resolve_profile(const RunConfig& config, int n);

/// Ring sizes to process: n_list if given, otherwise the single n. Throws if neither.
std::vector<int> ring_sizes(const RunConfig& config);

CommandResult cmd_spectrum(const RunConfig& config);
CommandResult cmd_probmap(const RunConfig& config);
CommandResult cmd_jmap(const RunConfig& config);
CommandResult cmd_threshold(const RunConfig& config);
CommandResult cmd_fit(const RunConfig& config);
CommandResult cmd_validate(const RunConfig& config);

/// Writes the result. CSV: the first table goes to `out` (or the stream) and further
/// tables to `<stem>_<table>.csv` next to it; on a stream, tables are separated by a
/// blank line and each is preceded by a `# <table>` line when there are several.
/// JSON: one document holding every table.
void emit(const CommandResult& result, const RunConfig& config, std::ostream& stream);

}  // namespace ringspin
