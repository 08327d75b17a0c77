#ifndef BLOCKADE_CLI_HPP
#define BLOCKADE_CLI_HPP

#include "blockade/model.hpp"
#include "blockade/sweep.hpp"

#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockade::cli
{

/// Exit codes of the command-line tool.
enum ExitCode : int
{
    kExitOk = 0,
    kExitFailure = 1, // solver failure, I/O failure
    kExitUsage = 2,   // bad flags, bad config, analytic singularities
};

class UsageError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Carries the rendered --help text.
class HelpRequested : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class Command
{
    solve,
    analytic,
    optimal,
    spectrum,
    sweep
};

enum class Format
{
    csv,
    json
};

struct ParamOverrides
{
    std::optional<double> delta, u, g, f, phi, kappa;

    SystemParams apply(SystemParams base) const;
};

struct RunConfig
{
    Command command = Command::solve;
    ParamOverrides params;
    std::optional<std::string> preset;
    std::vector<GridAxis> axes;
    std::optional<std::string> output_path;
    Format format = Format::csv;
    double tol = 1e-3;
    std::size_t max_dim = kMaxDim;
    double omega_a = 1.0;
    int n_max = 5;
    bool with_analytic = false;
    /// 0 = machine parallelism. Filled from BLOCKADE_THREADS by the tool.
    unsigned threads = 0;

    /// Parameters after applying overrides to the preset base (sweep) or
    /// to the defaults (every other command).
    SystemParams resolved_params() const;
};

/// Flags override config-file values, which override defaults. The config
/// file is a JSON object keyed by flag names (dashes or underscores).
/// Throws UsageError.
RunConfig parse_config(std::span<const std::string> args, const std::optional<std::string>& config_contents = {});

/// Returns the value following --config, if present.
std::optional<std::string> config_path(std::span<const std::string> args);

/// Parses a BLOCKADE_THREADS value; empty or invalid -> 0.
unsigned parse_thread_cap(const char* value);

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace blockade::cli

#endif
