#pragma once

// Command-line front end. `parse_args` validates argv into a CommandSpec;
// `run` executes it. Data goes to the output stream or file, diagnostics
// to the error stream.

#include "uavchan/adaptation.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace uavchan::cli {

enum ExitCode : int {
    kOk = 0,
    kUsageError = 2,
    kDomainError = 3,
    kIoError = 4,
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Subcommand { latency, util_ts, util_rate, util_ber, train, adapt, reproduce_all };
enum class OutputFormat { csv, json };

struct LatencyArgs {
    std::vector<std::int64_t> ts_bits;
    std::vector<double> rates_bps;
    int hop_count;
};

struct UtilTsArgs {
    std::vector<std::int64_t> ts_bits;
    std::vector<int> users;
    double rate_bps;
    double window_s;
};

struct UtilRateArgs {
    std::int64_t ts_bits;
    int users;
    std::vector<double> rates_bps;
    double window_s;
};

struct UtilBerArgs {
    std::int64_t ts_bits;
    int users;
    double rate_bps;
    std::vector<double> ber;
    double window_s;
};

struct TrainArgs {
    std::int64_t ts_start;
    std::int64_t ts_end_exclusive;
    std::int64_t ts_step;
};

struct AdaptArgs {
    /// Without a model file the default training run is fitted in-process.
    std::optional<std::filesystem::path> model_path;
    AdaptationOptions options;
    bool real_time = false;
    /// Wall-clock period per step when real_time is set.
    int pace_ms = 1000;
};

struct ReproduceArgs {
    std::filesystem::path outdir;
};

using CommandArgs = std::variant<LatencyArgs, UtilTsArgs, UtilRateArgs, UtilBerArgs, TrainArgs,
                                 AdaptArgs, ReproduceArgs>;

struct CommandSpec {
    Subcommand subcommand;
    CommandArgs args;
    /// Empty means standard output.
    std::optional<std::filesystem::path> output;
    OutputFormat format = OutputFormat::csv;
};

/// Help was requested; `text` is the usage message.
struct HelpRequest {
    std::string text;
};

/// argv without the program name. Throws UsageError naming the offending
/// flag; returns HelpRequest for --help.
std::variant<CommandSpec, HelpRequest> parse_args(const std::vector<std::string>& args);

/// Executes a validated spec and returns the process exit code. Never throws
/// for domain or IO failures; those become a one-line diagnostic on `err`.
int run(const CommandSpec& spec, std::ostream& out, std::ostream& err);

/// parse_args + run, for use from main.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// File names written by reproduce-all, in write order.
const std::vector<std::string>& reproduce_all_files();

}  // namespace uavchan::cli
