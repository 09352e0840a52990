#include "uavchan/cli.hpp"

#include "uavchan/errors.hpp"
#include "uavchan/experiments.hpp"
#include "uavchan/io.hpp"
#include "uavchan/regression.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

namespace uavchan::cli {

namespace {

// ---------------------------------------------------------------------------
// Flag value parsing. Values are taken as text from CLI11 and converted here
// so every error names the flag it came from.

double parse_double(const std::string& flag, std::string_view text) {
    double value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw UsageError(flag + ": malformed number '" + std::string(text) + "'");
    }
    return value;
}

std::vector<double> parse_double_list(const std::string& flag, std::string_view text) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        values.push_back(parse_double(flag, text.substr(pos, comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return values;
}

std::int64_t to_integer(const std::string& flag, double value) {
    if (value != std::floor(value) || std::fabs(value) > 9.0e15) {
        throw UsageError(flag + ": expected an integer, got " + io::format_number(value));
    }
    return static_cast<std::int64_t>(value);
}

std::int64_t parse_integer(const std::string& flag, std::string_view text, std::int64_t min) {
    const std::int64_t v = to_integer(flag, parse_double(flag, text));
    if (v < min) {
        throw UsageError(flag + ": value " + std::to_string(v) + " is below the minimum " +
                         std::to_string(min));
    }
    return v;
}

std::vector<std::int64_t> parse_integer_list(const std::string& flag, std::string_view text,
                                             std::int64_t min) {
    std::vector<std::int64_t> out;
    for (double v : parse_double_list(flag, text)) {
        const std::int64_t i = to_integer(flag, v);
        if (i < min) {
            throw UsageError(flag + ": value " + std::to_string(i) + " is below the minimum " +
                             std::to_string(min));
        }
        out.push_back(i);
    }
    return out;
}

int narrow_int(const std::string& flag, std::int64_t v) {
    if (v > std::numeric_limits<int>::max()) throw UsageError(flag + ": value too large");
    return static_cast<int>(v);
}

double require_positive(const std::string& flag, double v) {
    if (!(v > 0.0)) throw UsageError(flag + ": must be positive, got " + io::format_number(v));
    return v;
}

double require_ber(const std::string& flag, double v) {
    if (!(v >= 0.0 && v < 1.0)) {
        throw UsageError(flag + ": BER must lie in [0, 1), got " + io::format_number(v));
    }
    return v;
}

template <typename T, std::size_t N>
std::vector<T> to_vector(const std::array<T, N>& a) {
    return std::vector<T>(a.begin(), a.end());
}

// Text holder for an optional flag; `set` is true when it appeared on the
// command line.
struct Flag {
    std::string text;
    CLI::Option* opt = nullptr;
    bool set() const { return opt != nullptr && opt->count() > 0; }
};

Flag& add(CLI::App* app, Flag& flag, const std::string& name, const std::string& help) {
    flag.opt = app->add_option(name, flag.text, help);
    return flag;
}

struct OutputFlags {
    Flag out;
    Flag format;
};

void add_output_flags(CLI::App* sub, OutputFlags& flags, bool with_format) {
    add(sub, flags.out, "--out", "Output file (default: standard output)");
    if (with_format) add(sub, flags.format, "--format", "csv or json (default csv)");
}

void apply_output_flags(const OutputFlags& flags, CommandSpec& spec) {
    if (flags.out.set()) spec.output = flags.out.text;
    if (flags.format.set()) {
        if (flags.format.text == "csv") {
            spec.format = OutputFormat::csv;
        } else if (flags.format.text == "json") {
            spec.format = OutputFormat::json;
        } else {
            throw UsageError("--format: expected csv or json, got '" + flags.format.text + "'");
        }
    }
}

}  // namespace

std::variant<CommandSpec, HelpRequest> parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Multi-hop UAV relay channel simulator and transaction-size adaptation"};
    app.name("uavchan");
    app.require_subcommand(1, 1);

    // latency
    struct {
        Flag ts, rate, hops;
        OutputFlags output;
    } lat;
    auto* latency_cmd = app.add_subcommand("latency", "Latency vs transaction size sweep");
    add(latency_cmd, lat.ts, "--ts", "Transaction sizes in bits, comma separated");
    add(latency_cmd, lat.rate, "--rate", "Data rates in bit/s, comma separated");
    add(latency_cmd, lat.hops, "--hops", "Number of links in the chain");
    add_output_flags(latency_cmd, lat.output, true);

    // util-ts
    struct {
        Flag ts, users, rate, window;
        OutputFlags output;
    } uts;
    auto* util_ts_cmd = app.add_subcommand("util-ts", "Utilization vs transaction size and users");
    add(util_ts_cmd, uts.ts, "--ts", "Transaction sizes in bits, comma separated");
    add(util_ts_cmd, uts.users, "--users", "User counts, comma separated");
    add(util_ts_cmd, uts.rate, "--rate", "Data rate in bit/s");
    add(util_ts_cmd, uts.window, "--window", "Transmission window in seconds");
    add_output_flags(util_ts_cmd, uts.output, true);

    // util-rate
    struct {
        Flag ts, users, rate, window;
        OutputFlags output;
    } urate;
    auto* util_rate_cmd = app.add_subcommand("util-rate", "Utilization vs data rate");
    add(util_rate_cmd, urate.ts, "--ts", "Transaction size in bits");
    add(util_rate_cmd, urate.users, "--users", "Number of users");
    add(util_rate_cmd, urate.rate, "--rate", "Data rates in bit/s, comma separated");
    add(util_rate_cmd, urate.window, "--window", "Transmission window in seconds");
    add_output_flags(util_rate_cmd, urate.output, true);

    // util-ber
    struct {
        Flag ts, users, rate, ber, window;
        OutputFlags output;
    } uber;
    auto* util_ber_cmd = app.add_subcommand("util-ber", "Utilization vs bit error rate");
    add(util_ber_cmd, uber.ts, "--ts", "Transaction size in bits");
    add(util_ber_cmd, uber.users, "--users", "Number of users");
    add(util_ber_cmd, uber.rate, "--rate", "Data rate in bit/s");
    add(util_ber_cmd, uber.ber, "--ber", "BER fractions in [0, 1), comma separated");
    add(util_ber_cmd, uber.window, "--window", "Transmission window in seconds");
    add_output_flags(util_ber_cmd, uber.output, true);

    // train
    struct {
        Flag start, end, step;
        OutputFlags output;
    } tr;
    auto* train_cmd = app.add_subcommand("train", "Fit the transaction-size predictor");
    add(train_cmd, tr.start, "--ts-start", "First training transaction size (default 100)");
    add(train_cmd, tr.end, "--ts-end", "Exclusive end of training sizes (default 10000)");
    add(train_cmd, tr.step, "--ts-step", "Training size step (default 100)");
    add_output_flags(train_cmd, tr.output, false);

    // adapt
    struct {
        Flag model, target, rate, offset, inc, dec, events, min_ts, max_steps, pace;
        bool real_time = false;
        OutputFlags output;
    } ad;
    auto* adapt_cmd = app.add_subcommand("adapt", "Run the closed-loop adaptation");
    add(adapt_cmd, ad.model, "--model", "Model JSON from `train` (default: fit in-process)");
    add(adapt_cmd, ad.target, "--target", "Latency target in ms (default 2)");
    add(adapt_cmd, ad.rate, "--rate-mbps", "Data rate in Mbps (default 6)");
    add(adapt_cmd, ad.offset, "--offset", "Bits subtracted from the prediction (default 1000)");
    add(adapt_cmd, ad.inc, "--inc", "Increase step in bits (default 100)");
    add(adapt_cmd, ad.dec, "--dec", "Decrease step in bits (default 400)");
    add(adapt_cmd, ad.events, "--events", "Threshold events before stopping (default 3)");
    add(adapt_cmd, ad.min_ts, "--min-ts", "Minimum transaction size in bits (default 100)");
    add(adapt_cmd, ad.max_steps, "--max-steps", "Step cap (default 1000000)");
    adapt_cmd->add_flag("--real-time", ad.real_time, "Pace the run at one step per period");
    add(adapt_cmd, ad.pace, "--pace-ms", "Step period for --real-time in ms (default 1000)");
    add_output_flags(adapt_cmd, ad.output, true);

    // reproduce-all
    Flag outdir;
    auto* repro_cmd = app.add_subcommand("reproduce-all", "Write every result table and the model");
    add(repro_cmd, outdir, "--outdir", "Output directory (default: out)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        return HelpRequest{app.help()};
    } catch (const CLI::CallForAllHelp&) {
        return HelpRequest{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    CommandSpec spec{Subcommand::latency, LatencyArgs{}, std::nullopt, OutputFormat::csv};
    if (latency_cmd->parsed()) {
        LatencyArgs a;
        a.ts_bits = lat.ts.set() ? parse_integer_list("--ts", lat.ts.text, 1)
                                 : to_vector(defaults::kTsBits);
        a.rates_bps = lat.rate.set() ? parse_double_list("--rate", lat.rate.text)
                                     : std::vector<double>{defaults::kBaseRateBps};
        for (double r : a.rates_bps) require_positive("--rate", r);
        a.hop_count = lat.hops.set() ? narrow_int("--hops", parse_integer("--hops", lat.hops.text, 1))
                                     : defaults::kHopCount;
        spec.subcommand = Subcommand::latency;
        spec.args = a;
        apply_output_flags(lat.output, spec);
    } else if (util_ts_cmd->parsed()) {
        UtilTsArgs a;
        a.ts_bits = uts.ts.set() ? parse_integer_list("--ts", uts.ts.text, 1)
                                 : to_vector(defaults::kTsBits);
        if (uts.users.set()) {
            for (auto u : parse_integer_list("--users", uts.users.text, 1))
                a.users.push_back(narrow_int("--users", u));
        } else {
            a.users = to_vector(defaults::kUsers);
        }
        a.rate_bps = uts.rate.set() ? require_positive("--rate", parse_double("--rate", uts.rate.text))
                                    : defaults::kBaseRateBps;
        a.window_s = uts.window.set()
                         ? require_positive("--window", parse_double("--window", uts.window.text))
                         : defaults::kWindowS;
        spec.subcommand = Subcommand::util_ts;
        spec.args = a;
        apply_output_flags(uts.output, spec);
    } else if (util_rate_cmd->parsed()) {
        UtilRateArgs a;
        a.ts_bits = urate.ts.set() ? parse_integer("--ts", urate.ts.text, 1)
                                   : defaults::kRateSweepTsBits;
        a.users = urate.users.set()
                      ? narrow_int("--users", parse_integer("--users", urate.users.text, 1))
                      : defaults::kRateSweepUsers;
        a.rates_bps = urate.rate.set() ? parse_double_list("--rate", urate.rate.text)
                                       : to_vector(defaults::kRateSweepRatesBps);
        for (double r : a.rates_bps) require_positive("--rate", r);
        a.window_s = urate.window.set()
                         ? require_positive("--window", parse_double("--window", urate.window.text))
                         : defaults::kWindowS;
        spec.subcommand = Subcommand::util_rate;
        spec.args = a;
        apply_output_flags(urate.output, spec);
    } else if (util_ber_cmd->parsed()) {
        UtilBerArgs a;
        a.ts_bits = uber.ts.set() ? parse_integer("--ts", uber.ts.text, 1)
                                  : defaults::kBerSweepTsBits;
        a.users = uber.users.set()
                      ? narrow_int("--users", parse_integer("--users", uber.users.text, 1))
                      : defaults::kBerSweepUsers;
        a.rate_bps = uber.rate.set()
                         ? require_positive("--rate", parse_double("--rate", uber.rate.text))
                         : defaults::kBerSweepRateBps;
        a.ber = uber.ber.set() ? parse_double_list("--ber", uber.ber.text)
                               : to_vector(defaults::kBerValues);
        for (double b : a.ber) require_ber("--ber", b);
        a.window_s = uber.window.set()
                         ? require_positive("--window", parse_double("--window", uber.window.text))
                         : defaults::kWindowS;
        spec.subcommand = Subcommand::util_ber;
        spec.args = a;
        apply_output_flags(uber.output, spec);
    } else if (train_cmd->parsed()) {
        TrainArgs a{100, 10000, 100};
        if (tr.start.set()) a.ts_start = parse_integer("--ts-start", tr.start.text, 1);
        if (tr.end.set()) a.ts_end_exclusive = parse_integer("--ts-end", tr.end.text, 1);
        if (tr.step.set()) a.ts_step = parse_integer("--ts-step", tr.step.text, 1);
        if (a.ts_end_exclusive <= a.ts_start) {
            throw UsageError("--ts-end: must be greater than --ts-start");
        }
        spec.subcommand = Subcommand::train;
        spec.args = a;
        apply_output_flags(tr.output, spec);
        spec.format = OutputFormat::json;
    } else if (adapt_cmd->parsed()) {
        AdaptArgs a;
        auto& o = a.options;
        if (ad.model.set()) a.model_path = ad.model.text;
        if (ad.target.set())
            o.target_latency_ms = require_positive("--target", parse_double("--target", ad.target.text));
        if (ad.rate.set())
            o.data_rate_mbps =
                require_positive("--rate-mbps", parse_double("--rate-mbps", ad.rate.text));
        if (ad.offset.set()) o.initial_offset_bits = parse_integer("--offset", ad.offset.text, 0);
        if (ad.inc.set()) o.increase_step_bits = parse_integer("--inc", ad.inc.text, 1);
        if (ad.dec.set()) o.decrease_step_bits = parse_integer("--dec", ad.dec.text, 1);
        if (ad.events.set())
            o.max_threshold_events = narrow_int("--events", parse_integer("--events", ad.events.text, 1));
        if (ad.min_ts.set()) o.min_ts_bits = parse_integer("--min-ts", ad.min_ts.text, 1);
        if (ad.max_steps.set()) o.max_steps = parse_integer("--max-steps", ad.max_steps.text, 1);
        if (o.decrease_step_bits <= o.increase_step_bits) {
            throw UsageError("--dec: decrease step must exceed increase step");
        }
        a.real_time = ad.real_time;
        if (ad.pace.set()) a.pace_ms = narrow_int("--pace-ms", parse_integer("--pace-ms", ad.pace.text, 0));
        spec.subcommand = Subcommand::adapt;
        spec.args = a;
        apply_output_flags(ad.output, spec);
    } else {
        ReproduceArgs a{outdir.set() ? std::filesystem::path(outdir.text)
                                     : std::filesystem::path("out")};
        spec.subcommand = Subcommand::reproduce_all;
        spec.args = a;
    }
    return spec;
}

const std::vector<std::string>& reproduce_all_files() {
    static const std::vector<std::string> files = {"fig3.csv", "fig4.csv", "fig5.csv", "fig6.csv",
                                                   "fig7.csv", "fig8.csv", "model.json"};
    return files;
}

namespace {

void emit(const CommandSpec& spec, const std::string& content, std::ostream& out) {
    if (spec.output) {
        io::write_file(*spec.output, content);
    } else {
        out << content;
        out.flush();
        if (!out) throw IoError("error writing to standard output");
    }
}

std::string render(const SweepTable& table, OutputFormat format) {
    return format == OutputFormat::json ? io::table_to_json(table) : io::table_to_csv(table);
}

/// Latency sweep over the base rate and the three relay rates.
SweepTable fig3_latency_table() {
    std::vector<double> rates = {defaults::kBaseRateBps};
    rates.insert(rates.end(), defaults::kRelayRatesBps.begin(), defaults::kRelayRatesBps.end());
    return sweep_latency(defaults::kTsBits, rates, defaults::kHopCount);
}

void reproduce_all(const std::filesystem::path& outdir) {
    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (ec) throw IoError("cannot create '" + outdir.string() + "': " + ec.message());

    const LinearModel model = train_reference_default();
    const AdaptationTrace trace = run_adaptation(model, AdaptationParams{});
    const std::vector<std::string> contents = {
        io::table_to_csv(fig3_latency_table()),
        io::table_to_csv(sweep_utilization_ts(defaults::kTsBits, defaults::kUsers,
                                              defaults::kBaseRateBps)),
        io::table_to_csv(sweep_utilization_rate(defaults::kRateSweepTsBits,
                                                defaults::kRateSweepUsers,
                                                defaults::kRateSweepRatesBps)),
        io::table_to_csv(sweep_utilization_ber(defaults::kBerSweepTsBits, defaults::kBerSweepUsers,
                                               defaults::kBerSweepRateBps, defaults::kBerValues)),
        io::table_to_csv(trace_latency_table(trace)),
        io::table_to_csv(trace_ts_table(trace)),
        io::model_to_json(model),
    };
    const auto& names = reproduce_all_files();
    for (std::size_t i = 0; i < names.size(); ++i) io::write_file(outdir / names[i], contents[i]);
}

int dispatch(const CommandSpec& spec, std::ostream& out, std::ostream& err) {
    switch (spec.subcommand) {
        case Subcommand::latency: {
            const auto& a = std::get<LatencyArgs>(spec.args);
            emit(spec, render(sweep_latency(a.ts_bits, a.rates_bps, a.hop_count), spec.format), out);
            break;
        }
        case Subcommand::util_ts: {
            const auto& a = std::get<UtilTsArgs>(spec.args);
            emit(spec,
                 render(sweep_utilization_ts(a.ts_bits, a.users, a.rate_bps, a.window_s), spec.format),
                 out);
            break;
        }
        case Subcommand::util_rate: {
            const auto& a = std::get<UtilRateArgs>(spec.args);
            emit(spec,
                 render(sweep_utilization_rate(a.ts_bits, a.users, a.rates_bps, a.window_s),
                        spec.format),
                 out);
            break;
        }
        case Subcommand::util_ber: {
            const auto& a = std::get<UtilBerArgs>(spec.args);
            emit(spec,
                 render(sweep_utilization_ber(a.ts_bits, a.users, a.rate_bps, a.ber, a.window_s),
                        spec.format),
                 out);
            break;
        }
        case Subcommand::train: {
            const auto& a = std::get<TrainArgs>(spec.args);
            const LinearModel model =
                train(SlopeModel::reference_default(), a.ts_start, a.ts_end_exclusive, a.ts_step);
            emit(spec, io::model_to_json(model), out);
            break;
        }
        case Subcommand::adapt: {
            const auto& a = std::get<AdaptArgs>(spec.args);
            const LinearModel model = a.model_path
                                          ? io::model_from_json(io::read_file(*a.model_path))
                                          : train_reference_default();
            const AdaptationParams params(a.options);
            TraceObserver pacer;
            if (a.real_time) {
                pacer = [&err, period = std::chrono::milliseconds(a.pace_ms)](const TraceRecord& r) {
                    err << "step " << r.step << ": ts " << r.ts_bits << " bits, latency "
                        << io::format_number(r.latency_ms) << " ms"
                        << (r.threshold_event ? " (threshold reached)" : "") << '\n';
                    std::this_thread::sleep_for(period);
                };
            }
            const AdaptationTrace trace = run_adaptation(model, params, pacer);
            emit(spec,
                 spec.format == OutputFormat::json ? io::trace_to_json(trace)
                                                   : io::trace_to_csv(trace),
                 out);
            break;
        }
        case Subcommand::reproduce_all:
            reproduce_all(std::get<ReproduceArgs>(spec.args).outdir);
            break;
    }
    return kOk;
}

}  // namespace

int run(const CommandSpec& spec, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(spec, out, err);
    } catch (const UsageError& e) {
        err << "uavchan: " << e.what() << '\n';
        return kUsageError;
    } catch (const IoError& e) {
        err << "uavchan: " << e.what() << '\n';
        return kIoError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "uavchan: " << e.what() << '\n';
        return kIoError;
    } catch (const DomainError& e) {
        err << "uavchan: " << e.what() << '\n';
        return kDomainError;
    }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::variant<CommandSpec, HelpRequest> parsed;
    try {
        parsed = parse_args(args);
    } catch (const UsageError& e) {
        err << "uavchan: " << e.what() << '\n';
        return kUsageError;
    }
    if (auto* help = std::get_if<HelpRequest>(&parsed)) {
        out << help->text;
        return kOk;
    }
    return run(std::get<CommandSpec>(parsed), out, err);
}

}  // namespace uavchan::cli
