// Acceptance runner: evaluates each exit criterion at its pinned tolerance
// and prints one PASS/FAIL line per criterion. Exit status is nonzero if
// any criterion fails.

#include "uavchan/channel_model.hpp"
#include "uavchan/cli.hpp"
#include "uavchan/io.hpp"
#include "uavchan/regression.hpp"

#include "../oracles.hpp"
#include "../property_checks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace uavchan;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    const char* id;
    const char* name;
    std::function<Outcome()> check;
};

// Hand-evaluated utilizations (exact rationals, then decimal expansion).
constexpr double kUtilTs5Users100k = 50000000.0 / 1540000.0;  // 32.46753246753246...
constexpr double kUtilRate1544 = 6250.0 / 193.0;             // 32.38341968911917...
constexpr double kUtilRate45 = 10.0 / 9.0;                   // 1.11111...
constexpr double kUtilBer0 = 1.0 / 9.0;                      // 0.111111...
constexpr double kUtilBer5 = 1.0 / 8.55;                     // 0.116959...

// Frozen numpy pseudoinverse fit of the 297-row training set.
constexpr double kGoldenIntercept = -395.4589488230536;
constexpr double kGoldenCoefLatency = 2254.6383467455335;
constexpr double kGoldenCoefRate = 104.56885308403405;

std::string fmt(double v) { return io::format_number(v); }

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli_run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::main_entry(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> parse_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "uavchan_acceptance" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

Outcome slope_reproduction() {
    std::vector<std::int64_t> sizes = {100};
    for (std::int64_t ts = 500; ts <= 10000; ts += 500) sizes.push_back(ts);
    double worst_rounding_gap = 0;
    for (auto ts : sizes) {
        const double t = static_cast<double>(ts);
        const double l6 = latency(ts, 6e6, 3);
        const double l10 = latency(ts, 10e6, 3);
        const double l45 = latency(ts, 45e6, 3);
        if (std::abs(l6 - 0.0005 * t) > 1e-12 * 0.0005 * t) {
            return {false, "6 Mbps at TS=" + std::to_string(ts) + ": " + fmt(l6)};
        }
        if (std::abs(l10 - 0.0003 * t) > 1e-12 * 0.0003 * t) {
            return {false, "10 Mbps at TS=" + std::to_string(ts) + ": " + fmt(l10)};
        }
        if (l45 != t / 15000.0) {
            return {false, "45 Mbps at TS=" + std::to_string(ts) + ": " + fmt(l45) +
                               " != " + fmt(t / 15000.0)};
        }
        const double rounded = 0.00007 * t;
        const double gap = std::abs(rounded - l45) / rounded;
        worst_rounding_gap = std::max(worst_rounding_gap, gap);
        if (!(gap < 0.05)) return {false, "45 Mbps rounding gap " + fmt(gap)};
    }
    return {true, std::to_string(sizes.size()) + " sizes; 45 Mbps vs 0.00007*TS gap " +
                      fmt(worst_rounding_gap * 100) + "%"};
}

Outcome default_tables() {
    const auto uts = cli_run({"util-ts", "--ts", "100000", "--users", "5", "--rate", "1.54e6",
                              "--window", "1"});
    const auto urate = cli_run({"util-rate"});
    const auto uber = cli_run({"util-ber"});
    if (uts.code || urate.code || uber.code) return {false, "CLI returned nonzero"};
    const double v_ts = parse_csv(uts.out).at(0).at(2);
    const auto rate_rows = parse_csv(urate.out);
    const auto ber_rows = parse_csv(uber.out);
    const double r_first = rate_rows.front().at(1), r_last = rate_rows.back().at(1);
    const double b_first = ber_rows.front().at(1), b_last = ber_rows.back().at(1);
    const bool ok = std::abs(v_ts - kUtilTs5Users100k) <= 1e-6 &&
                    std::abs(r_first - kUtilRate1544) <= 1e-4 &&
                    std::abs(r_last - kUtilRate45) <= 1e-4 &&
                    std::abs(b_first - kUtilBer0) <= 1e-6 && std::abs(b_last - kUtilBer5) <= 1e-6;
    return {ok, "util-ts " + fmt(v_ts) + "; util-rate " + fmt(r_first) + " .. " + fmt(r_last) +
                    "; util-ber " + fmt(b_first) + " .. " + fmt(b_last)};
}

Outcome ols_oracle_equivalence() {
    const auto samples = generate_training_set(SlopeModel::reference_default(), 100, 10000, 100);
    if (samples.size() != 297) return {false, "training set has " + std::to_string(samples.size())};
    const LinearModel m = fit_ols(samples);
    const auto pinv = oracle::ols_pinv(samples);
    const std::array<double, 3> fitted = {m.intercept, m.coef_latency, m.coef_rate};
    const std::array<double, 3> frozen = {kGoldenIntercept, kGoldenCoefLatency, kGoldenCoefRate};
    double worst = 0;
    for (int i = 0; i < 3; ++i) {
        worst = std::max(worst, std::abs(fitted[i] - pinv[i]) / std::abs(pinv[i]));
        worst = std::max(worst, std::abs(fitted[i] - frozen[i]) / std::abs(frozen[i]));
    }
    double worst_projection = 0;
    for (double p : oracle::normalized_residual_projections(samples, m)) {
        worst_projection = std::max(worst_projection, p);
    }
    return {worst <= 1e-8 && worst_projection <= 1e-10,
            "max coef rel diff " + fmt(worst) + ", max residual projection " +
                fmt(worst_projection)};
}

Outcome adaptation_trace() {
    const auto dir = scratch_dir("adapt");
    const auto model_path = (dir / "model.json").string();
    if (cli_run({"train", "--out", model_path}).code != 0) return {false, "train failed"};
    const auto run = cli_run({"adapt", "--model", model_path});
    if (run.code != 0) return {false, "adapt failed: " + run.err};
    const auto rows = parse_csv(run.out);

    // Oracle: pseudoinverse prediction at (2 ms, 6 Mbps), minus 1000, then
    // the literal loop.
    const auto samples = generate_training_set(SlopeModel::reference_default(), 100, 10000, 100);
    const auto beta = oracle::ols_pinv(samples);
    const auto start = static_cast<std::int64_t>(std::round(beta[0] + beta[1] * 2.0 + beta[2] * 6.0)) - 1000;
    const auto expected = oracle::sawtooth_loop(start, 0.0005, 2.0, 100, 400, 3);

    if (rows.size() != expected.size()) {
        return {false, std::to_string(rows.size()) + " records, oracle has " +
                           std::to_string(expected.size())};
    }
    int events = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto ts = static_cast<std::int64_t>(rows[i][1]);
        const double lat = rows[i][2];
        const bool event = rows[i][3] == 1.0;
        if (ts != expected[i].d) return {false, "TS mismatch at step " + std::to_string(i)};
        if (!(lat < 2.05)) return {false, "latency " + fmt(lat) + " at step " + std::to_string(i)};
        if (event) {
            ++events;
            if (i + 1 < rows.size()) {
                const auto next_ts = static_cast<std::int64_t>(rows[i + 1][1]);
                const double drop = lat - rows[i + 1][2];
                if (ts - next_ts != 400) return {false, "TS drop after event is not 400 bits"};
                if (std::abs(drop - 0.2) > 1e-12 * 0.2) {
                    return {false, "latency drop " + fmt(drop) + " after step " + std::to_string(i)};
                }
            }
        }
    }
    if (events != 3) return {false, std::to_string(events) + " threshold events"};
    return {true, std::to_string(rows.size()) + " records from TS " + std::to_string(start) +
                      ", 3 events, sequence equals oracle loop"};
}

Outcome property_suites() {
    struct Named {
        const char* name;
        props::CheckResult result;
    };
    const std::vector<Named> results = {
        {"latency additivity", props::latency_additive_in_hops(101, 500)},
        {"latency homogeneity", props::latency_homogeneous(102, 500)},
        {"utilization scaling", props::utilization_scaling(103, 500)},
        {"BER=0 identity", props::zero_ber_bit_identical(104, 500)},
        {"BER monotonicity (50-point grid)", props::ber_strictly_increasing(105, 20)},
        {"exact-plane OLS recovery", props::ols_exact_plane_recovery(106, 100)},
        {"controller termination", props::controller_terminates(107, 200)},
    };
    std::string detail;
    bool ok = true;
    for (const auto& n : results) {
        if (!n.result.ok) {
            ok = false;
            detail += std::string(n.name) + " failed: " + n.result.counterexample + "; ";
        }
    }
    if (ok) detail = std::to_string(results.size()) + " suites held";
    return {ok, detail};
}

Outcome reproduce_determinism() {
    const auto a = scratch_dir("repro_a");
    const auto b = scratch_dir("repro_b");
    if (cli_run({"reproduce-all", "--outdir", a.string()}).code != 0 ||
        cli_run({"reproduce-all", "--outdir", b.string()}).code != 0) {
        return {false, "reproduce-all failed"};
    }
    std::size_t files = 0;
    for (const auto& name : cli::reproduce_all_files()) {
        if (!fs::exists(a / name)) return {false, name + " missing"};
        if (io::read_file(a / name) != io::read_file(b / name)) return {false, name + " differs"};
        ++files;
    }
    return {files == 7, std::to_string(files) + " files byte-identical"};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"AC1", "slope reproduction", slope_reproduction},
        {"AC2", "default table reproduction", default_tables},
        {"AC3", "OLS oracle equivalence", ols_oracle_equivalence},
        {"AC4", "adaptation trace", adaptation_trace},
        {"AC5", "property suites", property_suites},
        {"AC6", "reproduce-all determinism", reproduce_determinism},
    };
    const auto t0 = std::chrono::steady_clock::now();
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("[%s] %s %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%zu/%zu criteria passed in %.3f s\n", criteria.size() - failures, criteria.size(),
                secs);
    return failures == 0 ? 0 : 1;
}
