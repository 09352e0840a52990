#include "uavchan/experiments.hpp"

#include "uavchan/channel_model.hpp"
#include "uavchan/errors.hpp"

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>

namespace uavchan {

SweepTable::SweepTable(std::string title, std::vector<std::string> column_names,
                       std::vector<double> cells)
    : title_(std::move(title)), columns_(std::move(column_names)), cells_(std::move(cells)) {
    if (columns_.empty()) throw DomainError("table needs at least one column");
    if (cells_.size() % columns_.size() != 0) {
        throw DomainError("table '" + title_ + "': cell count is not a multiple of column count");
    }
    for (double v : cells_) {
        if (!std::isfinite(v)) throw DomainError("table '" + title_ + "' has a non-finite value");
    }
}

std::span<const double> SweepTable::row(std::size_t r) const {
    if (r >= row_count()) throw std::out_of_range("row index out of range");
    return std::span<const double>(cells_).subspan(r * columns_.size(), columns_.size());
}

double SweepTable::at(std::size_t r, std::size_t c) const {
    if (c >= columns_.size()) throw std::out_of_range("column index out of range");
    return row(r)[c];
}

namespace {

template <typename T>
void require_non_empty(std::span<const T> list, const char* name) {
    if (list.empty()) throw DomainError(std::string(name) + " list is empty");
}

// Runs one checked evaluation per distinct parameter value so that any
// domain error surfaces here, before the non-throwing kernels run.
void validate_ts(std::span<const std::int64_t> ts_list) {
    for (auto ts : ts_list) {
        if (ts < 1) throw DomainError("transaction size must be at least 1 bit");
    }
}

void validate_rates(std::span<const double> rates) {
    for (double r : rates) (void)latency(1, r, 1);
}

// Interleaves parameter columns with a result column into row-major cells.
std::vector<double> assemble(std::initializer_list<std::span<const double>> columns) {
    const std::size_t n_cols = columns.size();
    const std::size_t n_rows = columns.begin()->size();
    std::vector<double> cells(n_rows * n_cols);
    std::size_t c = 0;
    for (auto col : columns) {
        for (std::size_t r = 0; r < n_rows; ++r) cells[r * n_cols + c] = col[r];
        ++c;
    }
    return cells;
}

}  // namespace

SweepTable sweep_latency(std::span<const std::int64_t> ts_list,
                         std::span<const double> rate_bps_list, int hop_count, Execution exec) {
    require_non_empty(ts_list, "transaction size");
    require_non_empty(rate_bps_list, "data rate");
    validate_ts(ts_list);
    validate_rates(rate_bps_list);
    (void)latency(1, 1.0, hop_count);

    const std::size_t n = ts_list.size() * rate_bps_list.size();
    std::vector<double> rate(n), ts(n), out(n);
    std::size_t i = 0;
    for (double r : rate_bps_list) {
        for (auto t : ts_list) {
            rate[i] = r;
            ts[i] = static_cast<double>(t);
            ++i;
        }
    }
    kernels::latency({ts, rate, static_cast<double>(hop_count)}, out, exec);
    return SweepTable("Latency vs transaction size", {"data_rate_bps", "ts_bits", "latency_ms"},
                      assemble({rate, ts, out}));
}

SweepTable sweep_utilization_ts(std::span<const std::int64_t> ts_list,
                                std::span<const int> users_list, double rate_bps, double window_s,
                                Execution exec) {
    require_non_empty(ts_list, "transaction size");
    require_non_empty(users_list, "user count");
    validate_ts(ts_list);
    for (int u : users_list) (void)utilization(1, u, rate_bps, window_s);
    (void)utilization(1, 1, rate_bps, window_s);

    const std::size_t n = ts_list.size() * users_list.size();
    std::vector<double> users(n), ts(n), rate(n, rate_bps), ber(n, 0.0), out(n);
    std::size_t i = 0;
    for (int u : users_list) {
        for (auto t : ts_list) {
            users[i] = u;
            ts[i] = static_cast<double>(t);
            ++i;
        }
    }
    kernels::utilization({ts, users, rate, ber, window_s}, out, exec);
    return SweepTable("Utilization vs transaction size and users",
                      {"num_users", "ts_bits", "utilization_pct"}, assemble({users, ts, out}));
}

SweepTable sweep_utilization_rate(std::int64_t ts_bits, int num_users,
                                  std::span<const double> rate_bps_list, double window_s,
                                  Execution exec) {
    require_non_empty(rate_bps_list, "data rate");
    validate_ts(std::span<const std::int64_t>(&ts_bits, 1));
    for (double r : rate_bps_list) (void)utilization(ts_bits, num_users, r, window_s);

    const std::size_t n = rate_bps_list.size();
    std::vector<double> ts(n, static_cast<double>(ts_bits)), users(n, num_users),
        rate(rate_bps_list.begin(), rate_bps_list.end()), ber(n, 0.0), out(n);
    kernels::utilization({ts, users, rate, ber, window_s}, out, exec);
    return SweepTable("Utilization vs data rate", {"data_rate_bps", "utilization_pct"},
                      assemble({rate, out}));
}

SweepTable sweep_utilization_ber(std::int64_t ts_bits, int num_users, double rate_bps,
                                 std::span<const double> ber_list, double window_s,
                                 Execution exec) {
    require_non_empty(ber_list, "BER");
    validate_ts(std::span<const std::int64_t>(&ts_bits, 1));
    for (double b : ber_list) (void)utilization_ber(ts_bits, num_users, rate_bps, b, window_s);

    const std::size_t n = ber_list.size();
    std::vector<double> ts(n, static_cast<double>(ts_bits)), users(n, num_users),
        rate(n, rate_bps), ber(ber_list.begin(), ber_list.end()), out(n);
    kernels::utilization({ts, users, rate, ber, window_s}, out, exec);
    return SweepTable("Utilization vs bit error rate", {"ber", "utilization_pct"},
                      assemble({ber, out}));
}

SweepTable trace_latency_table(const AdaptationTrace& trace) {
    std::vector<double> cells;
    cells.reserve(trace.records.size() * 2);
    for (const auto& r : trace.records) {
        cells.push_back(static_cast<double>(r.step));
        cells.push_back(r.latency_ms);
    }
    return SweepTable("Adaptation latency over time", {"step", "latency_ms"}, std::move(cells));
}

SweepTable trace_ts_table(const AdaptationTrace& trace) {
    std::vector<double> cells;
    cells.reserve(trace.records.size() * 2);
    for (const auto& r : trace.records) {
        cells.push_back(static_cast<double>(r.step));
        cells.push_back(static_cast<double>(r.ts_bits));
    }
    return SweepTable("Adaptation transaction size over time", {"step", "ts_bits"},
                      std::move(cells));
}

}  // namespace uavchan
