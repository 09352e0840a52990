#pragma once

// Parameter sweeps over the channel metrics. Each sweep emits one row per
// point of the cross product of its list arguments, outer list slowest.

#include "uavchan/adaptation.hpp"
#include "uavchan/kernels.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace uavchan {

using kernels::Execution;

/// Titled numeric table, stored row-major.
class SweepTable {
public:
    /// Throws DomainError if the cell count is not a multiple of the column
    /// count or any value is non-finite.
    SweepTable(std::string title, std::vector<std::string> column_names, std::vector<double> cells);

    const std::string& title() const noexcept { return title_; }
    const std::vector<std::string>& column_names() const noexcept { return columns_; }
    std::size_t column_count() const noexcept { return columns_.size(); }
    std::size_t row_count() const noexcept { return cells_.size() / columns_.size(); }
    std::span<const double> row(std::size_t r) const;
    double at(std::size_t r, std::size_t c) const;
    std::span<const double> cells() const noexcept { return cells_; }

    friend bool operator==(const SweepTable&, const SweepTable&) = default;

private:
    std::string title_;
    std::vector<std::string> columns_;
    std::vector<double> cells_;
};

namespace defaults {

inline constexpr std::array<std::int64_t, 5> kTsBits = {10, 100, 1000, 10000, 100000};
/// Rate used by the latency and size/user utilization tables (1.54 Mbps).
inline constexpr double kBaseRateBps = 1.54e6;
inline constexpr std::array<double, 3> kRelayRatesBps = {6e6, 10e6, 45e6};
inline constexpr int kHopCount = 3;
inline constexpr std::array<int, 3> kUsers = {1, 3, 5};
inline constexpr double kWindowS = 1.0;

inline constexpr std::int64_t kRateSweepTsBits = 100000;
inline constexpr int kRateSweepUsers = 5;
/// Note the 1.544 Mbps T1 line rate here, as opposed to 1.54 above.
inline constexpr std::array<double, 7> kRateSweepRatesBps = {1.544e6, 2.048e6, 4e6, 6e6,
                                                             10e6,    34e6,    45e6};

inline constexpr std::int64_t kBerSweepTsBits = 10000;
inline constexpr int kBerSweepUsers = 5;
inline constexpr double kBerSweepRateBps = 45e6;
inline constexpr std::array<double, 6> kBerValues = {0.0, 0.01, 0.02, 0.03, 0.04, 0.05};

}  // namespace defaults

/// Columns (data_rate_bps, ts_bits, latency_ms).
SweepTable sweep_latency(std::span<const std::int64_t> ts_list,
                         std::span<const double> rate_bps_list, int hop_count,
                         Execution exec = Execution::parallel);

/// Columns (num_users, ts_bits, utilization_pct).
SweepTable sweep_utilization_ts(std::span<const std::int64_t> ts_list,
                                std::span<const int> users_list, double rate_bps,
                                double window_s = defaults::kWindowS,
                                Execution exec = Execution::parallel);

/// Columns (data_rate_bps, utilization_pct).
SweepTable sweep_utilization_rate(std::int64_t ts_bits, int num_users,
                                  std::span<const double> rate_bps_list,
                                  double window_s = defaults::kWindowS,
                                  Execution exec = Execution::parallel);

/// Columns (ber, utilization_pct).
SweepTable sweep_utilization_ber(std::int64_t ts_bits, int num_users, double rate_bps,
                                 std::span<const double> ber_list,
                                 double window_s = defaults::kWindowS,
                                 Execution exec = Execution::parallel);

/// Columns (step, latency_ms).
SweepTable trace_latency_table(const AdaptationTrace& trace);
/// Columns (step, ts_bits).
SweepTable trace_ts_table(const AdaptationTrace& trace);

}  // namespace uavchan
