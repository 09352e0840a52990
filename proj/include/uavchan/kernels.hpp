#pragma once

// Batch evaluation of the channel metrics over flattened parameter rows.
//
// Two implementations share one signature: `serial` is the reference kept
// for testing, `parallel` splits rows across OpenMP threads. Each output
// cell depends only on its own row, so both produce bit-identical results
// in the same order. Inputs are assumed validated; the kernels never throw.

#include <span>

namespace uavchan::kernels {

enum class Execution { serial, parallel };

struct LatencyBatch {
    std::span<const double> ts_bits;
    std::span<const double> data_rate_bps;
    double hop_count;
};

struct UtilizationBatch {
    std::span<const double> ts_bits;
    std::span<const double> num_users;
    std::span<const double> data_rate_bps;
    std::span<const double> ber;
    double window_s;
};

namespace serial {
void latency(const LatencyBatch& batch, std::span<double> out) noexcept;
void utilization(const UtilizationBatch& batch, std::span<double> out) noexcept;
}  // namespace serial

namespace parallel {
void latency(const LatencyBatch& batch, std::span<double> out) noexcept;
void utilization(const UtilizationBatch& batch, std::span<double> out) noexcept;
/// Threads OpenMP would use for a parallel region; 1 without OpenMP.
int thread_count() noexcept;
}  // namespace parallel

inline void latency(const LatencyBatch& batch, std::span<double> out, Execution exec) noexcept {
    if (exec == Execution::parallel) {
        parallel::latency(batch, out);
    } else {
        serial::latency(batch, out);
    }
}

inline void utilization(const UtilizationBatch& batch, std::span<double> out,
                        Execution exec) noexcept {
    if (exec == Execution::parallel) {
        parallel::utilization(batch, out);
    } else {
        serial::utilization(batch, out);
    }
}

}  // namespace uavchan::kernels
