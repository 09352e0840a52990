#pragma once

// Closed-loop transaction-size controller.
//
// Starting from the model's prediction minus an offset, the controller grows
// the transaction size by a small step each period. Whenever latency reaches
// the target it records a threshold event and cuts the size by a larger step.
// The run ends after a fixed number of events, which yields a sawtooth in
// both latency and transaction size. Time is the step index; nothing here
// sleeps or reads a clock.

#include "uavchan/regression.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace uavchan {

struct AdaptationOptions {
    double target_latency_ms = 2.0;
    double data_rate_mbps = 6.0;
    std::int64_t initial_offset_bits = 1000;
    std::int64_t increase_step_bits = 100;
    std::int64_t decrease_step_bits = 400;
    int max_threshold_events = 3;
    std::int64_t min_ts_bits = 100;
    std::int64_t max_steps = 1'000'000;
    SlopeModel slope_model = SlopeModel::reference_default();
};

/// Validated controller tuning. Construction throws DomainError unless
/// decrease_step_bits > increase_step_bits and the slope model covers the rate.
class AdaptationParams {
public:
    AdaptationParams() : AdaptationParams(AdaptationOptions{}) {}
    explicit AdaptationParams(AdaptationOptions options);

    double target_latency_ms() const noexcept { return o_.target_latency_ms; }
    double data_rate_mbps() const noexcept { return o_.data_rate_mbps; }
    std::int64_t initial_offset_bits() const noexcept { return o_.initial_offset_bits; }
    std::int64_t increase_step_bits() const noexcept { return o_.increase_step_bits; }
    std::int64_t decrease_step_bits() const noexcept { return o_.decrease_step_bits; }
    int max_threshold_events() const noexcept { return o_.max_threshold_events; }
    std::int64_t min_ts_bits() const noexcept { return o_.min_ts_bits; }
    std::int64_t max_steps() const noexcept { return o_.max_steps; }
    const SlopeModel& slope_model() const noexcept { return o_.slope_model; }
    /// Slope for the configured data rate, ms per bit.
    double slope() const noexcept { return slope_; }

    const AdaptationOptions& options() const noexcept { return o_; }

private:
    AdaptationOptions o_;
    double slope_;
};

struct TraceRecord {
    std::int64_t step;
    std::int64_t ts_bits;
    double latency_ms;
    bool threshold_event;

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct ControllerState {
    std::int64_t step = 0;
    std::int64_t ts_bits = 0;
    int events_count = 0;
    /// Set once any update has been raised to min_ts_bits.
    bool clamped = false;

    friend bool operator==(const ControllerState&, const ControllerState&) = default;
};

struct StepResult {
    ControllerState next;
    TraceRecord record;
};

struct AdaptationTrace {
    AdaptationParams params;
    std::int64_t start_ts_bits = 0;
    /// The starting size was raised to min_ts_bits.
    bool start_clamped = false;
    /// Some update during the run was raised to min_ts_bits.
    bool clamped_during_run = false;
    std::vector<TraceRecord> records;

    int event_count() const;
};

struct InitialTs {
    std::int64_t ts_bits;
    bool clamped;
};

/// Predicted size at the target latency minus the offset, raised to min_ts_bits.
InitialTs initial_ts(const LinearModel& model, const AdaptationParams& params);

/// One controller period.
StepResult step(const ControllerState& state, const AdaptationParams& params);

/// Called after each record is produced; used for pacing and live output.
using TraceObserver = std::function<void(const TraceRecord&)>;

/// Runs `step` from `start_ts_bits` until max_threshold_events events.
/// Throws NonTerminationError if max_steps is reached first.
AdaptationTrace run_adaptation_from(std::int64_t start_ts_bits, const AdaptationParams& params,
                                    const TraceObserver& observer = {});

/// initial_ts followed by run_adaptation_from.
AdaptationTrace run_adaptation(const LinearModel& model, const AdaptationParams& params,
                               const TraceObserver& observer = {});

}  // namespace uavchan
