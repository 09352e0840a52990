#include "uavchan/adaptation.hpp"

#include "uavchan/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace uavchan {

AdaptationParams::AdaptationParams(AdaptationOptions options) : o_(std::move(options)), slope_(0) {
    if (!(o_.target_latency_ms > 0.0) || !std::isfinite(o_.target_latency_ms)) {
        throw DomainError("target latency must be positive");
    }
    if (!(o_.data_rate_mbps > 0.0) || !std::isfinite(o_.data_rate_mbps)) {
        throw DomainError("data rate must be positive");
    }
    if (o_.initial_offset_bits < 0) throw DomainError("initial offset must be non-negative");
    if (o_.increase_step_bits < 1) throw DomainError("increase step must be at least 1 bit");
    if (o_.decrease_step_bits <= o_.increase_step_bits) {
        throw DomainError("decrease step (" + std::to_string(o_.decrease_step_bits) +
                          ") must exceed increase step (" +
                          std::to_string(o_.increase_step_bits) + ")");
    }
    if (o_.max_threshold_events < 1) throw DomainError("need at least one threshold event");
    if (o_.min_ts_bits < 1) throw DomainError("minimum transaction size must be at least 1 bit");
    if (o_.max_steps < 1) throw DomainError("step cap must be positive");
    if (!o_.slope_model.contains(o_.data_rate_mbps)) {
        throw DomainError("slope model has no entry for " + std::to_string(o_.data_rate_mbps) +
                          " Mbps");
    }
    slope_ = o_.slope_model.slope(o_.data_rate_mbps);
}

int AdaptationTrace::event_count() const {
    return static_cast<int>(std::count_if(records.begin(), records.end(),
                                          [](const TraceRecord& r) { return r.threshold_event; }));
}

InitialTs initial_ts(const LinearModel& model, const AdaptationParams& params) {
    const std::int64_t predicted =
        predict_ts(model, params.target_latency_ms(), params.data_rate_mbps());
    const std::int64_t start = predicted - params.initial_offset_bits();
    if (start < params.min_ts_bits()) return {params.min_ts_bits(), true};
    return {start, false};
}

StepResult step(const ControllerState& state, const AdaptationParams& params) {
    const double latency_ms = params.slope() * static_cast<double>(state.ts_bits);
    const bool event = latency_ms >= params.target_latency_ms();

    ControllerState next = state;
    next.step = state.step + 1;
    std::int64_t ts = state.ts_bits;
    if (event) {
        ++next.events_count;
        ts -= params.decrease_step_bits();
    } else {
        ts += params.increase_step_bits();
    }
    if (ts < params.min_ts_bits()) {
        ts = params.min_ts_bits();
        next.clamped = true;
    }
    next.ts_bits = ts;
    return {next, {state.step, state.ts_bits, latency_ms, event}};
}

AdaptationTrace run_adaptation_from(std::int64_t start_ts_bits, const AdaptationParams& params,
                                    const TraceObserver& observer) {
    if (start_ts_bits < params.min_ts_bits()) {
        throw DomainError("start size " + std::to_string(start_ts_bits) +
                          " is below the minimum transaction size");
    }
    AdaptationTrace trace{params, start_ts_bits, false, false, {}};
    ControllerState state{0, start_ts_bits, 0, false};
    while (state.events_count < params.max_threshold_events()) {
        if (state.step >= params.max_steps()) {
            throw NonTerminationError("adaptation did not reach " +
                                      std::to_string(params.max_threshold_events()) +
                                      " threshold events within " +
                                      std::to_string(params.max_steps()) + " steps");
        }
        auto [next, record] = step(state, params);
        trace.records.push_back(record);
        if (observer) observer(record);
        state = next;
    }
    trace.clamped_during_run = state.clamped;
    return trace;
}

AdaptationTrace run_adaptation(const LinearModel& model, const AdaptationParams& params,
                               const TraceObserver& observer) {
    const InitialTs start = initial_ts(model, params);
    AdaptationTrace trace = run_adaptation_from(start.ts_bits, params, observer);
    trace.start_clamped = start.clamped;
    return trace;
}

}  // namespace uavchan
