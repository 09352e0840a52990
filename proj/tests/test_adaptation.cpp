#include "uavchan/adaptation.hpp"
#include "uavchan/errors.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace uavchan;

namespace {

LinearModel identity_model() {
    LinearModel m;
    m.coef_latency = 1.0;
    m.training_meta.sample_count = 4;
    return m;
}

/// Model that predicts `value` bits for every input.
LinearModel constant_model(double value) {
    LinearModel m;
    m.intercept = value;
    m.training_meta.sample_count = 4;
    return m;
}

AdaptationParams params_with(int events) {
    AdaptationOptions o;
    o.max_threshold_events = events;
    return AdaptationParams(o);
}

// Frozen from a straight-line Python run of the published loop: model
// prediction 4741 at (2 ms, 6 Mbps), start 3741, slope 0.0005.
const std::vector<std::int64_t> kGoldenTs = {3741, 3841, 3941, 4041, 3641, 3741, 3841,
                                             3941, 4041, 3641, 3741, 3841, 3941, 4041};

}  // namespace

TEST(AdaptationParams, DefaultsMatchPublishedRun) {
    const AdaptationParams p;
    EXPECT_EQ(p.target_latency_ms(), 2.0);
    EXPECT_EQ(p.data_rate_mbps(), 6.0);
    EXPECT_EQ(p.initial_offset_bits(), 1000);
    EXPECT_EQ(p.increase_step_bits(), 100);
    EXPECT_EQ(p.decrease_step_bits(), 400);
    EXPECT_EQ(p.max_threshold_events(), 3);
    EXPECT_EQ(p.min_ts_bits(), 100);
    EXPECT_EQ(p.slope(), 0.0005);
}

TEST(AdaptationParams, DecreaseMustExceedIncrease) {
    AdaptationOptions o;
    o.increase_step_bits = 400;
    o.decrease_step_bits = 400;
    EXPECT_THROW(AdaptationParams{o}, DomainError);
}

TEST(AdaptationParams, RateMustBeInSlopeModel) {
    AdaptationOptions o;
    o.data_rate_mbps = 7;
    EXPECT_THROW(AdaptationParams{o}, DomainError);
}

TEST(InitialTs, IdentityModelMinusOffset) {
    AdaptationOptions o;
    o.target_latency_ms = 4000;
    const auto start = initial_ts(identity_model(), AdaptationParams(o));
    EXPECT_EQ(start.ts_bits, 3000);
    EXPECT_FALSE(start.clamped);
}

TEST(InitialTs, ReferenceModel) {
    const auto start = initial_ts(train_reference_default(), AdaptationParams{});
    EXPECT_EQ(start.ts_bits, 3741);
    EXPECT_FALSE(start.clamped);
}

TEST(InitialTs, ClampsToMinimum) {
    const auto start = initial_ts(constant_model(500), AdaptationParams{});
    EXPECT_EQ(start.ts_bits, 100);
    EXPECT_TRUE(start.clamped);
    const auto trace = run_adaptation(constant_model(500), AdaptationParams{});
    EXPECT_TRUE(trace.start_clamped);
    EXPECT_EQ(trace.start_ts_bits, 100);
}

TEST(InitialTs, PropagatesNonPhysicalPrediction) {
    EXPECT_THROW(initial_ts(constant_model(-10), AdaptationParams{}), NonPhysicalPredictionError);
}

TEST(Step, ThresholdCutsByDecrease) {
    const auto [next, rec] = step({0, 4000, 0, false}, AdaptationParams{});
    EXPECT_EQ(rec.latency_ms, 2.0);
    EXPECT_TRUE(rec.threshold_event);
    EXPECT_EQ(rec.ts_bits, 4000);
    EXPECT_EQ(next.ts_bits, 3600);
    EXPECT_EQ(next.events_count, 1);
    EXPECT_EQ(next.step, 1);
}

TEST(Step, BelowThresholdGrowsByIncrease) {
    const auto [next, rec] = step({5, 3900, 1, false}, AdaptationParams{});
    EXPECT_DOUBLE_EQ(rec.latency_ms, 1.95);
    EXPECT_FALSE(rec.threshold_event);
    EXPECT_EQ(rec.step, 5);
    EXPECT_EQ(next.ts_bits, 4000);
    EXPECT_EQ(next.events_count, 1);
}

TEST(Step, ClampsAtMinimum) {
    AdaptationOptions o;
    o.target_latency_ms = 0.01;  // every size is over target
    const auto [next, rec] = step({0, 100, 0, false}, AdaptationParams(o));
    EXPECT_TRUE(rec.threshold_event);
    EXPECT_EQ(next.ts_bits, 100);
    EXPECT_TRUE(next.clamped);
}

TEST(RunAdaptation, DefaultsMatchGoldenTrace) {
    const auto trace = run_adaptation(train_reference_default(), AdaptationParams{});
    EXPECT_EQ(trace.start_ts_bits, 3741);
    ASSERT_EQ(trace.records.size(), kGoldenTs.size());
    for (std::size_t i = 0; i < kGoldenTs.size(); ++i) {
        EXPECT_EQ(trace.records[i].step, static_cast<std::int64_t>(i));
        EXPECT_EQ(trace.records[i].ts_bits, kGoldenTs[i]);
        EXPECT_LT(trace.records[i].latency_ms, 2.05);
    }
    EXPECT_EQ(trace.event_count(), 3);
    EXPECT_TRUE(trace.records.back().threshold_event);
    EXPECT_FALSE(trace.start_clamped);
    EXPECT_FALSE(trace.clamped_during_run);
}

TEST(RunAdaptation, MatchesStraightLineLoop) {
    const auto trace = run_adaptation(train_reference_default(), AdaptationParams{});
    const auto rows = oracle::sawtooth_loop(3741, 0.0005, 2.0, 100, 400, 3);
    ASSERT_EQ(rows.size(), trace.records.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(trace.records[i].ts_bits, rows[i].d);
        EXPECT_EQ(trace.records[i].latency_ms, rows[i].y);
        EXPECT_EQ(trace.records[i].threshold_event, rows[i].event);
    }
}

TEST(RunAdaptation, ImmediateThresholdSingleRecord) {
    const auto trace = run_adaptation_from(4000, params_with(1));
    ASSERT_EQ(trace.records.size(), 1u);
    EXPECT_EQ(trace.records[0].latency_ms, 2.0);
    EXPECT_TRUE(trace.records[0].threshold_event);
}

TEST(RunAdaptation, ObserverSeesEveryRecord) {
    std::vector<TraceRecord> seen;
    const auto trace = run_adaptation(train_reference_default(), AdaptationParams{},
                                      [&](const TraceRecord& r) { seen.push_back(r); });
    EXPECT_EQ(seen, trace.records);
}

TEST(RunAdaptation, StepCapRaisesNonTermination) {
    AdaptationOptions o;
    o.max_steps = 5;
    EXPECT_THROW(run_adaptation(train_reference_default(), AdaptationParams(o)), NonTerminationError);
}

TEST(RunAdaptation, IsDeterministic) {
    const auto model = train_reference_default();
    EXPECT_EQ(run_adaptation(model, AdaptationParams{}).records,
              run_adaptation(model, AdaptationParams{}).records);
}

TEST(RunAdaptation, RejectsStartBelowMinimum) {
    EXPECT_THROW(run_adaptation_from(50, AdaptationParams{}), DomainError);
}
