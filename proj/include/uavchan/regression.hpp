#pragma once

// Synthetic training data and the ordinary-least-squares predictor of
// transaction size from (latency, data rate).

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace uavchan {

struct TrainingSample {
    double latency_ms;      // feature
    double data_rate_mbps;  // feature, Mbps
    double ts_bits;         // target
};

/// Per-rate linear latency law: latency_ms = slope * ts_bits.
class SlopeModel {
public:
    /// Slopes used for the published training run:
    /// 6 Mbps -> 0.0005, 10 Mbps -> 0.0003, 45 Mbps -> 0.00007 ms/bit.
    /// The 45 Mbps entry is rounded; the exact three-hop value is 1/15000.
    static SlopeModel reference_default();

    /// Slopes derived from the hop-chain latency formula for each rate.
    static SlopeModel exact(std::span<const double> rates_mbps, int hop_count);

    SlopeModel() = default;
    explicit SlopeModel(std::map<double, double> entries);

    bool empty() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }
    bool contains(double rate_mbps) const { return entries_.count(rate_mbps) != 0; }
    /// Throws DomainError when the rate is missing.
    double slope(double rate_mbps) const;
    /// Ascending by rate.
    const std::map<double, double>& entries() const noexcept { return entries_; }

private:
    std::map<double, double> entries_;
};

/// Samples (slope * d, rate, d) for each rate (ascending) and each d in
/// [ts_start, ts_end_exclusive) stepping by ts_step.
std::vector<TrainingSample> generate_training_set(const SlopeModel& slopes, std::int64_t ts_start,
                                                  std::int64_t ts_end_exclusive,
                                                  std::int64_t ts_step);

struct TrainingMeta {
    std::vector<double> rates;
    double ts_start = 0;
    double ts_end_exclusive = 0;
    /// 0 when the samples did not come from a known progression.
    double ts_step = 0;
    std::size_t sample_count = 0;

    friend bool operator==(const TrainingMeta&, const TrainingMeta&) = default;
};

/// Affine model d = intercept + coef_latency * latency_ms + coef_rate * rate_mbps.
struct LinearModel {
    double coef_latency = 0;
    double coef_rate = 0;
    double intercept = 0;
    TrainingMeta training_meta;

    double evaluate(double latency_ms, double data_rate_mbps) const noexcept {
        return intercept + coef_latency * latency_ms + coef_rate * data_rate_mbps;
    }

    friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

inline constexpr std::size_t kParameterCount = 3;

/// Least-squares fit via the normal equations. Requires more samples than
/// parameters and a full-rank design; otherwise throws SingularFitError
/// naming the dependent column ("intercept", "latency_ms" or "data_rate_mbps").
LinearModel fit_ols(std::span<const TrainingSample> samples);

/// generate_training_set followed by fit_ols, with the progression recorded
/// in the training metadata.
LinearModel train(const SlopeModel& slopes, std::int64_t ts_start, std::int64_t ts_end_exclusive,
                  std::int64_t ts_step);

/// The published run: default slopes, d = 100, 200, ..., 9900.
LinearModel train_reference_default();

/// Evaluates the model and rounds half away from zero. Throws
/// NonPhysicalPredictionError when the rounded size is not positive.
std::int64_t predict_ts(const LinearModel& model, double target_latency_ms,
                        double data_rate_mbps);

}  // namespace uavchan
