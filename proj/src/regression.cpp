#include "uavchan/regression.hpp"

#include "uavchan/channel_model.hpp"
#include "uavchan/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace uavchan {

SlopeModel SlopeModel::reference_default() {
    return SlopeModel(std::map<double, double>{{6.0, 0.0005}, {10.0, 0.0003}, {45.0, 0.00007}});
}

SlopeModel SlopeModel::exact(std::span<const double> rates_mbps, int hop_count) {
    std::map<double, double> entries;
    for (double rate : rates_mbps) {
        // Latency of a single bit; the law is linear in size.
        entries[rate] = latency(1, rate * 1e6, hop_count);
    }
    return SlopeModel(std::move(entries));
}

SlopeModel::SlopeModel(std::map<double, double> entries) : entries_(std::move(entries)) {
    for (const auto& [rate, slope] : entries_) {
        if (!(rate > 0.0) || !std::isfinite(rate)) {
            throw DomainError("slope model rate must be positive, got " + std::to_string(rate));
        }
        if (!(slope > 0.0) || !std::isfinite(slope)) {
            throw DomainError("slope for " + std::to_string(rate) + " Mbps must be positive");
        }
    }
}

double SlopeModel::slope(double rate_mbps) const {
    auto it = entries_.find(rate_mbps);
    if (it == entries_.end()) {
        throw DomainError("no slope for data rate " + std::to_string(rate_mbps) + " Mbps");
    }
    return it->second;
}

std::vector<TrainingSample> generate_training_set(const SlopeModel& slopes, std::int64_t ts_start,
                                                  std::int64_t ts_end_exclusive,
                                                  std::int64_t ts_step) {
    if (slopes.empty()) {
        throw DomainError("slope model is empty");
    }
    if (ts_start < 1 || ts_start >= ts_end_exclusive) {
        throw DomainError("transaction size range must satisfy 1 <= start < end");
    }
    if (ts_step < 1) {
        throw DomainError("transaction size step must be at least 1");
    }
    const auto per_rate = static_cast<std::size_t>((ts_end_exclusive - ts_start - 1) / ts_step + 1);
    std::vector<TrainingSample> samples;
    samples.reserve(per_rate * slopes.size());
    for (const auto& [rate, slope] : slopes.entries()) {
        for (std::int64_t d = ts_start; d < ts_end_exclusive; d += ts_step) {
            const auto bits = static_cast<double>(d);
            samples.push_back({slope * bits, rate, bits});
        }
    }
    return samples;
}

namespace {

constexpr std::array<const char*, kParameterCount> kColumnNames = {"intercept", "latency_ms",
                                                                   "data_rate_mbps"};

using Vec3 = std::array<double, kParameterCount>;
using Mat3 = std::array<Vec3, kParameterCount>;

Vec3 design_row(const TrainingSample& s) { return {1.0, s.latency_ms, s.data_rate_mbps}; }

// Lower-triangular Cholesky factor of the column-equilibrated Gram matrix.
// Columns are factored in fixed order, so a vanishing pivot identifies the
// first column that is a linear combination of the ones before it.
struct GramFactor {
    Mat3 lower{};
    Vec3 scale{};

    Vec3 solve(const Vec3& rhs) const {
        Vec3 z{};
        for (std::size_t i = 0; i < kParameterCount; ++i) {
            double acc = rhs[i] / scale[i];
            for (std::size_t k = 0; k < i; ++k) acc -= lower[i][k] * z[k];
            z[i] = acc / lower[i][i];
        }
        Vec3 x{};
        for (std::size_t ii = kParameterCount; ii-- > 0;) {
            double acc = z[ii];
            for (std::size_t k = ii + 1; k < kParameterCount; ++k) acc -= lower[k][ii] * x[k];
            x[ii] = acc / lower[ii][ii];
        }
        for (std::size_t i = 0; i < kParameterCount; ++i) x[i] /= scale[i];
        return x;
    }
};

// Squared sine of the angle between a column and the span of the preceding
// columns; below this the design is treated as rank deficient.
constexpr double kRankTolerance = 1e-12;

GramFactor factor_gram(const Mat3& gram) {
    GramFactor f;
    for (std::size_t j = 0; j < kParameterCount; ++j) {
        if (!(gram[j][j] > 0.0)) {
            throw SingularFitError(kColumnNames[j], std::string("singular fit: column '") +
                                                        kColumnNames[j] + "' is identically zero");
        }
        f.scale[j] = std::sqrt(gram[j][j]);
    }
    for (std::size_t j = 0; j < kParameterCount; ++j) {
        double pivot = gram[j][j] / (f.scale[j] * f.scale[j]);
        for (std::size_t k = 0; k < j; ++k) pivot -= f.lower[j][k] * f.lower[j][k];
        if (!(pivot > kRankTolerance)) {
            throw SingularFitError(kColumnNames[j],
                                   std::string("singular fit: column '") + kColumnNames[j] +
                                       "' is linearly dependent on the preceding columns");
        }
        f.lower[j][j] = std::sqrt(pivot);
        for (std::size_t i = j + 1; i < kParameterCount; ++i) {
            double acc = gram[i][j] / (f.scale[i] * f.scale[j]);
            for (std::size_t k = 0; k < j; ++k) acc -= f.lower[i][k] * f.lower[j][k];
            f.lower[i][j] = acc / f.lower[j][j];
        }
    }
    return f;
}

Vec3 design_transpose_times(std::span<const TrainingSample> samples, const Vec3& coef,
                            bool residual) {
    Vec3 out{};
    for (const auto& s : samples) {
        const Vec3 row = design_row(s);
        double value = s.ts_bits;
        if (residual) value -= row[0] * coef[0] + row[1] * coef[1] + row[2] * coef[2];
        for (std::size_t i = 0; i < kParameterCount; ++i) out[i] += row[i] * value;
    }
    return out;
}

}  // namespace

LinearModel fit_ols(std::span<const TrainingSample> samples) {
    if (samples.size() <= kParameterCount) {
        throw SingularFitError("rows", "singular fit: need more than " +
                                           std::to_string(kParameterCount) + " samples, got " +
                                           std::to_string(samples.size()));
    }
    Mat3 gram{};
    for (const auto& s : samples) {
        if (!std::isfinite(s.latency_ms) || !std::isfinite(s.data_rate_mbps) ||
            !std::isfinite(s.ts_bits)) {
            throw DomainError("training sample contains a non-finite value");
        }
        const Vec3 row = design_row(s);
        for (std::size_t i = 0; i < kParameterCount; ++i)
            for (std::size_t j = 0; j < kParameterCount; ++j) gram[i][j] += row[i] * row[j];
    }
    const GramFactor factor = factor_gram(gram);

    Vec3 coef = factor.solve(design_transpose_times(samples, Vec3{}, false));
    // One round of iterative refinement against the true residual.
    const Vec3 correction = factor.solve(design_transpose_times(samples, coef, true));
    for (std::size_t i = 0; i < kParameterCount; ++i) coef[i] += correction[i];

    LinearModel model;
    model.intercept = coef[0];
    model.coef_latency = coef[1];
    model.coef_rate = coef[2];
    if (!std::isfinite(coef[0]) || !std::isfinite(coef[1]) || !std::isfinite(coef[2])) {
        throw DomainError("fit produced non-finite coefficients");
    }

    auto& meta = model.training_meta;
    meta.sample_count = samples.size();
    meta.ts_start = samples.front().ts_bits;
    double ts_max = samples.front().ts_bits;
    for (const auto& s : samples) {
        meta.rates.push_back(s.data_rate_mbps);
        meta.ts_start = std::min(meta.ts_start, s.ts_bits);
        ts_max = std::max(ts_max, s.ts_bits);
    }
    std::sort(meta.rates.begin(), meta.rates.end());
    meta.rates.erase(std::unique(meta.rates.begin(), meta.rates.end()), meta.rates.end());
    meta.ts_end_exclusive = ts_max + 1.0;
    meta.ts_step = 0;
    return model;
}

LinearModel train(const SlopeModel& slopes, std::int64_t ts_start, std::int64_t ts_end_exclusive,
                  std::int64_t ts_step) {
    const auto samples = generate_training_set(slopes, ts_start, ts_end_exclusive, ts_step);
    LinearModel model = fit_ols(samples);
    model.training_meta.ts_start = static_cast<double>(ts_start);
    model.training_meta.ts_end_exclusive = static_cast<double>(ts_end_exclusive);
    model.training_meta.ts_step = static_cast<double>(ts_step);
    return model;
}

LinearModel train_reference_default() { return train(SlopeModel::reference_default(), 100, 10000, 100); }

std::int64_t predict_ts(const LinearModel& model, double target_latency_ms,
                        double data_rate_mbps) {
    const double raw = model.evaluate(target_latency_ms, data_rate_mbps);
    if (!std::isfinite(raw)) {
        throw NonPhysicalPredictionError(raw, "prediction is not finite");
    }
    const double rounded = std::round(raw);
    if (rounded <= 0.0) {
        throw NonPhysicalPredictionError(
            raw, "predicted transaction size " + std::to_string(raw) +
                     " bits is not positive; latency target unreachable under this model");
    }
    return static_cast<std::int64_t>(rounded);
}

}  // namespace uavchan
