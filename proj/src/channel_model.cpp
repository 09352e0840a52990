#include "uavchan/channel_model.hpp"

#include "uavchan/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace uavchan {

namespace {

void require_rate(double data_rate_bps) {
    if (!(data_rate_bps > 0.0) || !std::isfinite(data_rate_bps)) {
        throw DomainError("data rate must be a positive finite number of bit/s, got " +
                          std::to_string(data_rate_bps));
    }
}

void require_window(double window_s) {
    if (!(window_s > 0.0) || !std::isfinite(window_s)) {
        throw DomainError("transmission window must be positive, got " + std::to_string(window_s));
    }
}

void require_ber(double ber) {
    if (!(ber >= 0.0 && ber < 1.0)) {
        throw DomainError("BER must lie in [0, 1), got " + std::to_string(ber));
    }
}

void require_ts(std::int64_t ts_bits) {
    if (ts_bits < 0) {
        throw DomainError("transaction size must be non-negative, got " + std::to_string(ts_bits));
    }
}

void require_users(int num_users) {
    if (num_users < 1) {
        throw DomainError("user count must be at least 1, got " + std::to_string(num_users));
    }
}

}  // namespace

ChainTopology::ChainTopology() : ChainTopology(3, {10.0, 10.0, 1.0}, 1) {}

ChainTopology::ChainTopology(int hop_count, std::vector<double> hop_distances_km, int num_users)
    : hop_count_(hop_count), hop_distances_km_(std::move(hop_distances_km)), num_users_(num_users) {
    if (hop_count_ < 1) {
        throw DomainError("chain needs at least one hop, got " + std::to_string(hop_count_));
    }
    if (hop_distances_km_.size() != static_cast<std::size_t>(hop_count_)) {
        throw DomainError("expected " + std::to_string(hop_count_) + " hop distances, got " +
                          std::to_string(hop_distances_km_.size()));
    }
    for (double d : hop_distances_km_) {
        if (!(d >= 0.0) || !std::isfinite(d)) {
            throw DomainError("hop distance must be a non-negative number of km");
        }
    }
    require_users(num_users_);
}

TransmissionConfig::TransmissionConfig(std::int64_t ts_bits, double data_rate_bps, double window_s,
                                       double ber)
    : ts_bits_(ts_bits), data_rate_bps_(data_rate_bps), window_s_(window_s), ber_(ber) {
    if (ts_bits_ < 1) {
        throw DomainError("transaction size must be at least 1 bit, got " + std::to_string(ts_bits_));
    }
    require_rate(data_rate_bps_);
    require_window(window_s_);
    require_ber(ber_);
}

double latency(std::int64_t ts_bits, double data_rate_bps, int hop_count) {
    require_ts(ts_bits);
    require_rate(data_rate_bps);
    if (hop_count < 1) {
        throw DomainError("hop count must be positive, got " + std::to_string(hop_count));
    }
    return detail::latency_ms(static_cast<double>(ts_bits), data_rate_bps, hop_count);
}

double utilization(std::int64_t ts_bits, int num_users, double data_rate_bps, double window_s) {
    return utilization_ber(ts_bits, num_users, data_rate_bps, 0.0, window_s);
}

double utilization_ber(std::int64_t ts_bits, int num_users, double data_rate_bps, double ber,
                       double window_s) {
    require_ts(ts_bits);
    require_users(num_users);
    require_rate(data_rate_bps);
    require_ber(ber);
    require_window(window_s);
    return detail::utilization_pct(static_cast<double>(ts_bits), num_users, data_rate_bps, ber,
                                   window_s);
}

MetricResult evaluate(const ChainTopology& chain, const TransmissionConfig& config) {
    return {latency(config.ts_bits(), config.data_rate_bps(), chain.hop_count()),
            utilization_ber(config.ts_bits(), chain.num_users(), config.data_rate_bps(),
                            config.ber(), config.window_s())};
}

}  // namespace uavchan
