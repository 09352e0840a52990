#pragma once

// Closed-form packet-level metrics for a multi-hop relay chain
// (ground BS -> aerial repeater -> UAV base station -> user cluster).
//
// Units are fixed: transaction size in bits, data rate in bit/s, the
// utilization window in seconds, latency in milliseconds and utilization
// in percent. Every operation is a pure function.

#include <cstdint>
#include <vector>

namespace uavchan {

/// Shape of the relay chain. Hop distances are carried for documentation;
/// no metric depends on them.
class ChainTopology {
public:
    /// The default three-link chain: 10 km to the repeater, 10 km to the
    /// UAV base station, 1 km down to the users.
    ChainTopology();
    ChainTopology(int hop_count, std::vector<double> hop_distances_km, int num_users);

    int hop_count() const noexcept { return hop_count_; }
    const std::vector<double>& hop_distances_km() const noexcept { return hop_distances_km_; }
    int num_users() const noexcept { return num_users_; }

private:
    int hop_count_;
    std::vector<double> hop_distances_km_;
    int num_users_;
};

/// One evaluation point of the channel.
class TransmissionConfig {
public:
    TransmissionConfig(std::int64_t ts_bits, double data_rate_bps, double window_s = 1.0,
                       double ber = 0.0);

    std::int64_t ts_bits() const noexcept { return ts_bits_; }
    double data_rate_bps() const noexcept { return data_rate_bps_; }
    double window_s() const noexcept { return window_s_; }
    double ber() const noexcept { return ber_; }

private:
    std::int64_t ts_bits_;
    double data_rate_bps_;
    double window_s_;
    double ber_;
};

struct MetricResult {
    double latency_ms;
    double utilization_pct;

    /// Utilization above 100 % means the offered load exceeds capacity.
    bool overloaded() const noexcept { return utilization_pct > 100.0; }
};

/// Total transmission delay over `hop_count` identical links, in ms.
/// A zero-size transaction is accepted as the limiting case.
double latency(std::int64_t ts_bits, double data_rate_bps, int hop_count);

/// Channel utilization in percent of capacity over the window. Values above
/// 100 are returned unclamped.
double utilization(std::int64_t ts_bits, int num_users, double data_rate_bps,
                   double window_s = 1.0);

/// Utilization with the effective rate reduced by the bit error rate.
/// `ber` is a fraction in [0, 1), not a percentage.
double utilization_ber(std::int64_t ts_bits, int num_users, double data_rate_bps, double ber,
                       double window_s = 1.0);

/// Latency and BER-corrected utilization for one configuration on a chain.
MetricResult evaluate(const ChainTopology& chain, const TransmissionConfig& config);

namespace detail {

// Unchecked arithmetic shared by the checked operations and the sweep
// kernels. Latency is one division of an exact integer-valued numerator.

inline double latency_ms(double ts_bits, double data_rate_bps, double hop_count) noexcept {
    return ts_bits * hop_count * 1000.0 / data_rate_bps;
}

inline double utilization_pct(double ts_bits, double num_users, double data_rate_bps,
                              double ber, double window_s) noexcept {
    return ts_bits * num_users * 100.0 / (data_rate_bps * (1.0 - ber) * window_s);
}

}  // namespace detail

}  // namespace uavchan
