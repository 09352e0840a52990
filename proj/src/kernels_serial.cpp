#include "uavchan/channel_model.hpp"
#include "uavchan/kernels.hpp"

namespace uavchan::kernels::serial {

void latency(const LatencyBatch& batch, std::span<double> out) noexcept {
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = detail::latency_ms(batch.ts_bits[i], batch.data_rate_bps[i], batch.hop_count);
    }
}

void utilization(const UtilizationBatch& batch, std::span<double> out) noexcept {
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = detail::utilization_pct(batch.ts_bits[i], batch.num_users[i],
                                         batch.data_rate_bps[i], batch.ber[i], batch.window_s);
    }
}

}  // namespace uavchan::kernels::serial
