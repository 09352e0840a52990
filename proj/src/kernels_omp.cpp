#include "uavchan/channel_model.hpp"
#include "uavchan/kernels.hpp"

#include <cstdint>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace uavchan::kernels::parallel {

void latency(const LatencyBatch& batch, std::span<double> out) noexcept {
    const auto n = static_cast<std::int64_t>(out.size());
    const double* ts = batch.ts_bits.data();
    const double* rate = batch.data_rate_bps.data();
    double* dst = out.data();
    const double hops = batch.hop_count;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        dst[i] = detail::latency_ms(ts[i], rate[i], hops);
    }
}

void utilization(const UtilizationBatch& batch, std::span<double> out) noexcept {
    const auto n = static_cast<std::int64_t>(out.size());
    const double* ts = batch.ts_bits.data();
    const double* users = batch.num_users.data();
    const double* rate = batch.data_rate_bps.data();
    const double* ber = batch.ber.data();
    double* dst = out.data();
    const double window = batch.window_s;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        dst[i] = detail::utilization_pct(ts[i], users[i], rate[i], ber[i], window);
    }
}

int thread_count() noexcept {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace uavchan::kernels::parallel
