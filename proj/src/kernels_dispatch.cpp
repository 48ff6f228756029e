#include "posetlab/kernels.hpp"

#include <atomic>

namespace posetlab::kernels {

namespace {

const ops_table& detect() {
    if (avx2_available()) return avx2_ops();
    if (neon_available()) return neon_ops();
    return scalar_ops();
}

std::atomic<bool> g_force_scalar{false};

}  // namespace

const ops_table& active() {
    static const ops_table& best = detect();
    return g_force_scalar.load(std::memory_order_relaxed) ? scalar_ops() : best;
}

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

const char* active_name() { return active().name; }

}  // namespace posetlab::kernels
