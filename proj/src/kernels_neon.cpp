#include "posetlab/kernels.hpp"

// NEON variant for aarch64, where Advanced SIMD is baseline and needs no
// runtime probe.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <bit>

namespace posetlab::kernels {

namespace {

inline std::size_t popcount128(uint64x2_t v) {
    uint8x16_t c = vcntq_u8(vreinterpretq_u8_u64(v));
    return static_cast<std::size_t>(vaddvq_u8(c));
}

std::size_t ne_popcount(const u64* a, std::size_t n) {
    std::size_t i = 0, s = 0;
    for (; i + 2 <= n; i += 2) s += popcount128(vld1q_u64(a + i));
    for (; i < n; ++i) s += static_cast<std::size_t>(std::popcount(a[i]));
    return s;
}

std::size_t ne_and_popcount(const u64* a, const u64* b, std::size_t n) {
    std::size_t i = 0, s = 0;
    for (; i + 2 <= n; i += 2) s += popcount128(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    for (; i < n; ++i) s += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    return s;
}

bool ne_is_subset(const u64* a, const u64* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint64x2_t bad = vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i));  // a & ~b
        if (vgetq_lane_u64(bad, 0) | vgetq_lane_u64(bad, 1)) return false;
    }
    for (; i < n; ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

bool ne_and_any(const u64* a, const u64* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint64x2_t v = vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
        if (vgetq_lane_u64(v, 0) | vgetq_lane_u64(v, 1)) return true;
    }
    for (; i < n; ++i)
        if (a[i] & b[i]) return true;
    return false;
}

void ne_or_assign(u64* a, const u64* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_u64(a + i, vorrq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    for (; i < n; ++i) a[i] |= b[i];
}

void ne_and_assign(u64* a, const u64* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_u64(a + i, vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    for (; i < n; ++i) a[i] &= b[i];
}

void ne_andnot_assign(u64* a, const u64* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_u64(a + i, vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    for (; i < n; ++i) a[i] &= ~b[i];
}

}  // namespace

bool neon_available() { return true; }

const ops_table& neon_ops() {
    static const ops_table t = {
        "neon",       ne_popcount,  ne_and_popcount, ne_is_subset,
        ne_and_any,   ne_or_assign, ne_and_assign,   ne_andnot_assign,
    };
    return t;
}

}  // namespace posetlab::kernels

#else

namespace posetlab::kernels {

bool neon_available() { return false; }
const ops_table& neon_ops() { return scalar_ops(); }

}  // namespace posetlab::kernels

#endif
