#include "posetlab/kernels.hpp"

// AVX2 variant. This translation unit is compiled with -mavx2 on x86-64; the
// dispatcher only hands out this table after a runtime cpuid check, so the
// vector code never executes on older CPUs.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <bit>

namespace posetlab::kernels {

namespace {

// Popcount of a 256-bit lane via the nibble lookup table, accumulated with
// sad against zero. Word tails fall back to scalar popcount.
inline __m256i popcount256(__m256i v) {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1,
                                         2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    __m256i lo = _mm256_and_si256(v, low_mask);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline std::size_t hsum64(__m256i v) {
    __m128i lo = _mm256_castsi256_si128(v);
    __m128i hi = _mm256_extracti128_si256(v, 1);
    __m128i s = _mm_add_epi64(lo, hi);
    return static_cast<std::size_t>(_mm_cvtsi128_si64(s)) +
           static_cast<std::size_t>(_mm_extract_epi64(s, 1));
}

std::size_t ax_popcount(const u64* a, std::size_t n) {
    std::size_t i = 0;
    __m256i acc = _mm256_setzero_si256();
    for (; i + 4 <= n; i += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        acc = _mm256_add_epi64(acc, popcount256(v));
    }
    std::size_t s = hsum64(acc);
    for (; i < n; ++i) s += static_cast<std::size_t>(std::popcount(a[i]));
    return s;
}

std::size_t ax_and_popcount(const u64* a, const u64* b, std::size_t n) {
    std::size_t i = 0;
    __m256i acc = _mm256_setzero_si256();
    for (; i + 4 <= n; i += 4) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        acc = _mm256_add_epi64(acc, popcount256(_mm256_and_si256(va, vb)));
    }
    std::size_t s = hsum64(acc);
    for (; i < n; ++i) s += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    return s;
}

bool ax_is_subset(const u64* a, const u64* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        // testc(b, a) checks (~b & a) == 0
        if (!_mm256_testc_si256(vb, va)) return false;
    }
    for (; i < n; ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

bool ax_and_any(const u64* a, const u64* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        if (!_mm256_testz_si256(va, vb)) return true;
    }
    for (; i < n; ++i)
        if (a[i] & b[i]) return true;
    return false;
}

void ax_or_assign(u64* a, const u64* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(a + i), _mm256_or_si256(va, vb));
    }
    for (; i < n; ++i) a[i] |= b[i];
}

void ax_and_assign(u64* a, const u64* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(a + i), _mm256_and_si256(va, vb));
    }
    for (; i < n; ++i) a[i] &= b[i];
}

void ax_andnot_assign(u64* a, const u64* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        // andnot(x, y) = ~x & y
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(a + i), _mm256_andnot_si256(vb, va));
    }
    for (; i < n; ++i) a[i] &= ~b[i];
}

}  // namespace

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

const ops_table& avx2_ops() {
    static const ops_table t = {
        "avx2",       ax_popcount,  ax_and_popcount, ax_is_subset,
        ax_and_any,   ax_or_assign, ax_and_assign,   ax_andnot_assign,
    };
    return avx2_available() ? t : scalar_ops();
}

}  // namespace posetlab::kernels

#else

namespace posetlab::kernels {

bool avx2_available() { return false; }
const ops_table& avx2_ops() { return scalar_ops(); }

}  // namespace posetlab::kernels

#endif
