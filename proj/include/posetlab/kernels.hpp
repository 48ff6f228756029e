#pragma once

#include <cstddef>
#include <cstdint>

// Word-array kernels behind the bitset type. These are the hot loops of the
// workbench: relation-row scans, membership popcounts, subset and
// intersection tests. A portable scalar implementation is the reference; an
// AVX2 variant is selected at runtime on x86-64 when the CPU supports it,
// and a NEON variant on aarch64. The variants are equivalence-tested against
// the scalar reference over random buffers.

namespace posetlab::kernels {

using u64 = std::uint64_t;

struct ops_table {
    const char* name;
    std::size_t (*popcount)(const u64* a, std::size_t n);
    std::size_t (*and_popcount)(const u64* a, const u64* b, std::size_t n);
    bool (*is_subset)(const u64* a, const u64* b, std::size_t n);  // (a & ~b) == 0
    bool (*and_any)(const u64* a, const u64* b, std::size_t n);    // (a & b) != 0
    void (*or_assign)(u64* a, const u64* b, std::size_t n);
    void (*and_assign)(u64* a, const u64* b, std::size_t n);
    void (*andnot_assign)(u64* a, const u64* b, std::size_t n);    // a &= ~b
};

const ops_table& scalar_ops();

bool avx2_available();
const ops_table& avx2_ops();  // falls back to scalar when AVX2 is absent

bool neon_available();
const ops_table& neon_ops();  // falls back to scalar when NEON is absent

// Active table. Chosen once from CPU detection; tests can pin the scalar
// path to compare implementations.
const ops_table& active();
void force_scalar(bool on);
const char* active_name();

inline std::size_t popcount(const u64* a, std::size_t n) { return active().popcount(a, n); }
inline std::size_t and_popcount(const u64* a, const u64* b, std::size_t n) {
    return active().and_popcount(a, b, n);
}
inline bool is_subset(const u64* a, const u64* b, std::size_t n) {
    return active().is_subset(a, b, n);
}
inline bool and_any(const u64* a, const u64* b, std::size_t n) {
    return active().and_any(a, b, n);
}
inline void or_assign(u64* a, const u64* b, std::size_t n) { active().or_assign(a, b, n); }
inline void and_assign(u64* a, const u64* b, std::size_t n) { active().and_assign(a, b, n); }
inline void andnot_assign(u64* a, const u64* b, std::size_t n) {
    active().andnot_assign(a, b, n);
}

}  // namespace posetlab::kernels
