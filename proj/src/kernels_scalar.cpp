#include "posetlab/kernels.hpp"

#include <bit>

namespace posetlab::kernels {

namespace {

std::size_t sc_popcount(const u64* a, std::size_t n) {
    std::size_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += static_cast<std::size_t>(std::popcount(a[i]));
    return s;
}

std::size_t sc_and_popcount(const u64* a, const u64* b, std::size_t n) {
    std::size_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    return s;
}

bool sc_is_subset(const u64* a, const u64* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

bool sc_and_any(const u64* a, const u64* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] & b[i]) return true;
    return false;
}

void sc_or_assign(u64* a, const u64* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] |= b[i];
}

void sc_and_assign(u64* a, const u64* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] &= b[i];
}

void sc_andnot_assign(u64* a, const u64* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] &= ~b[i];
}

}  // namespace

const ops_table& scalar_ops() {
    static const ops_table t = {
        "scalar",     sc_popcount,  sc_and_popcount, sc_is_subset,
        sc_and_any,   sc_or_assign, sc_and_assign,   sc_andnot_assign,
    };
    return t;
}

}  // namespace posetlab::kernels
