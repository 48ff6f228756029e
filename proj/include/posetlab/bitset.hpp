#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "posetlab/kernels.hpp"

namespace posetlab {

// Dynamic fixed-width bitset over kernel word arrays. Indices are element
// ids; the lexicographic comparison treats the bitset as the characteristic
// string with id 0 first and '0' < '1', which is the tie-break order used by
// the deterministic searches.
class bitset {
  public:
    using u64 = std::uint64_t;

    bitset() = default;
    explicit bitset(std::size_t nbits)
        : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }
    std::size_t word_count() const { return words_.size(); }
    const u64* data() const { return words_.data(); }
    u64* data() { return words_.data(); }

    void set(std::size_t i) { words_[i >> 6] |= u64(1) << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(u64(1) << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    void clear() {
        for (auto& w : words_) w = 0;
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    std::size_t count() const { return kernels::popcount(words_.data(), words_.size()); }

    std::size_t and_count(const bitset& o) const {
        return kernels::and_popcount(words_.data(), o.words_.data(), words_.size());
    }

    bool is_subset_of(const bitset& o) const {
        return kernels::is_subset(words_.data(), o.words_.data(), words_.size());
    }

    bool intersects(const bitset& o) const {
        return kernels::and_any(words_.data(), o.words_.data(), words_.size());
    }

    bitset& operator|=(const bitset& o) {
        kernels::or_assign(words_.data(), o.words_.data(), words_.size());
        return *this;
    }
    bitset& operator&=(const bitset& o) {
        kernels::and_assign(words_.data(), o.words_.data(), words_.size());
        return *this;
    }
    // this &= ~o
    bitset& andnot_assign(const bitset& o) {
        kernels::andnot_assign(words_.data(), o.words_.data(), words_.size());
        return *this;
    }

    bool operator==(const bitset& o) const { return words_ == o.words_; }
    bool operator!=(const bitset& o) const { return words_ != o.words_; }

    // Count of set bits with index in [lo, hi).
    std::size_t count_range(std::size_t lo, std::size_t hi) const {
        if (lo >= hi) return 0;
        std::size_t wl = lo >> 6, wh = (hi - 1) >> 6, s = 0;
        u64 first = ~u64(0) << (lo & 63);
        u64 last = (hi & 63) ? ((u64(1) << (hi & 63)) - 1) : ~u64(0);
        if (wl == wh) return static_cast<std::size_t>(std::popcount(words_[wl] & first & last));
        s += static_cast<std::size_t>(std::popcount(words_[wl] & first));
        for (std::size_t w = wl + 1; w < wh; ++w)
            s += static_cast<std::size_t>(std::popcount(words_[w]));
        s += static_cast<std::size_t>(std::popcount(words_[wh] & last));
        return s;
    }

    // First set index >= from, or size() when none.
    std::size_t next_set(std::size_t from) const {
        if (from >= nbits_) return nbits_;
        std::size_t w = from >> 6;
        u64 cur = words_[w] & (~u64(0) << (from & 63));
        while (true) {
            if (cur) return (w << 6) + static_cast<std::size_t>(std::countr_zero(cur));
            if (++w == words_.size()) return nbits_;
            cur = words_[w];
        }
    }

    template <class F>
    void for_each_set(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            u64 cur = words_[w];
            while (cur) {
                f((w << 6) + static_cast<std::size_t>(std::countr_zero(cur)));
                cur &= cur - 1;
            }
        }
    }

    std::vector<std::size_t> to_indices() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each_set([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    // -1 / 0 / +1 in characteristic-string order: at the lowest differing
    // index the set with bit 1 is the larger string.
    int lex_compare(const bitset& o) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            u64 d = words_[w] ^ o.words_[w];
            if (d) {
                u64 low = d & (~d + 1);
                return (o.words_[w] & low) ? -1 : 1;
            }
        }
        return 0;
    }

  private:
    std::size_t nbits_ = 0;
    std::vector<u64> words_;
};

}  // namespace posetlab
