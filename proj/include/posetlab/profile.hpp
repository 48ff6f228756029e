#pragma once

#include <optional>

#include "posetlab/search.hpp"

namespace posetlab {

struct profile_vector {
    std::vector<Int> counts;  // length n+1
};

profile_vector profile_vec(const ground& g, const family& f);

// Chain counts per strictly increasing level l-tuple (dimension C(n+1, l)).
struct lchain_profile_t {
    int l = 1;
    std::vector<std::pair<std::vector<int>, Int>> counts;  // tuple lex order

    const Int& lookup(const std::vector<int>& tuple) const;
};
lchain_profile_t lchain_profile(const ground& g, const family& f, int l);  // l <= 4

// One linear-functional maximization over l-chain profiles.
struct scan_entry {
    std::size_t index = 0;
    std::vector<Rat> direction;  // coordinates in tuple lex order
    Rat value;
    profile_vector profile;
    bool is_union_of_levels = false;
    std::vector<int> witness_levels;  // meaningful when is_union_of_levels
    bool proven_optimal = false;
    family witness;
};

struct scan_report {
    int l = 1;
    std::vector<std::vector<int>> tuples;  // coordinate order shared by entries
    std::optional<int> k;                  // chain bound when the property is k-Sperner
    std::vector<scan_entry> entries;
};

// Directions: per-coordinate indicators, then all-ones, then seeded random
// nonnegative integer vectors (entries 0..9), `directions` in total.
scan_report extreme_point_scan(const ground& g, const property_spec& t, int l, int directions,
                               std::uint64_t seed, const search_options& opt = {});

// F_1..F_k with F_i the minimal elements of what is left; fails NotKSperner
// (witness chain attached) when f contains a chain of k+1 members.
std::vector<bitset> canonical_partition(const ground& g, const family& f, int k);

}  // namespace posetlab
