#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "posetlab/bigint.hpp"
#include "posetlab/ground.hpp"

namespace posetlab {

// Small strict pattern poset (at most 8 elements), stored transitively
// closed as per-element relation masks.
struct poset_spec {
    int size = 0;
    std::string name;
    std::array<std::uint8_t, 8> above{};  // above[i] bit j <=> i < j
    std::array<std::uint8_t, 8> below{};  // below[i] bit j <=> j < i

    bool less(int a, int b) const { return above[a] >> b & 1; }
};

// Grammar: chain:k | vee | wedge | fork:v | broom:u | butterfly | diamond:r
//          | custom:<i<j;...>
// vee = fork:2 (one bottom under two tops), wedge = broom:2 (two bottoms
// under one top), butterfly = two bottoms under two tops, diamond:r = bottom
// < r middle elements < top.
poset_spec parse_poset(const std::string& spec);

struct copy_witness {
    bool found = false;
    std::vector<std::size_t> image;  // image[i] = element id of pattern element i
};

// Weak containment: an injection of the pattern into the family preserving
// strict order (extra relations among images allowed). The witness is the
// first embedding in the deterministic search order.
copy_witness contains_copy(const ground& g, const bitset& members, const poset_spec& p);
copy_witness contains_copy(const ground& g, const family& f, const poset_spec& p);

// Same, restricted to embeddings whose image uses element `through`.
copy_witness contains_copy_through(const ground& g, const bitset& members, const poset_spec& p,
                                   std::size_t through);
copy_witness contains_copy_through(const ground& g, const family& f, const poset_spec& p,
                                   std::size_t through);

// Number of distinct member subsets C of size |p| such that some
// order-preserving injection maps the pattern onto C (image-set semantics).
Int count_copies(const ground& g, const bitset& members, const poset_spec& p);
Int count_copies(const ground& g, const family& f, const poset_spec& p);

// Copies whose image set contains `through`.
Int count_copies_through(const ground& g, const bitset& members, const poset_spec& p,
                         std::size_t through);
Int count_copies_through(const ground& g, const family& f, const poset_spec& p,
                         std::size_t through);

// Number of chains x_1 < ... < x_l inside `members` whose levels are exactly
// the given strictly increasing tuple.
Int count_level_chains(const ground& g, const bitset& members, const std::vector<int>& levels);

struct e_result {
    int m = 0;                // largest window width that stays pattern-free
    int certified_up_to = 0;  // windows checked in 2^[n] for all n <= this
};

// Largest m such that every m consecutive levels of 2^[n] are p-free for
// all n <= n_max; capped at n_max + 1 when even the full lattice is free.
e_result e_of_poset(const poset_spec& p, int n_max);

}  // namespace posetlab
