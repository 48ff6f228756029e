#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "posetlab/bigint.hpp"
#include "posetlab/bitset.hpp"
#include "posetlab/gf.hpp"

namespace posetlab {

enum class ground_kind { boolean_lattice, subspace_lattice };

// Immutable graded ground: the Boolean lattice 2^[n] or the subspaces of
// F_q^n. Elements are indexed by level, then by ascending canonical
// descriptor (subset mask, or flattened rref rows), so ids are stable and
// searches can tie-break deterministically. The strict order is stored
// densely in both directions.
struct ground {
    ground_kind kind = ground_kind::boolean_lattice;
    int n = 0;
    int q = 0;         // 0 for the boolean lattice
    field_spec field;  // subspace kind only

    std::size_t count = 0;
    std::vector<int> level_of;
    std::vector<Int> level_sizes;          // length n+1
    std::vector<std::size_t> level_begin;  // length n+2

    std::vector<std::uint32_t> masks;  // boolean: bit i-1 <=> i in the subset
    std::vector<matrix_gf> rref_of;    // subspace: canonical rref rows
    std::vector<bitset> points;        // subspace: incidence with level-1 elements
    std::vector<std::size_t> points_per_dim;  // subspace: (q^d-1)/(q-1)

    std::vector<bitset> above;  // above[a] = { b : a < b }
    std::vector<bitset> below;  // below[a] = { b : b < a }

    std::vector<std::size_t> mask_index;                 // boolean: mask -> id
    std::map<std::vector<int>, std::size_t> desc_index;  // subspace: flat rref -> id

    bool less(std::size_t a, std::size_t b) const { return above[a].test(b); }
    std::size_t level_count(int lv) const { return level_begin[lv + 1] - level_begin[lv]; }
    int meet_rank(std::size_t a, std::size_t b) const;
    std::string describe(std::size_t id) const;
    std::size_t id_of_mask(std::uint32_t m) const;
    std::size_t id_of_rref(const matrix_gf& rows) const;
};

// Dense membership set over a ground's elements.
struct family {
    const ground* g = nullptr;
    bitset members;

    family() = default;
    explicit family(const ground& gr) : g(&gr), members(gr.count) {}
};

Int gaussian(int n, int k, int q);

ground build_boolean(int n);        // 0 <= n <= 16
ground build_subspace(int n, int q);  // prime power q, total elements <= 200000

struct relation_info {
    bool leq = false;  // a < b strictly
    bool geq = false;  // b < a strictly
    int meet_rank = 0;
};
relation_info relations(const ground& g, std::size_t a, std::size_t b);

// Image ids of every subset of the basis under H -> span{v_x : x in H},
// indexed by subset mask; the induced order is a copy of 2^[n].
std::vector<std::size_t> sublattice_images(const ground& g, const matrix_gf& basis);
family boolean_sublattice(const ground& g, const matrix_gf& basis);

// f(q,n): number of unordered bases of F_q^n.
Int bases_count(int n, int q);

// Streams each unordered basis exactly once (rows sorted by ascending vector
// code); fails TooLarge when the count exceeds cap.
void for_each_basis(int n, int q, const std::function<void(const matrix_gf&)>& fn,
                    std::size_t cap = 10000000);
std::vector<matrix_gf> enumerate_bases(int n, int q, std::size_t cap = 10000000);

}  // namespace posetlab
