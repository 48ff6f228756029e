#pragma once

#include "posetlab/ground.hpp"
#include "posetlab/search.hpp"

namespace posetlab {

enum class covering_method { chains, cycle, boolean_sublattices, custom };

// A family Gamma of subfamilies (with repetition counts) such that every
// element of level i lies in exactly t[i] members, counted with multiplicity.
struct covering_spec {
    const ground* g = nullptr;
    covering_method method = covering_method::custom;
    std::vector<bitset> gamma;      // distinct member families
    std::vector<Int> multiplicity;  // parallel to gamma
    std::vector<Int> t;             // length n+1

    Int gamma_size() const {
        Int s = 0;
        for (const auto& m : multiplicity) s += m;
        return s;
    }
};

// chains / cycle need a boolean ground with n <= 6; boolean_sublattices needs
// a subspace ground with f(q,n) <= 10^4.
covering_spec build_covering(const ground& g, covering_method m);

struct verify_result {
    bool ok = true;
    std::size_t element = 0;  // first violating element when !ok
    Int observed = 0;
    Int expected = 0;
};
verify_result verify_covering(const covering_spec& c);

// Per strictly increasing level tuple, how many Gamma members contain a given
// l-chain with those levels; uniform iff constant over concrete chains.
struct tuple_cover_result {
    bool uniform = true;
    std::vector<std::pair<std::vector<int>, Int>> table;  // tuple lex order

    const Int& lookup(const std::vector<int>& tuple) const;
};
tuple_cover_result chain_tuple_cover(const covering_spec& c, int l);

// |Gamma| * inner_max, plus the inner weight vector w_i / t_i.
struct lemma_bound_result {
    Rat bound;
    std::vector<Rat> inner_weights;
};
lemma_bound_result lemma_bound(const covering_spec& c, const weight_vec& w, const Rat& inner_max);

// Sum over members of 1 / (size of the member's level).
Rat lym_sum(const ground& g, const family& f);

}  // namespace posetlab
