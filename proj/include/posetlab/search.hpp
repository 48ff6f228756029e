#pragma once

#include <optional>
#include <vector>

#include "posetlab/bigint.hpp"
#include "posetlab/poset.hpp"

namespace posetlab {

enum class pair_filter_kind { none, intersecting };

// Hereditary property: forbid weak copies of each listed pattern, and
// optionally require every member pair to intersect (meet rank >= 1).
struct property_spec {
    std::vector<poset_spec> forbidden;
    pair_filter_kind pair_filter = pair_filter_kind::none;
};

// Exact nonnegative per-level weights, length n+1.
struct weight_vec {
    std::vector<Rat> w;
};

// Exact weights on strictly increasing level tuples of a fixed length l;
// the objective is the weighted count of l-chains.
struct chain_weights {
    int l = 1;
    std::vector<std::pair<std::vector<int>, Rat>> weights;  // sorted, unique tuples
};

struct search_result {
    Rat value = 0;
    family witness;
    Int nodes_explored = 0;
    bool proven_optimal = true;
};

struct search_options {
    std::optional<Int> node_cap;        // engine default 10^8
    int threads = 0;                    // 0 = hardware concurrency
    std::optional<bitset> restrict_to;  // search within this universe only
};

// Exact maximum-weight family with the given property, by deterministic
// branch and bound (admissible bound: current weight plus all remaining
// weight). The witness is the first optimum in the canonical exploration
// order (exclude before include along the branch sequence), which for
// uniform weights is the lexicographically least optimal membership set.
search_result max_weight_family(const ground& g, const property_spec& t, const weight_vec& w,
                                const search_options& opt = {});

// Same engine with the weighted l-chain-count objective.
search_result max_chain_weight_family(const ground& g, const property_spec& t,
                                      const chain_weights& cw, const search_options& opt = {});

// Largest family avoiding all listed patterns (unit weights).
search_result la_search(const ground& g, const std::vector<poset_spec>& forbidden,
                        const search_options& opt = {});
Int la_value(const ground& g, const std::vector<poset_spec>& forbidden,
             const search_options& opt = {});

// Sum of the k middle levels: binomials when q == 0, Gaussian binomials
// otherwise. Two equal-weight middle windows exist exactly when n-k is even
// and nonnegative; alt_window then selects the companion window (same sum).
Int sigma_value(int n, int k, int q = 0, bool alt_window = false);

struct copies_result {
    Int value = 0;
    family witness;
    Int nodes_explored = 0;
    bool proven_optimal = true;
};

// Maximum number of copies of q_pat over families avoiding the forbidden
// patterns. Grounds over 40 elements require an explicit node cap.
copies_result max_copies(const ground& g, const std::vector<poset_spec>& forbidden,
                         const poset_spec& q_pat, const search_options& opt = {});

enum class prop_case { i, ii, iii };

// Closed-form predictions: (i),(ii) C(gaussian(n, n/2, q), r);
// (iii) max_k gaussian(n,k,q) * C(gaussian(k, k/2, q), r).
Int prop_predict(prop_case which, int n, int q, int r);

}  // namespace posetlab
