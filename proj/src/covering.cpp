#include "posetlab/covering.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace posetlab {

namespace {

covering_spec build_chains(const ground& g) {
    if (g.kind != ground_kind::boolean_lattice)
        fail(errc::wrong_ground_kind, "chain covering needs a boolean ground");
    if (g.n > 6) fail(errc::too_large, "chain covering caps at n=6");
    covering_spec c;
    c.g = &g;
    c.method = covering_method::chains;
    std::vector<int> perm(g.n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bitset f(g.count);
        std::uint32_t mask = 0;
        f.set(g.id_of_mask(mask));
        for (int x : perm) {
            mask |= std::uint32_t(1) << x;
            f.set(g.id_of_mask(mask));
        }
        c.gamma.push_back(std::move(f));
        c.multiplicity.push_back(1);
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (int i = 0; i <= g.n; ++i) c.t.push_back(factorial(i) * factorial(g.n - i));
    return c;
}

covering_spec build_cycle(const ground& g) {
    if (g.kind != ground_kind::boolean_lattice)
        fail(errc::wrong_ground_kind, "cycle covering needs a boolean ground");
    if (g.n > 6) fail(errc::too_large, "cycle covering caps at n=6");
    int n = g.n;
    // ground family: cyclic intervals plus the empty set and [n], once each
    std::set<std::uint32_t> base;
    base.insert(0);
    base.insert(n == 32 ? ~std::uint32_t(0) : (std::uint32_t(1) << n) - 1);
    for (int s = 0; s < n; ++s)
        for (int len = 1; len < n; ++len) {
            std::uint32_t m = 0;
            for (int j = 0; j < len; ++j) m |= std::uint32_t(1) << ((s + j) % n);
            base.insert(m);
        }
    std::vector<std::uint32_t> g0(base.begin(), base.end());

    covering_spec c;
    c.g = &g;
    c.method = covering_method::cycle;
    std::map<std::vector<std::uint64_t>, std::size_t> seen;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bitset f(g.count);
        for (std::uint32_t m : g0) {
            std::uint32_t img = 0;
            for (int x = 0; x < n; ++x)
                if (m >> x & 1) img |= std::uint32_t(1) << perm[x];
            f.set(g.id_of_mask(img));
        }
        std::vector<std::uint64_t> key(f.data(), f.data() + f.word_count());
        auto it = seen.find(key);
        if (it == seen.end()) {
            seen.emplace(std::move(key), c.gamma.size());
            c.gamma.push_back(std::move(f));
            c.multiplicity.push_back(1);
        } else {
            c.multiplicity[it->second] += 1;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<Int> level_members(n + 1, 0);  // g_i: members of the base family per level
    for (std::uint32_t m : g0) level_members[std::popcount(m)] += 1;
    for (int i = 0; i <= n; ++i)
        c.t.push_back(level_members[i] * factorial(i) * factorial(n - i));
    return c;
}

covering_spec build_sublattices(const ground& g) {
    if (g.kind != ground_kind::subspace_lattice)
        fail(errc::wrong_ground_kind, "sublattice covering needs a subspace ground");
    if (bases_count(g.n, g.q) > 10000)
        fail(errc::too_large, "sublattice covering caps at 10^4 bases");
    covering_spec c;
    c.g = &g;
    c.method = covering_method::boolean_sublattices;
    std::map<std::vector<std::uint64_t>, std::size_t> seen;
    for_each_basis(g.n, g.q, [&](const matrix_gf& basis) {
        std::vector<std::size_t> img = sublattice_images(g, basis);
        bitset f(g.count);
        for (std::size_t id : img) f.set(id);
        std::vector<std::uint64_t> key(f.data(), f.data() + f.word_count());
        auto it = seen.find(key);
        if (it == seen.end()) {
            seen.emplace(std::move(key), c.gamma.size());
            c.gamma.push_back(std::move(f));
            c.multiplicity.push_back(1);
        } else {
            c.multiplicity[it->second] += 1;
        }
    });
    // t_i = prod_{j<i}(q^i - q^j) * prod_{j=i..n-1}(q^n - q^j) / (i! (n-i)!)
    Int qn = int_pow(g.q, g.n);
    for (int i = 0; i <= g.n; ++i) {
        Int num = 1;
        Int qi = int_pow(g.q, i);
        for (int j = 0; j < i; ++j) num *= qi - int_pow(g.q, j);
        for (int j = i; j < g.n; ++j) num *= qn - int_pow(g.q, j);
        c.t.push_back(exact_div(num, factorial(i) * factorial(g.n - i)));
    }
    return c;
}

}  // namespace

covering_spec build_covering(const ground& g, covering_method m) {
    switch (m) {
        case covering_method::chains: return build_chains(g);
        case covering_method::cycle: return build_cycle(g);
        case covering_method::boolean_sublattices: return build_sublattices(g);
        case covering_method::custom: break;
    }
    fail(errc::parse_error, "unknown covering method");
}

verify_result verify_covering(const covering_spec& c) {
    const ground& g = *c.g;
    if (c.t.size() != static_cast<std::size_t>(g.n + 1))
        fail(errc::out_of_range, "t vector needs n+1 entries");
    if (c.gamma.size() != c.multiplicity.size())
        fail(errc::out_of_range, "gamma and multiplicity lengths differ");
    std::vector<Int> observed(g.count, 0);
    for (std::size_t k = 0; k < c.gamma.size(); ++k) {
        if (c.multiplicity[k] < 1) fail(errc::zero_multiplicity, "member multiplicity must be positive");
        c.gamma[k].for_each_set([&](std::size_t e) { observed[e] += c.multiplicity[k]; });
    }
    for (std::size_t e = 0; e < g.count; ++e)
        if (observed[e] != c.t[g.level_of[e]]) {
            verify_result r;
            r.ok = false;
            r.element = e;
            r.observed = observed[e];
            r.expected = c.t[g.level_of[e]];
            return r;
        }
    return {};
}

const Int& tuple_cover_result::lookup(const std::vector<int>& tuple) const {
    for (std::size_t i = 0; i < tuple.size(); ++i)
        if (i && tuple[i] <= tuple[i - 1])
            fail(errc::invalid_tuple, "tuple must be strictly increasing");
    for (const auto& [tp, cnt] : table)
        if (tp == tuple) return cnt;
    fail(errc::invalid_tuple, "tuple not in table");
}

tuple_cover_result chain_tuple_cover(const covering_spec& c, int l) {
    const ground& g = *c.g;
    if (l < 1 || l > 4) fail(errc::too_large, "chain tuple covers cap at l=4");
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    auto gen = [&](auto&& self, int next) -> void {
        if (static_cast<int>(cur.size()) == l) {
            tuples.push_back(cur);
            return;
        }
        for (int lv = next; lv <= g.n; ++lv) {
            cur.push_back(lv);
            self(self, lv + 1);
            cur.pop_back();
        }
    };
    gen(gen, 0);

    bitset full(g.count);
    for (std::size_t e = 0; e < g.count; ++e) full.set(e);
    Int total_chains = 0;
    for (const auto& tp : tuples) total_chains += count_level_chains(g, full, tp);
    if (total_chains > 1000000) fail(errc::too_large, "too many chains to enumerate");

    tuple_cover_result out;
    for (const auto& tp : tuples) {
        Int common = 0;
        bool first = true;
        // walk every concrete chain with these levels
        std::vector<std::size_t> chain;
        auto walk = [&](auto&& self, int pos) -> void {
            if (pos == l) {
                Int cnt = 0;
                for (std::size_t k = 0; k < c.gamma.size(); ++k) {
                    bool all = true;
                    for (std::size_t e : chain)
                        if (!c.gamma[k].test(e)) {
                            all = false;
                            break;
                        }
                    if (all) cnt += c.multiplicity[k];
                }
                if (first) {
                    common = cnt;
                    first = false;
                } else if (cnt != common) {
                    out.uniform = false;
                }
                return;
            }
            int lv = tp[pos];
            for (std::size_t e = g.level_begin[lv]; e < g.level_begin[lv + 1]; ++e) {
                if (pos > 0 && !g.less(chain.back(), e)) continue;
                chain.push_back(e);
                self(self, pos + 1);
                chain.pop_back();
            }
        };
        walk(walk, 0);
        out.table.push_back({tp, common});
    }
    return out;
}

lemma_bound_result lemma_bound(const covering_spec& c, const weight_vec& w,
                               const Rat& inner_max) {
    const ground& g = *c.g;
    if (w.w.size() != static_cast<std::size_t>(g.n + 1))
        fail(errc::out_of_range, "weight vector needs n+1 entries");
    lemma_bound_result r;
    for (int i = 0; i <= g.n; ++i) {
        if (w.w[i] < 0) fail(errc::out_of_range, "weights must be nonnegative");
        if (c.t[i] == 0) {
            if (w.w[i] > 0)
                fail(errc::zero_multiplicity, "level " + std::to_string(i) +
                                                  " is uncovered but carries weight");
            r.inner_weights.push_back(0);
        } else {
            r.inner_weights.push_back(w.w[i] / Rat(c.t[i]));
        }
    }
    r.bound = Rat(c.gamma_size()) * inner_max;
    return r;
}

Rat lym_sum(const ground& g, const family& f) {
    Rat s = 0;
    f.members.for_each_set([&](std::size_t e) { s += Rat(Int(1), g.level_sizes[g.level_of[e]]); });
    return s;
}

}  // namespace posetlab
