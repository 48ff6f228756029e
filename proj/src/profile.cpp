#include "posetlab/profile.hpp"

#include <algorithm>

#include "posetlab/rng.hpp"

namespace posetlab {

namespace {

std::vector<std::vector<int>> level_tuples(int n, int l) {
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    auto gen = [&](auto&& self, int next) -> void {
        if (static_cast<int>(cur.size()) == l) {
            tuples.push_back(cur);
            return;
        }
        for (int lv = next; lv <= n; ++lv) {
            cur.push_back(lv);
            self(self, lv + 1);
            cur.pop_back();
        }
    };
    gen(gen, 0);
    return tuples;
}

bool is_chain_spec(const poset_spec& p) {
    for (int a = 0; a < p.size; ++a)
        for (int b = a + 1; b < p.size; ++b)
            if (!p.less(a, b) && !p.less(b, a)) return false;
    return true;
}

}  // namespace

profile_vector profile_vec(const ground& g, const family& f) {
    profile_vector p;
    for (int lv = 0; lv <= g.n; ++lv)
        p.counts.push_back(Int(f.members.count_range(g.level_begin[lv], g.level_begin[lv + 1])));
    return p;
}

const Int& lchain_profile_t::lookup(const std::vector<int>& tuple) const {
    for (std::size_t i = 0; i < tuple.size(); ++i)
        if (i && tuple[i] <= tuple[i - 1])
            fail(errc::invalid_tuple, "tuple must be strictly increasing");
    for (const auto& [tp, cnt] : counts)
        if (tp == tuple) return cnt;
    fail(errc::invalid_tuple, "tuple not in table");
}

lchain_profile_t lchain_profile(const ground& g, const family& f, int l) {
    if (l < 1 || l > 4) fail(errc::too_large, "chain profiles cap at l=4");
    lchain_profile_t out;
    out.l = l;
    for (const auto& tp : level_tuples(g.n, l))
        out.counts.push_back({tp, count_level_chains(g, f.members, tp)});
    return out;
}

scan_report extreme_point_scan(const ground& g, const property_spec& t, int l, int directions,
                               std::uint64_t seed, const search_options& opt) {
    if (directions < 1) fail(errc::out_of_range, "need at least one direction");
    if (l < 1 || l > 4) fail(errc::too_large, "scans cap at l=4");
    scan_report rep;
    rep.l = l;
    rep.tuples = level_tuples(g.n, l);
    if (rep.tuples.empty()) fail(errc::out_of_range, "l exceeds the ground height");
    for (const auto& p : t.forbidden)
        if (is_chain_spec(p) && (!rep.k || p.size - 1 < *rep.k)) rep.k = p.size - 1;

    std::size_t m = rep.tuples.size();
    std::vector<std::vector<Rat>> dirs;
    for (std::size_t i = 0; i < m && dirs.size() < static_cast<std::size_t>(directions); ++i) {
        std::vector<Rat> d(m, Rat(0));
        d[i] = 1;
        dirs.push_back(std::move(d));
    }
    if (dirs.size() < static_cast<std::size_t>(directions))
        dirs.push_back(std::vector<Rat>(m, Rat(1)));
    splitmix64 rng(seed);
    while (dirs.size() < static_cast<std::size_t>(directions)) {
        std::vector<Rat> d;
        for (std::size_t i = 0; i < m; ++i) d.push_back(Rat(Int(rng.next_below(10))));
        dirs.push_back(std::move(d));
    }

    for (std::size_t di = 0; di < dirs.size(); ++di) {
        chain_weights cw;
        cw.l = l;
        for (std::size_t i = 0; i < m; ++i)
            if (dirs[di][i] != 0) cw.weights.push_back({rep.tuples[i], dirs[di][i]});
        search_result sr = max_chain_weight_family(g, t, cw, opt);
        scan_entry e;
        e.index = di;
        e.direction = dirs[di];
        e.value = sr.value;
        e.witness = sr.witness;
        e.profile = profile_vec(g, sr.witness);
        e.proven_optimal = sr.proven_optimal;
        e.is_union_of_levels = true;
        for (int lv = 0; lv <= g.n; ++lv) {
            Int c = e.profile.counts[lv];
            if (c == g.level_sizes[lv] && c > 0)
                e.witness_levels.push_back(lv);
            else if (c != 0)
                e.is_union_of_levels = false;
        }
        if (!e.is_union_of_levels) e.witness_levels.clear();
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

std::vector<bitset> canonical_partition(const ground& g, const family& f, int k) {
    if (k < 1) fail(errc::out_of_range, "partition needs k >= 1");
    bitset remaining = f.members;
    std::vector<bitset> parts;
    std::vector<int> round_of(g.count, 0);
    int round = 0;
    while (remaining.any()) {
        ++round;
        bitset minimal(g.count);
        remaining.for_each_set([&](std::size_t e) {
            if (!g.below[e].intersects(remaining)) {
                minimal.set(e);
                round_of[e] = round;
            }
        });
        remaining.andnot_assign(minimal);
        if (round <= k) parts.push_back(std::move(minimal));
    }
    if (round > k) {
        // walk a chain of k+1 members down from a deepest element
        std::size_t top = 0;
        for (std::size_t e = 0; e < g.count; ++e)
            if (round_of[e] > k) {
                top = e;
                break;
            }
        std::vector<int> chain;
        std::size_t cur = top;
        chain.push_back(static_cast<int>(cur));
        for (int r = round_of[top] - 1; static_cast<int>(chain.size()) < k + 1; --r) {
            bitset preds = g.below[cur];
            preds &= f.members;
            std::size_t next = g.count;
            preds.for_each_set([&](std::size_t p) {
                if (next == g.count && round_of[p] == r) next = p;
            });
            cur = next;
            chain.push_back(static_cast<int>(cur));
        }
        std::reverse(chain.begin(), chain.end());
        fail(errc::not_k_sperner, "family holds a chain of " + std::to_string(k + 1) + " members",
             chain);
    }
    while (static_cast<int>(parts.size()) < k) parts.emplace_back(g.count);
    return parts;
}

}  // namespace posetlab
