#include "posetlab/criteria.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "posetlab/bigint.hpp"
#include "posetlab/covering.hpp"
#include "posetlab/errors.hpp"
#include "posetlab/ground.hpp"
#include "posetlab/poset.hpp"
#include "posetlab/profile.hpp"
#include "posetlab/rng.hpp"
#include "posetlab/search.hpp"

namespace posetlab {
namespace {

struct checker {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
    void note(const std::string& what) {
        if (ok) detail = what;
    }
};

property_spec forbid(std::initializer_list<const char*> names) {
    property_spec t;
    for (const char* s : names) t.forbidden.push_back(parse_poset(s));
    return t;
}

bool family_ok(const ground& g, const bitset& f, const property_spec& t) {
    auto idx = f.to_indices();
    if (t.pair_filter == pair_filter_kind::intersecting)
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a + 1; b < idx.size(); ++b)
                if (g.meet_rank(idx[a], idx[b]) < 1) return false;
    for (const auto& p : t.forbidden)
        if (contains_copy(g, f, p).found) return false;
    return true;
}

Rat weigh(const ground& g, const bitset& f, const std::vector<Rat>& w) {
    Rat s = 0;
    for (int lv = 0; lv <= g.n; ++lv)
        s += w[lv] * Rat(Int(f.count_range(g.level_begin[lv], g.level_begin[lv + 1])));
    return s;
}

bitset level_union(const ground& g, std::initializer_list<int> levels) {
    bitset b(g.count);
    for (int lv : levels)
        for (std::size_t e = g.level_begin[lv]; e < g.level_begin[lv + 1]; ++e) b.set(e);
    return b;
}

criterion_result level_sizes_match_gaussian(int) {
    checker c;
    for (int q : {2, 3}) {
        int n_max = q == 2 ? 5 : 4;
        for (int n = 0; n <= n_max; ++n) {
            ground g = build_subspace(n, q);
            for (int i = 0; i <= n; ++i)
                c.expect(g.level_sizes[i] == gaussian(n, i, q),
                         "level " + std::to_string(i) + " of subspace(" + std::to_string(n) + "," +
                             std::to_string(q) + ")");
        }
    }
    return {1, "subspace level sizes match gaussian counts", c.ok, c.detail};
}

criterion_result sublattice_coverings_verify(int) {
    checker c;
    const Int want_sizes[3] = {Int(3), Int(28), Int(840)};
    for (int n = 2; n <= 4; ++n) {
        ground g = build_subspace(n, 2);
        covering_spec cov = build_covering(g, covering_method::boolean_sublattices);
        c.expect(cov.gamma_size() == want_sizes[n - 2],
                 "sublattice count for n=" + std::to_string(n));
        verify_result v = verify_covering(cov);
        c.expect(v.ok, "covering counts for n=" + std::to_string(n));
        if (n == 3) {
            std::vector<Int> want_t = {Int(28), Int(12), Int(12), Int(28)};
            c.expect(cov.t == want_t, "per-level counts for n=3");
        }
    }
    return {2, "boolean sublattice coverings verify with closed-form counts", c.ok, c.detail};
}

criterion_result middle_window_weight_identity(int) {
    checker c;
    for (int n = 2; n <= 4; ++n) {
        ground g = build_subspace(n, 2);
        covering_spec cov = build_covering(g, covering_method::boolean_sublattices);
        for (int k = 1; k <= n + 1; ++k) {
            int start = (n - k) >= 0 ? (n - k) / 2 : (n - k - 1) / 2;
            Int window = 0;
            for (int i = start + 1; i <= start + k; ++i)
                if (i >= 0 && i <= n) window += cov.t[i] * gaussian(n, i, 2);
            // Every sublattice is a copy of the boolean lattice, so the
            // window weight collapses to |Gamma| times the boolean window sum.
            c.expect(window == cov.gamma_size() * sigma_value(n, k),
                     "window n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    }
    ground g3 = build_subspace(3, 2);
    covering_spec cov3 = build_covering(g3, covering_method::boolean_sublattices);
    Int split = cov3.t[1] * gaussian(3, 1, 2) + cov3.t[2] * gaussian(3, 2, 2);
    c.expect(split == Int(168) && split == Int(28) * sigma_value(3, 2), "12*7 + 12*7 = 28*6");
    return {3, "middle window weight identity for sublattice coverings", c.ok, c.detail};
}

criterion_result chain_free_maxima(int threads) {
    checker c;
    search_options opt;
    opt.threads = threads;
    for (int n = 0; n <= 5; ++n) {
        ground g = build_boolean(n);
        c.expect(la_value(g, {parse_poset("chain:2")}, opt) == binomial(Int(n), n / 2),
                 "antichain maximum in boolean(" + std::to_string(n) + ")");
    }
    for (int n = 0; n <= 4; ++n) {
        ground g = build_boolean(n);
        for (int k = 1; k <= 3; ++k) {
            std::string p = "chain:" + std::to_string(k + 1);
            c.expect(la_value(g, {parse_poset(p)}, opt) == sigma_value(n, std::min(k, n + 1)),
                     "chain:" + std::to_string(k + 1) + "-free maximum in boolean(" +
                         std::to_string(n) + ")");
        }
    }
    return {4, "chain-free maxima equal middle level sums", c.ok, c.detail};
}

criterion_result butterfly_free_maxima(int threads) {
    checker c;
    search_options opt;
    opt.threads = threads;
    std::vector<poset_spec> b = {parse_poset("butterfly")};
    c.expect(la_value(build_boolean(3), b, opt) == Int(6), "boolean(3)");
    c.expect(la_value(build_boolean(4), b, opt) == Int(10), "boolean(4)");
    Int sub = la_value(build_subspace(3, 2), b, opt);
    c.expect(sub == Int(14) && sub == sigma_value(3, 2, 2), "subspace(3,2)");
    return {5, "butterfly-free maxima equal two middle level sums", c.ok, c.detail};
}

criterion_result vee_wedge_free_maxima(int threads) {
    checker c;
    search_options opt;
    opt.threads = threads;
    std::vector<poset_spec> vw = {parse_poset("vee"), parse_poset("wedge")};
    for (int n = 2; n <= 3; ++n) {
        ground g = build_subspace(n, 2);
        c.expect(la_value(g, vw, opt) == gaussian(n, n / 2, 2),
                 "subspace(" + std::to_string(n) + ",2)");
    }
    return {6, "vee and wedge free maxima equal the largest level", c.ok, c.detail};
}

criterion_result copy_count_maxima(int threads) {
    checker c;
    search_options opt;
    opt.threads = threads;
    ground g = build_subspace(2, 2);

    copies_result broom2 = max_copies(g, {parse_poset("vee")}, parse_poset("broom:2"), opt);
    c.expect(broom2.proven_optimal && broom2.value == Int(3), "broom:2 copies under vee-free");
    c.expect(broom2.value == prop_predict(prop_case::i, 2, 2, 2), "closed form for broom:2");

    copies_result diam = max_copies(g, {parse_poset("butterfly")}, parse_poset("diamond:1"), opt);
    c.expect(diam.proven_optimal && diam.value == Int(3), "diamond:1 copies under butterfly-free");
    c.expect(diam.value == prop_predict(prop_case::ii, 2, 2, 1), "closed form for diamond:1");

    copies_result broom3 = max_copies(g, {parse_poset("chain:3")}, parse_poset("broom:3"), opt);
    c.expect(broom3.proven_optimal && broom3.value == Int(1), "broom:3 copies under chain:3-free");
    c.expect(broom3.value == prop_predict(prop_case::iii, 2, 2, 3), "closed form for broom:3");
    return {7, "copy-count maxima match their closed-form predictions", c.ok, c.detail};
}

criterion_result lym_suite(int) {
    checker c;
    splitmix64 rng(0x5e1ec7ed);
    for (int rep = 0; rep < 1000 && c.ok; ++rep) {
        int n = 1 + rep % 8;
        ground g = build_boolean(n);
        family f(g);
        if (rep % 8 == 7) {
            int lv = int(rng.next_below(std::uint64_t(n + 1)));
            f.members = level_union(g, {lv});
        } else {
            bitset pick(g.count);
            std::size_t m = 1 + rng.next_below(g.count);
            for (std::size_t i = 0; i < m; ++i) pick.set(rng.next_below(g.count));
            pick.for_each_set([&](std::size_t e) {
                if (!g.below[e].intersects(pick)) f.members.set(e);
            });
        }
        Rat s = lym_sum(g, f);
        c.expect(s <= Rat(1), "lym sum exceeds 1 at rep " + std::to_string(rep));
        if (s == Rat(1)) {
            profile_vector pv = profile_vec(g, f);
            int full = 0, partial = 0;
            for (int lv = 0; lv <= n; ++lv) {
                if (pv.counts[lv] == g.level_sizes[lv])
                    ++full;
                else if (pv.counts[lv] != 0)
                    ++partial;
            }
            c.expect(full == 1 && partial == 0,
                     "lym equality away from a full level at rep " + std::to_string(rep));
        }
    }
    ground s32 = build_subspace(3, 2);
    family mid(s32);
    mid.members = level_union(s32, {1, 2});
    c.expect(!contains_copy(s32, mid, parse_poset("butterfly")).found,
             "levels 1 and 2 of subspace(3,2) contain a butterfly");
    c.expect(lym_sum(s32, mid) == Rat(2), "lym sum of levels 1 and 2 of subspace(3,2)");
    return {8, "lym sums bounded by one with equality only at full levels", c.ok, c.detail};
}

criterion_result covering_bound_dominates(int threads) {
    checker c;
    splitmix64 rng(0xc0ffee);
    const char* pats[6] = {"chain:2", "chain:3", "vee", "wedge", "butterfly", "diamond:2"};
    for (int rep = 0; rep < 50 && c.ok; ++rep) {
        ground g = build_boolean(rep % 2 == 0 ? 3 : 4);
        covering_spec cov = build_covering(g, covering_method::chains);
        property_spec t;
        t.forbidden.push_back(parse_poset(pats[rng.next_below(6)]));
        weight_vec w;
        for (int lv = 0; lv <= g.n; ++lv) w.w.push_back(Rat(Int(rng.next_below(5))));

        search_options opt;
        opt.threads = threads;
        search_result best = max_weight_family(g, t, w, opt);
        c.expect(best.proven_optimal, "search unproven at rep " + std::to_string(rep));

        lemma_bound_result inner = lemma_bound(cov, w, Rat(0));
        auto members = cov.gamma[0].to_indices();
        Rat x = 0;
        for (std::uint32_t mask = 0; mask < (1u << members.size()); ++mask) {
            bitset f(g.count);
            for (std::size_t i = 0; i < members.size(); ++i)
                if (mask >> i & 1) f.set(members[i]);
            if (!family_ok(g, f, t)) continue;
            Rat v = 0;
            f.for_each_set([&](std::size_t e) { v += inner.inner_weights[g.level_of[e]]; });
            if (v > x) x = v;
        }
        c.expect(best.value <= Rat(cov.gamma_size()) * x,
                 "bound violated at rep " + std::to_string(rep));
    }
    for (int rep = 0; rep < 100 && c.ok; ++rep) {
        ground g = build_boolean(rep % 2 == 0 ? 3 : 4);
        covering_spec cov = build_covering(g, covering_method::chains);
        bitset f(g.count);
        for (std::size_t e = 0; e < g.count; ++e)
            if (rng.next_below(2)) f.set(e);
        for (int lv = 0; lv <= g.n; ++lv) {
            Int lhs = cov.t[lv] * Int(f.count_range(g.level_begin[lv], g.level_begin[lv + 1]));
            Int rhs = 0;
            for (std::size_t gi = 0; gi < cov.gamma.size(); ++gi) {
                bitset cap = cov.gamma[gi];
                cap &= f;
                rhs += cov.multiplicity[gi] *
                       Int(cap.count_range(g.level_begin[lv], g.level_begin[lv + 1]));
            }
            c.expect(lhs == rhs, "counting identity at rep " + std::to_string(rep) + " level " +
                                     std::to_string(lv));
        }
    }
    return {9, "covering bound dominates searched optima", c.ok, c.detail};
}

criterion_result extreme_scans_and_tuple_cover(int threads) {
    checker c;
    search_options opt;
    opt.threads = threads;

    ground b4 = build_boolean(4);
    scan_report anti = extreme_point_scan(b4, forbid({"chain:2"}), 1, 200, 0xbada11ce, opt);
    c.expect(anti.k.has_value() && *anti.k == 1, "chain bound for antichains");
    for (const auto& e : anti.entries)
        c.expect(e.proven_optimal && e.is_union_of_levels && e.witness_levels.size() <= 1,
                 "antichain direction " + std::to_string(e.index));

    ground s32 = build_subspace(3, 2);
    for (int l = 1; l <= 2; ++l) {
        scan_report two = extreme_point_scan(s32, forbid({"chain:3"}), l, 100, 0x5ca1ab1e, opt);
        c.expect(two.k.has_value() && *two.k == 2, "chain bound for two-sperner families");
        for (const auto& e : two.entries)
            c.expect(e.proven_optimal && e.is_union_of_levels && e.witness_levels.size() <= 2,
                     "two-sperner direction " + std::to_string(e.index) + " at l=" +
                         std::to_string(l));
    }

    covering_spec cov = build_covering(s32, covering_method::boolean_sublattices);
    tuple_cover_result tc = chain_tuple_cover(cov, 2);
    c.expect(tc.uniform, "tuple cover is not uniform");
    c.expect(tc.lookup({1, 2}) == Int(8), "chains on levels (1,2) per sublattice");
    return {10, "extreme point scans report level unions and tuple covers are uniform", c.ok,
            c.detail};
}

criterion_result intersecting_level(int threads) {
    checker c;
    ground g = build_subspace(4, 2);
    property_spec t;
    t.pair_filter = pair_filter_kind::intersecting;
    search_options opt;
    opt.threads = threads;
    opt.restrict_to = level_union(g, {2});
    weight_vec w;
    w.w.assign(g.n + 1, Rat(1));
    search_result r = max_weight_family(g, t, w, opt);
    c.expect(r.proven_optimal, "search unproven");
    c.expect(r.value == Rat(7) && Int(7) == gaussian(3, 1, 2),
             "intersecting maximum on level 2 of subspace(4,2)");
    c.expect(family_ok(g, r.witness.members, t), "witness not intersecting");
    return {11, "maximum intersecting subfamily of a middle level", c.ok, c.detail};
}

criterion_result search_equals_enumeration(int threads) {
    checker c;
    splitmix64 rng(0x0dd5eed5);
    const char* pats[8] = {"chain:2", "chain:3", "vee",       "wedge",
                           "butterfly", "fork:3", "diamond:2", "broom:3"};
    for (int rep = 0; rep < 50 && c.ok; ++rep) {
        ground g;
        switch (rep % 5) {
            case 0: g = build_boolean(3); break;
            case 1: g = build_subspace(2, 2); break;
            case 2: g = build_subspace(2, 3); break;
            case 3: g = build_boolean(4); break;
            default: g = build_subspace(3, 2); break;
        }
        property_spec t;
        t.forbidden.push_back(parse_poset(pats[rng.next_below(8)]));
        if (rng.next_below(3) == 0) t.forbidden.push_back(parse_poset(pats[rng.next_below(8)]));
        if (rng.next_below(3) == 0) t.pair_filter = pair_filter_kind::intersecting;
        std::vector<Rat> w;
        for (int lv = 0; lv <= g.n; ++lv) w.push_back(Rat(Int(rng.next_below(4))));

        Rat want = 0;
        for (std::uint32_t mask = 0; mask < (1u << g.count); ++mask) {
            bitset f(g.count);
            for (std::size_t e = 0; e < g.count; ++e)
                if (mask >> e & 1) f.set(e);
            if (!family_ok(g, f, t)) continue;
            Rat v = weigh(g, f, w);
            if (v > want) want = v;
        }

        weight_vec wv;
        wv.w = w;
        search_options opt;
        opt.threads = threads;
        search_result got = max_weight_family(g, t, wv, opt);
        c.expect(got.proven_optimal, "search unproven at rep " + std::to_string(rep));
        c.expect(got.value == want, "value mismatch at rep " + std::to_string(rep));
        c.expect(family_ok(g, got.witness.members, t),
                 "infeasible witness at rep " + std::to_string(rep));
        c.expect(weigh(g, got.witness.members, w) == got.value,
                 "witness value mismatch at rep " + std::to_string(rep));
    }
    return {12, "branch and bound equals exhaustive enumeration", c.ok, c.detail};
}

}  // namespace

std::vector<criterion_result> run_acceptance(int threads) {
    struct step {
        int index;
        const char* name;
        criterion_result (*fn)(int);
    };
    const step steps[] = {
        {1, "subspace level sizes match gaussian counts", &level_sizes_match_gaussian},
        {2, "boolean sublattice coverings verify with closed-form counts",
         &sublattice_coverings_verify},
        {3, "middle window weight identity for sublattice coverings",
         &middle_window_weight_identity},
        {4, "chain-free maxima equal middle level sums", &chain_free_maxima},
        {5, "butterfly-free maxima equal two middle level sums", &butterfly_free_maxima},
        {6, "vee and wedge free maxima equal the largest level", &vee_wedge_free_maxima},
        {7, "copy-count maxima match their closed-form predictions", &copy_count_maxima},
        {8, "lym sums bounded by one with equality only at full levels", &lym_suite},
        {9, "covering bound dominates searched optima", &covering_bound_dominates},
        {10, "extreme point scans report level unions and tuple covers are uniform",
         &extreme_scans_and_tuple_cover},
        {11, "maximum intersecting subfamily of a middle level", &intersecting_level},
        {12, "branch and bound equals exhaustive enumeration", &search_equals_enumeration},
    };
    std::vector<criterion_result> out;
    for (const step& s : steps) {
        try {
            out.push_back(s.fn(threads));
        } catch (const std::exception& e) {
            out.push_back({s.index, s.name, false, std::string("exception: ") + e.what()});
        }
    }
    return out;
}

}  // namespace posetlab
