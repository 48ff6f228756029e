#include "posetlab/search.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

namespace posetlab {

namespace {

constexpr std::size_t search_universe_cap = 4096;  // recursion depth = universe size

// The three objectives share one engine: full evaluation plus the exact
// removal delta value(S) - value(S \ e) for e in S. Additive objectives
// (per-element weights) admit universe filtering under the pair filter.
struct objective_iface {
    virtual ~objective_iface() = default;
    virtual Rat full(const bitset& members) const = 0;
    virtual Rat removal_delta(const bitset& members, std::size_t e) const = 0;
    virtual bool additive() const { return false; }
};

struct weight_objective final : objective_iface {
    const ground& g;
    const std::vector<Rat>& w;
    weight_objective(const ground& gr, const std::vector<Rat>& wv) : g(gr), w(wv) {}
    Rat full(const bitset& m) const override {
        Rat s = 0;
        for (int lv = 0; lv <= g.n; ++lv) {
            if (w[lv] == 0) continue;
            s += w[lv] * Int(m.count_range(g.level_begin[lv], g.level_begin[lv + 1]));
        }
        return s;
    }
    Rat removal_delta(const bitset&, std::size_t e) const override { return w[g.level_of[e]]; }
    bool additive() const override { return true; }
};

struct copies_objective final : objective_iface {
    const ground& g;
    const poset_spec& pat;
    copies_objective(const ground& gr, const poset_spec& p) : g(gr), pat(p) {}
    Rat full(const bitset& m) const override { return Rat(count_copies(g, m, pat)); }
    Rat removal_delta(const bitset& m, std::size_t e) const override {
        return Rat(count_copies_through(g, m, pat, e));
    }
};

struct chain_objective final : objective_iface {
    const ground& g;
    const chain_weights& cw;
    chain_objective(const ground& gr, const chain_weights& c) : g(gr), cw(c) {}
    Rat full(const bitset& m) const override {
        Rat s = 0;
        for (const auto& [tuple, wt] : cw.weights)
            if (wt != 0) s += wt * count_level_chains(g, m, tuple);
        return s;
    }
    // Chains through e factor into a prefix chain strictly below e and a
    // suffix chain strictly above it (transitivity glues them).
    Rat removal_delta(const bitset& m, std::size_t e) const override {
        if (!m.test(e)) return 0;
        int lv = g.level_of[e];
        bitset lo = g.below[e];
        lo &= m;
        bitset hi = g.above[e];
        hi &= m;
        Rat s = 0;
        for (const auto& [tuple, wt] : cw.weights) {
            if (wt == 0) continue;
            int l = static_cast<int>(tuple.size());
            for (int p = 0; p < l; ++p) {
                if (tuple[p] != lv) continue;
                Int below_ways = 1, above_ways = 1;
                if (p > 0)
                    below_ways = count_level_chains(
                        g, lo, std::vector<int>(tuple.begin(), tuple.begin() + p));
                if (below_ways == 0) continue;
                if (p + 1 < l)
                    above_ways = count_level_chains(
                        g, hi, std::vector<int>(tuple.begin() + p + 1, tuple.end()));
                s += wt * below_ways * above_ways;
            }
        }
        return s;
    }
};

struct engine {
    const ground& g;
    const property_spec& prop;
    const objective_iface& obj;
    bitset universe;
    std::vector<bitset> compat;  // pair-filter compatibility rows
    std::vector<std::size_t> order;
    Rat seed_value = 0;
    bitset seed_witness;
    Int cap;
    int threads;

    engine(const ground& gr, const property_spec& pr, const objective_iface& ob,
           const search_options& opt)
        : g(gr), prop(pr), obj(ob), universe(gr.count), seed_witness(gr.count) {
        if (opt.restrict_to) {
            if (opt.restrict_to->size() != gr.count)
                fail(errc::out_of_range, "restriction bitset size mismatch");
            universe = *opt.restrict_to;
        } else {
            for (std::size_t e = 0; e < gr.count; ++e) universe.set(e);
        }
        if (universe.count() > search_universe_cap)
            fail(errc::too_large, "search universe exceeds " +
                                      std::to_string(search_universe_cap) + " elements");
        for (const auto& p : prop.forbidden)
            if (p.size < 1) fail(errc::parse_error, "empty forbidden pattern");
        if (prop.pair_filter == pair_filter_kind::intersecting) {
            compat.assign(g.count, bitset(g.count));
            for (std::size_t a = 0; a < g.count; ++a)
                for (std::size_t b = a + 1; b < g.count; ++b)
                    if (g.meet_rank(a, b) >= 1) {
                        compat[a].set(b);
                        compat[b].set(a);
                    }
        }
        cap = opt.node_cap.value_or(Int(100000000));
        if (cap < 1) fail(errc::out_of_range, "node cap must be positive");
        threads = opt.threads > 0 ? opt.threads
                                  : std::max(1u, std::thread::hardware_concurrency());
    }

    bool feasible_add(const bitset& with_x, std::size_t x) const {
        if (!compat.empty()) {
            bitset others = with_x;
            others.reset(x);
            if (!others.is_subset_of(compat[x])) return false;
        }
        for (const auto& p : prop.forbidden)
            if (contains_copy_through(g, with_x, p, x).found) return false;
        return true;
    }

    bool feasible_family(const bitset& members) const {
        if (!compat.empty()) {
            bool ok = true;
            members.for_each_set([&](std::size_t e) {
                if (!ok) return;
                bitset others = members;
                others.reset(e);
                if (!others.is_subset_of(compat[e])) ok = false;
            });
            if (!ok) return false;
        }
        for (const auto& p : prop.forbidden)
            if (contains_copy(g, members, p).found) return false;
        return true;
    }

    void build_order() {
        std::vector<std::size_t> ids = universe.to_indices();
        std::vector<Rat> key(ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i)
            key[i] = obj.removal_delta(universe, ids[i]);
        std::vector<std::size_t> idx(ids.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (key[a] != key[b]) return key[a] > key[b];
            return ids[a] < ids[b];
        });
        order.clear();
        for (auto i : idx) order.push_back(ids[i]);
    }

    void build_seeds() {
        std::vector<bitset> cands;
        cands.emplace_back(g.count);  // empty family
        // unions of up to three levels, clipped to the universe
        std::vector<std::vector<int>> level_sets;
        for (int a = 0; a <= g.n; ++a) {
            level_sets.push_back({a});
            for (int b = a + 1; b <= g.n; ++b) {
                level_sets.push_back({a, b});
                for (int c = b + 1; c <= g.n; ++c) level_sets.push_back({a, b, c});
            }
        }
        for (const auto& ls : level_sets) {
            bitset f(g.count);
            for (int lv : ls)
                for (std::size_t e = g.level_begin[lv]; e < g.level_begin[lv + 1]; ++e)
                    f.set(e);
            f &= universe;
            if (f.none()) continue;
            if (feasible_family(f)) cands.push_back(std::move(f));
        }
        auto better = [&](const Rat& va, const bitset& a, const Rat& vb, const bitset& b) {
            if (va != vb) return va > vb;
            return a.lex_compare(b) < 0;
        };
        Rat best_v = 0;
        bitset best_f(g.count);
        bool first = true;
        for (const auto& f : cands) {
            Rat v = obj.full(f);
            if (first || better(v, f, best_v, best_f)) {
                best_v = v;
                best_f = f;
                first = false;
            }
        }
        // greedy extension of the best seed, in branch order
        if (universe.count() <= 2000) {
            bitset gr_f = best_f;
            for (std::size_t x : order) {
                if (gr_f.test(x)) continue;
                bitset t = gr_f;
                t.set(x);
                if (feasible_add(t, x)) gr_f = t;
            }
            Rat v = obj.full(gr_f);
            if (better(v, gr_f, best_v, best_f)) {
                best_v = v;
                best_f = gr_f;
            }
        }
        seed_value = best_v;
        seed_witness = best_f;
    }

    struct sub_result {
        Rat best = 0;
        bitset witness;
        bool witness_set = false;
        bool complete = true;
        Int nodes = 0;
        bool dead = false;  // prefix infeasible: nothing to do
    };

    struct walker {
        const engine& E;
        bitset C, U;
        Rat vC, vU;
        Rat best;
        bitset witness;
        bool wset = false;
        Int nodes = 0;
        Int budget;
        bool complete = true;

        walker(const engine& e, Int b)
            : E(e), C(e.g.count), U(e.universe), vC(0), vU(0), best(e.seed_value),
              witness(e.g.count), budget(b) {}

        void dfs(std::size_t idx) {
            ++nodes;
            if (nodes > budget) {
                complete = false;
                return;
            }
            if (vU < best || (vU == best && wset)) return;
            if (idx == E.order.size()) {
                if (vC > best || (vC == best && !wset)) {
                    best = vC;
                    witness = C;
                    wset = true;
                }
                return;
            }
            std::size_t x = E.order[idx];
            if (!U.test(x)) {  // filtered out by an earlier include
                dfs(idx + 1);
                return;
            }
            // exclude first: the canonical order visits smaller membership
            // strings before larger ones
            Rat dx = E.obj.removal_delta(U, x);
            U.reset(x);
            vU -= dx;
            dfs(idx + 1);
            U.set(x);
            vU += dx;
            if (!complete) return;
            // include
            C.set(x);
            if (E.feasible_add(C, x)) {
                Rat di = E.obj.removal_delta(C, x);
                vC += di;
                if (!E.compat.empty() && E.obj.additive()) {
                    // every later member must intersect x: drop the rest now
                    bitset removed = U;
                    removed.andnot_assign(E.compat[x]);
                    removed.andnot_assign(C);
                    Rat dU = 0;
                    removed.for_each_set(
                        [&](std::size_t e) { dU += E.obj.removal_delta(U, e); });
                    U.andnot_assign(removed);
                    vU -= dU;
                    dfs(idx + 1);
                    U |= removed;
                    vU += dU;
                } else {
                    dfs(idx + 1);
                }
                vC -= di;
            }
            C.reset(x);
        }
    };

    search_result run() {
        build_order();
        build_seeds();

        // Fixed decomposition: all assignments of the first D branch
        // positions, in exclude-first order, independent of thread count.
        std::size_t D = std::min<std::size_t>(6, order.size());
        std::vector<std::vector<int>> prefixes;
        std::vector<int> cur;
        std::function<void()> gen = [&]() {
            if (cur.size() == D) {
                prefixes.push_back(cur);
                return;
            }
            cur.push_back(0);
            gen();
            cur.back() = 1;
            gen();
            cur.pop_back();
        };
        gen();

        // Replay each prefix; drop infeasible ones before splitting budget.
        std::vector<walker> walkers;
        walkers.reserve(prefixes.size());
        for (std::size_t pi = 0; pi < prefixes.size(); ++pi) {
            walker w(*this, 0);
            w.vU = obj.full(universe);
            bool ok = true;
            for (std::size_t idx = 0; idx < D && ok; ++idx) {
                std::size_t x = order[idx];
                if (prefixes[pi][idx] == 0) {
                    if (w.U.test(x)) {
                        w.vU -= obj.removal_delta(w.U, x);
                        w.U.reset(x);
                    }
                } else {
                    if (!w.U.test(x)) {
                        ok = false;
                        break;
                    }
                    w.C.set(x);
                    if (!feasible_add(w.C, x)) {
                        ok = false;
                        break;
                    }
                    w.vC += obj.removal_delta(w.C, x);
                    if (!compat.empty() && obj.additive()) {
                        bitset removed = w.U;
                        removed.andnot_assign(compat[x]);
                        removed.andnot_assign(w.C);
                        Rat dU = 0;
                        removed.for_each_set(
                            [&](std::size_t e) { dU += obj.removal_delta(w.U, e); });
                        w.U.andnot_assign(removed);
                        w.vU -= dU;
                    }
                }
            }
            if (!ok) continue;
            walkers.push_back(std::move(w));
        }

        Int S = static_cast<long>(walkers.size());
        for (std::size_t i = 0; i < walkers.size(); ++i)
            walkers[i].budget = cap / S + (Int(static_cast<long>(i)) < cap % S ? 1 : 0);

        int nthreads = std::min<int>(threads, static_cast<int>(walkers.size()));
        if (nthreads <= 1) {
            for (auto& w : walkers) w.dfs(D);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> pool;
            for (int t = 0; t < nthreads; ++t)
                pool.emplace_back([&]() {
                    while (true) {
                        std::size_t i = next.fetch_add(1);
                        if (i >= walkers.size()) break;
                        walkers[i].dfs(D);
                    }
                });
            for (auto& th : pool) th.join();
        }

        // Merge in prefix order: the first walker attaining the maximum owns
        // the witness (its region precedes all later ones in the canonical
        // membership-string order).
        search_result res;
        res.value = seed_value;
        res.witness.g = &g;
        res.witness.members = seed_witness;
        res.nodes_explored = 0;
        res.proven_optimal = true;
        bool witness_from_walker = false;
        for (auto& w : walkers) {
            res.nodes_explored += w.nodes;
            if (!w.complete) res.proven_optimal = false;
            if (w.best > res.value) {
                res.value = w.best;
                res.witness.members = w.witness;
                witness_from_walker = w.wset;
            } else if (w.best == res.value && w.wset && !witness_from_walker) {
                res.witness.members = w.witness;
                witness_from_walker = true;
            }
        }
        return res;
    }
};

void validate_weights(const ground& g, const weight_vec& w) {
    if (w.w.size() != static_cast<std::size_t>(g.n + 1))
        fail(errc::out_of_range, "weight vector needs n+1 entries");
    for (const auto& x : w.w)
        if (x < 0) fail(errc::out_of_range, "weights must be nonnegative");
}

}  // namespace

search_result max_weight_family(const ground& g, const property_spec& t, const weight_vec& w,
                                const search_options& opt) {
    validate_weights(g, w);
    weight_objective obj(g, w.w);
    engine e(g, t, obj, opt);
    return e.run();
}

search_result max_chain_weight_family(const ground& g, const property_spec& t,
                                      const chain_weights& cw, const search_options& opt) {
    if (cw.l < 1 || cw.l > 4) fail(errc::out_of_range, "chain length l must be in [1,4]");
    for (const auto& [tuple, wt] : cw.weights) {
        if (static_cast<int>(tuple.size()) != cw.l) fail(errc::invalid_tuple, "tuple length != l");
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            if (tuple[i] < 0 || tuple[i] > g.n) fail(errc::invalid_tuple, "tuple level range");
            if (i && tuple[i] <= tuple[i - 1])
                fail(errc::invalid_tuple, "tuple must be strictly increasing");
        }
        if (wt < 0) fail(errc::out_of_range, "chain weights must be nonnegative");
    }
    chain_objective obj(g, cw);
    engine e(g, t, obj, opt);
    return e.run();
}

search_result la_search(const ground& g, const std::vector<poset_spec>& forbidden,
                        const search_options& opt) {
    property_spec t;
    t.forbidden = forbidden;
    weight_vec w;
    w.w.assign(g.n + 1, Rat(1));
    return max_weight_family(g, t, w, opt);
}

Int la_value(const ground& g, const std::vector<poset_spec>& forbidden,
             const search_options& opt) {
    search_result r = la_search(g, forbidden, opt);
    if (!r.proven_optimal) fail(errc::too_large, "node cap hit before optimality was proven");
    return numerator(r.value);
}

Int sigma_value(int n, int k, int q, bool alt_window) {
    if (n < 0 || k < 0 || k > n + 1) fail(errc::out_of_range, "sigma window out of range");
    if (q != 0 && q < 2) fail(errc::out_of_range, "sigma base q");
    if (k == 0) {
        if (alt_window) fail(errc::out_of_range, "no alternate window for k=0");
        return 0;
    }
    int d = n - k;
    int start = d >= 0 ? d / 2 : (d - 1) / 2;  // floor((n-k)/2)
    if (alt_window) {
        // Two maximal middle windows exist exactly when the boundary levels
        // are symmetric partners: start = n - (start+k), i.e. n-k even.
        if (d < 0 || d % 2 != 0)
            fail(errc::out_of_range, "no alternate middle window for these n,k");
        --start;
    }
    Int s = 0;
    for (int i = 1; i <= k; ++i)
        s += (q == 0) ? binomial(Int(n), start + i) : gaussian(n, start + i, q);
    return s;
}

copies_result max_copies(const ground& g, const std::vector<poset_spec>& forbidden,
                         const poset_spec& q_pat, const search_options& opt) {
    if (q_pat.size > 6) fail(errc::too_large, "counted pattern caps at 6 elements");
    std::size_t usize = opt.restrict_to ? opt.restrict_to->count() : g.count;
    if (usize > 40 && !opt.node_cap)
        fail(errc::too_large,
             "copy-count search beyond 40 elements requires an explicit node cap");
    property_spec t;
    t.forbidden = forbidden;
    copies_objective obj(g, q_pat);
    engine e(g, t, obj, opt);
    search_result r = e.run();
    copies_result out;
    if (denominator(r.value) != 1) fail(errc::out_of_range, "copy count must be integral");
    out.value = numerator(r.value);
    out.witness = r.witness;
    out.nodes_explored = r.nodes_explored;
    out.proven_optimal = r.proven_optimal;
    return out;
}

Int prop_predict(prop_case which, int n, int q, int r) {
    field_make(q);  // validates the prime power
    if (n < 0 || r < 0) fail(errc::out_of_range, "prop_predict parameters");
    switch (which) {
        case prop_case::i:
        case prop_case::ii:
            return binomial(gaussian(n, n / 2, q), r);
        case prop_case::iii: {
            Int best = 0;
            for (int k = 0; k <= n; ++k) {
                Int v = gaussian(n, k, q) * binomial(gaussian(k, k / 2, q), r);
                if (v > best) best = v;
            }
            return best;
        }
    }
    fail(errc::parse_error, "unknown case");
}

}  // namespace posetlab
