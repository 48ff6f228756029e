#include "posetlab/poset.hpp"

#include <algorithm>
#include <functional>

namespace posetlab {

namespace {

poset_spec close_and_check(int size, std::vector<std::pair<int, int>> rels,
                           const std::string& name) {
    if (size > 8) fail(errc::too_large, "pattern poset has " + std::to_string(size) +
                                            " elements (cap 8)");
    bool adj[8][8] = {};
    for (auto [a, b] : rels) adj[a][b] = true;
    for (int k = 0; k < size; ++k)
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j)
                if (adj[i][k] && adj[k][j]) adj[i][j] = true;
    for (int i = 0; i < size; ++i)
        if (adj[i][i]) fail(errc::cycle_detected, "relations of '" + name + "' contain a cycle");
    poset_spec p;
    p.size = size;
    p.name = name;
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            if (adj[i][j]) {
                p.above[i] |= std::uint8_t(1) << j;
                p.below[j] |= std::uint8_t(1) << i;
            }
    return p;
}

int parse_count(const std::string& s, const std::string& whole) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        fail(errc::parse_error, "bad count in poset spec '" + whole + "'");
    if (s.size() > 2) fail(errc::too_large, "pattern poset too large: '" + whole + "'");
    return std::stoi(s);
}

// Longest chain strictly below / above each pattern element (for level
// window pruning during embedding).
void chain_depths(const poset_spec& p, std::array<int, 8>& depth, std::array<int, 8>& height) {
    for (int i = 0; i < p.size; ++i) depth[i] = -1;
    bool progress = true;
    while (progress) {
        progress = false;
        for (int i = 0; i < p.size; ++i) {
            if (depth[i] >= 0) continue;
            int d = 0;
            bool ready = true;
            for (int j = 0; j < p.size; ++j) {
                if (!p.less(j, i)) continue;
                if (depth[j] < 0) {
                    ready = false;
                    break;
                }
                d = std::max(d, depth[j] + 1);
            }
            if (ready) {
                depth[i] = d;
                progress = true;
            }
        }
    }
    for (int i = 0; i < p.size; ++i) height[i] = -1;
    progress = true;
    while (progress) {
        progress = false;
        for (int i = 0; i < p.size; ++i) {
            if (height[i] >= 0) continue;
            int h = 0;
            bool ready = true;
            for (int j = 0; j < p.size; ++j) {
                if (!p.less(i, j)) continue;
                if (height[j] < 0) {
                    ready = false;
                    break;
                }
                h = std::max(h, height[j] + 1);
            }
            if (ready) {
                height[i] = h;
                progress = true;
            }
        }
    }
}

// Fixed placement order: ascending longest-chain-below, then index. Any
// fixed order is correct (constraints propagate in both directions); this
// one tends to fix low levels first.
std::vector<int> placement_order(const poset_spec& p) {
    std::array<int, 8> depth{}, height{};
    chain_depths(p, depth, height);
    std::vector<int> order(p.size);
    for (int i = 0; i < p.size; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return depth[a] < depth[b]; });
    return order;
}

struct embed_ctx {
    const ground& g;
    const poset_spec& p;
    std::vector<int> order;
    std::vector<bitset> cand;  // per pattern element, current candidate ids
    std::vector<std::size_t> image;
    std::vector<char> placed;
    bool found = false;

    embed_ctx(const ground& gr, const bitset& members, const poset_spec& ps)
        : g(gr), p(ps), order(placement_order(ps)), image(ps.size), placed(ps.size, 0) {
        std::array<int, 8> depth{}, height{};
        chain_depths(ps, depth, height);
        cand.assign(ps.size, members);
        for (int i = 0; i < ps.size; ++i) {
            // level window: an element with a chain of d below and h above
            // must land on a level in [d, n-h]
            bitset window(gr.count);
            std::size_t lo = gr.level_begin[std::min(depth[i], gr.n + 1)];
            std::size_t hi = (gr.n - height[i] >= 0) ? gr.level_begin[gr.n - height[i] + 1] : 0;
            for (std::size_t e = lo; e < hi; ++e) window.set(e);
            cand[i] &= window;
        }
    }

    bool dfs(int step) {
        if (step == p.size) {
            found = true;
            return true;
        }
        int x = order[step];
        std::vector<bitset> saved;
        bitset options = cand[x];
        for (std::size_t e = options.next_set(0); e < g.count; e = options.next_set(e + 1)) {
            bool dup = false;
            for (int i = 0; i < p.size; ++i)
                if (placed[i] && image[i] == e) dup = true;
            if (dup) continue;
            image[x] = e;
            placed[x] = 1;
            saved.clear();
            bool ok = true;
            for (int y = 0; y < p.size && ok; ++y) {
                if (placed[y]) continue;
                saved.push_back(cand[y]);
                if (p.less(x, y)) cand[y] &= g.above[e];
                if (p.less(y, x)) cand[y] &= g.below[e];
                if (cand[y].none()) ok = false;
            }
            if (ok && dfs(step + 1)) return true;
            // restore
            std::size_t si = 0;
            for (int y = 0; y < p.size; ++y) {
                if (placed[y] || y == x) continue;
                if (si < saved.size()) cand[y] = saved[si++];
            }
            placed[x] = 0;
        }
        return false;
    }
};

// Does some order-preserving injection map p onto exactly the id set
// `subset`? Backtracking over pattern elements.
bool maps_onto(const ground& g, const poset_spec& p, const std::vector<std::size_t>& subset) {
    int l = p.size;
    std::array<int, 8> assign{};
    std::array<char, 8> used{};
    std::function<bool(int)> rec = [&](int x) -> bool {
        if (x == l) return true;
        for (int s = 0; s < l; ++s) {
            if (used[s]) continue;
            bool ok = true;
            for (int y = 0; y < x && ok; ++y) {
                if (p.less(y, x) && !g.less(subset[assign[y]], subset[s])) ok = false;
                if (p.less(x, y) && !g.less(subset[s], subset[assign[y]])) ok = false;
            }
            if (!ok) continue;
            used[s] = 1;
            assign[x] = s;
            if (rec(x + 1)) return true;
            used[s] = 0;
        }
        return false;
    };
    return rec(0);
}

Int count_copies_impl(const ground& g, const bitset& members, const poset_spec& p,
                      std::optional<std::size_t> through) {
    if (p.size > 6) fail(errc::too_large, "copy counting caps patterns at 6 elements");
    if (through && !members.test(*through)) return 0;

    // When anchored, `through` is a fixed subset element and the remaining
    // l-1 members come from the rest of the family.
    std::vector<std::size_t> pool;
    members.for_each_set([&](std::size_t e) {
        if (!through || e != *through) pool.push_back(e);
    });
    int l = p.size - (through ? 1 : 0);
    if (l < 0 || l > static_cast<int>(pool.size())) return 0;

    Int total = 0;
    std::vector<int> comb(l);
    for (int i = 0; i < l; ++i) comb[i] = i;
    std::vector<std::size_t> subset(p.size);
    while (true) {
        std::size_t k = 0;
        for (int i = 0; i < l; ++i) subset[k++] = pool[comb[i]];
        if (through) subset[k++] = *through;
        if (maps_onto(g, p, subset)) ++total;
        int i = l - 1;
        while (i >= 0 && comb[i] == static_cast<int>(pool.size()) - l + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < l; ++j) comb[j] = comb[j - 1] + 1;
    }
    return total;
}

}  // namespace

poset_spec parse_poset(const std::string& spec) {
    std::string s = spec;
    // trim
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();

    if (s == "vee") return close_and_check(3, {{0, 1}, {0, 2}}, s);
    if (s == "wedge") return close_and_check(3, {{0, 2}, {1, 2}}, s);
    if (s == "butterfly")
        return close_and_check(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}, s);

    auto colon = s.find(':');
    if (colon == std::string::npos)
        fail(errc::parse_error, "unknown poset spec '" + spec + "'");
    std::string head = s.substr(0, colon), rest = s.substr(colon + 1);
    if (head == "chain") {
        int k = parse_count(rest, s);
        if (k < 1) fail(errc::parse_error, "chain needs k >= 1");
        std::vector<std::pair<int, int>> rels;
        for (int i = 0; i + 1 < k; ++i) rels.emplace_back(i, i + 1);
        return close_and_check(k, rels, s);
    }
    if (head == "fork") {
        int v = parse_count(rest, s);
        if (v < 1) fail(errc::parse_error, "fork needs v >= 1");
        std::vector<std::pair<int, int>> rels;
        for (int i = 1; i <= v; ++i) rels.emplace_back(0, i);
        return close_and_check(v + 1, rels, s);
    }
    if (head == "broom") {
        int u = parse_count(rest, s);
        if (u < 1) fail(errc::parse_error, "broom needs u >= 1");
        std::vector<std::pair<int, int>> rels;
        for (int i = 0; i < u; ++i) rels.emplace_back(i, u);
        return close_and_check(u + 1, rels, s);
    }
    if (head == "diamond") {
        int r = parse_count(rest, s);
        if (r < 1) fail(errc::parse_error, "diamond needs r >= 1");
        std::vector<std::pair<int, int>> rels;
        for (int i = 1; i <= r; ++i) {
            rels.emplace_back(0, i);
            rels.emplace_back(i, r + 1);
        }
        return close_and_check(r + 2, rels, s);
    }
    if (head == "custom") {
        if (rest.empty()) fail(errc::parse_error, "custom needs relations i<j;...");
        std::vector<std::pair<int, int>> rels;
        int max_idx = -1;
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            auto semi = rest.find(';', pos);
            std::string tok =
                rest.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
            auto lt = tok.find('<');
            if (lt == std::string::npos || lt == 0 || lt + 1 >= tok.size())
                fail(errc::parse_error, "custom relation '" + tok + "' is not i<j");
            std::string a = tok.substr(0, lt), b = tok.substr(lt + 1);
            if (a.find_first_not_of("0123456789") != std::string::npos ||
                b.find_first_not_of("0123456789") != std::string::npos)
                fail(errc::parse_error, "custom relation '" + tok + "' is not i<j");
            if (a.size() > 2 || b.size() > 2) fail(errc::too_large, "custom element index too big");
            int ia = std::stoi(a), ib = std::stoi(b);
            max_idx = std::max({max_idx, ia, ib});
            rels.emplace_back(ia, ib);
            if (semi == std::string::npos) break;
            pos = semi + 1;
        }
        return close_and_check(max_idx + 1, rels, s);
    }
    fail(errc::parse_error, "unknown poset spec '" + spec + "'");
}

copy_witness contains_copy(const ground& g, const bitset& members, const poset_spec& p) {
    if (p.size > 8) fail(errc::too_large, "pattern too large");
    embed_ctx ctx(g, members, p);
    ctx.dfs(0);
    copy_witness w;
    w.found = ctx.found;
    if (ctx.found) w.image = ctx.image;
    return w;
}

copy_witness contains_copy(const ground& g, const family& f, const poset_spec& p) {
    return contains_copy(g, f.members, p);
}

copy_witness contains_copy_through(const ground& g, const bitset& members, const poset_spec& p,
                                   std::size_t through) {
    copy_witness w;
    if (!members.test(through)) return w;
    // Try forcing each pattern position to `through`; cheaper than a global
    // search with a used-flag because the pattern is tiny.
    for (int pos = 0; pos < p.size; ++pos) {
        embed_ctx ctx(g, members, p);
        if (!ctx.cand[pos].test(through)) continue;
        bitset only(g.count);
        only.set(through);
        ctx.cand[pos] = only;
        if (ctx.dfs(0)) {
            w.found = true;
            w.image = ctx.image;
            return w;
        }
    }
    return w;
}

copy_witness contains_copy_through(const ground& g, const family& f, const poset_spec& p,
                                   std::size_t through) {
    return contains_copy_through(g, f.members, p, through);
}

Int count_copies(const ground& g, const bitset& members, const poset_spec& p) {
    return count_copies_impl(g, members, p, std::nullopt);
}

Int count_copies(const ground& g, const family& f, const poset_spec& p) {
    return count_copies_impl(g, f.members, p, std::nullopt);
}

Int count_copies_through(const ground& g, const bitset& members, const poset_spec& p,
                         std::size_t through) {
    return count_copies_impl(g, members, p, through);
}

Int count_copies_through(const ground& g, const family& f, const poset_spec& p,
                         std::size_t through) {
    return count_copies_impl(g, f.members, p, through);
}

Int count_level_chains(const ground& g, const bitset& members, const std::vector<int>& levels) {
    int l = static_cast<int>(levels.size());
    if (l == 0) fail(errc::invalid_tuple, "empty level tuple");
    for (int i = 0; i < l; ++i) {
        if (levels[i] < 0 || levels[i] > g.n) fail(errc::invalid_tuple, "level out of range");
        if (i && levels[i] <= levels[i - 1])
            fail(errc::invalid_tuple, "level tuple must be strictly increasing");
    }
    // Right-to-left DP: ways[e] = chains starting at e using the remaining
    // tuple suffix. Transitivity of the ground order glues prefixes to
    // suffixes, so per-level sums suffice.
    std::vector<Int> ways(g.count, 0);
    for (std::size_t e = g.level_begin[levels[l - 1]]; e < g.level_begin[levels[l - 1] + 1]; ++e)
        if (members.test(e)) ways[e] = 1;
    for (int j = l - 2; j >= 0; --j) {
        std::vector<Int> next(g.count, 0);
        for (std::size_t e = g.level_begin[levels[j]]; e < g.level_begin[levels[j] + 1]; ++e) {
            if (!members.test(e)) continue;
            Int s = 0;
            bitset up = g.above[e];
            up &= members;
            for (std::size_t b = g.level_begin[levels[j + 1]];
                 b < g.level_begin[levels[j + 1] + 1]; ++b)
                if (up.test(b)) s += ways[b];
            next[e] = s;
        }
        ways.swap(next);
    }
    Int total = 0;
    for (std::size_t e = g.level_begin[levels[0]]; e < g.level_begin[levels[0] + 1]; ++e)
        total += ways[e];
    return total;
}

e_result e_of_poset(const poset_spec& p, int n_max) {
    if (n_max < 0 || n_max > 10) fail(errc::too_large, "window certification caps n at 10");
    std::vector<ground> grounds;
    for (int n = 0; n <= n_max; ++n) grounds.push_back(build_boolean(n));
    for (int m = 1; m <= n_max + 1; ++m) {
        for (int n = m - 1; n <= n_max; ++n) {
            const ground& g = grounds[n];
            for (int lo = 0; lo + m - 1 <= n; ++lo) {
                family f(g);
                for (std::size_t e = g.level_begin[lo]; e < g.level_begin[lo + m]; ++e)
                    f.members.set(e);
                if (contains_copy(g, f, p).found) return {m - 1, n_max};
            }
        }
    }
    return {n_max + 1, n_max};
}

}  // namespace posetlab
