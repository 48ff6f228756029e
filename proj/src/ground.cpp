#include "posetlab/ground.hpp"

#include <algorithm>
#include <bit>

namespace posetlab {

namespace {

constexpr std::size_t subspace_element_cap = 200000;

char coord_digit(int v) { return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10); }

std::vector<int> flatten(const matrix_gf& rows) {
    std::vector<int> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return flat;
}

long vec_code(const std::vector<int>& v, int q) {
    long code = 0;
    for (int x : v) code = code * q + x;
    return code;
}

std::vector<int> vec_decode(long code, int q, int n) {
    std::vector<int> v(n);
    for (int i = n - 1; i >= 0; --i) {
        v[i] = static_cast<int>(code % q);
        code /= q;
    }
    return v;
}

// Scale so the first nonzero coordinate is 1; canonical representative of
// the 1-dim subspace spanned by v.
std::vector<int> normalize_point(const field_spec& f, std::vector<int> v) {
    for (int x : v) {
        if (x != 0) {
            int s = f.inv(x);
            for (auto& y : v) y = f.mul(y, s);
            break;
        }
    }
    return v;
}

}  // namespace

Int gaussian(int n, int k, int q) {
    if (k < 0 || k > n || n < 0)
        fail(errc::out_of_range, "gaussian(" + std::to_string(n) + "," + std::to_string(k) + ")");
    if (q < 2) fail(errc::out_of_range, "gaussian base q=" + std::to_string(q));
    Int num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= int_pow(q, n - i) - 1;
        den *= int_pow(q, i + 1) - 1;
    }
    return exact_div(num, den);
}

int ground::meet_rank(std::size_t a, std::size_t b) const {
    if (kind == ground_kind::boolean_lattice)
        return std::popcount(masks[a] & masks[b]);
    std::size_t pc = points[a].and_count(points[b]);
    for (int d = 0; d <= n; ++d)
        if (points_per_dim[d] == pc) return d;
    fail(errc::out_of_range, "intersection point count matches no dimension");
}

std::string ground::describe(std::size_t id) const {
    if (kind == ground_kind::boolean_lattice) {
        std::string s = "{";
        bool first = true;
        for (int i = 0; i < n; ++i) {
            if (masks[id] >> i & 1) {
                if (!first) s += ",";
                s += std::to_string(i + 1);
                first = false;
            }
        }
        return s + "}";
    }
    std::string s = "[";
    const auto& rows = rref_of[id];
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r) s += ",";
        for (int x : rows[r]) s += coord_digit(x);
    }
    return s + "]";
}

std::size_t ground::id_of_mask(std::uint32_t m) const {
    if (kind != ground_kind::boolean_lattice)
        fail(errc::wrong_ground_kind, "mask lookup on a subspace ground");
    if (m >= mask_index.size()) fail(errc::out_of_range, "mask out of range");
    return mask_index[m];
}

std::size_t ground::id_of_rref(const matrix_gf& rows) const {
    if (kind != ground_kind::subspace_lattice)
        fail(errc::wrong_ground_kind, "rref lookup on a boolean ground");
    auto it = desc_index.find(flatten(rows));
    if (it == desc_index.end()) fail(errc::out_of_range, "rref is not a canonical element");
    return it->second;
}

ground build_boolean(int n) {
    if (n < 0 || n > 16)
        fail(errc::too_large, "boolean ground needs 0 <= n <= 16, got " + std::to_string(n));
    ground g;
    g.kind = ground_kind::boolean_lattice;
    g.n = n;
    g.count = std::size_t(1) << n;
    g.level_of.resize(g.count);
    g.level_sizes.assign(n + 1, 0);
    g.level_begin.assign(n + 2, 0);
    g.masks.resize(g.count);
    g.mask_index.resize(g.count);

    std::vector<std::uint32_t> order(g.count);
    for (std::uint32_t m = 0; m < g.count; ++m) order[m] = m;
    std::sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    for (std::size_t id = 0; id < g.count; ++id) {
        std::uint32_t m = order[id];
        g.masks[id] = m;
        g.mask_index[m] = id;
        g.level_of[id] = std::popcount(m);
        g.level_sizes[g.level_of[id]] += 1;
    }
    for (int lv = 0; lv <= n; ++lv)
        g.level_begin[lv + 1] =
            g.level_begin[lv] + static_cast<std::size_t>(g.level_sizes[lv]);

    g.above.assign(g.count, bitset(g.count));
    g.below.assign(g.count, bitset(g.count));
    std::uint32_t full = static_cast<std::uint32_t>(g.count - 1);
    for (std::size_t a = 0; a < g.count; ++a) {
        std::uint32_t m = g.masks[a];
        std::uint32_t comp = full & ~m;
        // strict supersets = m | s over nonempty submasks s of the complement
        for (std::uint32_t s = comp; s; s = (s - 1) & comp) {
            std::size_t b = g.mask_index[m | s];
            g.above[a].set(b);
            g.below[b].set(a);
        }
    }
    return g;
}

ground build_subspace(int n, int q) {
    field_spec f = field_make(q);
    if (n < 0) fail(errc::out_of_range, "negative dimension");
    Int total = 0;
    for (int k = 0; k <= n; ++k) total += gaussian(n, k, q);
    if (total > subspace_element_cap)
        fail(errc::too_large, "subspace ground would have " + int_str(total) + " elements (cap " +
                                  std::to_string(subspace_element_cap) + ")");

    ground g;
    g.kind = ground_kind::subspace_lattice;
    g.n = n;
    g.q = q;
    g.field = f;
    g.count = static_cast<std::size_t>(total);
    g.level_sizes.assign(n + 1, 0);
    g.level_begin.assign(n + 2, 0);

    // Enumerate canonical rref matrices level by level: choose pivot
    // columns, then fill the free entries (non-pivot columns to the right of
    // each pivot) in every possible way. Each subspace appears exactly once.
    for (int d = 0; d <= n; ++d) {
        std::vector<matrix_gf> level_elems;
        std::vector<int> piv(d);
        for (int i = 0; i < d; ++i) piv[i] = i;
        while (true) {
            std::vector<std::pair<int, int>> free_pos;  // (row, col)
            for (int i = 0; i < d; ++i) {
                for (int c = piv[i] + 1; c < n; ++c) {
                    bool is_piv = false;
                    for (int j = 0; j < d; ++j)
                        if (piv[j] == c) is_piv = true;
                    if (!is_piv) free_pos.emplace_back(i, c);
                }
            }
            std::vector<int> fill(free_pos.size(), 0);
            while (true) {
                matrix_gf m(d, std::vector<int>(n, 0));
                for (int i = 0; i < d; ++i) m[i][piv[i]] = 1;
                for (std::size_t t = 0; t < free_pos.size(); ++t)
                    m[free_pos[t].first][free_pos[t].second] = fill[t];
                level_elems.push_back(std::move(m));
                std::size_t pos = fill.size();
                while (pos > 0 && fill[pos - 1] == q - 1) fill[--pos] = 0;
                if (pos == 0) break;
                ++fill[pos - 1];
            }
            // next pivot combination
            int i = d - 1;
            while (i >= 0 && piv[i] == n - d + i) --i;
            if (i < 0) break;
            ++piv[i];
            for (int j = i + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
        }
        std::sort(level_elems.begin(), level_elems.end(),
                  [](const matrix_gf& a, const matrix_gf& b) { return flatten(a) < flatten(b); });
        for (auto& m : level_elems) {
            g.level_of.push_back(d);
            g.rref_of.push_back(std::move(m));
        }
        g.level_sizes[d] = static_cast<long>(level_elems.size());
        g.level_begin[d + 1] = g.level_begin[d] + level_elems.size();
    }
    if (g.rref_of.size() != g.count)
        fail(errc::out_of_range, "enumeration count mismatch");
    for (std::size_t id = 0; id < g.count; ++id) g.desc_index[flatten(g.rref_of[id])] = id;

    // points in a d-dim space: 1 + q + ... + q^(d-1)
    g.points_per_dim.resize(n + 1);
    for (int d = 0; d <= n; ++d) {
        Int pp = 0;
        for (int i = 0; i < d; ++i) pp += int_pow(q, i);
        g.points_per_dim[d] = static_cast<std::size_t>(pp);
    }

    // Point incidence: which level-1 elements sit inside each element.
    std::size_t p_begin = n >= 1 ? g.level_begin[1] : g.count;
    std::size_t p_count = n >= 1 ? g.level_count(1) : 0;
    std::map<std::vector<int>, std::size_t> point_rel;
    for (std::size_t i = 0; i < p_count; ++i) point_rel[g.rref_of[p_begin + i][0]] = i;
    g.points.assign(g.count, bitset(p_count));
    for (std::size_t id = 0; id < g.count; ++id) {
        const matrix_gf& rows = g.rref_of[id];
        int d = g.level_of[id];
        std::vector<int> coef(d, 0);
        while (true) {
            std::size_t pos = 0;
            while (pos < static_cast<std::size_t>(d) && coef[pos] == q - 1) coef[pos++] = 0;
            if (pos == static_cast<std::size_t>(d)) break;
            ++coef[pos];
            std::vector<int> v(n, 0);
            for (int i = 0; i < d; ++i)
                for (int c = 0; c < n; ++c) v[c] = f.add(v[c], f.mul(coef[i], rows[i][c]));
            g.points[id].set(point_rel.at(normalize_point(f, v)));
        }
    }

    // Strict containment: cross-level point-set inclusion.
    g.above.assign(g.count, bitset(g.count));
    g.below.assign(g.count, bitset(g.count));
    for (std::size_t a = 0; a < g.count; ++a) {
        for (std::size_t b = g.level_begin[g.level_of[a] + 1]; b < g.count; ++b) {
            if (g.points[a].is_subset_of(g.points[b])) {
                g.above[a].set(b);
                g.below[b].set(a);
            }
        }
    }
    return g;
}

relation_info relations(const ground& g, std::size_t a, std::size_t b) {
    if (a >= g.count || b >= g.count) fail(errc::out_of_range, "element id out of range");
    return {g.above[a].test(b), g.above[b].test(a), g.meet_rank(a, b)};
}

std::vector<std::size_t> sublattice_images(const ground& g, const matrix_gf& basis) {
    if (g.kind != ground_kind::subspace_lattice)
        fail(errc::wrong_ground_kind, "sublattice images need a subspace ground");
    if (basis.size() != static_cast<std::size_t>(g.n))
        fail(errc::not_a_basis, "need exactly n vectors");
    for (const auto& v : basis) {
        if (v.size() != static_cast<std::size_t>(g.n)) fail(errc::not_a_basis, "vector length");
        for (int x : v)
            if (x < 0 || x >= g.q) fail(errc::out_of_range, "coordinate out of field");
    }
    if (matrix_rref(g.field, basis).rank != g.n)
        fail(errc::not_a_basis, "vectors are linearly dependent");

    std::vector<std::size_t> images(std::size_t(1) << g.n);
    for (std::uint32_t h = 0; h < images.size(); ++h) {
        matrix_gf rows;
        for (int i = 0; i < g.n; ++i)
            if (h >> i & 1) rows.push_back(basis[i]);
        images[h] = g.id_of_rref(matrix_rref(g.field, rows).rows);
    }
    return images;
}

family boolean_sublattice(const ground& g, const matrix_gf& basis) {
    family f(g);
    for (std::size_t id : sublattice_images(g, basis)) f.members.set(id);
    return f;
}

Int bases_count(int n, int q) {
    if (n < 0 || q < 2) fail(errc::out_of_range, "bases_count parameters");
    Int num = 1;
    for (int i = 0; i < n; ++i) num *= int_pow(q, n) - int_pow(q, i);
    return exact_div(num, factorial(n));
}

void for_each_basis(int n, int q, const std::function<void(const matrix_gf&)>& fn,
                    std::size_t cap) {
    field_spec f = field_make(q);
    Int total = bases_count(n, q);
    if (total > cap)
        fail(errc::too_large, "basis count " + int_str(total) + " exceeds cap");
    long space = 1;
    for (int i = 0; i < n; ++i) space *= q;

    std::vector<char> in_span(space, 0);
    in_span[0] = 1;
    std::vector<std::vector<int>> span_vecs = {std::vector<int>(n, 0)};
    matrix_gf chosen;

    // Depth-first over vectors in ascending code order; requiring strictly
    // increasing codes yields each unordered independent set exactly once.
    std::function<void(long)> rec = [&](long from) {
        if (static_cast<int>(chosen.size()) == n) {
            fn(chosen);
            return;
        }
        for (long code = from; code < space; ++code) {
            if (in_span[code]) continue;
            std::vector<int> v = vec_decode(code, q, n);
            std::size_t old_size = span_vecs.size();
            for (int c = 1; c < q; ++c) {
                std::vector<int> w(n);
                for (int i = 0; i < n; ++i) w[i] = f.mul(c, v[i]);
                for (std::size_t s = 0; s < old_size; ++s) {
                    std::vector<int> t(n);
                    for (int i = 0; i < n; ++i) t[i] = f.add(span_vecs[s][i], w[i]);
                    in_span[vec_code(t, q)] = 1;
                    span_vecs.push_back(std::move(t));
                }
            }
            chosen.push_back(std::move(v));
            rec(code + 1);
            chosen.pop_back();
            for (std::size_t s = old_size; s < span_vecs.size(); ++s)
                in_span[vec_code(span_vecs[s], q)] = 0;
            span_vecs.resize(old_size);
        }
    };
    rec(1);
}

std::vector<matrix_gf> enumerate_bases(int n, int q, std::size_t cap) {
    std::vector<matrix_gf> out;
    for_each_basis(n, q, [&](const matrix_gf& b) { out.push_back(b); }, cap);
    return out;
}

}  // namespace posetlab
