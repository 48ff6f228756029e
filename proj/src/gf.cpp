#include "posetlab/gf.hpp"

#include <string>

namespace posetlab {

namespace {

// Conway polynomials, ascending coefficients (constant term first).
std::vector<int> conway_modulus(int p, int k) {
    if (p == 2 && k == 2) return {1, 1, 1};        // x^2 + x + 1
    if (p == 2 && k == 3) return {1, 1, 0, 1};     // x^3 + x + 1
    if (p == 2 && k == 4) return {1, 1, 0, 0, 1};  // x^4 + x + 1
    if (p == 3 && k == 2) return {2, 2, 1};        // x^2 + 2x + 2
    fail(errc::not_prime_power, "no modulus table for p=" + std::to_string(p) +
                                    " k=" + std::to_string(k));
}

std::vector<int> digits_of(int value, int p, int k) {
    std::vector<int> d(k);
    for (int i = 0; i < k; ++i) {
        d[i] = value % p;
        value /= p;
    }
    return d;
}

int value_of(const std::vector<int>& d, int p) {
    int v = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) v = v * p + d[i];
    return v;
}

// Polynomial product of two elements reduced mod the monic modulus, all
// coefficient arithmetic mod p.
int poly_mul(int a, int b, int p, int k, const std::vector<int>& modulus) {
    std::vector<int> da = digits_of(a, p, k), db = digits_of(b, p, k);
    std::vector<int> prod(2 * k - 1, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    for (int d = 2 * k - 2; d >= k; --d) {
        int c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        // subtract c * x^(d-k) * modulus
        for (int i = 0; i <= k; ++i) {
            int idx = d - k + i;
            prod[idx] = ((prod[idx] - c * modulus[i]) % p + p) % p;
        }
    }
    prod.resize(k);
    return value_of(prod, p);
}

}  // namespace

field_spec field_make(int q) {
    if (q < 2 || q > 16) fail(errc::not_prime_power, "q=" + std::to_string(q) + " out of [2,16]");
    int p = 0;
    for (int c = 2; c <= q; ++c) {
        if (q % c == 0) {
            p = c;
            break;
        }
    }
    int k = 0, m = q;
    while (m % p == 0) {
        m /= p;
        ++k;
    }
    if (m != 1) fail(errc::not_prime_power, "q=" + std::to_string(q) + " is not a prime power");

    field_spec f;
    f.q = q;
    f.p = p;
    f.k = k;
    f.modulus = (k == 1) ? std::vector<int>{0, 1} : conway_modulus(p, k);

    f.add_tab.resize(q * q);
    f.mul_tab.resize(q * q);
    f.neg_tab.resize(q);
    f.inv_tab.assign(q, 0);
    for (int a = 0; a < q; ++a) {
        std::vector<int> da = digits_of(a, p, k);
        std::vector<int> nd(k);
        for (int i = 0; i < k; ++i) nd[i] = (p - da[i]) % p;
        f.neg_tab[a] = static_cast<std::uint8_t>(value_of(nd, p));
        for (int b = 0; b < q; ++b) {
            std::vector<int> db = digits_of(b, p, k), sd(k);
            for (int i = 0; i < k; ++i) sd[i] = (da[i] + db[i]) % p;
            f.add_tab[a * q + b] = static_cast<std::uint8_t>(value_of(sd, p));
            f.mul_tab[a * q + b] =
                static_cast<std::uint8_t>(k == 1 ? (a * b) % p : poly_mul(a, b, p, k, f.modulus));
        }
    }
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (f.mul_tab[a * q + b] == 1) f.inv_tab[a] = static_cast<std::uint8_t>(b);
    return f;
}

int field_arith(const field_spec& f, field_op op, int a, int b) {
    auto check = [&](int x) {
        if (x < 0 || x >= f.q)
            fail(errc::out_of_range, "element " + std::to_string(x) + " not in GF(" +
                                         std::to_string(f.q) + ")");
    };
    check(a);
    switch (op) {
        case field_op::add:
            check(b);
            return f.add(a, b);
        case field_op::mul:
            check(b);
            return f.mul(a, b);
        case field_op::neg:
            return f.neg(a);
        case field_op::inv:
            return f.inv(a);
    }
    fail(errc::parse_error, "unknown field op");
}

rref_result matrix_rref(const field_spec& f, const matrix_gf& m) {
    matrix_gf rows = m;
    std::size_t ncols = rows.empty() ? 0 : rows[0].size();
    for (const auto& r : rows)
        if (r.size() != ncols) fail(errc::out_of_range, "ragged matrix");
    int rank = 0;
    for (std::size_t col = 0; col < ncols && rank < static_cast<int>(rows.size()); ++col) {
        std::size_t piv = rows.size();
        for (std::size_t r = rank; r < rows.size(); ++r) {
            if (rows[r][col] != 0) {
                piv = r;
                break;
            }
        }
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        int s = f.inv(rows[rank][col]);
        for (std::size_t c = col; c < ncols; ++c) rows[rank][c] = f.mul(rows[rank][c], s);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<int>(r) == rank || rows[r][col] == 0) continue;
            int factor = rows[r][col];
            for (std::size_t c = col; c < ncols; ++c)
                rows[r][c] = f.sub(rows[r][c], f.mul(factor, rows[rank][c]));
        }
        ++rank;
    }
    rows.resize(rank);
    return {std::move(rows), rank};
}

}  // namespace posetlab
