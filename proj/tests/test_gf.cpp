#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "posetlab/gf.hpp"
#include "posetlab/rng.hpp"

using namespace posetlab;

namespace {

const int prime_powers[] = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};

// All vectors of F_q^n spanned by the rows, as a sorted set; exact oracle
// for span equality.
std::set<std::vector<int>> span_set(const field_spec& f, const matrix_gf& rows, int n) {
    std::set<std::vector<int>> out;
    std::size_t r = rows.size();
    std::vector<int> coef(r, 0);
    while (true) {
        std::vector<int> v(n, 0);
        for (std::size_t i = 0; i < r; ++i)
            for (int c = 0; c < n; ++c) v[c] = f.add(v[c], f.mul(coef[i], rows[i][c]));
        out.insert(v);
        std::size_t pos = 0;
        while (pos < r && coef[pos] == f.q - 1) coef[pos++] = 0;
        if (pos == r) break;
        ++coef[pos];
    }
    return out;
}

}  // namespace

TEST_CASE("field_make rejects non prime powers and out-of-range orders") {
    for (int q : {0, 1, 6, 10, 12, 14, 15, 17, 32}) {
        CHECK_THROWS_AS(field_make(q), wb_error);
        try {
            field_make(q);
        } catch (const wb_error& e) {
            CHECK(e.code() == errc::not_prime_power);
        }
    }
}

TEST_CASE("field axioms hold exhaustively for every supported order") {
    for (int q : prime_powers) {
        CAPTURE(q);
        field_spec f = field_make(q);
        CHECK(f.q == q);
        CHECK(f.p >= 2);
        int pk = 1;
        for (int i = 0; i < f.k; ++i) pk *= f.p;
        CHECK(pk == q);
        for (int a = 0; a < q; ++a) {
            CHECK(f.add(a, 0) == a);
            CHECK(f.mul(a, 1) == a);
            CHECK(f.mul(a, 0) == 0);
            CHECK(f.add(a, f.neg(a)) == 0);
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
            for (int b = 0; b < q; ++b) {
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                for (int c = 0; c < q; ++c) {
                    CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("characteristic-2 and small-field spot values") {
    field_spec f2 = field_make(2);
    CHECK(f2.add(1, 1) == 0);
    field_spec f3 = field_make(3);
    CHECK(f3.mul(2, 2) == 1);
    field_spec f4 = field_make(4);
    // a = 2 is the polynomial x; x^2 = x + 1 under x^2+x+1.
    CHECK(f4.mul(2, 2) == 3);
    CHECK(f4.add(2, 1) == 3);
    CHECK(f4.inv(2) == 3);
    CHECK(f4.mul(2, 3) == 1);
}

TEST_CASE("field_arith checks operands and reports division by zero") {
    field_spec f = field_make(4);
    CHECK(field_arith(f, field_op::add, 2, 3) == 1);
    CHECK(field_arith(f, field_op::inv, 2) == 3);
    CHECK_THROWS_AS(field_arith(f, field_op::inv, 0), wb_error);
    try {
        field_arith(f, field_op::inv, 0);
    } catch (const wb_error& e) {
        CHECK(e.code() == errc::division_by_zero);
    }
    CHECK_THROWS_AS(field_arith(f, field_op::add, 4, 0), wb_error);
    CHECK_THROWS_AS(field_arith(f, field_op::mul, 0, -1), wb_error);
}

TEST_CASE("rref canonical forms: fixed instances") {
    field_spec f2 = field_make(2);
    matrix_gf ident = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    auto r = matrix_rref(f2, ident);
    CHECK(r.rank == 3);
    CHECK(r.rows == ident);

    matrix_gf m = {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
    r = matrix_rref(f2, m);
    CHECK(r.rank == 2);
    matrix_gf expect = {{1, 0, 1}, {0, 1, 1}};
    CHECK(r.rows == expect);

    matrix_gf zero = {{0, 0}, {0, 0}};
    r = matrix_rref(f2, zero);
    CHECK(r.rank == 0);
    CHECK(r.rows.empty());

    // Non-binary pivot scaling: (2,1) and (1,1) are independent over GF(3),
    // while (1,2) = 2*(2,1) is not.
    field_spec f3 = field_make(3);
    auto r2 = matrix_rref(f3, {{2, 1}, {1, 1}});
    CHECK(r2.rank == 2);
    matrix_gf id2 = {{1, 0}, {0, 1}};
    CHECK(r2.rows == id2);
    auto r1 = matrix_rref(f3, {{2, 1}, {1, 2}});
    CHECK(r1.rank == 1);
    matrix_gf half = {{1, 2}};
    CHECK(r1.rows == half);
}

TEST_CASE("rref is idempotent and canonical for the row space") {
    splitmix64 rng(777);
    for (int q : {2, 3}) {
        field_spec f = field_make(q);
        for (int trial = 0; trial < 500; ++trial) {
            int n = 1 + static_cast<int>(rng.next_below(5));
            int r1 = 1 + static_cast<int>(rng.next_below(4));
            int r2 = 1 + static_cast<int>(rng.next_below(4));
            auto rand_matrix = [&](int rows) {
                matrix_gf m(rows, std::vector<int>(n));
                for (auto& row : m)
                    for (auto& x : row) x = static_cast<int>(rng.next_below(q));
                return m;
            };
            matrix_gf m1 = rand_matrix(r1), m2 = rand_matrix(r2);
            auto a = matrix_rref(f, m1), b = matrix_rref(f, m2);
            auto aa = matrix_rref(f, a.rows);
            CHECK(aa.rows == a.rows);
            CHECK(aa.rank == a.rank);
            bool same_rref = (a.rows == b.rows);
            bool same_span = (span_set(f, m1, n) == span_set(f, m2, n));
            CHECK(same_rref == same_span);
        }
    }
}
