#pragma once

#include <cstdint>
#include <vector>

#include "posetlab/errors.hpp"

namespace posetlab {

// GF(q) for prime powers 2 <= q <= 16, with full arithmetic tables built at
// construction. Elements are integers in [0, q) whose base-p digits are the
// coefficients of the polynomial representative, so indices are stable
// across runs. Extension fields use fixed Conway moduli.
struct field_spec {
    int q = 0;  // order
    int p = 0;  // characteristic
    int k = 0;  // extension degree
    std::vector<int> modulus;  // ascending coefficients, monic, length k+1

    std::vector<std::uint8_t> add_tab, mul_tab;  // q*q, row-major
    std::vector<std::uint8_t> neg_tab, inv_tab;  // length q

    int add(int a, int b) const { return add_tab[a * q + b]; }
    int mul(int a, int b) const { return mul_tab[a * q + b]; }
    int neg(int a) const { return neg_tab[a]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int inv(int a) const {
        if (a == 0) fail(errc::division_by_zero, "inverse of 0 in GF(" + std::to_string(q) + ")");
        return inv_tab[a];
    }
};

field_spec field_make(int q);

enum class field_op { add, mul, neg, inv };

// Checked dispatch used by tests and any string-driven surface; b is ignored
// for the unary ops.
int field_arith(const field_spec& f, field_op op, int a, int b = 0);

// Row-major matrix over GF(q); all rows the same length.
using matrix_gf = std::vector<std::vector<int>>;

struct rref_result {
    matrix_gf rows;  // reduced row echelon form, zero rows dropped
    int rank = 0;
};

// Canonical representative of the row space: two row sets span the same
// subspace iff their rref rows are identical.
rref_result matrix_rref(const field_spec& f, const matrix_gf& m);

}  // namespace posetlab
