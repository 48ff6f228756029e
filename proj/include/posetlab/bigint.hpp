#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "posetlab/errors.hpp"

namespace posetlab {

// All arithmetic in the workbench is exact: big integers and big rationals.
// No floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

Int factorial(int n);

// Binomial coefficient with a big upper argument and small lower argument.
Int binomial(const Int& n, long k);

// base^exp for small nonnegative exponents.
Int int_pow(long base, int exp);

// Exact quotient; aborts with out_of_range if the division has a remainder.
Int exact_div(const Int& num, const Int& den);

std::string int_str(const Int& v);

// Lowest terms; "p" when the denominator is 1, otherwise "p/q".
std::string rat_str(const Rat& v);

// Accepts "p" or "p/q" with optional leading '-'.
Rat parse_rat(const std::string& s);
Int parse_int(const std::string& s);

}  // namespace posetlab
