#include "posetlab/bigint.hpp"

#include <cctype>

namespace posetlab {

Int factorial(int n) {
    Int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

Int binomial(const Int& n, long k) {
    if (k < 0) fail(errc::out_of_range, "binomial: negative lower index");
    if (n < 0) fail(errc::out_of_range, "binomial: negative upper index");
    if (Int(k) > n) return 0;
    Int r = 1;
    for (long i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;  // exact: r now holds binomial(n, i+1)
    }
    return r;
}

Int int_pow(long base, int exp) {
    Int r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

Int exact_div(const Int& num, const Int& den) {
    if (den == 0) fail(errc::division_by_zero, "exact_div by zero");
    Int q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0) fail(errc::out_of_range, "exact_div: division is not exact");
    return q;
}

std::string int_str(const Int& v) { return v.str(); }

std::string rat_str(const Rat& v) {
    Int num = numerator(v);
    Int den = denominator(v);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

static bool all_digits(const std::string& s, size_t from) {
    if (from >= s.size()) return false;
    for (size_t i = from; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Int parse_int(const std::string& s) {
    size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (!all_digits(s, start)) fail(errc::parse_error, "bad integer '" + s + "'");
    return Int(s);
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int(s));
    Int num = parse_int(s.substr(0, slash));
    Int den = parse_int(s.substr(slash + 1));
    if (den == 0) fail(errc::parse_error, "zero denominator in '" + s + "'");
    return Rat(num, den);
}

const char* errc_name(errc c) {
    switch (c) {
        case errc::not_prime_power: return "NotPrimePower";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::out_of_range: return "OutOfRange";
        case errc::too_large: return "TooLarge";
        case errc::not_a_basis: return "NotABasis";
        case errc::wrong_ground_kind: return "WrongGroundKind";
        case errc::parse_error: return "ParseError";
        case errc::cycle_detected: return "CycleDetected";
        case errc::invalid_tuple: return "InvalidTuple";
        case errc::zero_multiplicity: return "ZeroMultiplicity";
        case errc::not_k_sperner: return "NotKSperner";
    }
    return "Error";
}

}  // namespace posetlab
