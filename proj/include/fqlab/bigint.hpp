#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace fqlab {

// Exact integers cross every module boundary; machine words stay inside kernels.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt ipow(const BigInt& base, unsigned exponent) {
    return boost::multiprecision::pow(base, exponent);
}

inline BigInt ipow(std::uint64_t base, unsigned exponent) {
    return boost::multiprecision::pow(BigInt(base), exponent);
}

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const Rational& v) {
    if (boost::multiprecision::denominator(v) == 1) return boost::multiprecision::numerator(v).str();
    return v.str();
}

/// Floor square root of a non-negative integer.
inline BigInt isqrt(const BigInt& v) { return boost::multiprecision::sqrt(v); }

inline bool is_perfect_square(const BigInt& v) {
    if (v < 0) return false;
    BigInt r = isqrt(v);
    return r * r == v;
}

inline BigInt babs(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

// Parses "a" or "a/b". Throws std::invalid_argument on junk.
Rational parse_rational(const std::string& text);

}  // namespace fqlab
