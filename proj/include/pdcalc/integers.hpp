#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace pdcalc {

// Every quantity in the library is an exact integer (or a residue mod m held
// as an exact integer).  No floating point anywhere.
using Int = boost::multiprecision::cpp_int;

using boost::multiprecision::gcd;

inline Int pow(const Int& base, unsigned exp) {
    Int r = 1, b = base;
    while (exp) {
        if (exp & 1u) r *= b;
        b *= b;
        exp >>= 1u;
    }
    return r;
}

// Division that is required to be exact; a nonzero remainder is a broken
// invariant on the caller's side, not a recoverable condition.
inline Int exact_div(const Int& a, const Int& b, const char* what = "exact_div") {
    if (b == 0) throw std::domain_error(std::string(what) + ": division by zero");
    Int q, r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (r != 0)
        throw std::domain_error(std::string(what) + ": inexact division " +
                                a.str() + " / " + b.str());
    return q;
}

// Canonical residue in [0, m); m == 0 means the ring is Z itself.
inline Int reduce_mod(const Int& a, const Int& m) {
    if (m == 0) return a;
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

} // namespace pdcalc
