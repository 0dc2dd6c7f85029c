#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pdcalc/combinatorics.hpp"
#include "pdcalc/ext_model.hpp"
#include "pdcalc/integers.hpp"

namespace pdcalc {

// The rank g+1 lattice spanned by w_0, ..., w_g inside the cohomology of a
// principally polarized abelian variety: w_n = theta^{g-n}/(g-n)!.  w_g is the
// fundamental class and the intersection unit, w_0 the point class and the
// Pontryagin unit, w_{g-1} = theta, w_1 the minimal class.
struct TautClass {
    int g = 1;
    Int modulus = 0;
    std::map<int, Int> terms; // n -> coefficient of w_n

    static TautClass zero(int g, Int mod = 0) { return {g, std::move(mod), {}}; }
    static TautClass w(int g, int n, Int mod = 0) {
        if (n < 0 || n > g) throw std::domain_error("w index out of range");
        TautClass x = zero(g, std::move(mod));
        x.add_term(n, 1);
        return x;
    }

    void add_term(int n, const Int& c) {
        Int v = reduce_mod(terms[n] + c, modulus);
        if (v == 0)
            terms.erase(n);
        else
            terms[n] = v;
    }

    Int coeff(int n) const {
        auto it = terms.find(n);
        return it == terms.end() ? Int(0) : it->second;
    }

    bool is_zero() const { return terms.empty(); }
    bool operator==(const TautClass& o) const {
        return g == o.g && modulus == o.modulus && terms == o.terms;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [n, c] : terms) {
            if (!first) os << " + ";
            os << c.str() << "*w[" << n << "]";
            first = false;
        }
        return os.str();
    }
};

inline void require_same_ring(const TautClass& a, const TautClass& b, const char* op) {
    if (a.g != b.g || a.modulus != b.modulus)
        throw std::domain_error(std::string(op) + ": ring mismatch");
}

inline TautClass operator+(const TautClass& a, const TautClass& b) {
    require_same_ring(a, b, "taut add");
    TautClass out = a;
    for (auto& [n, c] : b.terms) out.add_term(n, c);
    return out;
}

inline TautClass operator-(const TautClass& a, const TautClass& b) {
    require_same_ring(a, b, "taut sub");
    TautClass out = a;
    for (auto& [n, c] : b.terms) out.add_term(n, -c);
    return out;
}

inline TautClass operator*(const Int& s, const TautClass& a) {
    TautClass out = TautClass::zero(a.g, a.modulus);
    for (auto& [n, c] : a.terms) out.add_term(n, s * c);
    return out;
}

// intersection product: w_a w_b = C(2g-a-b, g-a) w_{a+b-g}, zero for a+b < g
inline TautClass taut_cup(const TautClass& x, const TautClass& y) {
    require_same_ring(x, y, "taut_cup");
    TautClass out = TautClass::zero(x.g, x.modulus);
    for (auto& [a, ca] : x.terms)
        for (auto& [b, cb] : y.terms) {
            if (a + b < x.g) continue;
            out.add_term(a + b - x.g, ca * cb * binom(2 * x.g - a - b, x.g - a));
        }
    return out;
}

// Pontryagin product: w_i * w_j = C(i+j, i) w_{i+j}, zero past w_g
inline TautClass taut_star(const TautClass& x, const TautClass& y) {
    require_same_ring(x, y, "taut_star");
    TautClass out = TautClass::zero(x.g, x.modulus);
    for (auto& [i, ci] : x.terms)
        for (auto& [j, cj] : y.terms) {
            if (i + j > x.g) continue;
            out.add_term(i + j, ci * cj * binom(i + j, i));
        }
    return out;
}

inline TautClass taut_theta(int g, Int mod = 0) { return TautClass::w(g, g - 1, std::move(mod)); }
inline TautClass taut_minimal(int g, Int mod = 0) { return TautClass::w(g, 1, std::move(mod)); }
inline TautClass taut_unit_cup(int g, Int mod = 0) { return TautClass::w(g, g, std::move(mod)); }
inline TautClass taut_unit_star(int g, Int mod = 0) { return TautClass::w(g, 0, std::move(mod)); }

// F(w_n) = (-1)^n w_{g-n}; squares to (-1)^g.
inline TautClass taut_fourier(const TautClass& x) {
    TautClass out = TautClass::zero(x.g, x.modulus);
    for (auto& [n, c] : x.terms) out.add_term(x.g - n, (n & 1) ? -c : c);
    return out;
}

// Divided powers for the Pontryagin product.  On the basis,
// gamma_d(w_i) = ((di)!/(i!^d d!)) w_{di}; sums expand over weak compositions.
inline TautClass taut_gamma(const TautClass& x, unsigned d) {
    if (x.coeff(0) != 0)
        throw std::domain_error("taut_gamma: w_0 coefficient must vanish");
    if (d == 0) return taut_unit_star(x.g, x.modulus);
    TautClass out = TautClass::zero(x.g, x.modulus);
    std::vector<std::pair<int, Int>> ts(x.terms.begin(), x.terms.end());
    long k = (long)ts.size();
    if (k == 0) return out;
    for_each_weak_composition(d, k, [&](const std::vector<long>& comp) {
        Int coef = 1;
        long deg = 0;
        // basis divided powers, then the star-product multinomial across blocks
        for (long i = 0; i < k; ++i) {
            long di = comp[(size_t)i];
            if (di == 0) continue;
            long part = di * ts[(size_t)i].first;
            coef *= sym_power_degree((unsigned)di, (unsigned)ts[(size_t)i].first) *
                    pow(ts[(size_t)i].second, (unsigned)di) * binom(deg + part, part);
            deg += part;
        }
        if (deg <= x.g) out.add_term((int)deg, coef);
    });
    return out;
}

inline TautClass taut_star_exp(const TautClass& x) {
    TautClass out = TautClass::zero(x.g, x.modulus);
    for (unsigned d = 0; d <= (unsigned)x.g; ++d) out = out + taut_gamma(x, d);
    return out;
}

// Divided powers on the intersection side, transported through the transform:
// delta_n = (-1)^{g(n-1)} F^{-1} gamma_n F with F^{-1} = (-1)^g F.
inline TautClass taut_delta(const TautClass& x, unsigned n) {
    TautClass y = taut_fourier(taut_gamma(taut_fourier(x), n));
    long e = (long)x.g * (long)n; // g(n-1) + g
    return (e & 1) ? Int(-1) * y : y;
}

// w_n -> theta^{g-n}/(g-n)! in the exterior model.  The divisions happen over
// Z (they are inexact on reduced residues); coefficients reduce afterwards.
inline ExtClass embed_taut(const TautClass& x) {
    ExtClass out = ExtClass::zero(x.g, 1);
    ExtClass th = theta_class(x.g);
    for (auto& [n, c] : x.terms) {
        ExtClass t = exact_div_class(cup_pow(th, (unsigned)(x.g - n)),
                                     factorial((unsigned)(x.g - n)));
        out = out + c * t;
    }
    return x.modulus == 0 ? out : reduce_coefficients(out, x.modulus);
}

} // namespace pdcalc
