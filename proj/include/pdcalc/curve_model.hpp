#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pdcalc/ext_model.hpp"
#include "pdcalc/integers.hpp"

namespace pdcalc {

// Cohomology of a genus-g curve and its small powers: H = Z.1 + V + Z.[pt]
// with V of rank 2g.  Slot codes on each tensor factor:
//   0            the unit
//   1+i          alpha_i, 0 <= i < g
//   1+g+i        beta_i
//   2g+1         the point class
// alpha_i ^ beta_i = [pt]; everything else of positive degree multiplies to 0.
inline int curve_slot_degree(int g, int code) {
    if (code == 0) return 0;
    if (code == 2 * g + 1) return 2;
    return 1;
}

struct CurveClass {
    int g = 1;
    int k = 1; // tensor factors
    Int modulus = 0;
    std::map<std::vector<int>, Int> terms;

    static CurveClass zero(int g, int k, Int mod = 0) { return {g, k, std::move(mod), {}}; }
    static CurveClass unit(int g, int k, Int mod = 0) {
        CurveClass x = zero(g, k, std::move(mod));
        x.add_term(std::vector<int>((size_t)k, 0), 1);
        return x;
    }
    static CurveClass basis(int g, int k, std::vector<int> codes, Int mod = 0) {
        CurveClass x = zero(g, k, std::move(mod));
        x.add_term(std::move(codes), 1);
        return x;
    }
    static CurveClass point(int g, int k, Int mod = 0) {
        CurveClass x = zero(g, k, std::move(mod));
        x.add_term(std::vector<int>((size_t)k, 2 * g + 1), 1);
        return x;
    }

    void add_term(std::vector<int> codes, const Int& c) {
        Int v = reduce_mod(terms[codes] + c, modulus);
        if (v == 0)
            terms.erase(codes);
        else
            terms[std::move(codes)] = v;
    }

    bool is_zero() const { return terms.empty(); }
    bool operator==(const CurveClass& o) const {
        return g == o.g && k == o.k && modulus == o.modulus && terms == o.terms;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [t, c] : terms) {
            if (!first) os << " + ";
            os << c.str() << "*(";
            for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
            os << ")";
            first = false;
        }
        return os.str();
    }
};

inline void require_same_ring(const CurveClass& a, const CurveClass& b, const char* op) {
    if (a.g != b.g || a.k != b.k || a.modulus != b.modulus)
        throw std::domain_error(std::string(op) + ": ring mismatch");
}

inline CurveClass operator+(const CurveClass& a, const CurveClass& b) {
    require_same_ring(a, b, "curve add");
    CurveClass out = a;
    for (auto& [t, c] : b.terms) out.add_term(t, c);
    return out;
}

inline CurveClass operator-(const CurveClass& a, const CurveClass& b) {
    require_same_ring(a, b, "curve sub");
    CurveClass out = a;
    for (auto& [t, c] : b.terms) out.add_term(t, -c);
    return out;
}

inline CurveClass operator*(const Int& s, const CurveClass& a) {
    CurveClass out = CurveClass::zero(a.g, a.k, a.modulus);
    for (auto& [t, c] : a.terms) out.add_term(t, s * c);
    return out;
}

// product of two slot codes: (coefficient, code); coefficient 0 kills the term
inline std::pair<int, int> curve_slot_cup(int g, int s, int t) {
    if (s == 0) return {1, t};
    if (t == 0) return {1, s};
    if (s <= 2 * g && t <= 2 * g) {
        if (t == s + g) return {1, 2 * g + 1};  // alpha_i beta_i
        if (s == t + g) return {-1, 2 * g + 1}; // beta_i alpha_i
    }
    return {0, 0};
}

inline CurveClass cup(const CurveClass& a, const CurveClass& b) {
    require_same_ring(a, b, "curve cup");
    CurveClass out = CurveClass::zero(a.g, a.k, a.modulus);
    for (auto& [xs, ca] : a.terms)
        for (auto& [ys, cb] : b.terms) {
            int sign = 1;
            std::vector<int> zs((size_t)a.k);
            bool dead = false;
            // (x_1..x_k)^(y_1..y_k): y_t crosses x_{t+1},...,x_k
            int xtail = 0;
            for (int t = 0; t < a.k; ++t) xtail += curve_slot_degree(a.g, xs[(size_t)t]);
            for (int t = 0; t < a.k && !dead; ++t) {
                xtail -= curve_slot_degree(a.g, xs[(size_t)t]);
                auto [c, z] = curve_slot_cup(a.g, xs[(size_t)t], ys[(size_t)t]);
                if (c == 0) {
                    dead = true;
                    break;
                }
                sign *= c;
                if ((curve_slot_degree(a.g, ys[(size_t)t]) & 1) && (xtail & 1)) sign = -sign;
                zs[(size_t)t] = z;
            }
            if (!dead) out.add_term(zs, ca * cb * sign);
        }
    return out;
}

// coefficient of [pt] (x) ... (x) [pt]
inline Int integrate(const CurveClass& a) {
    auto it = a.terms.find(std::vector<int>((size_t)a.k, 2 * a.g + 1));
    return it == a.terms.end() ? Int(0) : it->second;
}

// slot duality: <s, dual(s)> = 1 under integrate(cup(.,.))
inline std::pair<int, int> curve_slot_dual(int g, int s) {
    if (s == 0) return {1, 2 * g + 1};
    if (s == 2 * g + 1) return {1, 0};
    if (s <= g) return {1, s + g};  // alpha -> beta
    return {-1, s - g};             // beta -> -alpha
}

inline CurveClass dual(const CurveClass& a) {
    CurveClass out = CurveClass::zero(a.g, a.k, a.modulus);
    for (auto& [t, c] : a.terms) {
        int sign = 1, odd_seen = 0;
        std::vector<int> dt((size_t)a.k);
        for (int i = 0; i < a.k; ++i) {
            auto [ds, dc] = curve_slot_dual(a.g, t[(size_t)i]);
            sign *= ds;
            if (curve_slot_degree(a.g, t[(size_t)i]) & 1) {
                if (odd_seen & 1) sign = -sign; // pairs of odd slots cross once
                ++odd_seen;
            }
            dt[(size_t)i] = dc;
        }
        out.add_term(dt, c * sign);
    }
    return out;
}

// A map C -> C^k: slot t reads the coordinate (pattern[t] true) or the base
// point.  Pullback restricts slotwise and multiplies in C.
inline CurveClass pattern_pullback(const std::vector<bool>& pattern, const CurveClass& y) {
    if ((int)pattern.size() != y.k) throw std::domain_error("pattern_pullback: arity mismatch");
    CurveClass out = CurveClass::zero(y.g, 1, y.modulus);
    for (auto& [t, c] : y.terms) {
        CurveClass term = CurveClass::unit(y.g, 1, y.modulus);
        bool dead = false;
        for (int i = 0; i < y.k && !dead; ++i) {
            int code = t[(size_t)i];
            if (!pattern[(size_t)i]) {
                if (code != 0) dead = true; // base point kills positive degree
                continue;
            }
            term = cup(term, CurveClass::basis(y.g, 1, {code}, y.modulus));
            dead = term.is_zero();
        }
        if (!dead) out = out + c * term;
    }
    return out;
}

// Adjoint pushforward along the same map, one pairing per target tuple.
inline CurveClass pattern_push(const std::vector<bool>& pattern, const CurveClass& x) {
    if (x.k != 1) throw std::domain_error("pattern_push: source must be a single factor");
    int g = x.g, k = (int)pattern.size();
    CurveClass out = CurveClass::zero(g, k, x.modulus);
    std::vector<int> tuple((size_t)k, 0);
    int codes = 2 * g + 2;
    auto rec = [&](auto&& self, int slot) -> void {
        if (slot == k) {
            CurveClass dU = dual(CurveClass::basis(g, k, tuple, x.modulus));
            Int c = integrate(cup(x, pattern_pullback(pattern, dU)));
            if (c != 0) out.add_term(tuple, c);
            return;
        }
        for (int code = 0; code < codes; ++code) {
            tuple[(size_t)slot] = code;
            self(self, slot + 1);
        }
    };
    rec(rec, 0);
    return out;
}

// Kuenneth class of the diagonal of C in C x C
inline CurveClass curve_diagonal(int g, Int mod = 0) {
    return pattern_push({true, true}, CurveClass::unit(g, 1, std::move(mod)));
}

// the involution acting by -1 on V, applied on one tensor slot
inline CurveClass involution_on_slot(const CurveClass& x, int slot) {
    CurveClass out = CurveClass::zero(x.g, x.k, x.modulus);
    for (auto& [t, c] : x.terms) {
        bool odd = curve_slot_degree(x.g, t[(size_t)slot]) & 1;
        out.add_term(t, odd ? -c : c);
    }
    return out;
}

// Seven-term modified diagonal in C^3, base point terms with inclusion-
// exclusion signs.  Exactly zero in this torsion-free model.
inline CurveClass curve_delta_e(int g, Int mod = 0) {
    CurveClass u = CurveClass::unit(g, 1, std::move(mod));
    auto push = [&](bool s1, bool s2, bool s3) {
        return pattern_push({s1, s2, s3}, u);
    };
    return push(true, true, true) - push(true, true, false) - push(true, false, true) -
           push(false, true, true) + push(true, false, false) + push(false, true, false) +
           push(false, false, true);
}

inline bool check_delta_e_vanishes(int g) { return curve_delta_e(g).is_zero(); }

// iota_* into the Jacobian model, slotwise: 1 -> c, alpha_i -> a_i ^ c,
// beta_i -> b_i ^ c, [pt] -> pointclass.  The degree shift 2(g-1) is even, so
// no slot-crossing signs appear.
inline ExtClass iota_push(const CurveClass& x) {
    int g = x.g;
    ExtClass mc = minimal_class(g);
    ExtClass out = ExtClass::zero(g, x.k, x.modulus);
    for (auto& [t, c] : x.terms) {
        ExtClass term = ExtClass::unit(g, 0);
        for (int slot = 0; slot < x.k; ++slot) {
            int code = t[(size_t)slot];
            ExtClass im = ExtClass::zero(g, 1);
            if (code == 0)
                im = mc;
            else if (code == 2 * g + 1)
                im = point_class(g, 1);
            else if (code <= g)
                im = cup(gen_class(g, 1, 0, code - 1, false), mc);
            else
                im = cup(gen_class(g, 1, 0, code - 1 - g, true), mc);
            term = outer(term, im);
        }
        for (auto& [mask, tc] : term.terms) out.add_term(mask, c * tc);
    }
    return out;
}

} // namespace pdcalc
