#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pdcalc/integers.hpp"
#include "pdcalc/combinatorics.hpp"

namespace pdcalc {

// Integral cohomology of a product of abelian varieties, modelled as the
// exterior algebra on 2*g*n degree-1 generators.  A monomial is a bitmask:
// bit 2*(g*t + i) is a_i on factor t, bit 2*(g*t + i) + 1 is b_i.  The
// symplectic pairing sends (a_i, b_i) to 1, so theta = sum_i a_i b_i.
using Mask = std::uint64_t;

inline int mask_bit_a(int g, int t, int i) { return 2 * (g * t + i); }
inline int mask_bit_b(int g, int t, int i) { return 2 * (g * t + i) + 1; }

// Sign of merging e_A ^ e_B into e_{A|B} with ascending bits: parity of the
// number of pairs a in A, b in B with b < a.
inline int cup_sign(Mask A, Mask B) {
    int inv = 0;
    for (Mask a = A; a; a &= a - 1) {
        int bit = std::countr_zero(a);
        inv += std::popcount(B & ((Mask(1) << bit) - 1));
    }
    return (inv & 1) ? -1 : 1;
}

// e_S ^ e_{S^c} = sigma(S) * vol, complements taken inside `bits` generators.
inline int mask_sigma(Mask S, int bits) {
    Mask full = (bits == 64) ? ~Mask(0) : (Mask(1) << bits) - 1;
    return cup_sign(S, full & ~S);
}

struct ExtClass {
    int g = 1;
    int n = 1; // number of factors
    Int modulus = 0;
    std::map<Mask, Int> terms;

    static ExtClass zero(int g, int n, Int mod = 0) { return {g, n, std::move(mod), {}}; }
    static ExtClass unit(int g, int n, Int mod = 0) {
        ExtClass x = zero(g, n, std::move(mod));
        x.add_term(0, 1);
        return x;
    }
    static ExtClass basis(int g, int n, Mask m, Int mod = 0) {
        ExtClass x = zero(g, n, std::move(mod));
        x.add_term(m, 1);
        return x;
    }

    int bits() const { return 2 * g * n; }
    Mask full_mask() const { return (Mask(1) << bits()) - 1; }

    void add_term(Mask m, const Int& c) {
        Int v = reduce_mod(terms[m] + c, modulus);
        if (v == 0)
            terms.erase(m);
        else
            terms[m] = v;
    }

    bool is_zero() const { return terms.empty(); }
    bool operator==(const ExtClass& o) const {
        return g == o.g && n == o.n && modulus == o.modulus && terms == o.terms;
    }

    // cohomological degree when homogeneous, -1 otherwise (-1 also for 0)
    int degree() const {
        int d = -1;
        for (auto& [m, c] : terms) {
            int p = std::popcount(m);
            if (d == -1)
                d = p;
            else if (d != p)
                return -1;
        }
        return d;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [m, c] : terms) {
            if (!first) os << " + ";
            os << c.str() << "*e[" << std::hex << m << std::dec << "]";
            first = false;
        }
        return os.str();
    }

    // canonical serialization for reports and golden files: monomial masks as
    // hex strings in ascending order, coefficients in decimal
    std::string canonical_json() const {
        std::ostringstream os;
        os << '{';
        bool first = true;
        for (auto& [m, c] : terms) {
            if (!first) os << ',';
            os << "\"" << std::hex << m << std::dec << "\":\"" << c.str() << "\"";
            first = false;
        }
        os << '}';
        return os.str();
    }
};

inline void require_same_ring(const ExtClass& a, const ExtClass& b, const char* op) {
    if (a.g != b.g || a.n != b.n || a.modulus != b.modulus)
        throw std::domain_error(std::string(op) + ": ring mismatch");
}

inline ExtClass operator+(const ExtClass& a, const ExtClass& b) {
    require_same_ring(a, b, "ext add");
    ExtClass out = a;
    for (auto& [m, c] : b.terms) out.add_term(m, c);
    return out;
}

inline ExtClass operator-(const ExtClass& a, const ExtClass& b) {
    require_same_ring(a, b, "ext sub");
    ExtClass out = a;
    for (auto& [m, c] : b.terms) out.add_term(m, -c);
    return out;
}

inline ExtClass operator*(const Int& s, const ExtClass& a) {
    ExtClass out = ExtClass::zero(a.g, a.n, a.modulus);
    for (auto& [m, c] : a.terms) out.add_term(m, s * c);
    return out;
}

inline ExtClass cup(const ExtClass& a, const ExtClass& b) {
    require_same_ring(a, b, "cup");
    ExtClass out = ExtClass::zero(a.g, a.n, a.modulus);
    for (auto& [ma, ca] : a.terms)
        for (auto& [mb, cb] : b.terms) {
            if (ma & mb) continue;
            out.add_term(ma | mb, ca * cb * cup_sign(ma, mb));
        }
    return out;
}

inline ExtClass cup_pow(const ExtClass& a, unsigned k) {
    ExtClass out = ExtClass::unit(a.g, a.n, a.modulus);
    for (unsigned i = 0; i < k; ++i) out = cup(out, a);
    return out;
}

// Coefficient of the volume form (evaluation against the fundamental class).
inline Int integrate(const ExtClass& a) {
    auto it = a.terms.find(a.full_mask());
    return it == a.terms.end() ? Int(0) : it->second;
}

// Poincare duality e_S -> sigma(S) e_{S^c} and its inverse.
inline ExtClass dual(const ExtClass& a) {
    ExtClass out = ExtClass::zero(a.g, a.n, a.modulus);
    Mask full = a.full_mask();
    for (auto& [m, c] : a.terms) out.add_term(full & ~m, c * mask_sigma(m, a.bits()));
    return out;
}

inline ExtClass dual_inv(const ExtClass& a) {
    ExtClass out = ExtClass::zero(a.g, a.n, a.modulus);
    Mask full = a.full_mask();
    for (auto& [m, c] : a.terms)
        out.add_term(full & ~m, c * mask_sigma(full & ~m, a.bits()));
    return out;
}

inline ExtClass exact_div_class(const ExtClass& a, const Int& d) {
    ExtClass out = ExtClass::zero(a.g, a.n, a.modulus);
    for (auto& [m, c] : a.terms) out.add_term(m, exact_div(c, d, "exact_div_class"));
    return out;
}

// x (x) y as a class on the product, y's factors after x's.  All of y's bits
// sit above x's, so no Koszul sign appears.
inline ExtClass outer(const ExtClass& a, const ExtClass& b) {
    if (a.g != b.g || a.modulus != b.modulus)
        throw std::domain_error("outer: ring mismatch");
    ExtClass out = ExtClass::zero(a.g, a.n + b.n, a.modulus);
    int shift = a.bits();
    for (auto& [ma, ca] : a.terms)
        for (auto& [mb, cb] : b.terms) out.add_term(ma | (mb << shift), ca * cb);
    return out;
}

// ---- homomorphisms of abelian varieties -------------------------------------

// x -> M x from J^cols to J^rows, M integral.  Composition is matrix product.
struct HomMatrix {
    int rows = 0, cols = 0;
    std::vector<std::vector<long>> M; // rows x cols

    static HomMatrix from(std::vector<std::vector<long>> m) {
        HomMatrix f;
        f.rows = (int)m.size();
        f.cols = f.rows ? (int)m[0].size() : 0;
        f.M = std::move(m);
        return f;
    }
    static HomMatrix identity(int k) {
        std::vector<std::vector<long>> m((size_t)k, std::vector<long>((size_t)k, 0));
        for (int i = 0; i < k; ++i) m[(size_t)i][(size_t)i] = 1;
        return from(std::move(m));
    }
    // multiplication by an integer on J^k
    static HomMatrix mult_by(long a, int k = 1) {
        HomMatrix f = identity(k);
        for (auto& row : f.M)
            for (auto& e : row) e *= a;
        return f;
    }
    // J^k -> J^n placing factor s at slot slots[s], zero elsewhere
    static HomMatrix inclusion(const std::vector<int>& slots, int n) {
        std::vector<std::vector<long>> m((size_t)n, std::vector<long>(slots.size(), 0));
        for (size_t s = 0; s < slots.size(); ++s) m[(size_t)slots[s]][s] = 1;
        return from(std::move(m));
    }
    // J^n -> J^k keeping the chosen slots
    static HomMatrix projection(const std::vector<int>& slots, int n) {
        std::vector<std::vector<long>> m(slots.size(), std::vector<long>((size_t)n, 0));
        for (size_t s = 0; s < slots.size(); ++s) m[s][(size_t)slots[s]] = 1;
        return from(std::move(m));
    }
    // componentwise addition J^{2k} -> J^k
    static HomMatrix sum(int k = 1) {
        std::vector<std::vector<long>> m((size_t)k, std::vector<long>((size_t)(2 * k), 0));
        for (int i = 0; i < k; ++i) m[(size_t)i][(size_t)i] = m[(size_t)i][(size_t)(k + i)] = 1;
        return from(std::move(m));
    }
    static HomMatrix diagonal() { return from({{1}, {1}}); } // J -> J^2

    HomMatrix transpose() const {
        std::vector<std::vector<long>> m((size_t)cols, std::vector<long>((size_t)rows, 0));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m[(size_t)j][(size_t)i] = M[(size_t)i][(size_t)j];
        return from(std::move(m));
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (int i = 0; i < rows; ++i) {
            os << (i ? ";" : "");
            for (int j = 0; j < cols; ++j) os << (j ? "," : "") << M[(size_t)i][(size_t)j];
        }
        os << "]";
        return os.str();
    }
};

inline HomMatrix compose(const HomMatrix& f, const HomMatrix& g) {
    if (f.cols != g.rows) throw std::domain_error("compose: shape mismatch");
    std::vector<std::vector<long>> m((size_t)f.rows, std::vector<long>((size_t)g.cols, 0));
    for (int i = 0; i < f.rows; ++i)
        for (int k = 0; k < f.cols; ++k)
            for (int j = 0; j < g.cols; ++j)
                m[(size_t)i][(size_t)j] += f.M[(size_t)i][(size_t)k] * g.M[(size_t)k][(size_t)j];
    return HomMatrix::from(std::move(m));
}

// f x h on J^{cols_f + cols_h}
inline HomMatrix direct_sum(const HomMatrix& f, const HomMatrix& h) {
    std::vector<std::vector<long>> m((size_t)(f.rows + h.rows),
                                     std::vector<long>((size_t)(f.cols + h.cols), 0));
    for (int i = 0; i < f.rows; ++i)
        for (int j = 0; j < f.cols; ++j) m[(size_t)i][(size_t)j] = f.M[(size_t)i][(size_t)j];
    for (int i = 0; i < h.rows; ++i)
        for (int j = 0; j < h.cols; ++j)
            m[(size_t)(f.rows + i)][(size_t)(f.cols + j)] = h.M[(size_t)i][(size_t)j];
    return HomMatrix::from(std::move(m));
}

// f^* on degree 1: a_i on target factor t pulls back to sum_s M[t][s] a_i on
// source factor s (same for b_i); extended multiplicatively with Koszul signs.
inline ExtClass pullback(const HomMatrix& f, const ExtClass& x) {
    if (x.n != f.rows) throw std::domain_error("pullback: factor count mismatch");
    ExtClass out = ExtClass::zero(x.g, f.cols, x.modulus);
    for (auto& [mask, c] : x.terms) {
        ExtClass term = ExtClass::unit(x.g, f.cols, x.modulus);
        for (Mask m = mask; m && !term.is_zero(); m &= m - 1) {
            int bit = std::countr_zero(m);
            int t = bit / (2 * x.g), r = bit % (2 * x.g);
            ExtClass form = ExtClass::zero(x.g, f.cols, x.modulus);
            for (int s = 0; s < f.cols; ++s) {
                long a = f.M[(size_t)t][(size_t)s];
                if (a != 0) form.add_term(Mask(1) << (2 * x.g * s + r), a);
            }
            term = cup(term, form);
        }
        out = out + c * term;
    }
    return out;
}

// f_* = D^{-1} o (f^T)^* o D; degree shifts by 2g(rows - cols).
inline ExtClass pushforward(const HomMatrix& f, const ExtClass& x) {
    if (x.n != f.cols) throw std::domain_error("pushforward: factor count mismatch");
    return dual_inv(pullback(f.transpose(), dual(x)));
}

// ---- Pontryagin structure -----------------------------------------------------

// sum_*(x (x) y) with the duality conjugation unrolled to one pass over term
// pairs: complements must be disjoint, the class lands on their common mask.
inline ExtClass pontryagin(const ExtClass& x, const ExtClass& y) {
    require_same_ring(x, y, "pontryagin");
    ExtClass out = ExtClass::zero(x.g, x.n, x.modulus);
    Mask full = x.full_mask();
    int bits = x.bits();
    for (auto& [P, cx] : x.terms) {
        Mask A = full & ~P;
        int sP = mask_sigma(P, bits);
        int pA = std::popcount(A);
        for (auto& [Q, cy] : y.terms) {
            Mask B = full & ~Q;
            if (A & B) continue;
            Mask C = P & Q;
            // the block-diagonal duality sign picks up |Q| |P^c| inversions
            int s = sP * mask_sigma(Q, bits) * cup_sign(A, B) * mask_sigma(C, bits);
            if ((std::popcount(Q) & pA) & 1) s = -s;
            out.add_term(C, cx * cy * s);
        }
    }
    return out;
}

// unit for the Pontryagin product: the class of a point
inline ExtClass point_class(int g, int n, Int mod = 0) {
    ExtClass x = ExtClass::zero(g, n, std::move(mod));
    x.add_term(x.full_mask(), 1);
    return x;
}

// Divided powers for the Pontryagin product, x^{*d} / d! built one exact
// division at a time.  Requires torsion-free coefficients.
inline ExtClass star_divided_power(const ExtClass& x, unsigned d) {
    ExtClass out = point_class(x.g, x.n, x.modulus);
    for (unsigned k = 1; k <= d; ++k) out = exact_div_class(pontryagin(out, x), k);
    return out;
}

// sum_d x^{*d}/d!; terminates because * strictly lowers degree for deg x < 2gn.
inline ExtClass star_exp(const ExtClass& x) {
    ExtClass acc = point_class(x.g, x.n, x.modulus);
    ExtClass total = acc;
    for (unsigned k = 1; !acc.is_zero(); ++k) {
        if (k > (unsigned)(4 * x.bits())) throw std::domain_error("star_exp does not terminate");
        acc = exact_div_class(pontryagin(acc, x), k);
        total = total + acc;
    }
    return total;
}

// sum_k x^k / k! for the cup product, x of even positive degree (nilpotent).
inline ExtClass exp_cup(const ExtClass& x) {
    ExtClass acc = ExtClass::unit(x.g, x.n, x.modulus);
    ExtClass total = acc;
    for (unsigned k = 1; !acc.is_zero(); ++k) {
        if (k > (unsigned)(4 * x.bits())) throw std::domain_error("exp_cup does not terminate");
        acc = exact_div_class(cup(acc, x), k);
        total = total + acc;
    }
    return total;
}

// ---- standard classes ---------------------------------------------------------

inline ExtClass gen_class(int g, int n, int t, int i, bool b_type, Int mod = 0) {
    int bit = b_type ? mask_bit_b(g, t, i) : mask_bit_a(g, t, i);
    return ExtClass::basis(g, n, Mask(1) << bit, std::move(mod));
}

// theta on factor t of J^n
inline ExtClass theta_class(int g, int n = 1, int t = 0, Int mod = 0) {
    ExtClass x = ExtClass::zero(g, n, std::move(mod));
    for (int i = 0; i < g; ++i)
        x.add_term((Mask(1) << mask_bit_a(g, t, i)) | (Mask(1) << mask_bit_b(g, t, i)), 1);
    return x;
}

// minimal class theta^{g-1}/(g-1)!
inline ExtClass minimal_class(int g, Int mod = 0) {
    return exact_div_class(cup_pow(theta_class(g, 1, 0, std::move(mod)), (unsigned)(g - 1)),
                           factorial((unsigned)(g - 1)));
}

// the correspondence class on J x J whose cup-exponential drives the classical
// transform: sum_i (a_i^{(0)} b_i^{(1)} - b_i^{(0)} a_i^{(1)})
inline ExtClass ell_class(int g, Int mod = 0) {
    ExtClass x = ExtClass::zero(g, 2, std::move(mod));
    for (int i = 0; i < g; ++i) {
        x.add_term((Mask(1) << mask_bit_a(g, 0, i)) | (Mask(1) << mask_bit_b(g, 1, i)), 1);
        x.add_term((Mask(1) << mask_bit_b(g, 0, i)) | (Mask(1) << mask_bit_a(g, 1, i)), -1);
    }
    return x;
}

// the dimension-1 curve class on J x J whose star-exponential is the kernel:
// j_{1,*}(c) + j_{2,*}(c) - Delta_*(c)
inline ExtClass gamma_class(int g) {
    ExtClass c = minimal_class(g);
    return pushforward(HomMatrix::inclusion({0}, 2), c) +
           pushforward(HomMatrix::inclusion({1}, 2), c) -
           pushforward(HomMatrix::diagonal(), c);
}

// terms of one cohomological degree
inline ExtClass graded_part(const ExtClass& x, int d) {
    ExtClass out = ExtClass::zero(x.g, x.n, x.modulus);
    for (auto& [mask, c] : x.terms)
        if (std::popcount(mask) == d) out.add_term(mask, c);
    return out;
}

inline ExtClass reduce_coefficients(const ExtClass& x, const Int& m) {
    ExtClass out = ExtClass::zero(x.g, x.n, m);
    for (auto& [mask, c] : x.terms) out.add_term(mask, c);
    return out;
}

} // namespace pdcalc
