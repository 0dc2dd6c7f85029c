#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pdcalc/combinatorics.hpp"
#include "pdcalc/integers.hpp"

namespace pdcalc {

// Raised when a divided power fails to descend to a quotient.
struct divided_power_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Monomial in the divided-power basis: u_{i1}^[e1] ... u_{ik}^[ek] with
// pairwise distinct generators, exponents >= 1.  Empty product is the unit.
struct PDMonomial {
    std::vector<std::pair<int, int>> factors; // (generator, exponent), sorted

    long weight() const {
        long w = 0;
        for (auto& [g, e] : factors) w += e;
        return w;
    }
    auto operator<=>(const PDMonomial&) const = default;

    std::string str() const {
        if (factors.empty()) return "1";
        std::ostringstream os;
        for (auto& [g, e] : factors) os << "u" << g << "[" << e << "]";
        return os.str();
    }
};

inline PDMonomial pd_gen(int i, int e = 1) {
    PDMonomial m;
    if (e > 0) m.factors.emplace_back(i, e);
    return m;
}

// u_i^[a] u_i^[b] = C(a+b, a) u_i^[a+b], one binomial per shared generator.
inline std::pair<Int, PDMonomial> pd_mul_monomials(const PDMonomial& a, const PDMonomial& b) {
    PDMonomial out;
    Int coef = 1;
    size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        if (j == b.factors.size() ||
            (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
            out.factors.push_back(a.factors[i++]);
        } else if (i == a.factors.size() || b.factors[j].first < a.factors[i].first) {
            out.factors.push_back(b.factors[j++]);
        } else {
            int g = a.factors[i].first;
            int ea = a.factors[i].second, eb = b.factors[j].second;
            coef *= binom(ea + eb, ea);
            out.factors.emplace_back(g, ea + eb);
            ++i, ++j;
        }
    }
    return {coef, out};
}

// Element of the free divided-power algebra on `generators` symbols over Z
// (modulus == 0) or Z/modulus.  Zero coefficients are never stored.
struct PDElement {
    int generators = 1;
    Int modulus = 0;
    std::map<PDMonomial, Int> terms;

    static PDElement zero(int r, Int mod = 0) { return {r, std::move(mod), {}}; }
    static PDElement unit(int r, Int mod = 0) {
        PDElement x = zero(r, std::move(mod));
        x.add_term(PDMonomial{}, 1);
        return x;
    }
    static PDElement generator(int r, int i, int e = 1, Int mod = 0) {
        PDElement x = zero(r, std::move(mod));
        x.add_term(pd_gen(i, e), 1);
        return x;
    }

    void add_term(const PDMonomial& m, const Int& c) {
        Int v = reduce_mod(terms[m] + c, modulus);
        if (v == 0)
            terms.erase(m);
        else
            terms[m] = v;
    }

    bool is_zero() const { return terms.empty(); }
    bool operator==(const PDElement& o) const {
        return generators == o.generators && modulus == o.modulus && terms == o.terms;
    }

    Int constant_term() const {
        auto it = terms.find(PDMonomial{});
        return it == terms.end() ? Int(0) : it->second;
    }

    // part of the given weight
    PDElement weight_part(long w) const {
        PDElement out = zero(generators, modulus);
        for (auto& [m, c] : terms)
            if (m.weight() == w) out.add_term(m, c);
        return out;
    }
    long max_weight() const {
        long w = 0;
        for (auto& [m, c] : terms) w = std::max(w, m.weight());
        return w;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [m, c] : terms) {
            if (!first) os << " + ";
            os << c.str() << "*" << m.str();
            first = false;
        }
        return os.str();
    }
};

inline void require_same_ring(const PDElement& a, const PDElement& b, const char* op) {
    if (a.generators != b.generators || a.modulus != b.modulus)
        throw std::domain_error(std::string(op) + ": ring mismatch");
}

inline PDElement operator+(const PDElement& a, const PDElement& b) {
    require_same_ring(a, b, "pd add");
    PDElement out = a;
    for (auto& [m, c] : b.terms) out.add_term(m, c);
    return out;
}

inline PDElement operator-(const PDElement& a, const PDElement& b) {
    require_same_ring(a, b, "pd sub");
    PDElement out = a;
    for (auto& [m, c] : b.terms) out.add_term(m, -c);
    return out;
}

inline PDElement operator*(const Int& s, const PDElement& a) {
    PDElement out = PDElement::zero(a.generators, a.modulus);
    for (auto& [m, c] : a.terms) out.add_term(m, s * c);
    return out;
}

inline PDElement pd_mul(const PDElement& a, const PDElement& b) {
    require_same_ring(a, b, "pd_mul");
    PDElement out = PDElement::zero(a.generators, a.modulus);
    for (auto& [ma, ca] : a.terms)
        for (auto& [mb, cb] : b.terms) {
            auto [coef, m] = pd_mul_monomials(ma, mb);
            out.add_term(m, ca * cb * coef);
        }
    return out;
}

inline PDElement pd_pow(const PDElement& a, unsigned n) {
    PDElement out = PDElement::unit(a.generators, a.modulus);
    for (unsigned i = 0; i < n; ++i) out = pd_mul(out, a);
    return out;
}

// gamma_d of a single monomial.  mu^d picks up ((d e)! / (e!)^d) per factor;
// dividing by d! is exact over Z (the free algebra is torsion-free), and the
// integer quotient is what descends to Z/m.
inline std::pair<Int, PDMonomial> gamma_monomial(const PDMonomial& mu, unsigned d) {
    if (d == 0) return {1, PDMonomial{}};
    Int num = 1;
    PDMonomial out;
    for (auto& [g, e] : mu.factors) {
        num *= exact_div(factorial((unsigned)(d * e)), pow(factorial((unsigned)e), d),
                         "gamma_monomial");
        out.factors.emplace_back(g, (int)d * e);
    }
    Int coef = exact_div(num, factorial(d), "gamma_monomial");
    return {coef, out};
}

// gamma_d(sum_i c_i mu_i) expanded over weak compositions d = d_1 + ... + d_k:
// each composition contributes prod_i c_i^{d_i} gamma_{d_i}(mu_i), multiplied
// out with the divided-power binomials.
inline PDElement gamma(const PDElement& a, unsigned d) {
    if (a.constant_term() != 0)
        throw std::domain_error("gamma: element has a constant term");
    PDElement out = PDElement::zero(a.generators, a.modulus);
    if (d == 0) return PDElement::unit(a.generators, a.modulus);

    std::vector<std::pair<PDMonomial, Int>> ts(a.terms.begin(), a.terms.end());
    long k = (long)ts.size();
    if (k == 0) return out; // gamma_d(0) = 0 for d >= 1

    for_each_weak_composition(d, k, [&](const std::vector<long>& comp) {
        Int coef = 1;
        PDMonomial mono; // running product
        for (long i = 0; i < k && coef != 0; ++i) {
            long di = comp[(size_t)i];
            if (di == 0) continue;
            auto [gc, gm] = gamma_monomial(ts[(size_t)i].first, (unsigned)di);
            coef *= gc * pow(ts[(size_t)i].second, (unsigned)di);
            auto [mc, mm] = pd_mul_monomials(mono, gm);
            coef *= mc;
            mono = mm;
        }
        out.add_term(mono, coef);
    });
    return out;
}

// Star-exponential truncated at gamma_truncation.
inline PDElement star_exp(const PDElement& a, unsigned truncation) {
    PDElement out = PDElement::zero(a.generators, a.modulus);
    for (unsigned n = 0; n <= truncation; ++n) out = out + gamma(a, n);
    return out;
}

// ---- axiom checking ---------------------------------------------------------

struct AxiomCheck {
    std::string axiom;
    bool pass = true;
    std::string witness; // offending instance, empty on pass
};

// Verifies, for every sample x (and consecutive pairs x, y) and all d, e >= 1
// with d*e <= dmax:
//   gamma_d(x) gamma_e(x)  == C(d+e, d) gamma_{d+e}(x)
//   gamma_d(gamma_e(x))    == ((de)!/(d!(e!)^d)) gamma_{de}(x)
//   gamma_d(x + y)         == sum_{i+j=d} gamma_i(x) gamma_j(y)
//   gamma_d(s x)           == s^d gamma_d(x)
inline std::vector<AxiomCheck> check_pd_axioms(const std::vector<PDElement>& samples,
                                               unsigned dmax) {
    AxiomCheck product{"product", true, ""};
    AxiomCheck composition{"composition", true, ""};
    AxiomCheck additivity{"additivity", true, ""};
    AxiomCheck homogeneity{"homogeneity", true, ""};

    auto fail = [](AxiomCheck& c, const std::string& w) {
        if (c.pass) {
            c.pass = false;
            c.witness = w;
        }
    };

    for (size_t si = 0; si < samples.size(); ++si) {
        const PDElement& x = samples[si];
        // d + e stays below dmax + 2 whenever d >= 1, e >= d and d*e <= dmax
        std::vector<PDElement> gx(dmax + 2, PDElement::zero(x.generators, x.modulus));
        for (unsigned n = 0; n <= dmax + 1; ++n) gx[n] = gamma(x, n);

        for (unsigned d = 1; d <= dmax; ++d) {
            for (unsigned e = d; d * e <= dmax; ++e) {
                if (pd_mul(gx[d], gx[e]) != binom(d + e, d) * gx[d + e])
                    fail(product, "d=" + std::to_string(d) + " e=" + std::to_string(e) +
                                      " x=" + x.str());
                if (gamma(gx[e], d) != sym_power_degree(d, e) * gx[(size_t)d * e])
                    fail(composition, "d=" + std::to_string(d) + " e=" + std::to_string(e) +
                                          " x=" + x.str());
            }
            // scaling by a few fixed factors
            for (long s : {-3L, 2L, 5L}) {
                if (gamma(Int(s) * x, d) != pow(Int(s), d) * gx[d])
                    fail(homogeneity, "d=" + std::to_string(d) + " s=" + std::to_string(s) +
                                          " x=" + x.str());
            }
        }

        const PDElement& y = samples[(si + 1) % samples.size()];
        if (y.generators != x.generators || y.modulus != x.modulus) continue;
        for (unsigned d = 1; d <= std::min(dmax, 6u); ++d) {
            PDElement lhs = gamma(x + y, d);
            PDElement rhs = PDElement::zero(x.generators, x.modulus);
            for (unsigned i = 0; i <= d; ++i) rhs = rhs + pd_mul(gamma(x, i), gamma(y, d - i));
            if (lhs != rhs)
                fail(additivity, "d=" + std::to_string(d) + " x=" + x.str() + " y=" + y.str());
        }
    }
    return {product, composition, additivity, homogeneity};
}

// ---- integer lattices ---------------------------------------------------------

// Sublattice of Z^dim kept in row-echelon form under deterministic integer
// elimination (gcd pivots, pivots positive, entries above pivots reduced).
struct IntLattice {
    long dim = 0;
    std::vector<std::vector<Int>> rows; // sorted by pivot column

    explicit IntLattice(long d = 0) : dim(d) {}

    static long pivot_col(const std::vector<Int>& v) {
        for (long i = 0; i < (long)v.size(); ++i)
            if (v[(size_t)i] != 0) return i;
        return -1;
    }

    void add(std::vector<Int> v) {
        for (size_t ri = 0; ri < rows.size();) {
            long p = pivot_col(v);
            if (p < 0) return;
            long rp = pivot_col(rows[ri]);
            if (rp < p) {
                ++ri;
                continue;
            }
            if (rp > p) {
                insert_row(std::move(v), ri);
                return;
            }
            // same pivot: replace the pair by (gcd combination, reduced row)
            auto& r = rows[ri];
            Int a = r[(size_t)p], b = v[(size_t)p], g = gcd(a, b);
            Int ca = exact_div(a, g), cb = exact_div(b, g);
            // extended Euclid: s*a + t*b = g
            Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
            while (r1 != 0) {
                Int q = r0 / r1, tmp = r0 - q * r1;
                r0 = r1; r1 = tmp;
                tmp = s0 - q * s1; s0 = s1; s1 = tmp;
                tmp = t0 - q * t1; t0 = t1; t1 = tmp;
            }
            if (r0 < 0) { s0 = -s0; t0 = -t0; }
            std::vector<Int> comb((size_t)dim), red((size_t)dim);
            for (long i = 0; i < dim; ++i) {
                comb[(size_t)i] = s0 * r[(size_t)i] + t0 * v[(size_t)i];
                red[(size_t)i] = ca * v[(size_t)i] - cb * r[(size_t)i];
            }
            r = std::move(comb);
            v = std::move(red);
        }
        if (pivot_col(v) >= 0) insert_row(std::move(v), rows.size());
    }

    bool contains(const std::vector<Int>& v0) const {
        std::vector<Int> v = v0;
        for (auto& r : rows) {
            long p = pivot_col(r);
            if (v[(size_t)p] == 0) continue;
            Int q, rem;
            boost::multiprecision::divide_qr(v[(size_t)p], r[(size_t)p], q, rem);
            if (rem != 0) return false;
            for (long i = p; i < dim; ++i) v[(size_t)i] -= q * r[(size_t)i];
        }
        return pivot_col(v) < 0;
    }

    // Least k >= 1 with k*v in the lattice; 0 when no multiple lies in it.
    Int additive_order(const std::vector<Int>& v0) const {
        std::vector<Int> v = v0;
        Int k = 1;
        for (auto& r : rows) {
            long p = pivot_col(r);
            if (v[(size_t)p] == 0) continue;
            Int piv = r[(size_t)p];
            Int g = gcd(piv, v[(size_t)p]);
            Int f = exact_div(piv, g);
            if (f != 1) {
                for (auto& c : v) c *= f;
                k *= f;
            }
            Int q = exact_div(v[(size_t)p], piv, "additive_order");
            for (long i = p; i < dim; ++i) v[(size_t)i] -= q * r[(size_t)i];
        }
        return pivot_col(v) < 0 ? k : Int(0);
    }

  private:
    void insert_row(std::vector<Int> v, size_t at) {
        long p = pivot_col(v);
        if (v[(size_t)p] < 0)
            for (auto& c : v) c = -c;
        rows.insert(rows.begin() + (long)at, std::move(v));
        // keep rows ordered by pivot (insertion point was already correct) and
        // reduce entries above each pivot for a canonical form
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = i + 1; j < rows.size(); ++j) {
                long pj = pivot_col(rows[j]);
                Int q = rows[i][(size_t)pj] / rows[j][(size_t)pj]; // floor toward zero ok
                if (q != 0)
                    for (long c = pj; c < dim; ++c)
                        rows[i][(size_t)c] -= q * rows[j][(size_t)c];
            }
    }
};

// ---- quotients by divided-power ideals -------------------------------------------

// All monomials of the given weight on r generators, in map order.
inline std::vector<PDMonomial> pd_degree_basis(int r, long degree) {
    std::vector<PDMonomial> out;
    std::function<void(int, long, PDMonomial&)> rec = [&](int gen, long rest, PDMonomial& cur) {
        if (gen == r) {
            if (rest == 0) out.push_back(cur);
            return;
        }
        for (long e = 0; e <= rest; ++e) {
            if (e > 0) cur.factors.emplace_back(gen, (int)e);
            rec(gen + 1, rest - e, cur);
            if (e > 0) cur.factors.pop_back();
        }
    };
    PDMonomial cur;
    rec(0, degree, cur);
    std::sort(out.begin(), out.end());
    return out;
}

// Quotient of the free algebra by the ideal generated by homogeneous degree-1
// elements; with pd_closed the ideal also contains every gamma_i of a
// generating relation (the divided-power ideal).
class PDQuotient {
  public:
    PDQuotient(int generators, std::vector<PDElement> relations, bool pd_closed = true)
        : r_(generators), rels_(std::move(relations)), pd_closed_(pd_closed) {
        for (auto& z : rels_) {
            if (z.constant_term() != 0 || z.max_weight() > 1)
                throw std::domain_error("PDQuotient: relations must be homogeneous of degree 1");
            mod_ = z.modulus;
        }
    }

    const std::vector<PDMonomial>& basis(long degree) const {
        auto it = basis_.find(degree);
        if (it == basis_.end())
            it = basis_.emplace(degree, pd_degree_basis(r_, degree)).first;
        return it->second;
    }

    std::vector<Int> coords(const PDElement& x, long degree) const {
        auto& b = basis(degree);
        std::vector<Int> v(b.size(), Int(0));
        for (auto& [m, c] : x.terms) {
            if (m.weight() != degree)
                throw std::domain_error("coords: element not homogeneous of this degree");
            auto pos = std::lower_bound(b.begin(), b.end(), m) - b.begin();
            v[(size_t)pos] = c;
        }
        return v;
    }

    const IntLattice& lattice(long degree) const {
        auto it = lat_.find(degree);
        if (it != lat_.end()) return it->second;
        IntLattice L((long)basis(degree).size());
        // products gamma_{i1}(z_{j1}) ... gamma_{ik}(z_{jk}) * mu  with
        // i_1 + ... + i_k + |mu| = degree; plain ideals keep only k = 1, i = 1.
        std::vector<std::pair<unsigned, size_t>> stack;
        std::function<void(long, unsigned, size_t)> rec = [&](long used, unsigned max_i,
                                                              size_t max_j) {
            if (!stack.empty()) {
                PDElement prod = PDElement::unit(r_, mod_);
                for (auto& [i, j] : stack) prod = pd_mul(prod, gamma(rels_[j], i));
                for (auto& mu : basis(degree - used)) {
                    PDElement m = PDElement::zero(r_, mod_);
                    m.add_term(mu, 1);
                    L.add(coords(pd_mul(prod, m), degree));
                }
            }
            if ((long)used >= degree) return;
            unsigned top = pd_closed_ ? (unsigned)(degree - used) : 1u;
            for (unsigned i = std::min(max_i, top); i >= 1; --i) {
                size_t jstart = (i == max_i) ? max_j : rels_.size() - 1;
                for (size_t j = jstart + 1; j-- > 0;) {
                    if ((long)i > degree - used) continue;
                    stack.emplace_back(i, j);
                    rec(used + i, i, j);
                    stack.pop_back();
                }
                if (i == 1) break;
            }
        };
        if (!rels_.empty()) rec(0, (unsigned)degree, rels_.size() - 1);
        // coefficients live in Z/m: the lattice sees m * (each basis vector)
        if (mod_ != 0)
            for (size_t p = 0; p < basis(degree).size(); ++p) {
                std::vector<Int> unitrow(basis(degree).size(), Int(0));
                unitrow[p] = mod_;
                L.add(std::move(unitrow));
            }
        return lat_.emplace(degree, std::move(L)).first->second;
    }

    bool is_zero(const PDElement& x) const {
        for (long w = 0; w <= x.max_weight(); ++w) {
            PDElement part = x.weight_part(w);
            if (part.is_zero()) continue;
            if (w == 0) return false; // constants are never relations here
            if (!lattice(w).contains(coords(part, w))) return false;
        }
        return true;
    }

    Int additive_order(const PDElement& x, long degree) const {
        return lattice(degree).additive_order(coords(x, degree));
    }

    // gamma on the quotient: computed on a representative, then checked to be
    // independent of the representative one relation-multiple at a time.
    PDElement gamma_in_quotient(const PDElement& x, unsigned d) const {
        PDElement gx = pdcalc::gamma(x, d);
        long deg = x.max_weight();
        for (auto& z : rels_)
            for (auto& mu : basis(deg - 1)) {
                PDElement m = PDElement::zero(r_, mod_);
                m.add_term(mu, 1);
                PDElement other = pdcalc::gamma(x + pd_mul(z, m), d);
                if (!is_zero(other - gx))
                    throw divided_power_error("gamma does not descend to the quotient: d=" +
                                              std::to_string(d) + " x=" + x.str());
            }
        return gx;
    }

  private:
    int r_;
    std::vector<PDElement> rels_;
    bool pd_closed_;
    Int mod_ = 0;
    mutable std::map<long, std::vector<PDMonomial>> basis_;
    mutable std::map<long, IntLattice> lat_;
};

// ---- the universal quotient Z<u>/(2u) -----------------------------------------

// Order of u^[n] in Z<u> / (divided-power ideal of 2u).  The degree-n relation
// lattice is spanned by the products gamma_{i1}(2u)...gamma_{ik}(2u) u^[n - s]
// over partitions (i_1,...,i_k) of every s <= n; such a product equals
// 2^s C(n,s) multinom(s, parts) u^[n].  The single-part partition (s) has
// multiplier multinom(s,(s)) = 1, so its value 2^s C(n,s) divides the value of
// every multi-part partition of the same s, and reducing the lattice over the
// single-part rows already yields the diagonal form.  (The test suite checks
// this against the literal all-partitions enumeration at small n.)
inline Int universal_quotient_order(unsigned n) {
    Int g = 0;
    for (unsigned s = 1; s <= n; ++s) g = gcd(g, pow(Int(2), s) * binom(n, s));
    return g;
}

struct TorsionReport {
    unsigned n;
    Int order;
    Int bound;   // 2^{1 + floor(log2 n)}
    bool divides;
    bool equals;
};

inline std::vector<TorsionReport> verify_torsion_bound(unsigned nmax) {
    std::vector<TorsionReport> out;
    for (unsigned n = 1; n <= nmax; ++n) {
        unsigned lg = 0, m = n;
        while (m >>= 1u) ++lg;
        Int bound = pow(Int(2), 1 + lg);
        Int ord = universal_quotient_order(n);
        Int q, r;
        boost::multiprecision::divide_qr(bound, ord, q, r);
        out.push_back({n, ord, bound, r == 0, ord == bound});
    }
    return out;
}

} // namespace pdcalc
