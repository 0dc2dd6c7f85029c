#pragma once
// Named verification suites behind the CLI. Each suite returns a SuiteReport;
// run_suites dispatches a name and a genus range to the right sequence of
// reports. Genus-independent suites (pd-axioms, sym-degrees) report genus 0,
// and the torsion suite reads the genus range as the range of divided-power
// indices n. All randomness flows from the one seed in SuiteOptions.

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "expr.hpp"
#include "fourier.hpp"
#include "pd_algebra.hpp"
#include "report.hpp"

namespace pdcalc {

struct SuiteOptions {
    unsigned long long seed = 1;
    int samples = 100;
    Int coeff_mod = 0; // 0 = integer coefficients
};

namespace detail {

inline PDElement random_pd_element(std::mt19937_64& rng, int r, long max_weight, int max_terms,
                                   const Int& mod) {
    PDElement x = PDElement::zero(r, mod);
    int terms = 1 + (int)(rng() % (unsigned)max_terms);
    for (int t = 0; t < terms; ++t) {
        long w = 1 + (long)(rng() % (unsigned long)max_weight);
        PDMonomial m;
        std::vector<int> gens((size_t)r);
        std::iota(gens.begin(), gens.end(), 0);
        std::shuffle(gens.begin(), gens.end(), rng);
        for (int i : gens) {
            if (w <= 0) break;
            long e = 1 + (long)(rng() % (unsigned long)w);
            m.factors.emplace_back(i, (int)e);
            w -= e;
        }
        std::sort(m.factors.begin(), m.factors.end());
        long c = (long)(rng() % 19) - 9;
        if (c != 0) x.add_term(m, c);
    }
    return x;
}

inline ExtClass random_ext(std::mt19937_64& rng, int g, int n, int max_terms,
                           bool even_only = false) {
    ExtClass x = ExtClass::zero(g, n);
    Mask full = x.full_mask();
    for (int t = 0; t < max_terms; ++t) {
        Mask m = rng() & full;
        while (even_only && (std::popcount(m) & 1)) m = rng() & full;
        long c = (long)(rng() % 7) - 3;
        if (c != 0) x.add_term(m, c);
    }
    return x;
}

inline HomMatrix random_hom(std::mt19937_64& rng, int rows, int cols) {
    std::vector<std::vector<long>> entries((size_t)rows, std::vector<long>((size_t)cols));
    for (auto& row : entries)
        for (long& v : row) v = (long)(rng() % 5) - 2;
    return HomMatrix::from(entries);
}

} // namespace detail

// Divided-power axioms on free PD algebras with up to three generators.
inline SuiteReport run_pd_axioms(const SuiteOptions& opt) {
    SuiteReport rep{"pd-axioms", 0, {}};
    std::mt19937_64 rng(opt.seed);

    std::vector<PDElement> samples;
    int count = std::max(opt.samples, 4);
    samples.reserve((size_t)count);
    for (int i = 0; i < count; ++i) {
        int r = 1 + (int)(rng() % 3);
        samples.push_back(detail::random_pd_element(rng, r, 4, 3, opt.coeff_mod));
    }

    auto t0 = std::chrono::steady_clock::now();
    std::vector<AxiomCheck> axioms = check_pd_axioms(samples, 12);
    auto t1 = std::chrono::steady_clock::now();
    long long ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() /
                   (long long)axioms.size();
    for (auto& a : axioms) rep.add({a.axiom, a.pass, a.witness, ms});

    rep.sort_checks();
    return rep;
}

// Orders of u^[n] in the universal quotient against the 2-power bound.
inline SuiteReport run_torsion(int nmax) {
    if (nmax < 2 || nmax > 64)
        throw std::domain_error("torsion suite: n range must lie in 2..64");
    SuiteReport rep{"torsion", 0, {}};
    std::vector<TorsionReport> rows = verify_torsion_bound((unsigned)nmax);

    rep.add(timed_check("order-divides-bound", [&](std::string& w) {
        for (auto& r : rows)
            if (!r.divides) {
                w = "n = " + std::to_string(r.n) + ": order " + r.order.str() + " vs bound " +
                    r.bound.str();
                return false;
            }
        return true;
    }));

    rep.add(timed_check("frozen-small-orders", [&](std::string& w) {
        const std::pair<unsigned, long> expect[] = {{2, 4}, {3, 2}, {4, 8}};
        for (auto [n, ord] : expect) {
            if (n > (unsigned)nmax) continue;
            auto it = std::find_if(rows.begin(), rows.end(),
                                   [n](const TorsionReport& r) { return r.n == n; });
            if (it == rows.end() || it->order != ord) {
                w = "n = " + std::to_string(n) + ": order " +
                    (it == rows.end() ? std::string("missing") : it->order.str()) +
                    ", expected " + std::to_string(ord);
                return false;
            }
        }
        return true;
    }));

    rep.add(timed_check("bound-sharp-at-powers-of-two", [&](std::string& w) {
        for (auto& r : rows) {
            bool pow2 = (r.n & (r.n - 1)) == 0;
            if (r.equals != pow2) {
                w = "n = " + std::to_string(r.n) + ": order " + r.order.str() + " vs bound " +
                    r.bound.str();
                return false;
            }
        }
        return true;
    }));

    rep.sort_checks();
    return rep;
}

// Integrality of the composition multiplicities and the binomial collapse
// behind the w-product formula.
inline SuiteReport run_sym_degrees() {
    SuiteReport rep{"sym-degrees", 0, {}};

    rep.add(timed_check("composition-multiplicity-integral", [&](std::string& w) {
        for (unsigned d = 1; d <= 12; ++d)
            for (unsigned e = 1; e <= 12; ++e) {
                Int v = sym_power_degree(d, e); // exact_div throws if non-integral
                if (v * factorial(d) * pow(factorial(e), d) != factorial(d * e)) {
                    w = "d = " + std::to_string(d) + ", e = " + std::to_string(e);
                    return false;
                }
            }
        return true;
    }));

    rep.add(timed_check("binomial-collapse", [&](std::string& w) {
        for (unsigned g = 1; g <= 20; ++g)
            for (unsigned M = 0; M <= 2 * g; ++M)
                if (!verify_binomial_collapse(g, M)) {
                    w = "g = " + std::to_string(g) + ", M = " + std::to_string(M);
                    return false;
                }
        return true;
    }));

    rep.sort_checks();
    return rep;
}

// The rank-(g+1) model ring: both products, both PD structures, the diagonal
// transform.
inline SuiteReport run_taut_ring(int g, const SuiteOptions& opt) {
    if (g < 1 || g > 20) throw std::domain_error("taut-ring suite: genus out of range (1..20)");
    SuiteReport rep{"taut-ring", g, {}};
    const Int& mod = opt.coeff_mod;

    rep.add(timed_check("theta-powers", [&](std::string& w) {
        TautClass th = taut_theta(g, mod);
        TautClass p = taut_unit_cup(g, mod);
        for (int n = 1; n <= g; ++n) {
            p = taut_cup(p, th);
            if (p != factorial((unsigned)n) * TautClass::w(g, g - n, mod)) {
                w = "n = " + std::to_string(n) + ": " + p.str();
                return false;
            }
        }
        return true;
    }));

    rep.add(timed_check("intersection-binomial", [&](std::string& w) {
        for (int m = 0; m <= g; ++m)
            for (int n = 0; m + n <= g; ++n) {
                TautClass lhs = taut_cup(TautClass::w(g, g - m, mod), TautClass::w(g, g - n, mod));
                if (lhs != binom(m + n, m) * TautClass::w(g, g - m - n, mod)) {
                    w = "m = " + std::to_string(m) + ", n = " + std::to_string(n);
                    return false;
                }
            }
        return true;
    }));

    rep.add(timed_check("pontryagin-binomial", [&](std::string& w) {
        for (int i = 0; i <= g; ++i)
            for (int j = 0; i + j <= g; ++j) {
                TautClass lhs = taut_star(TautClass::w(g, i, mod), TautClass::w(g, j, mod));
                if (lhs != binom(i + j, i) * TautClass::w(g, i + j, mod)) {
                    w = "i = " + std::to_string(i) + ", j = " + std::to_string(j);
                    return false;
                }
            }
        return true;
    }));

    rep.add(timed_check("fourier-involution", [&](std::string& w) {
        Int sign = (g & 1) ? -1 : 1;
        for (int n = 0; n <= g; ++n) {
            TautClass x = TautClass::w(g, n, mod);
            if (taut_fourier(taut_fourier(x)) != sign * x) {
                w = "n = " + std::to_string(n);
                return false;
            }
        }
        return true;
    }));

    rep.add(timed_check("fourier-exchanges-products", [&](std::string& w) {
        Int sign = (g & 1) ? -1 : 1;
        for (int i = 0; i <= g; ++i)
            for (int j = 0; j <= g; ++j) {
                TautClass x = TautClass::w(g, i, mod), y = TautClass::w(g, j, mod);
                if (taut_fourier(taut_star(x, y)) != taut_cup(taut_fourier(x), taut_fourier(y))) {
                    w = "star->cup at i = " + std::to_string(i) + ", j = " + std::to_string(j);
                    return false;
                }
                if (taut_fourier(taut_cup(x, y)) !=
                    sign * taut_star(taut_fourier(x), taut_fourier(y))) {
                    w = "cup->star at i = " + std::to_string(i) + ", j = " + std::to_string(j);
                    return false;
                }
            }
        return true;
    }));

    rep.add(timed_check("divided-powers-of-curve-class", [&](std::string& w) {
        for (unsigned d = 0; d <= (unsigned)g; ++d) {
            if (taut_gamma(taut_minimal(g, mod), d) != TautClass::w(g, (int)d, mod)) {
                w = "d = " + std::to_string(d);
                return false;
            }
        }
        return true;
    }));

    rep.sort_checks();
    return rep;
}

// Randomized consistency of the exterior model: adjunction, functoriality,
// the projection formula, ring axioms, divided powers, and the embedding of
// the small ring.
inline SuiteReport run_cohomology(int g, const SuiteOptions& opt) {
    if (g < 1 || g > 5) throw std::domain_error("cohomology suite: genus out of range (1..5)");
    SuiteReport rep{"cohomology", g, {}};
    std::mt19937_64 rng(opt.seed);
    int samples = std::max(opt.samples, 1);
    int nmax = g <= 3 ? 3 : 2; // J^3 budget tops out at genus 3

    rep.add(timed_check("adjunction", [&](std::string& w) {
        for (int t = 0; t < samples; ++t) {
            int sn = 1 + (int)(rng() % (unsigned)nmax), tn = 1 + (int)(rng() % (unsigned)nmax);
            HomMatrix f = detail::random_hom(rng, tn, sn);
            ExtClass x = detail::random_ext(rng, g, sn, 3);
            ExtClass y = detail::random_ext(rng, g, tn, 3);
            if (integrate(cup(pushforward(f, x), y)) != integrate(cup(x, pullback(f, y)))) {
                w = "f = " + f.str() + ", x = " + x.canonical_json() +
                    ", y = " + y.canonical_json();
                return false;
            }
        }
        return true;
    }));

    rep.add(timed_check("functoriality", [&](std::string& w) {
        for (int t = 0; t < samples; ++t) {
            int an = 1 + (int)(rng() % (unsigned)nmax), bn = 1 + (int)(rng() % (unsigned)nmax),
                cn = 1 + (int)(rng() % (unsigned)nmax);
            HomMatrix f = detail::random_hom(rng, cn, bn);
            HomMatrix h = detail::random_hom(rng, bn, an);
            HomMatrix fh = compose(f, h);
            ExtClass up = detail::random_ext(rng, g, cn, 3);
            ExtClass dn = detail::random_ext(rng, g, an, 3);
            if (!(pullback(fh, up) == pullback(h, pullback(f, up)))) {
                w = "pullback: f = " + f.str() + ", h = " + h.str();
                return false;
            }
            if (!(pushforward(fh, dn) == pushforward(f, pushforward(h, dn)))) {
                w = "pushforward: f = " + f.str() + ", h = " + h.str();
                return false;
            }
        }
        return true;
    }));

    rep.add(timed_check("projection-formula", [&](std::string& w) {
        for (int t = 0; t < samples; ++t) {
            int sn = 1 + (int)(rng() % (unsigned)nmax), tn = 1 + (int)(rng() % (unsigned)nmax);
            HomMatrix f = detail::random_hom(rng, tn, sn);
            ExtClass a = detail::random_ext(rng, g, sn, 3);
            ExtClass b = detail::random_ext(rng, g, tn, 3);
            if (!(pullback(f, pontryagin(pushforward(f, a), b)) ==
                  pontryagin(a, pullback(f, b)))) {
                w = "f = " + f.str() + ", a = " + a.canonical_json() +
                    ", b = " + b.canonical_json();
                return false;
            }
        }
        return true;
    }));

    rep.add(timed_check("pontryagin-ring", [&](std::string& w) {
        ExtClass unit = point_class(g, 1);
        for (int t = 0; t < samples; ++t) {
            ExtClass a = detail::random_ext(rng, g, 1, 3, true);
            ExtClass b = detail::random_ext(rng, g, 1, 3, true);
            ExtClass c = detail::random_ext(rng, g, 1, 3, true);
            if (!(pontryagin(pontryagin(a, b), c) == pontryagin(a, pontryagin(b, c)))) {
                w = "associativity: a = " + a.canonical_json();
                return false;
            }
            if (!(pontryagin(a, b) == pontryagin(b, a))) {
                w = "commutativity: a = " + a.canonical_json() + ", b = " + b.canonical_json();
                return false;
            }
            if (!(pontryagin(unit, a) == a)) {
                w = "unit: a = " + a.canonical_json();
                return false;
            }
        }
        return true;
    }));

    rep.add(timed_check("divided-power-products", [&](std::string& w) {
        for (int t = 0; t < samples / 4 + 1; ++t) {
            // positive-dimension even class: strip top-degree terms
            ExtClass x = detail::random_ext(rng, g, 1, 2, true);
            x = x - graded_part(x, 2 * g);
            for (unsigned d = 1; d <= 2; ++d)
                for (unsigned e = d; d + e <= 4; ++e) {
                    ExtClass lhs =
                        pontryagin(star_divided_power(x, d), star_divided_power(x, e));
                    if (!(lhs == binom(d + e, d) * star_divided_power(x, d + e))) {
                        w = "product rule d = " + std::to_string(d) + ", e = " +
                            std::to_string(e) + ", x = " + x.canonical_json();
                        return false;
                    }
                }
        }
        return true;
    }));

    rep.add(timed_check("scaling-maps", [&](std::string& w) {
        ExtClass c = embed_taut(taut_minimal(g));
        ExtClass th = theta_class(g);
        for (long n = -3; n <= 3; ++n) {
            HomMatrix mn = HomMatrix::mult_by(n);
            if (!(pushforward(mn, c) == Int(n * n) * c)) {
                w = "pushforward at n = " + std::to_string(n);
                return false;
            }
            if (!(pullback(mn, th) == Int(n * n) * th)) {
                w = "pullback at n = " + std::to_string(n);
                return false;
            }
        }
        return true;
    }));

    rep.add(timed_check("embedding-is-two-product-map", [&](std::string& w) {
        for (int i = 0; i <= g; ++i)
            for (int j = 0; j <= g; ++j) {
                TautClass x = TautClass::w(g, i), y = TautClass::w(g, j);
                if (!(embed_taut(taut_cup(x, y)) == cup(embed_taut(x), embed_taut(y)))) {
                    w = "cup at i = " + std::to_string(i) + ", j = " + std::to_string(j);
                    return false;
                }
                if (!(embed_taut(taut_star(x, y)) ==
                      pontryagin(embed_taut(x), embed_taut(y)))) {
                    w = "star at i = " + std::to_string(i) + ", j = " + std::to_string(j);
                    return false;
                }
            }
        return true;
    }));

    if (g <= 4) {
        rep.add(timed_check("embedding-commutes-with-transform", [&](std::string& w) {
            KernelOperator F = kernel_fourier(g);
            for (int n = 0; n <= g; ++n) {
                TautClass x = TautClass::w(g, n);
                if (!(F.apply(embed_taut(x)) == embed_taut(taut_fourier(x)))) {
                    w = "n = " + std::to_string(n);
                    return false;
                }
            }
            return true;
        }));
    }

    rep.sort_checks();
    return rep;
}

// Modified diagonal layer on the curve model.
inline SuiteReport run_curve(int g) {
    if (g < 1 || g > 12) throw std::domain_error("curve suite: genus out of range (1..12)");
    SuiteReport rep{"curve", g, {}};

    rep.add(timed_check("modified-diagonal-vanishes", [&](std::string& w) {
        if (!check_delta_e_vanishes(g)) {
            w = "g = " + std::to_string(g);
            return false;
        }
        return true;
    }));

    rep.add(timed_check("small-diagonal-relation", [&](std::string& w) {
        // [Delta] + [Delta^-] = 2([pt] x C) + 2(C x [pt]) with the involution
        // acting as -1 on the odd part
        CurveClass lhs = curve_diagonal(g) + involution_on_slot(curve_diagonal(g), 1);
        CurveClass rhs = Int(2) * CurveClass::basis(g, 2, {2 * g + 1, 0}) +
                         Int(2) * CurveClass::basis(g, 2, {0, 2 * g + 1});
        if (!(lhs == rhs)) {
            w = "g = " + std::to_string(g);
            return false;
        }
        return true;
    }));

    if (g <= 2) {
        rep.add(timed_check("pushforward-of-modified-diagonal", [&](std::string& w) {
            ExtClass img = iota_push(curve_delta_e(g));
            ExtClass gam = gamma_class(g);
            HomMatrix j12 = HomMatrix::inclusion({0, 1}, 3);
            HomMatrix j23 = HomMatrix::inclusion({1, 2}, 3);
            HomMatrix dmap = HomMatrix::from({{1, 0}, {0, 1}, {1, 0}});
            ExtClass rel =
                pushforward(j12, gam) + pushforward(j23, gam) - pushforward(dmap, gam);
            return detail::agree(img, rel, w) && detail::agree(img, ExtClass::zero(g, 3), w);
        }));
    }

    rep.sort_checks();
    return rep;
}

// name -> reports over a genus range; fixed dispatch order for "all"
inline std::vector<SuiteReport> run_suites(const std::string& name, int genus_lo, int genus_hi,
                                           const SuiteOptions& opt) {
    if (genus_lo > genus_hi) throw std::domain_error("empty genus range");
    std::vector<SuiteReport> out;

    auto genus_capped = [&](int cap) { return std::min(genus_hi, cap); };

    if (name == "pd-axioms") {
        out.push_back(run_pd_axioms(opt));
    } else if (name == "torsion") {
        out.push_back(run_torsion(std::max(genus_hi, 2)));
    } else if (name == "sym-degrees") {
        out.push_back(run_sym_degrees());
    } else if (name == "taut-ring") {
        for (int g = genus_lo; g <= genus_hi; ++g) out.push_back(run_taut_ring(g, opt));
    } else if (name == "cohomology") {
        for (int g = genus_lo; g <= genus_hi; ++g) out.push_back(run_cohomology(g, opt));
    } else if (name == "curve") {
        for (int g = genus_lo; g <= genus_hi; ++g) out.push_back(run_curve(g));
    } else if (name == "cubical") {
        for (int g = genus_lo; g <= genus_hi; ++g) out.push_back(verify_cubical(g));
    } else if (name == "mot-fourier") {
        for (int g = genus_lo; g <= genus_hi; ++g) out.push_back(verify_mot_fourier(g));
    } else if (name == "elliptic") {
        if (genus_lo > 1 || genus_hi < 1)
            throw std::domain_error("elliptic suite runs at genus 1 only");
        out.push_back(verify_elliptic());
    } else if (name == "kernel-consistency") {
        for (int g = genus_lo; g <= genus_hi; ++g)
            out.push_back(verify_kernel_consistency(g, opt.seed, std::min(opt.samples, 20)));
    } else if (name == "all") {
        out.push_back(run_pd_axioms(opt));
        out.push_back(run_torsion(32));
        out.push_back(run_sym_degrees());
        for (int g = genus_lo; g <= genus_capped(8); ++g) out.push_back(run_taut_ring(g, opt));
        for (int g = genus_lo; g <= genus_capped(5); ++g) out.push_back(run_cohomology(g, opt));
        for (int g = genus_lo; g <= genus_capped(10); ++g) out.push_back(run_curve(g));
        for (int g = genus_lo; g <= genus_capped(3); ++g) {
            out.push_back(verify_cubical(g));
            out.push_back(verify_mot_fourier(g));
            out.push_back(verify_kernel_consistency(g, opt.seed, std::min(opt.samples, 20)));
        }
        if (genus_lo == 1) out.push_back(verify_elliptic());
    } else {
        throw std::domain_error("unknown suite '" + name + "'");
    }
    return out;
}

} // namespace pdcalc
