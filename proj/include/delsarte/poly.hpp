#pragma once

#include <algorithm>
#include <vector>

#include "delsarte/scalar.hpp"

namespace delsarte {

/// Dense univariate polynomial over the rationals, ascending coefficients.
/// Small degrees only (Chebyshev images of windowed trig polynomials).
using Poly = std::vector<Rational>;

inline Poly trim(Poly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

inline int deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return trim(r);
}

inline Poly poly_scale(const Poly& a, const Rational& c) {
    Poly r = a;
    for (auto& x : r) x *= c;
    return trim(r);
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return trim(r);
}

inline Poly poly_deriv(const Poly& p) {
    Poly r;
    for (std::size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * Rational(static_cast<long>(i)));
    return trim(r);
}

inline Rational poly_eval(const Poly& p, const Rational& x) {
    Rational v(0);
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

/// Remainder of a by b (b nonzero).
inline Poly poly_rem(Poly a, const Poly& b0) {
    Poly b = trim(b0);
    a = trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rational q = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        a = trim(a);  // leading term cancels exactly
    }
    return a;
}

inline Poly poly_div_exact(Poly a, const Poly& b) {
    a = trim(a);
    Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rational c = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        a = trim(a);
    }
    return trim(q);
}

inline Poly poly_monic(Poly p) {
    p = trim(p);
    if (p.empty()) return p;
    Rational lc = p.back();
    for (auto& c : p) c /= lc;
    return p;
}

inline Poly poly_gcd(Poly a, Poly b) {
    a = trim(a);
    b = trim(b);
    while (!b.empty()) {
        Poly r = poly_rem(a, b);
        a = std::move(b);
        b = poly_monic(std::move(r));
    }
    return poly_monic(a);
}

/// Product of the squarefree factors carrying odd multiplicity in p. Its
/// real roots are exactly the sign-change points of p.
inline Poly odd_multiplicity_part(Poly p) {
    p = trim(p);
    if (p.size() <= 1) return {Rational(1)};
    // Yun's squarefree decomposition
    Poly d = poly_deriv(p);
    Poly a = poly_gcd(p, d);
    Poly b = poly_div_exact(p, a);
    Poly c = poly_div_exact(d, a);
    Poly result{Rational(1)};
    int i = 1;
    while (deg(b) > 0) {
        Poly diff = poly_add(c, poly_scale(poly_deriv(b), Rational(-1)));
        Poly ai = poly_gcd(b, diff);
        if (deg(ai) > 0 && (i % 2 == 1)) result = poly_mul(result, ai);
        b = poly_div_exact(b, ai);
        c = poly_div_exact(diff, ai);
        ++i;
    }
    return poly_monic(result);
}

inline int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

/// Number of distinct real roots of squarefree p in the half-open interval
/// (a, b], by Sturm's theorem.
inline int sturm_count(const Poly& p, const Rational& a, const Rational& b) {
    Poly p0 = trim(p);
    if (p0.size() <= 1) return 0;
    std::vector<Poly> chain{p0, poly_deriv(p0)};
    while (deg(chain.back()) > 0) {
        Poly r = poly_rem(chain[chain.size() - 2], chain.back());
        if (trim(r).empty()) break;
        chain.push_back(poly_scale(r, Rational(-1)));
    }
    auto variations = [&](const Rational& x) {
        int v = 0, prev = 0;
        for (const Poly& q : chain) {
            int s = sign_of(poly_eval(q, x));
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    };
    return variations(a) - variations(b);
}

/// Exact decision: p(x) >= 0 for all x in [a, b].
inline bool poly_nonneg_on(const Poly& p_in, const Rational& a, const Rational& b) {
    Poly p = trim(p_in);
    if (p.empty()) return true;
    if (poly_eval(p, a) < 0 || poly_eval(p, b) < 0) return false;
    Poly odd = odd_multiplicity_part(p);
    if (deg(odd) > 0) {
        int interior = sturm_count(odd, a, b);
        if (poly_eval(odd, b) == 0) --interior;
        if (interior > 0) return false;  // a sign change inside forces negativity
    }
    // constant sign on (a, b): sample points until one misses every root
    Rational lo = a, hi = b;
    for (int k = 0; k <= deg(p) + 1; ++k) {
        Rational t = lo + (hi - lo) * Rational(k + 1, deg(p) + 3);
        Rational v = poly_eval(p, t);
        if (v != 0) return v > 0;
    }
    return true;  // p vanishes at more than deg(p) points: identically zero
}

/// Exact decision: p(x) > 0 for all x in [a, b].
inline bool poly_positive_on(const Poly& p_in, const Rational& a, const Rational& b) {
    Poly p = trim(p_in);
    if (p.empty()) return false;
    if (poly_eval(p, a) <= 0 || poly_eval(p, b) <= 0) return false;
    Poly sf = poly_div_exact(p, poly_gcd(p, poly_deriv(p)));
    int interior = sturm_count(sf, a, b);
    if (poly_eval(sf, b) == 0) --interior;
    return interior == 0;
}

/// Chebyshev polynomial T_n as a rational polynomial in cos(theta).
inline Poly chebyshev_T(int n) {
    Poly t0{Rational(1)}, t1{Rational(0), Rational(1)};
    if (n == 0) return t0;
    if (n == 1) return t1;
    for (int k = 2; k <= n; ++k) {
        Poly t2 = poly_add(poly_scale(poly_mul(Poly{Rational(0), Rational(2)}, t1), Rational(1)),
                           poly_scale(t0, Rational(-1)));
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    return t1;
}

}  // namespace delsarte
