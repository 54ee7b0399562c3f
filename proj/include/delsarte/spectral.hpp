#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <type_traits>

#include "delsarte/function.hpp"
#include "delsarte/poly.hpp"

namespace delsarte {

/// cos(2*pi*k/e) as an exact rational; defined only for e in {1,2,3,4,6}.
inline Rational exact_cos(long k, long e) {
    k %= e;
    if (k < 0) k += e;
    switch (e) {
        case 1: return Rational(1);
        case 2: return k == 0 ? Rational(1) : Rational(-1);
        case 3: return k == 0 ? Rational(1) : Rational(-1, 2);
        case 4: return k == 0 ? Rational(1) : (k == 2 ? Rational(-1) : Rational(0));
        case 6:
            switch (k) {
                case 0: return Rational(1);
                case 1: case 5: return Rational(1, 2);
                case 2: case 4: return Rational(-1, 2);
                default: return Rational(-1);
            }
        default:
            throw std::domain_error("exact mode unavailable: exponent " + std::to_string(e));
    }
}

/// Phase k with <x,y> = k/e on the exponent-e circle.
inline long pairing_phase(const GroupSpec& g, const Element& x, const Element& y) {
    long k = 0;
    for (std::size_t j = 0; j < g.orders.size(); ++j)
        k = (k + x[j] * y[j] % g.exponent * (g.exponent / g.orders[j])) % g.exponent;
    return k;
}

/// Real part of the character table, Re chi_y(x) = cos(2 pi <x,y>).
/// Exact when the exponent allows; cached per group.
inline const MatrixX<Rational>& exact_cos_matrix(const GroupSpec& g) {
    static std::mutex mu;
    static std::map<std::vector<long>, MatrixX<Rational>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(g.orders);
    if (it != cache.end()) return it->second;
    long n = g.order();
    MatrixX<Rational> C(n, n);
    for (long y = 0; y < n; ++y)
        for (long x = 0; x < n; ++x)
            C(y, x) = exact_cos(pairing_phase(g, g.element_at(x), g.element_at(y)), g.exponent);
    return cache.emplace(g.orders, std::move(C)).first->second;
}

inline MatrixX<double> float_cos_matrix(const GroupSpec& g) {
    long n = g.order();
    long e = g.exponent;
    MatrixX<double> C(n, n);
    for (long y = 0; y < n; ++y)
        for (long x = 0; x < n; ++x) {
            long k = pairing_phase(g, g.element_at(x), g.element_at(y));
            long m = std::min(k, e - k);  // cos(2 pi k/e) = cos(2 pi (e-k)/e), bit-exact
            C(y, x) = std::cos(2.0 * std::numbers::pi * static_cast<double>(m) /
                               static_cast<double>(e));
        }
    return C;
}

/// Fourier transform on a finite group, fhat(y) = sum_x f(x) conj(chi_y(x)).
/// Exact (rational) only for even f on exact-mode groups.
template <class S>
VectorX<S> transform(const GroupFunction<S>& f) {
    if (f.group.kind != GroupKind::Finite)
        throw std::invalid_argument("transform: finite groups only; use chebyshev_spectrum on Z");
    if constexpr (std::is_same_v<S, Rational>) {
        if (!f.group.exact_available)
            throw std::domain_error("exact mode unavailable: exponent " +
                                    std::to_string(f.group.exponent));
        if (!f.is_even())
            throw std::invalid_argument("exact transform requires an even function");
        return exact_cos_matrix(f.group) * f.values;
    } else {
        return float_cos_matrix(f.group) * f.values;  // valid as stated for even f
    }
}

/// Full complex transform (float), for functions that need not be even.
inline VectorX<std::complex<double>> transform_complex(const GroupFunction<double>& f) {
    long n = f.group.order();
    VectorX<std::complex<double>> out(n);
    for (long y = 0; y < n; ++y) {
        std::complex<double> acc = 0;
        Element ey = f.group.element_at(y);
        for (long x = 0; x < n; ++x) {
            double phase = 0;
            Element ex = f.group.element_at(x);
            for (std::size_t j = 0; j < f.group.orders.size(); ++j)
                phase += static_cast<double>(ex[j]) * static_cast<double>(ey[j]) /
                         static_cast<double>(f.group.orders[j]);
            acc += f.values[x] * std::exp(std::complex<double>(0, -2.0 * std::numbers::pi * phase));
        }
        out[y] = acc;
    }
    return out;
}

/// Inverse transform of an even (real) spectrum: f(x) = (1/|G|) sum_y s(y) cos.
template <class S>
GroupFunction<S> inverse_transform(const GroupSpec& g, const VectorX<S>& spectrum) {
    GroupFunction<S> f(g);
    if constexpr (std::is_same_v<S, Rational>) {
        f.values = exact_cos_matrix(g).transpose() * spectrum / S(g.order());
    } else {
        f.values = float_cos_matrix(g).transpose() * spectrum / static_cast<double>(g.order());
    }
    return f;
}

/// Chebyshev image of the spectrum of an even function on Z:
/// fhat(theta) = P(cos theta) with rational P.
inline Poly chebyshev_spectrum(const GroupFunction<Rational>& f) {
    if (f.group.kind != GroupKind::FreeDiscrete || f.group.rank != 1)
        throw std::invalid_argument("chebyshev_spectrum: rank-1 Z only");
    Poly p;
    for (long i = 0; i < f.size(); ++i) {
        long x = f.element_at(i)[0];
        if (x < 0 || f.values[i] == 0) continue;
        Rational c = x == 0 ? f.values[i] : Rational(2) * f.values[i];
        p = poly_add(p, poly_scale(chebyshev_T(static_cast<int>(x)), c));
    }
    return p;
}

/// Exact verdict: the trig polynomial fhat of an even f on Z is >= 0 (resp.
/// > 0) on the whole torus.
inline bool trig_nonneg_exact(const GroupFunction<Rational>& f) {
    return poly_nonneg_on(chebyshev_spectrum(f), Rational(-1), Rational(1));
}
inline bool trig_positive_exact(const GroupFunction<Rational>& f) {
    return poly_positive_on(chebyshev_spectrum(f), Rational(-1), Rational(1));
}

/// Evaluate fhat(theta) for even f on Z^d (d <= 2), real by evenness.
template <class S>
double trig_eval(const GroupFunction<S>& f, const std::vector<double>& theta) {
    double v = 0;
    for (long i = 0; i < f.size(); ++i) {
        if (f.values[i] == S(0)) continue;
        Element x = f.element_at(i);
        double phase = 0;
        for (std::size_t j = 0; j < x.size(); ++j) phase += x[j] * theta[j];
        v += to_double(f.values[i]) * std::cos(phase);
    }
    return v;
}

struct CertifiedBound {
    double bound = 0;          // min fhat >= bound over the torus
    long resolution = 0;       // grid points per dimension
    double gradient_bound = 0; // sum_x |x|_1 |f(x)|
    double grid_min = 0;
    std::vector<double> grid_argmin;
};

/// Certified lower bound for fhat over the torus (even f on Z^d, d <= 2).
/// Grid minimum minus a slack; in one dimension a curvature form of the
/// slack is used as well and the better of the two bounds is kept. The
/// returned bound is a running maximum over nested resolutions, hence
/// monotone nondecreasing in the requested resolution.
template <class S>
CertifiedBound trig_poly_min_certified(const GroupFunction<S>& f, long resolution) {
    int d = f.group.rank;
    if (f.group.kind != GroupKind::FreeDiscrete || d > 2)
        throw std::invalid_argument("certified torus bounds support d <= 2 only");
    double g1 = 0, g2 = 0;
    for (long i = 0; i < f.size(); ++i) {
        Element x = f.element_at(i);
        double l1 = 0;
        for (long c : x) l1 += std::labs(c);
        g1 += l1 * std::fabs(to_double(f.values[i]));
        g2 += l1 * l1 * std::fabs(to_double(f.values[i]));
    }
    CertifiedBound best;
    best.bound = -std::numeric_limits<double>::infinity();
    best.gradient_bound = g1;
    long base = std::min<long>(resolution, 64);
    for (long res = base;; res *= 2) {
        if (res > resolution) res = resolution;
        double h = 2.0 * std::numbers::pi / static_cast<double>(res);
        double gmin = std::numeric_limits<double>::infinity();
        std::vector<double> argmin(d, 0.0);
        if (d == 1) {
            double prev = trig_eval(f, {0.0});
            for (long j = 0; j < res; ++j) {
                double th = h * static_cast<double>(j);
                double v = (j == 0) ? prev : trig_eval(f, {th});
                if (v < gmin) { gmin = v; argmin = {th}; }
                prev = v;
            }
        } else {
            for (long j = 0; j < res; ++j)
                for (long k = 0; k < res; ++k) {
                    double v = trig_eval(f, {h * j, h * k});
                    if (v < gmin) { gmin = v; argmin = {h * j, h * k}; }
                }
        }
        // curvature slack: within a grid cell, min f >= corner min minus
        // h^2/8 sum |x|_1^2 |f(x)|, by the 1D second-derivative bound applied
        // one axis at a time
        double slack_grad = h * g1;
        double slack_curv = h * h / 8.0 * g2;
        double b = gmin - std::min(slack_grad, slack_curv);
        if (b > best.bound) {
            best.bound = b;
            best.resolution = res;
            best.grid_min = gmin;
            best.grid_argmin = argmin;
        }
        if (res >= resolution) break;
    }
    if (best.resolution == 0) best.resolution = resolution;
    return best;
}

template <class S>
struct PDVerdict {
    bool pd = false;
    S margin = S(0);                      // min spectrum value (finite groups)
    std::optional<long> witness = {};     // minimizing dual index on failure
    std::optional<std::vector<double>> torus_witness = {};
};

/// Positive definiteness of a real-valued function: on finite groups, true
/// iff f is even with entrywise nonnegative spectrum (real PD functions are
/// even); on Z (rank 1, exact scalars) decided exactly on the torus.
template <class S>
PDVerdict<S> is_positive_definite(const GroupFunction<S>& f) {
    PDVerdict<S> v;
    if (f.group.kind == GroupKind::Finite) {
        if (!f.is_even()) { v.pd = false; return v; }
        if constexpr (std::is_same_v<S, Rational>) {
            if (f.group.exact_available) {
                VectorX<Rational> sp = transform(f);
                long arg = 0;
                for (long i = 1; i < sp.size(); ++i)
                    if (sp[i] < sp[arg]) arg = i;
                v.margin = sp[arg];
                v.pd = sp[arg] >= 0;
                if (!v.pd) v.witness = arg;
                return v;
            }
            auto fv = to_float(f);
            auto fvv = is_positive_definite(fv);
            v.pd = fvv.pd;
            v.margin = rationalize(fvv.margin, 1e-15);
            v.witness = fvv.witness;
            return v;
        } else {
            VectorX<double> sp = transform(f);
            long arg = 0;
            for (long i = 1; i < sp.size(); ++i)
                if (sp[i] < sp[arg]) arg = i;
            v.margin = sp[arg];
            v.pd = sp[arg] >= -scalar_traits<double>::feas_eps();
            if (!v.pd) v.witness = arg;
            return v;
        }
    }
    // Z^d
    if (!f.is_even()) { v.pd = false; return v; }
    if constexpr (std::is_same_v<S, Rational>) {
        if (f.group.rank == 1) {
            v.pd = trig_nonneg_exact(f);
            if (!v.pd) {
                CertifiedBound cb = trig_poly_min_certified(f, 1 << 14);
                v.margin = rationalize(cb.grid_min, 1e-15);
                v.torus_witness = cb.grid_argmin;
            }
            return v;
        }
    }
    CertifiedBound cb = trig_poly_min_certified(f, f.group.rank == 1 ? (1 << 16) : (1 << 10));
    v.pd = cb.bound >= 0 ||
           (cb.grid_min >= 0 && cb.bound >= -scalar_traits<double>::feas_eps());
    if constexpr (std::is_same_v<S, Rational>)
        v.margin = rationalize(cb.bound, 1e-15);
    else
        v.margin = cb.bound;
    if (!v.pd) v.torus_witness = cb.grid_argmin;
    return v;
}

/// Positive definiteness in the real sense: quadratic forms with real
/// coefficients only, equivalent to the even part having nonnegative
/// spectrum.
template <class S>
bool is_real_sense_pd(const GroupFunction<S>& f) {
    return is_positive_definite(even_odd_split(f).first).pd;
}

}  // namespace delsarte
