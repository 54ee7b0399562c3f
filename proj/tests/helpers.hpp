#pragma once

#include <random>

#include "delsarte/io.hpp"

namespace testutil {

using namespace delsarte;

inline std::mt19937& rng() {
    static std::mt19937 r(20240817u);
    return r;
}

inline long randint(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng());
}

/// Random finite group whose exponent lies in {2,3,4,6}, order <= max_order.
inline GroupSpec random_exact_group(long max_order = 64) {
    static const std::vector<std::vector<long>> families{{2, 4}, {2, 3, 6}};
    while (true) {
        const std::vector<long>& fam = families[randint(0, 1)];
        int k = static_cast<int>(randint(1, 3));
        std::vector<long> orders;
        long total = 1;
        for (int i = 0; i < k; ++i) {
            long o = fam[randint(0, static_cast<long>(fam.size()) - 1)];
            orders.push_back(o);
            total *= o;
        }
        if (total > max_order) continue;
        GroupSpec g = make_finite_group(orders);
        if (g.exponent >= 2) return g;
    }
}

/// Random symmetric region; always contains 0 unless told otherwise.
inline Region random_symmetric_omega(const GroupSpec& g, bool include_zero = true) {
    Region r;
    if (include_zero) r.members.insert(g.zero());
    for (long idx : inversion_orbit_reps(g)) {
        if (idx == 0) continue;
        if (randint(0, 1)) {
            Element e = g.element_at(idx);
            r.members.insert(e);
            r.members.insert(g.neg(e));
        }
    }
    return r;
}

/// Even functional with strictly positive spectrum, built from a random
/// positive spectrum on the inversion orbits of the dual group.
inline MeasureFunctional<Rational> random_strictly_pd_sigma(const GroupSpec& g) {
    long n = g.order();
    VectorX<Rational> spec = VectorX<Rational>::Zero(n);
    for (long idx : inversion_orbit_reps(g)) {
        Rational v(randint(1, 8));
        for (long y : orbit_of(g, idx)) spec[y] = v;
    }
    return MeasureFunctional<Rational>(inverse_transform(g, spec));
}

/// Random even functional with small rational atoms.
inline MeasureFunctional<Rational> random_even_rho(const GroupSpec& g) {
    GroupFunction<Rational> f(g);
    for (long idx : inversion_orbit_reps(g)) {
        Rational v(randint(-5, 5), randint(1, 3));
        for (long y : orbit_of(g, idx)) f.values[y] = v;
    }
    return MeasureFunctional<Rational>(std::move(f));
}

/// Random finitely supported rational function on a finite group.
inline GroupFunction<Rational> random_function(const GroupSpec& g) {
    GroupFunction<Rational> f(g);
    for (long i = 0; i < f.size(); ++i) f.values[i] = Rational(randint(-6, 6), randint(1, 4));
    return f;
}

inline MeasureFunctional<double> to_float(const MeasureFunctional<Rational>& psi) {
    return MeasureFunctional<double>(delsarte::to_float(psi.atoms), to_double(psi.constant));
}

}  // namespace testutil
