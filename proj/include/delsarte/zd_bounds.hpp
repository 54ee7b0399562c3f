#pragma once

#include "delsarte/constructions.hpp"
#include "delsarte/lp.hpp"

namespace delsarte {

/// Certified lower bound for the extremal constant on Z^d from a primal
/// search over functions supported in [-m,m]^d.
struct LowerBoundResult {
    bool feasible = false;
    Rational value = Rational(0);
    GroupFunction<Rational> witness;
    double certified_margin = 0;  // certified torus minimum of the witness spectrum
    bool exact_certified = false; // rank-1 only: spectrum nonnegativity proved exactly
    long rounds = 0;
};

namespace detail {

inline std::vector<Element> window_points(int d, long m) {
    std::vector<Element> pts;
    Element e(d, -m);
    while (true) {
        pts.push_back(e);
        int i = d - 1;
        while (i >= 0 && e[i] == m) e[i--] = -m;
        if (i < 0) break;
        ++e[i];
    }
    return pts;
}

inline bool is_zero_elem(const Element& e) {
    for (long c : e)
        if (c != 0) return false;
    return true;
}

}  // namespace detail

/// Maximizes sum f over even f supported in [-m,m]^d with f(0)=1, f <= 0 off
/// omega, and fhat >= 0 on the torus (enforced by cutting planes, then
/// certified; rank 1 gets an exact certificate). Any returned value is a
/// true lower bound.
inline LowerBoundResult primal_lower_bound(int d, const Region& omega, long m) {
    if (d < 1 || d > 2) throw std::invalid_argument("primal_lower_bound: d must be 1 or 2");
    if (omega.complement_flag) throw std::invalid_argument("omega must be a finite set");
    GroupSpec g = make_free_group(d, std::max<long>(m, 1));
    if (!region_symmetric(g, omega)) throw std::invalid_argument("omega must be symmetric");
    LowerBoundResult res;
    res.witness = GroupFunction<Rational>(g, m);
    if (!omega.contains(g.zero())) return res;  // f(0)=1 contradicts f(0) <= 0

    // representatives of the nonzero inversion orbits inside the window
    std::vector<Element> reps;
    for (const Element& e : detail::window_points(d, m)) {
        if (detail::is_zero_elem(e)) continue;
        if (e < GroupFunction<Rational>::negate(e)) continue;
        reps.push_back(e);
    }
    auto weight = [&](const Element& x, const std::vector<double>& th) {
        double phase = 0;
        for (int j = 0; j < d; ++j) phase += x[j] * th[j];
        return 2.0 * std::cos(phase);
    };

    LPProblem<double> lp;
    lp.maximize = true;
    for (std::size_t i = 0; i < reps.size(); ++i) lp.add_variable("f" + std::to_string(i), false, 2.0);
    long nv = static_cast<long>(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (omega.contains(reps[i])) continue;
        VectorX<double> row = VectorX<double>::Zero(nv);
        row[static_cast<long>(i)] = 1.0;
        lp.add_constraint(row, Rel::LE, 0.0);
    }
    auto add_torus_cut = [&](const std::vector<double>& th) {
        VectorX<double> row(nv);
        for (long i = 0; i < nv; ++i) row[i] = weight(reps[i], th);
        lp.add_constraint(row, Rel::GE, -1.0);  // 1 + sum >= 0
    };
    long coarse = d == 1 ? 64 : 24;
    if (d == 1) {
        for (long j = 0; j <= coarse; ++j)
            add_torus_cut({std::numbers::pi * static_cast<double>(j) / coarse});
    } else {
        for (long j = 0; j < coarse; ++j)
            for (long k = 0; k < coarse; ++k)
                add_torus_cut({2 * std::numbers::pi * j / coarse, 2 * std::numbers::pi * k / coarse});
    }

    GroupFunction<double> fd(g, m);
    VectorX<double> x;
    long res_limit = d == 1 ? (1L << 16) : (1L << 11);
    long cert_res = 1L << 10;
    for (long round = 0;; ++round) {
        res.rounds = round + 1;
        LPSolution<double> sol = solve_lp(lp);
        if (sol.status != LPStatus::Optimal) return res;
        x = sol.x;
        fd = GroupFunction<double>(g, m);
        fd.set(g.zero(), 1.0);
        for (long i = 0; i < nv; ++i) {
            fd.set(reps[i], x[i]);
            fd.set(GroupFunction<double>::negate(reps[i]), x[i]);
        }
        CertifiedBound cb = trig_poly_min_certified(fd, cert_res);
        if (cb.bound >= -1e-12) break;                 // certified clean
        if (cb.grid_min < -1e-12 && round < 40) {      // genuine violation: cut it off
            add_torus_cut(cb.grid_argmin);
            continue;
        }
        if (cert_res < res_limit) { cert_res *= 2; continue; }
        break;  // grid-clean at max resolution; the exact lift below decides
    }

    // exact (or certified) lift of the float solution
    GroupFunction<Rational> fr(g, m);
    fr.set(g.zero(), Rational(1));
    for (long i = 0; i < nv; ++i) {
        Rational v = rationalize(x[i], 1e-9);
        if (!omega.contains(reps[i]) && v > 0) v = 0;
        fr.set(reps[i], v);
        fr.set(GroupFunction<Rational>::negate(reps[i]), v);
    }
    auto certify = [&](const GroupFunction<Rational>& f) {
        if (d == 1) return trig_nonneg_exact(f);
        return trig_poly_min_certified(f, res_limit).bound >= 0;
    };
    Rational eps(0);
    GroupFunction<Rational> lifted = fr;
    if (!certify(lifted)) {
        eps = Rational(1, 1000000000);
        for (int t = 0; t < 14; ++t, eps *= 10) {
            lifted = fr;
            lifted.values /= Rational(1) + eps;
            lifted.set(g.zero(), Rational(1));  // (f + eps delta_0)/(1 + eps)
            if (certify(lifted)) break;
        }
        if (!certify(lifted)) return res;
    }
    res.feasible = true;
    res.witness = lifted;
    res.value = lifted.sum();
    res.exact_certified = (d == 1);
    res.certified_margin = trig_poly_min_certified(lifted, 1 << 12).bound;
    return res;
}

/// Dual certificate from a periodic measure: nu is the pullback of a
/// positive definite function on (Z_M)^d, so its spectrum is the listed
/// point-mass vector and nu is of positive type whenever spectrum >= 0.
struct PeriodicDualCertificate {
    int d = 1;
    long period = 1;             // M
    VectorX<Rational> spectrum;  // a_k, k in (Z_M)^d, mixed-radix order
    Rational s = Rational(0);
    bool exact = false;          // M in {1,2,3,4,6}: all data exactly rational
};

struct UpperBoundResult {
    bool found = false;
    Rational value = Rational(0);  // -s, an upper bound by weak duality
    PeriodicDualCertificate cert;
    bool verified = false;
    std::string failure;
};

/// nu(x) = (1/M^d) sum_k a_k cos(2 pi <k,x>/M), evaluated exactly when M
/// allows, else in floating point.
inline Rational periodic_nu_exact(const PeriodicDualCertificate& c, const Element& x) {
    GroupSpec gm = make_finite_group(std::vector<long>(c.d, c.period));
    Rational v(0);
    for (long k = 0; k < c.spectrum.size(); ++k) {
        if (c.spectrum[k] == 0) continue;
        Element ek = gm.element_at(k);
        long phase = 0;
        for (int j = 0; j < c.d; ++j) phase += ek[j] * x[j];
        v += c.spectrum[k] * exact_cos(phase, c.period);
    }
    return v / Rational(gm.order());
}

inline double periodic_nu_float(const PeriodicDualCertificate& c, const Element& x) {
    GroupSpec gm = make_finite_group(std::vector<long>(c.d, c.period));
    double v = 0;
    for (long k = 0; k < c.spectrum.size(); ++k) {
        Element ek = gm.element_at(k);
        double phase = 0;
        for (int j = 0; j < c.d; ++j) phase += static_cast<double>(ek[j]) * x[j];
        v += to_double(c.spectrum[k]) * std::cos(2 * std::numbers::pi * phase / c.period);
    }
    return v / static_cast<double>(gm.order());
}

/// Independent recheck: spectrum >= 0 (so nu is of positive type), nu = -1
/// on omega away from 0, nu(0) = -1 - s, and nu >= -1 on every residue
/// class (which makes kappa = nu + 1 >= 0 off omega, closing the identity
/// -1 - s delta_0 = nu - kappa on all of Z^d).
inline bool verify_periodic_certificate(const Region& omega, const PeriodicDualCertificate& c,
                                        std::string* failure = nullptr) {
    auto fail = [&](const char* msg) {
        if (failure) *failure = msg;
        return false;
    };
    for (long k = 0; k < c.spectrum.size(); ++k)
        if (c.spectrum[k] < 0) return fail("spectrum has a negative atom");
    double tol = c.exact ? 0.0 : 1e-7;
    auto nu = [&](const Element& x) {
        return c.exact ? to_double(periodic_nu_exact(c, x)) : periodic_nu_float(c, x);
    };
    for (const Element& x : omega.members) {
        if (detail::is_zero_elem(x)) continue;
        if (std::fabs(nu(x) + 1.0) > tol) return fail("nu != -1 on omega");
    }
    if (std::fabs(nu(Element(c.d, 0)) + 1.0 + to_double(c.s)) > tol)
        return fail("nu(0) != -1 - s");
    GroupSpec gm = make_finite_group(std::vector<long>(c.d, c.period));
    for (long r = 0; r < gm.order(); ++r) {
        Element er = gm.element_at(r);
        if (nu(er) < -1.0 - tol) return fail("nu < -1 somewhere off omega");
    }
    if (failure) failure->clear();
    return true;
}

/// Best upper bound over periodic dual certificates with period M <= max(2n, 1).
inline UpperBoundResult dual_upper_bound(int d, const Region& omega, long n) {
    if (d < 1 || d > 2) throw std::invalid_argument("dual_upper_bound: d must be 1 or 2");
    if (omega.complement_flag) throw std::invalid_argument("omega must be a finite set");
    UpperBoundResult best;
    for (long M = 1; M <= std::max<long>(2 * n, 1); ++M) {
        GroupSpec gm = make_finite_group(std::vector<long>(d, M));
        long nm = gm.order();
        std::vector<long> dreps = inversion_orbit_reps(gm);
        long nr = static_cast<long>(dreps.size());

        // residue classes that must carry nu = -1 (omega minus the origin)
        std::set<long> eq_res;
        bool origin_clash = false;
        for (const Element& x : omega.members) {
            if (detail::is_zero_elem(x)) continue;
            long idx = gm.index_of(gm.reduce(x));
            if (idx == 0) origin_clash = true;
            eq_res.insert(idx);
        }
        if (origin_clash) continue;  // nu(0) = -1 is impossible for nu of positive type

        auto run = [&](auto scalar_tag) -> std::optional<std::pair<Rational, VectorX<Rational>>> {
            using SC = decltype(scalar_tag);
            MatrixX<SC> W = detail::orbit_character_matrix<SC>(gm, dreps);
            LPProblem<SC> lp;
            lp.maximize = false;
            for (long r = 0; r < nr; ++r) {
                // objective nu(0) = (1/M^d) sum_r |orbit_r| a_r
                SC w0 = W(0, r) / SC(nm);
                lp.add_variable("a" + std::to_string(dreps[r]), true, w0);
            }
            for (long ridx = 0; ridx < nm; ++ridx) {
                VectorX<SC> row = W.row(ridx).transpose() / SC(nm);
                if (eq_res.count(ridx))
                    lp.add_constraint(row, Rel::EQ, SC(-1));
                else
                    lp.add_constraint(row, Rel::GE, SC(-1));
            }
            LPSolution<SC> sol = solve_lp(lp);
            if (sol.status != LPStatus::Optimal) return std::nullopt;
            VectorX<Rational> a = VectorX<Rational>::Zero(nm);
            for (long r = 0; r < nr; ++r) {
                Rational ar;
                if constexpr (std::is_same_v<SC, Rational>)
                    ar = sol.x[r];
                else
                    ar = rationalize(std::max(sol.x[r], 0.0), 1e-9);
                for (long k : orbit_of(gm, dreps[r])) a[k] = ar;
            }
            Rational nu0(0);
            for (long k = 0; k < nm; ++k) nu0 += a[k];
            nu0 /= Rational(nm);
            return std::make_pair(Rational(-1) - nu0, a);  // s = -1 - nu(0)
        };

        bool exact = gm.exact_available;
        std::optional<std::pair<Rational, VectorX<Rational>>> out =
            exact ? run(Rational()) : run(double());
        if (!out) continue;
        PeriodicDualCertificate cert;
        cert.d = d;
        cert.period = M;
        cert.spectrum = out->second;
        cert.s = out->first;
        cert.exact = exact;
        std::string why;
        if (!verify_periodic_certificate(omega, cert, &why)) continue;
        Rational upper = -cert.s;
        if (!best.found || upper < best.value) {
            best.found = true;
            best.verified = true;
            best.value = upper;
            best.cert = cert;
        }
    }
    if (!best.found) best.failure = "no certificate at this degree";
    return best;
}

struct SandwichRow {
    long m = 0, n = 0;
    Rational lower = Rational(0);
    bool has_upper = false;
    Rational upper = Rational(0);
    LowerBoundResult lower_result;
    UpperBoundResult upper_result;
    bool closed = false;
};

/// Runs the (m, n) schedule, keeping running best bounds so both columns
/// are monotone; stops early once the gap reaches tol (0 = exact closure).
inline std::vector<SandwichRow> sandwich(int d, const Region& omega,
                                         const std::vector<std::pair<long, long>>& schedule,
                                         double tol = 0.0) {
    std::vector<SandwichRow> rows;
    Rational best_lower(0);
    bool have_lower = false, have_upper = false;
    Rational best_upper(0);
    for (auto [m, n] : schedule) {
        SandwichRow row;
        row.m = m;
        row.n = n;
        row.lower_result = primal_lower_bound(d, omega, m);
        if (row.lower_result.feasible && (!have_lower || row.lower_result.value > best_lower)) {
            best_lower = row.lower_result.value;
            have_lower = true;
        }
        row.lower = best_lower;
        row.upper_result = dual_upper_bound(d, omega, n);
        if (row.upper_result.found && (!have_upper || row.upper_result.value < best_upper)) {
            best_upper = row.upper_result.value;
            have_upper = true;
        }
        row.has_upper = have_upper;
        row.upper = best_upper;
        row.closed = have_lower && have_upper && to_double(best_upper - best_lower) <= tol;
        rows.push_back(row);
        if (row.closed) break;
    }
    return rows;
}

}  // namespace delsarte
