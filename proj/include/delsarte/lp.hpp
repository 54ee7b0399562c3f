#pragma once

#include <sstream>

#include "delsarte/functionals.hpp"

namespace delsarte {

/// One instance of the (generalized, possibly two-sided) extremal problem on
/// a finite group: minimize <f,rho> over even positive definite f with
/// f <= 0 off Omega+, f >= 0 off Omega-, <f,sigma> = 1.
template <class S>
struct DelsarteInstance {
    GroupSpec group;
    Region omega_plus;               // sign constraint f <= 0 off Omega+
    Region omega_minus = Region::full();  // f >= 0 off Omega-
    MeasureFunctional<S> rho;
    MeasureFunctional<S> sigma;
};

template <class S>
DelsarteInstance<S> delsarte_problem(const GroupSpec& g, const Region& omega) {
    DelsarteInstance<S> inst;
    inst.group = g;
    inst.omega_plus = omega;
    inst.rho = MeasureFunctional<S>(g, S(-1));  // -Haar
    inst.sigma = dirac<S>(g);
    return inst;
}

namespace detail {

template <class S>
MatrixX<S> cos_matrix(const GroupSpec& g) {
    if constexpr (std::is_same_v<S, Rational>) {
        if (!g.exact_available)
            throw std::domain_error("exact mode unavailable: exponent " +
                                    std::to_string(g.exponent));
        return exact_cos_matrix(g);
    } else {
        return float_cos_matrix(g);
    }
}

/// Orbit-summed character values w_r(x) = sum_{y in orbit r} cos(2 pi <x,y>).
template <class S>
MatrixX<S> orbit_character_matrix(const GroupSpec& g, const std::vector<long>& dual_reps) {
    MatrixX<S> C = cos_matrix<S>(g);
    long n = g.order();
    MatrixX<S> W(n, static_cast<long>(dual_reps.size()));
    for (std::size_t r = 0; r < dual_reps.size(); ++r) {
        std::vector<long> orb = orbit_of(g, dual_reps[r]);
        for (long x = 0; x < n; ++x) {
            S v(0);
            for (long y : orb) v += C(y, x);
            W(x, static_cast<long>(r)) = v;
        }
    }
    return W;
}

}  // namespace detail

/// The primal LP in the Fourier parametrization: one nonnegative variable
/// per dual-group inversion orbit (the spectrum of the even f), sign
/// constraints at group-orbit representatives, one normalization row.
template <class S>
struct PrimalBuild {
    LPProblem<S> lp;
    std::vector<long> dual_reps;
    std::vector<long> group_reps;
};

template <class S>
PrimalBuild<S> build_primal(const DelsarteInstance<S>& inst) {
    const GroupSpec& g = inst.group;
    if (g.kind != GroupKind::Finite)
        throw std::invalid_argument("build_primal: finite groups only");
    if (!is_strictly_pd(inst.sigma))
        throw std::invalid_argument("sigma fails the Wiener condition (not strictly positive definite)");
    PrimalBuild<S> pb;
    pb.dual_reps = inversion_orbit_reps(g);
    pb.group_reps = pb.dual_reps;
    long n = g.order();
    MatrixX<S> W = detail::orbit_character_matrix<S>(g, pb.dual_reps);

    auto [rho_e, rho_o] = even_odd_split(inst.rho.atoms);
    auto [sig_e, sig_o] = even_odd_split(inst.sigma.atoms);

    LPProblem<S>& lp = pb.lp;
    lp.maximize = false;
    for (std::size_t r = 0; r < pb.dual_reps.size(); ++r) {
        // objective <f,rho_e> = (1/|G|) sum_r h_r sum_x w_r(x) rho_e(x)
        S cost(0);
        for (long x = 0; x < n; ++x) cost += W(x, static_cast<long>(r)) * rho_e.values[x];
        lp.add_variable("h" + std::to_string(pb.dual_reps[r]), true, cost / S(n));
    }
    long nr = static_cast<long>(pb.dual_reps.size());
    for (long x : pb.group_reps) {
        std::vector<long> orb = orbit_of(g, x);
        bool le = false, ge = false;
        for (long xx : orb) {
            if (!inst.omega_plus.contains(g.element_at(xx))) le = true;
            if (!inst.omega_minus.contains(g.element_at(xx))) ge = true;
        }
        if (!le && !ge) continue;
        VectorX<S> row = W.row(x).transpose() / S(n);  // f(x)
        if (le) lp.add_constraint(row, Rel::LE, S(0));
        if (ge) lp.add_constraint(row, Rel::GE, S(0));
    }
    VectorX<S> norm_row(nr);
    for (long r = 0; r < nr; ++r) {
        S v(0);
        for (long x = 0; x < n; ++x) v += W(x, r) * sig_e.values[x];
        norm_row[r] = v / S(n);
    }
    lp.add_constraint(norm_row, Rel::EQ, S(1));
    return pb;
}

template <class S>
struct PrimalResult {
    LPStatus status = LPStatus::NumericFailure;
    S alpha = S(0);
    GroupFunction<S> f;
};

template <class S>
PrimalResult<S> solve_primal(const DelsarteInstance<S>& inst) {
    PrimalBuild<S> pb = build_primal(inst);
    LPSolution<S> sol = solve_lp(pb.lp);
    PrimalResult<S> res;
    res.status = sol.status;
    res.f = GroupFunction<S>(inst.group);
    if (sol.status != LPStatus::Optimal) return res;
    res.alpha = sol.value;
    MatrixX<S> W = detail::orbit_character_matrix<S>(inst.group, pb.dual_reps);
    res.f.values = W * sol.x / S(inst.group.order());
    return res;
}

/// Certificate of dual feasibility: rho - s sigma = nu - kappa+ + kappa- on
/// the even subspace, with kappa+ >= 0 on Omega+^c, kappa- >= 0 on
/// Omega-^c and nu of positive type.
template <class S>
struct DualCertificate {
    S s = S(0);
    GroupFunction<S> kappa_plus;
    GroupFunction<S> kappa_minus;
    GroupFunction<S> nu;
    S gap_to_primal = S(0);
};

template <class S>
struct DualResult {
    LPStatus status = LPStatus::NumericFailure;
    S omega = S(0);
    DualCertificate<S> cert;
};

template <class S>
struct DualBuild {
    LPProblem<S> lp;
    std::vector<long> dual_reps;
    std::vector<long> kplus_orbits, kminus_orbits;  // group orbit reps carrying kappa vars
};

template <class S>
DualBuild<S> build_dual(const DelsarteInstance<S>& inst) {
    const GroupSpec& g = inst.group;
    if (g.kind != GroupKind::Finite)
        throw std::invalid_argument("build_dual: finite groups only");
    if (!is_strictly_pd(inst.sigma))
        throw std::invalid_argument("sigma fails the Wiener condition (not strictly positive definite)");
    DualBuild<S> db;
    db.dual_reps = inversion_orbit_reps(g);
    long n = g.order();
    long nr = static_cast<long>(db.dual_reps.size());
    MatrixX<S> W = detail::orbit_character_matrix<S>(g, db.dual_reps);

    auto [rho_e, rho_o] = even_odd_split(inst.rho.atoms);
    auto [sig_e, sig_o] = even_odd_split(inst.sigma.atoms);

    LPProblem<S>& lp = db.lp;
    lp.maximize = true;
    int var_s = lp.add_variable("s", false, S(1));
    std::map<long, int> kp_var, km_var;
    for (long x : db.dual_reps) {
        std::vector<long> orb = orbit_of(g, x);
        bool le = false, ge = false;
        for (long xx : orb) {
            if (!inst.omega_plus.contains(g.element_at(xx))) le = true;
            if (!inst.omega_minus.contains(g.element_at(xx))) ge = true;
        }
        if (le) {
            kp_var[x] = lp.add_variable("kp" + std::to_string(x), true);
            db.kplus_orbits.push_back(x);
        }
        if (ge) {
            km_var[x] = lp.add_variable("km" + std::to_string(x), true);
            db.kminus_orbits.push_back(x);
        }
    }
    std::map<long, int> nu_var;
    for (long r = 0; r < nr; ++r)
        nu_var[db.dual_reps[r]] = lp.add_variable("nu" + std::to_string(db.dual_reps[r]), true);

    // pointwise on orbit reps: rho_e(x) - s sig_e(x) = nu(x) - kappa+(x) + kappa-(x)
    int nv = lp.num_vars();
    for (long x : db.dual_reps) {
        VectorX<S> row = VectorX<S>::Zero(nv);
        row[var_s] = sig_e.values[x];  // moved to the left
        for (long r = 0; r < nr; ++r) row[nu_var[db.dual_reps[r]]] += W(x, r) / S(n);
        auto itp = kp_var.find(x);
        if (itp != kp_var.end()) row[itp->second] = S(-1);
        auto itm = km_var.find(x);
        if (itm != km_var.end()) row[itm->second] = S(1);
        // nu(x) - kappa+(x) + kappa-(x) + s sig_e(x) = rho_e(x)
        lp.add_constraint(row, Rel::EQ, rho_e.values[x]);
    }
    return db;
}

template <class S>
DualResult<S> solve_dual(const DelsarteInstance<S>& inst) {
    DualBuild<S> db = build_dual(inst);
    LPSolution<S> sol = solve_lp(db.lp);
    DualResult<S> res;
    res.cert.kappa_plus = GroupFunction<S>(inst.group);
    res.cert.kappa_minus = GroupFunction<S>(inst.group);
    res.cert.nu = GroupFunction<S>(inst.group);
    res.status = sol.status;
    if (sol.status != LPStatus::Optimal) return res;
    res.omega = sol.value;
    res.cert.s = sol.x[0];
    const GroupSpec& g = inst.group;
    long n = g.order();
    long nr = static_cast<long>(db.dual_reps.size());
    // variable layout from build: s, then kp/km interleaved per orbit, then nus
    int idx = 1;
    {
        std::set<long> kp(db.kplus_orbits.begin(), db.kplus_orbits.end());
        std::set<long> km(db.kminus_orbits.begin(), db.kminus_orbits.end());
        for (long x : db.dual_reps) {
            if (kp.count(x)) {
                for (long xx : orbit_of(g, x)) res.cert.kappa_plus.values[xx] = sol.x[idx];
                ++idx;
            }
            if (km.count(x)) {
                for (long xx : orbit_of(g, x)) res.cert.kappa_minus.values[xx] = sol.x[idx];
                ++idx;
            }
        }
    }
    MatrixX<S> W = detail::orbit_character_matrix<S>(g, db.dual_reps);
    VectorX<S> nuhat(nr);
    for (long r = 0; r < nr; ++r) nuhat[r] = sol.x[idx + r];
    res.cert.nu.values = W * nuhat / S(n);
    return res;
}

/// Independent recheck of a dual certificate: never trusts the solver.
template <class S>
struct VerifyReport {
    bool valid = false;
    std::string failure;  // falsifying condition, empty when valid
};

template <class S>
VerifyReport<S> verify_dual_certificate(const DelsarteInstance<S>& inst,
                                        const DualCertificate<S>& cert) {
    const GroupSpec& g = inst.group;
    VerifyReport<S> rep;
    Region op = symmetrize_region(g, inst.omega_plus);
    Region om = symmetrize_region(g, inst.omega_minus);
    for (long i = 0; i < g.order(); ++i) {
        Element e = g.element_at(i);
        if (cert.kappa_plus.values[i] < S(0)) { rep.failure = "kappa >= 0 violated"; return rep; }
        if (cert.kappa_minus.values[i] < S(0)) { rep.failure = "kappa >= 0 violated"; return rep; }
        if (cert.kappa_plus.values[i] != S(0) && op.contains(e)) {
            rep.failure = "supp(kappa) escapes Omega^c";
            return rep;
        }
        if (cert.kappa_minus.values[i] != S(0) && om.contains(e)) {
            rep.failure = "supp(kappa) escapes Omega^c";
            return rep;
        }
    }
    if (!cert.nu.is_even()) { rep.failure = "nu not even"; return rep; }
    if (!is_positive_definite(cert.nu).pd) { rep.failure = "nu not of positive type"; return rep; }
    auto [rho_e, rho_o] = even_odd_split(inst.rho.atoms);
    auto [sig_e, sig_o] = even_odd_split(inst.sigma.atoms);
    GroupFunction<S> lhs(g), rhs(g);
    lhs.values = rho_e.values - cert.s * sig_e.values;
    auto [kpe, kpo] = even_odd_split(cert.kappa_plus);
    auto [kme, kmo] = even_odd_split(cert.kappa_minus);
    rhs.values = cert.nu.values - kpe.values + kme.values;
    S tol = scalar_traits<S>::exact ? S(0) : S(1e-7);
    for (long i = 0; i < g.order(); ++i) {
        if (abs_val(lhs.values[i] - rhs.values[i]) > tol) {
            rep.failure = "even-part identity rho - s sigma = nu - kappa fails";
            return rep;
        }
    }
    rep.valid = true;
    return rep;
}

/// Bundle of both optima with the certified gap.
template <class S>
struct GapCertificate {
    bool certified = false;
    S alpha = S(0), omega = S(0), gap = S(0);
    std::string failure;
};

template <class S>
GapCertificate<S> certify_no_gap(const PrimalResult<S>& p, const DualResult<S>& d) {
    GapCertificate<S> c;
    if (p.status != LPStatus::Optimal || d.status != LPStatus::Optimal) {
        c.failure = "both solutions must be optimal";
        return c;
    }
    c.alpha = p.alpha;
    c.omega = d.omega;
    c.gap = p.alpha - d.omega;
    S weak_tol = scalar_traits<S>::exact ? S(0) : S(1e-7);
    if (d.omega > p.alpha + weak_tol) {
        c.failure = "weak duality violated";
        return c;
    }
    c.certified = abs_val(c.gap) <= scalar_traits<S>::gap_eps();
    if (!c.certified) c.failure = "gap exceeds tolerance";
    return c;
}

template <class S>
struct DelsarteReport {
    LPStatus status = LPStatus::NumericFailure;
    S constant = S(0);  // D = -alpha
    PrimalResult<S> primal;
    DualResult<S> dual;
    GapCertificate<S> gap;
};

/// Delsarte constant D_G(Omega) with rho = -Haar, sigma = delta_0.
template <class S>
DelsarteReport<S> delsarte_constant(const GroupSpec& g, const Region& omega) {
    DelsarteInstance<S> inst = delsarte_problem<S>(g, omega);
    DelsarteReport<S> rep;
    rep.primal = solve_primal(inst);
    rep.dual = solve_dual(inst);
    rep.status = rep.primal.status;
    if (rep.primal.status != LPStatus::Optimal) return rep;
    rep.constant = -rep.primal.alpha;
    rep.gap = certify_no_gap(rep.primal, rep.dual);
    return rep;
}

}  // namespace delsarte
