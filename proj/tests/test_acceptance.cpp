// Acceptance battery: one pass/fail line per criterion, nonzero exit on any
// failure. Randomness is seeded, so every run checks the same instances.
#include <chrono>
#include <iostream>

#include "helpers.hpp"

using namespace delsarte;
using testutil::randint;

namespace {

int g_failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int idx, const std::string& name, bool ok, double secs) {
    std::cout << (ok ? "pass" : "FAIL") << "  criterion " << idx << ": " << name << "  ("
              << secs << "s)\n";
    if (!ok) ++g_failures;
}

// --- 1: golden instance, exact, under a second ------------------------------

void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    GroupSpec g = make_finite_group({4});
    Region omega = Region::of({{0}, {1}, {3}});
    auto rep = delsarte_constant<Rational>(g, omega);
    bool ok = rep.status == LPStatus::Optimal && rep.constant == 2 && rep.gap.certified &&
              rep.gap.gap == 0;
    ok = ok && rep.primal.f.values[0] == 1 && rep.primal.f.values[1] == Rational(1, 2) &&
         rep.primal.f.values[2] == 0;
    ok = ok && rep.dual.cert.s == -2 && rep.dual.cert.kappa_plus.at({2}) == 2;
    ok = ok && verify_dual_certificate(delsarte_problem<Rational>(g, omega), rep.dual.cert).valid;
    double secs = seconds_since(t0);
    report(1, "golden Z_4 instance solved and certified exactly in under 1s", ok && secs < 1.0,
           secs);
}

// --- 2: boundary regions across cyclic groups -------------------------------

void criterion_2() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (long n = 2; n <= 12; ++n) {
        GroupSpec g = make_finite_group({n});
        if (g.exact_available) {
            ok = ok && delsarte_constant<Rational>(g, Region::of({{0}})).constant == 1;
            ok = ok && delsarte_constant<Rational>(g, Region::full()).constant == n;
        } else {
            double d0 = to_double(delsarte_constant<double>(g, Region::of({{0}})).constant);
            double dg = to_double(delsarte_constant<double>(g, Region::full()).constant);
            ok = ok && std::fabs(d0 - 1.0) <= 1e-8 && std::fabs(dg - static_cast<double>(n)) <= 1e-8;
        }
    }
    report(2, "cyclic groups n=2..12: omega={0} gives 1, omega=G gives n", ok, seconds_since(t0));
}

// --- 3: strong duality at scale ---------------------------------------------

void criterion_3() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (int t = 0; t < 200 && ok; ++t) {
        GroupSpec g = testutil::random_exact_group(36);
        DelsarteInstance<Rational> inst;
        inst.group = g;
        inst.omega_plus = testutil::random_symmetric_omega(g);
        inst.rho = testutil::random_even_rho(g);
        inst.sigma = testutil::random_strictly_pd_sigma(g);
        PrimalResult<Rational> p = solve_primal(inst);
        DualResult<Rational> d = solve_dual(inst);
        ok = ok && p.status == LPStatus::Optimal && d.status == LPStatus::Optimal &&
             p.alpha == d.omega && verify_dual_certificate(inst, d.cert).valid;
    }
    for (int t = 0; t < 200 && ok; ++t) {
        GroupSpec g = make_finite_group({randint(2, 12)});
        Region omega;
        omega.members.insert({0});
        for (long x = 1; x <= g.order() / 2; ++x)
            if (randint(0, 1)) {
                omega.members.insert({x});
                omega.members.insert(g.neg({x}));
            }
        DelsarteInstance<double> inst = delsarte_problem<double>(g, omega);
        PrimalResult<double> p = solve_primal(inst);
        DualResult<double> d = solve_dual(inst);
        GapCertificate<double> c = certify_no_gap(p, d);
        ok = ok && c.certified && std::fabs(c.gap) <= 1e-6 &&
             verify_dual_certificate(inst, d.cert).valid;
    }
    double secs = seconds_since(t0);
    report(3, "200 exact strong-duality instances (gap 0) + 200 float Z_n (gap <= 1e-6) in <5min",
           ok && secs < 300.0, secs);
}

// --- 4: two-sided instances --------------------------------------------------

void criterion_4() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (int t = 0; t < 100 && ok; ++t) {
        GroupSpec g = testutil::random_exact_group(36);
        DelsarteInstance<Rational> inst;
        inst.group = g;
        inst.omega_plus = testutil::random_symmetric_omega(g);
        inst.omega_minus = testutil::random_symmetric_omega(g);
        inst.rho = testutil::random_even_rho(g);
        inst.sigma = testutil::random_strictly_pd_sigma(g);
        PrimalResult<Rational> p = solve_primal(inst);
        DualResult<Rational> d = solve_dual(inst);
        if (p.status != LPStatus::Optimal) {
            ok = ok && d.status != LPStatus::Optimal;  // both sides agree on infeasibility
            continue;
        }
        ok = ok && d.status == LPStatus::Optimal && p.alpha == d.omega &&
             verify_dual_certificate(inst, d.cert).valid;
        // with omega_minus = G the two-sided problem reduces to the one-sided one
        DelsarteInstance<Rational> one = inst;
        one.omega_minus = Region::full();
        PrimalResult<Rational> p1 = solve_primal(one);
        ok = ok && p1.status == LPStatus::Optimal && p.alpha >= p1.alpha;
    }
    report(4, "100 two-sided exact instances: zero gap; omega_minus=G reduces to one-sided", ok,
           seconds_since(t0));
}

// --- 5: sign-swapping kernels ------------------------------------------------

void criterion_5() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (int t = 0; t < 100 && ok; ++t) {
        GroupSpec z = make_free_group(1, 200);
        std::set<Element> vs;
        for (int i = 0, n = static_cast<int>(randint(1, 2)); i < n; ++i) vs.insert({randint(0, 2)});
        long wrad = 0;
        for (const Element& a : vs)
            for (const Element& b : vs) wrad = std::max(wrad, std::labs(a[0] - b[0]));
        Region S;
        long hi = t % 10 == 0 ? 180 : 40;  // a few far-out sets, mostly compact ones
        for (int i = 0, k = static_cast<int>(randint(1, 3)); i < k; ++i) {
            long x = randint(3 * wrad + 1, 3 * wrad + hi);
            S.members.insert({x});
            S.members.insert({-x});
        }
        SignSwapReport<Rational> r = sign_swap<Rational>(z, S, Region::of({vs.begin(), vs.end()}));
        std::set<Element> SW = sumset(z, r.input_S, r.W);
        ok = ok && r.positivity_in_W && r.negativity_in_SWW && r.sum_zero && r.minus_one_on_S &&
             r.pd_certified &&
             r.value_at_zero == Rational(static_cast<long>(SW.size())) /
                                    Rational(static_cast<long>(r.input_V.size()));
    }
    report(5, "100 sign-swapping kernels on Z: all defining properties and k(0)=mu(S+W)/mu(V)", ok,
           seconds_since(t0));
}

// --- 6: smoothing kernels -----------------------------------------------------

void criterion_6() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (int t = 0; t < 100 && ok; ++t) {
        int d = t % 5 == 0 ? 2 : 1;
        GroupSpec z = make_free_group(d, 10);
        std::set<Element> pts;
        long spread = d == 1 ? 4 : 2;
        for (int i = 0, n = static_cast<int>(randint(1, 4)); i < n; ++i) {
            Element e(d);
            for (int j = 0; j < d; ++j) e[j] = randint(-spread, spread);
            pts.insert(e);
        }
        double eps = 0.2 + 0.4 * static_cast<double>(randint(0, 8)) / 8.0;
        GroupFunction<Rational> k =
            urysohn_pd_kernel<Rational>(z, Region::of({pts.begin(), pts.end()}), eps);
        // (i) k(0)=1  (ii) 0<=k<=1  (iii) k>=1-eps on K  (iv) even  (v) PD
        bool props = k.at(z.zero()) == 1 && k.is_even();
        for (long i = 0; i < k.size() && props; ++i)
            props = k.values[i] >= 0 && k.values[i] <= 1;
        Rational floor = Rational(1) - rationalize(eps, 1e-12);
        for (const Element& e : pts) props = props && k.at(e) >= floor;
        long side = k.box + 1;
        GroupSpec z1 = make_free_group(1, std::max<long>(k.box, 1));
        GroupFunction<Rational> prof(z1, k.box);
        for (long c = -k.box; c <= k.box; ++c) prof.set({c}, Rational(side - std::labs(c), side));
        props = props && trig_nonneg_exact(prof);  // PD via the per-axis factorization
        for (long i = 0; i < k.size() && props; ++i) {
            Rational prod(1);
            for (long c : k.element_at(i)) prod *= prof.at({c});
            props = k.values[i] == prod;
        }
        ok = ok && props;
    }
    report(6, "100 smoothing kernels: plateau, range, evenness, certified positive definiteness",
           ok, seconds_since(t0));
}

// --- 7: PD minorant decompositions -------------------------------------------

void criterion_7() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (int t = 0; t < 100 && ok; ++t) {
        GroupSpec z = make_free_group(1, 40);
        Region A;
        for (int i = 0, k = static_cast<int>(randint(1, 3)); i < k; ++i) {
            long x = randint(4, 16);
            A.members.insert({x});
            A.members.insert({-x});
        }
        GroupFunction<Rational> f(z, 20);
        for (long x = -20; x <= 20; ++x)
            if (randint(0, 2) == 0) f.set({x}, Rational(randint(-4, 4), randint(1, 3)));
        Decomposition<Rational> d = pd_minorant_decompose(f, A);
        ok = ok && d.pd_certified && d.minorant_on_A && d.norm_bound_holds;
        GroupFunction<Rational> back = add(d.p, scale(d.q, Rational(-1)));
        for (long i = 0; i < back.size() && ok; ++i)
            ok = back.values[i] == f.at(back.element_at(i));
    }
    report(7, "100 decompositions f=p-q: p certified PD, p<=f on A, norm bound holds", ok,
           seconds_since(t0));
}

// --- 8: two-sided bounds on Z ------------------------------------------------

void criterion_8() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::pair<long, long>> sched{{0, 0}, {1, 2}, {2, 4}, {3, 6}};
    std::vector<SandwichRow> rows = sandwich(1, Region::of({{-1}, {0}, {1}}), sched);
    bool ok = !rows.empty() && rows.back().closed && rows.back().lower == 2 &&
              rows.back().upper == 2 && rows.back().m == 1 && rows.back().n == 2;
    for (const SandwichRow& r : rows)
        if (r.has_upper && r.lower_result.feasible) ok = ok && r.lower <= r.upper;
    std::vector<SandwichRow> rows0 = sandwich(1, Region::of({{0}}), sched);
    ok = ok && !rows0.empty() && rows0.back().closed && rows0.back().lower == 1 &&
         rows0.back().upper == 1;
    report(8, "Z sandwich: interval closes at 2 by (m,n)=(1,2), origin closes at 1, rows ordered",
           ok, seconds_since(t0));
}

// --- 9: joint dual membership ------------------------------------------------

void criterion_9() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    int members = 0, nonmembers = 0;
    while ((members < 100 || nonmembers < 100) && ok) {
        GroupSpec g = testutil::random_exact_group(24);
        Region omega = testutil::random_symmetric_omega(g);
        if (members < 100) {
            // member by construction: nu - kappa with nu PD and kappa >= 0 off omega
            long n = g.order();
            VectorX<Rational> spec = VectorX<Rational>::Zero(n);
            for (long r : inversion_orbit_reps(g)) {
                Rational v(randint(0, 4));
                for (long y : orbit_of(g, r)) spec[y] = v;
            }
            GroupFunction<Rational> nu = inverse_transform(g, spec);
            GroupFunction<Rational> kappa(g);
            for (long r : inversion_orbit_reps(g)) {
                Element e = g.element_at(r);
                if (omega.contains(e) || omega.contains(g.neg(e))) continue;
                Rational v(randint(0, 3));
                for (long y : orbit_of(g, r)) kappa.values[y] = v;
            }
            MeasureFunctional<Rational> psi(add(nu, scale(kappa, Rational(-1))));
            ok = ok && in_joint_dual(psi, omega).member;
            ++members;
        }
        if (nonmembers < 100 && ok) {
            // candidate: random functional; certified non-member when some
            // feasible f pairs negatively with it
            MeasureFunctional<Rational> psi(testutil::random_function(g));
            DelsarteInstance<Rational> probe;
            probe.group = g;
            probe.omega_plus = omega;
            probe.rho = psi;
            probe.sigma = dirac<Rational>(g);
            PrimalResult<Rational> p = solve_primal(probe);
            if (p.status == LPStatus::Optimal && p.alpha < 0) {
                ok = ok && !in_joint_dual(psi, omega).member;
                ++nonmembers;
            }
        }
    }
    report(9, "joint dual cone: 100 constructed members accepted, 100 witnessed non-members rejected",
           ok, seconds_since(t0));
}

// --- 10: invariances ----------------------------------------------------------

void criterion_10() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (int t = 0; t < 30 && ok; ++t) {
        GroupSpec g = testutil::random_exact_group(36);
        DelsarteInstance<Rational> inst;
        inst.group = g;
        inst.omega_plus = testutil::random_symmetric_omega(g);
        inst.rho = MeasureFunctional<Rational>(testutil::random_function(g));
        inst.sigma = testutil::random_strictly_pd_sigma(g);
        PrimalResult<Rational> base = solve_primal(inst);
        DualResult<Rational> dbase = solve_dual(inst);
        if (base.status != LPStatus::Optimal) continue;

        // evenization of rho changes nothing
        DelsarteInstance<Rational> ev = inst;
        ev.rho = MeasureFunctional<Rational>(even_odd_split(inst.rho.atoms).first);
        PrimalResult<Rational> pe = solve_primal(ev);
        ok = ok && pe.status == LPStatus::Optimal && pe.alpha == base.alpha;

        // scaling sigma by c scales both optima by 1/c
        Rational c(randint(1, 6), randint(1, 3));
        DelsarteInstance<Rational> sc = inst;
        sc.sigma.atoms.values *= c;
        PrimalResult<Rational> ps = solve_primal(sc);
        DualResult<Rational> ds = solve_dual(sc);
        ok = ok && ps.alpha == base.alpha / c && ds.cert.s == dbase.cert.s / c;

        // replacing omega by its symmetrization changes nothing
        Region unsym = inst.omega_plus;
        for (long i = 0; i < g.order(); ++i)
            if (randint(0, 3) == 0) unsym.members.insert(g.element_at(i));
        DelsarteInstance<Rational> raw = inst, symd = inst;
        raw.omega_plus = unsym;
        symd.omega_plus = symmetrize_region(g, unsym);
        PrimalResult<Rational> pr = solve_primal(raw);
        PrimalResult<Rational> py = solve_primal(symd);
        ok = ok && pr.status == py.status &&
             (pr.status != LPStatus::Optimal || pr.alpha == py.alpha);
    }
    report(10, "invariance under evenization, sigma scaling, and omega symmetrization", ok,
           seconds_since(t0));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
