#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace delsarte;
using testutil::randint;

TEST_CASE("pairings: point mass, Haar, and even-against-odd") {
    GroupSpec g = make_finite_group({4});
    MeasureFunctional<Rational> sigma = testutil::random_strictly_pd_sigma(g);
    CHECK(pair(delta<Rational>(g, g.zero()), sigma) == sigma.at(g.zero()));

    GroupFunction<Rational> f = testutil::random_function(g);
    CHECK(pair(f, haar<Rational>(g)) == f.sum());

    GroupFunction<Rational> fe = even_odd_split(testutil::random_function(g)).first;
    MeasureFunctional<Rational> psi_o(even_odd_split(testutil::random_function(g)).second);
    CHECK(psi_o.is_odd());
    CHECK(pair(fe, psi_o) == 0);
}

TEST_CASE("mixed norm: cell sup-norms summed") {
    GroupSpec z = make_free_group(1, 5);
    GroupFunction<Rational> f(z, 2);
    f.set({0}, Rational(3));
    f.set({1}, Rational(-4));
    CHECK(mixed_norm_X(LatticeTiling(1, 1), f) == 7);  // l1 with singleton cells
    CHECK(mixed_norm_X(LatticeTiling(1, 2), f) == 4);  // one cell, sup 4
    f.set({2}, Rational(5));
    CHECK(mixed_norm_X(LatticeTiling(1, 2), f) == 9);  // cells {0,1} and {2,3}
}

TEST_CASE("measure norm: sup of total-variation cell masses") {
    GroupSpec z = make_free_group(1, 5);
    GroupFunction<Rational> atoms(z, 1);
    atoms.set({0}, Rational(3));
    atoms.set({1}, Rational(-4));
    MeasureFunctional<Rational> psi(atoms);
    CHECK(measure_norm_M(LatticeTiling(1, 1), psi) == 4);
    CHECK(measure_norm_M(LatticeTiling(1, 2), psi) == 7);
    MeasureFunctional<Rational> lambda(z, Rational(1));
    CHECK(measure_norm_M(LatticeTiling(1, 3), lambda) == 3);
}

TEST_CASE("pairing is dominated by the norm product") {
    for (int t = 0; t < 30; ++t) {
        GroupSpec z = make_free_group(1, 6);
        long N = randint(1, 4);
        GroupFunction<Rational> f(z, 4), a(z, 4);
        for (long x = -4; x <= 4; ++x) {
            f.set({x}, Rational(randint(-5, 5), randint(1, 3)));
            a.set({x}, Rational(randint(-5, 5), randint(1, 3)));
        }
        MeasureFunctional<Rational> psi(a);
        LatticeTiling tiling(1, N);
        CHECK(abs_val(pair(f, psi)) <= measure_norm_M(tiling, psi) * mixed_norm_X(tiling, f));
    }
}

TEST_CASE("Jordan decomposition: disjoint supports, recombines") {
    for (int t = 0; t < 20; ++t) {
        GroupSpec g = testutil::random_exact_group(36);
        GroupFunction<Rational> f = testutil::random_function(g);
        auto [p, n] = jordan_parts(f);
        for (long i = 0; i < f.size(); ++i) {
            CHECK(p.values[i] - n.values[i] == f.values[i]);
            CHECK(p.values[i] + n.values[i] == abs_val(f.values[i]));
            CHECK((p.values[i] == 0 || n.values[i] == 0));
        }
    }
}

TEST_CASE("nonpositive-on-A dual cone membership") {
    GroupSpec g = make_finite_group({4});
    auto atom = [&](long x, const Rational& v) {
        GroupFunction<Rational> f(g);
        f.set({x}, v);
        return MeasureFunctional<Rational>(f);
    };
    CHECK(in_QA_dual(atom(2, Rational(-1)), Region::of({{2}})));
    CHECK_FALSE(in_QA_dual(atom(2, Rational(1)), Region::of({{2}})));
    CHECK_FALSE(in_QA_dual(atom(1, Rational(-1)), Region::of({{2}})));
}

TEST_CASE("dual cone of the PD cone: even part of positive type") {
    GroupSpec g = make_finite_group({4});
    GroupFunction<Rational> alt(g);
    alt.values << Rational(1), Rational(-1), Rational(1), Rational(-1);
    PDualWitness<Rational> w = in_P_dual(MeasureFunctional<Rational>(alt));
    CHECK(w.member);
    VectorX<Rational> sp = transform(alt);
    CHECK(sp[2] == 4);
    CHECK(sp[0] == 0);

    GroupFunction<Rational> oddf(g);
    oddf.values << Rational(0), Rational(2), Rational(0), Rational(-2);
    CHECK(in_P_dual(MeasureFunctional<Rational>(oddf)).member);

    GroupFunction<Rational> neg(g);
    neg.set(g.zero(), Rational(-1));
    CHECK_FALSE(in_P_dual(MeasureFunctional<Rational>(neg)).member);
}

TEST_CASE("accepted P-dual members pair nonnegatively with PD functions") {
    for (int t = 0; t < 100; ++t) {
        GroupSpec g = testutil::random_exact_group(36);
        GroupFunction<Rational> a = testutil::random_function(g);
        MeasureFunctional<Rational> psi(a);
        PDualWitness<Rational> w = in_P_dual(psi);
        GroupFunction<Rational> u = testutil::random_function(g);
        GroupFunction<Rational> f = convolve(u, u.reflected());
        if (w.member) CHECK(pair(f, psi) >= 0);
    }
}

TEST_CASE("measures of positive type: evenness plus nonnegative spectrum") {
    GroupSpec g = make_finite_group({4});
    CHECK(is_positive_type(dirac<Rational>(g)));
    GroupFunction<Rational> alt(g);
    alt.values << Rational(1), Rational(-1), Rational(1), Rational(-1);
    CHECK(is_positive_type(MeasureFunctional<Rational>(alt)));
    CHECK_FALSE(is_positive_type(MeasureFunctional<Rational>(delta<Rational>(g, {1}))));
    // spectral test agrees with random quadratic-form evidence
    for (int t = 0; t < 20; ++t) {
        GroupSpec h = testutil::random_exact_group(24);
        GroupFunction<Rational> a = even_odd_split(testutil::random_function(h)).first;
        MeasureFunctional<Rational> psi(a);
        bool spectral = is_positive_type(psi);
        bool witnessed_negative = false;
        for (int j = 0; j < 40; ++j) {
            GroupFunction<Rational> u = testutil::random_function(h);
            if (pair(convolve(u, u.reflected()), psi) < 0) witnessed_negative = true;
        }
        if (witnessed_negative) CHECK_FALSE(spectral);
    }
}

TEST_CASE("joint dual cone membership with minimal-kappa witness") {
    GroupSpec g = make_finite_group({4});
    Region omega = Region::of({{0}, {1}, {3}});
    MeasureFunctional<Rational> psi(g, Rational(-1));
    psi.atoms.set(g.zero(), psi.atoms.at(g.zero()) + Rational(2));  // -lambda + 2 delta_0
    JointDualWitness<Rational> w = in_joint_dual(psi, omega);
    REQUIRE(w.member);
    CHECK(w.kappa.at({2}) == 2);
    CHECK(w.kappa.at({0}) == 0);
    CHECK(w.kappa.at({1}) == 0);
    CHECK(w.nu.values[0] == 1);
    CHECK(w.nu.values[1] == -1);
    CHECK(w.nu.values[2] == 1);
    CHECK(w.nu.values[3] == -1);

    CHECK(in_joint_dual(MeasureFunctional<Rational>(delta<Rational>(g, g.zero())), omega).member);

    GroupFunction<Rational> neg(g);
    neg.set(g.zero(), Rational(-1));
    CHECK_FALSE(in_joint_dual(MeasureFunctional<Rational>(neg), Region::full()).member);
}

TEST_CASE("joint dual members pair nonnegatively with feasible functions") {
    for (int t = 0; t < 40; ++t) {
        GroupSpec g = testutil::random_exact_group(24);
        Region omega = testutil::random_symmetric_omega(g);
        GroupFunction<Rational> a = testutil::random_function(g);
        MeasureFunctional<Rational> psi(a);
        JointDualWitness<Rational> w = in_joint_dual(psi, omega);
        if (!w.member) continue;
        // feasible f: PD, <= 0 off omega; built from a PD seed clipped by omega
        for (int j = 0; j < 10; ++j) {
            long n = g.order();
            VectorX<Rational> spec = VectorX<Rational>::Zero(n);
            for (long r : inversion_orbit_reps(g)) {
                Rational v(randint(0, 3));
                for (long y : orbit_of(g, r)) spec[y] = v;
            }
            GroupFunction<Rational> f = inverse_transform(g, spec);
            bool feasible = true;
            for (long i = 0; i < n; ++i)
                if (!omega.contains(g.element_at(i)) && f.values[i] > 0) feasible = false;
            if (feasible) CHECK(pair(f, psi) >= 0);
        }
    }
}
