#pragma once

#include <map>
#include <optional>

#include "delsarte/simplex.hpp"
#include "delsarte/spectral.hpp"

namespace delsarte {

/// Translation-bounded functional on the group: a constant multiple of Haar
/// (counting) measure plus a finitely supported part. On finite groups the
/// constant is folded into the dense part on construction.
template <class S>
struct MeasureFunctional {
    GroupSpec group;
    S constant = S(0);        // FreeDiscrete only after normalization
    GroupFunction<S> atoms;

    MeasureFunctional() = default;

    explicit MeasureFunctional(const GroupSpec& g, const S& c = S(0)) : group(g), atoms(g) {
        if (g.kind == GroupKind::Finite && c != S(0))
            atoms.values.setConstant(c);
        else
            constant = c;
    }

    explicit MeasureFunctional(GroupFunction<S> f, const S& c = S(0))
        : group(f.group), atoms(std::move(f)) {
        if (group.kind == GroupKind::Finite && c != S(0)) {
            for (long i = 0; i < atoms.size(); ++i) atoms.values[i] += c;
        } else {
            constant = c;
        }
    }

    S at(const Element& e) const { return constant + atoms.at(e); }

    bool is_even() const {
        return atoms.is_even();  // the constant part is always even
    }

    bool is_odd() const {
        if (constant != S(0)) return false;
        auto [e, o] = even_odd_split(atoms);
        return e.is_zero();
    }
};

template <class S>
MeasureFunctional<S> haar(const GroupSpec& g) {
    return MeasureFunctional<S>(g, S(1));
}

template <class S>
MeasureFunctional<S> dirac(const GroupSpec& g) {
    return MeasureFunctional<S>(delta<S>(g, g.zero()));
}

/// <f, psi> = sum_x f(x) psi(x); finite because f is finitely supported.
template <class S>
S pair(const GroupFunction<S>& f, const MeasureFunctional<S>& psi) {
    S v = psi.constant * f.sum();
    for (long i = 0; i < f.size(); ++i) {
        if (f.values[i] == S(0)) continue;
        v += f.values[i] * psi.atoms.at(f.element_at(i));
    }
    return v;
}

/// Mixed norm ||f||_X = sum over lattice cells of the cell sup-norms.
template <class S>
S mixed_norm_X(const LatticeTiling& t, const GroupFunction<S>& f) {
    if (f.group.kind == GroupKind::Finite) return f.l1_norm();  // N=1 cells
    std::map<Element, S> cell_sup;
    for (long i = 0; i < f.size(); ++i) {
        if (f.values[i] == S(0)) continue;
        auto [l, b] = t.coset_decompose(f.element_at(i));
        S a = abs_val(f.values[i]);
        auto it = cell_sup.find(l);
        if (it == cell_sup.end())
            cell_sup.emplace(l, a);
        else if (a > it->second)
            it->second = a;
    }
    S total(0);
    for (auto& [l, s] : cell_sup) total += s;
    return total;
}

/// ||psi||_M = sup over lattice cells of the total-variation cell mass.
template <class S>
S measure_norm_M(const LatticeTiling& t, const MeasureFunctional<S>& psi) {
    long cell_size = 1;
    for (int i = 0; i < t.rank; ++i) cell_size *= t.modulus;
    std::map<Element, S> cell_mass;
    for (long i = 0; i < psi.atoms.size(); ++i) {
        if (psi.atoms.values[i] == S(0)) continue;
        auto [l, b] = t.coset_decompose(psi.atoms.element_at(i));
        cell_mass[l] += abs_val(psi.constant + psi.atoms.values[i]) - abs_val(psi.constant);
    }
    S best = abs_val(psi.constant) * S(cell_size);  // cells untouched by atoms
    for (auto& [l, extra] : cell_mass) {
        S m = abs_val(psi.constant) * S(cell_size) + extra;
        if (m > best) best = m;
    }
    return best;
}

/// Jordan decomposition psi = psi+ - psi- (finitely supported part).
template <class S>
std::pair<GroupFunction<S>, GroupFunction<S>> jordan_parts(const GroupFunction<S>& f) {
    GroupFunction<S> pos = f, neg = f;
    for (long i = 0; i < f.size(); ++i) {
        pos.values[i] = f.values[i] > S(0) ? f.values[i] : S(0);
        neg.values[i] = f.values[i] < S(0) ? S(-f.values[i]) : S(0);
    }
    return {pos, neg};
}

/// Membership in Q_A^* = { psi <= 0 pointwise, supp(psi) inside A }.
template <class S>
bool in_QA_dual(const MeasureFunctional<S>& psi, const Region& A) {
    if (psi.constant > S(0)) return false;
    if (psi.constant != S(0) && !A.complement_flag) return false;  // cofinite support needed
    for (long i = 0; i < psi.atoms.size(); ++i) {
        S v = psi.constant + psi.atoms.values[i];
        if (v > S(0)) return false;
        if (v != S(0) && !A.contains(psi.atoms.element_at(i))) return false;
    }
    return true;
}

/// Measure of positive type: even with nonnegative spectrum (finite groups)
/// or, on Z, even with nonnegative trig-polynomial density and nonnegative
/// Haar coefficient.
template <class S>
bool is_positive_type(const MeasureFunctional<S>& psi) {
    if (!psi.is_even()) return false;
    if (psi.group.kind == GroupKind::Finite)
        return is_positive_definite(psi.atoms).pd;
    if (psi.constant < S(0)) return false;
    return is_positive_definite(psi.atoms).pd;
}

/// Wiener condition: the transform is strictly positive on the whole dual
/// group. Exact on exact-mode finite groups and on Z (rank 1).
template <class S>
bool is_strictly_pd(const MeasureFunctional<S>& sigma) {
    if (!sigma.is_even()) return false;
    if (sigma.group.kind == GroupKind::Finite) {
        if constexpr (std::is_same_v<S, Rational>) {
            if (sigma.group.exact_available) {
                VectorX<Rational> sp = transform(sigma.atoms);
                for (long i = 0; i < sp.size(); ++i)
                    if (sp[i] <= 0) return false;
                return true;
            }
            return is_strictly_pd(MeasureFunctional<double>(to_float(sigma.atoms)));
        } else {
            VectorX<double> sp = transform(sigma.atoms);
            for (long i = 0; i < sp.size(); ++i)
                if (sp[i] <= scalar_traits<double>::feas_eps()) return false;
            return true;
        }
    }
    if (sigma.constant < S(0)) return false;
    if constexpr (std::is_same_v<S, Rational>) {
        if (sigma.group.rank == 1)
            return sigma.constant > S(0) ? trig_nonneg_exact(sigma.atoms)
                                         : trig_positive_exact(sigma.atoms);
    }
    CertifiedBound cb = trig_poly_min_certified(sigma.atoms, 1 << 14);
    return to_double(sigma.constant) + cb.bound > 0;
}

template <class S>
struct PDualWitness {
    bool member = false;
    MeasureFunctional<S> even_part, odd_part;
};

/// P^* = (measures of positive type) + (odd measures): membership holds iff
/// the even part is of positive type; the decomposition is the witness.
template <class S>
PDualWitness<S> in_P_dual(const MeasureFunctional<S>& psi) {
    PDualWitness<S> w;
    auto [e, o] = even_odd_split(psi.atoms);
    w.even_part = MeasureFunctional<S>(e, psi.constant);
    w.odd_part = MeasureFunctional<S>(o);
    w.member = is_positive_type(w.even_part);
    return w;
}

template <class S>
struct JointDualWitness {
    bool member = false;
    GroupFunction<S> kappa;   // >= 0, supported in Omega^c
    GroupFunction<S> nu;      // even, of positive type
    GroupFunction<S> odd_part;
};

/// Membership in (P cap Q_{Omega^c})^* = -M_+(Omega^c) + M + O, decided by a
/// feasibility LP over kappa >= 0 supported in A = Omega^c: psi + kappa must
/// have an even part of positive type. Ties are broken by minimizing the
/// total mass of kappa, which makes the witness canonical.
template <class S>
JointDualWitness<S> in_joint_dual(const MeasureFunctional<S>& psi, const Region& omega) {
    const GroupSpec& g = psi.group;
    if (g.kind != GroupKind::Finite)
        throw std::invalid_argument("in_joint_dual: finite groups only");
    long n = g.order();
    auto [psi_e, psi_o] = even_odd_split(psi.atoms);

    std::vector<long> support;  // A = Omega^c
    for (long i = 0; i < n; ++i)
        if (!omega.contains(g.element_at(i))) support.push_back(i);

    std::vector<long> dual_reps = inversion_orbit_reps(g);
    const bool exact = std::is_same_v<S, Rational> && g.exact_available;

    LPProblem<S> lp;
    lp.maximize = false;
    for (long idx : support) {
        Element e = g.element_at(idx);
        std::string nm = "k";
        for (long c : e) nm += "_" + std::to_string(c);
        lp.add_variable(nm, true, S(1));
    }
    // spectrum of (psi_e + kappa_e) must be >= 0 at each dual orbit rep
    MatrixX<S> C = [&] {
        if constexpr (std::is_same_v<S, Rational>) {
            (void)exact;
            return exact ? exact_cos_matrix(g) : MatrixX<S>();
        } else {
            return float_cos_matrix(g);
        }
    }();
    if (C.size() == 0) {
        if constexpr (std::is_same_v<S, Rational>)
            throw std::domain_error("exact mode unavailable: exponent " +
                                    std::to_string(g.exponent));
    }
    VectorX<S> base = C * psi_e.values;
    for (std::size_t r = 0; r < dual_reps.size(); ++r) {
        long y = dual_reps[r];
        VectorX<S> row(static_cast<long>(support.size()));
        for (std::size_t j = 0; j < support.size(); ++j) {
            long x = support[j];
            long xm = g.index_of(g.neg(g.element_at(x)));
            row[j] = (C(y, x) + C(y, xm)) / S(2);  // transform of kappa's even part
        }
        lp.add_constraint(-row, Rel::LE, base[y]);  // base + row*kappa >= 0
    }
    LPSolution<S> sol = solve_lp(lp);
    JointDualWitness<S> w;
    w.kappa = GroupFunction<S>(g);
    w.nu = GroupFunction<S>(g);
    w.odd_part = psi_o;
    if (sol.status != LPStatus::Optimal) return w;
    for (std::size_t j = 0; j < support.size(); ++j) w.kappa.values[support[j]] = sol.x[j];
    auto [ke, ko] = even_odd_split(w.kappa);
    w.nu.values = psi_e.values + ke.values;
    w.member = true;
    return w;
}

}  // namespace delsarte
