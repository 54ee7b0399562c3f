#pragma once

#include "delsarte/functionals.hpp"

namespace delsarte {

inline std::set<Element> negate_set(const GroupSpec& g, const std::set<Element>& s) {
    std::set<Element> r;
    for (const Element& e : s) r.insert(g.kind == GroupKind::Finite ? g.neg(e)
                                                                    : GroupFunction<int>::negate(e));
    return r;
}

inline std::set<Element> sumset(const GroupSpec& g, const std::set<Element>& a,
                                const std::set<Element>& b) {
    std::set<Element> r;
    for (const Element& x : a)
        for (const Element& y : b) {
            if (g.kind == GroupKind::Finite) {
                r.insert(g.add(x, y));
            } else {
                Element z(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
                r.insert(z);
            }
        }
    return r;
}

inline bool sets_intersect(const std::set<Element>& a, const std::set<Element>& b) {
    const std::set<Element>& small = a.size() <= b.size() ? a : b;
    const std::set<Element>& big = a.size() <= b.size() ? b : a;
    for (const Element& e : small)
        if (big.count(e)) return true;
    return false;
}

/// Materialize a region as an explicit finite set of (reduced) elements.
inline std::set<Element> materialize(const GroupSpec& g, const Region& r) {
    std::set<Element> out;
    if (!r.complement_flag) {
        for (const Element& e : r.members) out.insert(g.reduce(e));
        return out;
    }
    if (g.kind != GroupKind::Finite)
        throw std::invalid_argument("region is not a finite set");
    for (long i = 0; i < g.order(); ++i) {
        Element e = g.element_at(i);
        if (r.contains(e)) out.insert(e);
    }
    return out;
}

template <class S>
S rationalize_if_exact(double x) {
    if constexpr (std::is_same_v<S, Rational>)
        return rationalize(x, 1e-12);
    else
        return S(x);
}

/// r = (1/mu(V)) 1_V * 1_{-V}: r(0)=1, r >= 0, positive definite by
/// construction, supp r inside V - V.
template <class S>
GroupFunction<S> triangle_function(const GroupSpec& g, const Region& V) {
    std::set<Element> vs = materialize(g, V);
    if (vs.empty()) throw std::invalid_argument("triangle_function: V must be nonempty");
    GroupFunction<S> iv = indicator<S>(g, std::vector<Element>(vs.begin(), vs.end()));
    GroupFunction<S> r = convolve(iv, iv.reflected());
    r.values /= S(static_cast<long>(vs.size()));
    return r;
}

/// k = (1/mu(H)) 1_H * 1_H for a symmetric box H = [-n,n]^d grown until
/// min_K k >= 1 - eps. Closed form on Z^d: k(x) = prod_j max(0, 1 - |x_j|/(2n+1)).
template <class S>
GroupFunction<S> urysohn_pd_kernel(const GroupSpec& g, const Region& K, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("urysohn_pd_kernel: eps must lie in (0,1)");
    if (g.kind == GroupKind::Finite) {
        // H = G: the convolution square of the full indicator is constant mu(H)
        return constant_function(g, S(1));
    }
    std::set<Element> ks = materialize(g, K);
    long M = 0;
    for (const Element& e : ks)
        for (long c : e) M = std::max(M, std::labs(c));
    S one_minus_eps = S(1) - rationalize_if_exact<S>(eps);
    for (long n = M;; ++n) {
        long side = 2 * n + 1;
        auto value_at = [&](const Element& x) {
            S v(1);
            for (long c : x) {
                long num = side - std::labs(c);
                if (num <= 0) return S(0);
                v *= S(num) / S(side);
            }
            return v;
        };
        bool ok = true;
        for (const Element& e : ks)
            if (value_at(e) < one_minus_eps) { ok = false; break; }
        if (!ok) continue;
        GroupFunction<S> k(g, 2 * n);
        for (long i = 0; i < k.size(); ++i) k.values[i] = value_at(k.element_at(i));
        return k;
    }
}

template <class S>
struct SignSwapReport {
    GroupFunction<S> k;
    Region positive_support, negative_support;
    S total_sum = S(0);
    S value_at_zero = S(0);
    S positive_mass = S(0), negative_mass = S(0);
    std::set<Element> input_S, input_V, W;
    // property verdicts
    bool positivity_in_W = false;       // (i)  supp k+ inside W
    bool negativity_in_SWW = false;     // (ii) supp k- inside S+W+W
    bool sum_zero = false;              // (iii) sum k = 0, masses both = mu(S+W)
    bool minus_one_on_S = false;        //      k restricted to S is -1
    bool pd_certified = false;          // structural: k = r * m, rhat >= 0, mhat >= 0
    bool pd_exact_checked = false;      // independent exact spectrum check ran and agreed
};

/// Builds k = (1/(2 mu(V))) sum_{x in S+W} (2r - T_x r - T_{-x} r) with
/// r the triangle function of V and W = V - V. Equivalently k = r * m with
/// m = (1/(2 mu(V))) sum (2 delta_0 - delta_x - delta_{-x}), whose spectrum
/// is a nonnegative combination of (2 - 2cos); this is the PD certificate.
template <class S>
SignSwapReport<S> sign_swap(const GroupSpec& g, const Region& S_in, const Region& V_in) {
    SignSwapReport<S> rep;
    rep.input_S = materialize(g, S_in);
    rep.input_V = materialize(g, V_in);
    if (rep.input_V.empty()) throw std::invalid_argument("sign_swap: V must be nonempty");
    if (rep.input_S.count(g.zero())) throw std::invalid_argument("sign_swap: 0 must not lie in S");
    if (rep.input_S != negate_set(g, rep.input_S))
        throw std::invalid_argument("sign_swap: S must be symmetric");
    rep.W = sumset(g, rep.input_V, negate_set(g, rep.input_V));
    std::set<Element> WW = sumset(g, rep.W, rep.W);
    std::set<Element> WWW = sumset(g, WW, rep.W);
    if (sets_intersect(WWW, rep.input_S))
        throw std::invalid_argument("sign_swap: separation condition violated");

    GroupFunction<S> r = triangle_function<S>(g, V_in);
    std::set<Element> SW = sumset(g, rep.input_S, rep.W);
    S muV(static_cast<long>(rep.input_V.size()));
    long mbox = 0;
    if (g.kind == GroupKind::FreeDiscrete)
        for (const Element& e : SW)
            for (long c : e) mbox = std::max(mbox, std::labs(c));
    GroupFunction<S> m(g, mbox);
    for (const Element& x : SW) {
        m.values[m.index_of(x)] -= S(1);
        Element mx = g.kind == GroupKind::Finite ? g.neg(x) : GroupFunction<S>::negate(x);
        m.values[m.index_of(mx)] -= S(1);
        m.values[m.index_of(g.zero())] += S(2);
    }
    m.values /= S(2) * muV;
    rep.k = convolve(r, m);

    auto [kp, km] = jordan_parts(rep.k);
    rep.total_sum = rep.k.sum();
    rep.value_at_zero = rep.k.at(g.zero());
    rep.positive_mass = kp.sum();
    rep.negative_mass = km.sum();
    rep.positive_support = Region::of(kp.support());
    rep.negative_support = Region::of(km.support());

    std::set<Element> SWW = sumset(g, SW, rep.W);
    rep.positivity_in_W = true;
    for (const Element& e : rep.positive_support.members)
        if (!rep.W.count(e)) rep.positivity_in_W = false;
    rep.negativity_in_SWW = true;
    for (const Element& e : rep.negative_support.members)
        if (!SWW.count(e)) rep.negativity_in_SWW = false;

    S muSW(static_cast<long>(SW.size()));
    S tol = scalar_traits<S>::exact ? S(0) : S(1e-9);
    rep.sum_zero = abs_val(rep.total_sum) <= tol &&
                   abs_val(rep.positive_mass - muSW) <= tol &&
                   abs_val(rep.negative_mass - muSW) <= tol;
    rep.minus_one_on_S = true;
    for (const Element& e : rep.input_S)
        if (abs_val(rep.k.at(e) + S(1)) > tol) rep.minus_one_on_S = false;

    // cross-check the convolution form against the translate sum
    GroupFunction<S> alt = scale(r, S(2) * muSW);
    for (const Element& x : SW) {
        alt = add(alt, scale(translate(r, x), S(-1)));
        Element mx = g.kind == GroupKind::Finite ? g.neg(x) : GroupFunction<S>::negate(x);
        alt = add(alt, scale(translate(r, mx), S(-1)));
    }
    alt.values /= S(2) * muV;
    bool forms_agree = true;
    for (long i = 0; i < alt.size(); ++i)
        if (abs_val(alt.values[i] - rep.k.at(alt.element_at(i))) > tol) forms_agree = false;
    rep.pd_certified = forms_agree;  // k = r * m holds; rhat, mhat >= 0 by shape

    if (g.kind == GroupKind::Finite) {
        rep.pd_exact_checked = is_positive_definite(rep.k).pd;
    } else if constexpr (std::is_same_v<S, Rational>) {
        if (g.rank == 1 && rep.k.box <= 96) rep.pd_exact_checked = trig_nonneg_exact(rep.k);
    }
    return rep;
}

template <class S>
struct Decomposition {
    GroupFunction<S> p, q;                       // f = p - q
    std::vector<std::set<Element>> cells;        // the symmetric pairs used
    std::vector<S> coefficients;
    S norm_bound_constant = S(0);                // ||p||_X <= constant * ||f||_X
    bool pd_certified = false;
    bool minorant_on_A = false;                  // p <= f on A, i.e. q|_A <= 0
    bool norm_bound_holds = false;
};

/// Splits f = p - q with p positive definite and p <= f on A, by summing
/// sign-swap kernels over the symmetrized singleton cells of A where f is
/// negative, scaled by the cell sup-norms of the negative part.
template <class S>
Decomposition<S> pd_minorant_decompose(const GroupFunction<S>& f, const Region& A,
                                       const Region& V_in = Region::of({})) {
    const GroupSpec& g = f.group;
    Region V = V_in.is_empty() ? Region::of({g.zero()}) : V_in;
    std::set<Element> vs = materialize(g, V);
    std::set<Element> W = sumset(g, vs, negate_set(g, vs));
    std::set<Element> WWW = sumset(g, sumset(g, W, W), W);
    if (A.contains(g.zero())) throw std::invalid_argument("pd_minorant_decompose: 0 must not lie in A");
    for (const Element& e : WWW)
        if (A.contains(e) || A.contains(g.kind == GroupKind::Finite
                                            ? g.neg(e)
                                            : GroupFunction<S>::negate(e)))
            throw std::invalid_argument("pd_minorant_decompose: A meets W+W+W");

    Decomposition<S> d;
    // cell coefficients: sup of the negative part of f over each symmetric pair
    std::map<Element, S> coeff;
    for (long i = 0; i < f.size(); ++i) {
        if (f.values[i] >= S(0)) continue;
        Element x = f.element_at(i);
        if (!A.contains(g.kind == GroupKind::Finite ? g.reduce(x) : x)) continue;
        Element mx = g.kind == GroupKind::Finite ? g.neg(x) : GroupFunction<S>::negate(x);
        Element rep = std::min(x, mx);
        S c = -f.values[i];
        auto it = coeff.find(rep);
        if (it == coeff.end())
            coeff.emplace(rep, c);
        else if (c > it->second)
            it->second = c;
    }
    GroupFunction<S> p(g);
    bool all_kernels_certified = true;
    for (auto& [rep, c] : coeff) {
        Element mrep = g.kind == GroupKind::Finite ? g.neg(rep) : GroupFunction<S>::negate(rep);
        std::set<Element> cell{rep, mrep};
        SignSwapReport<S> ss = sign_swap<S>(g, Region::of({rep, mrep}), V);
        all_kernels_certified = all_kernels_certified && ss.pd_certified;
        p = add(p, scale(ss.k, c));
        d.cells.push_back(cell);
        d.coefficients.push_back(c);
    }
    if (p.size() == 0) p = GroupFunction<S>(g);
    d.q = add(p, scale(f, S(-1)));  // q = p - f
    d.p = p;

    S tol = scalar_traits<S>::exact ? S(0) : S(1e-9);
    d.minorant_on_A = true;
    GroupFunction<S> diff = d.q;  // p - f, must be <= 0 on A
    for (long i = 0; i < diff.size(); ++i) {
        Element e = diff.element_at(i);
        if (A.contains(g.kind == GroupKind::Finite ? g.reduce(e) : e) && diff.values[i] > tol)
            d.minorant_on_A = false;
    }
    // a nonnegative combination of certified PD kernels is PD; cross-check
    // with the exact spectrum test wherever one exists
    d.pd_certified = all_kernels_certified;
    if (g.kind == GroupKind::Finite) {
        d.pd_certified = d.pd_certified && is_positive_definite(d.p).pd;
    } else if constexpr (std::is_same_v<S, Rational>) {
        if (g.rank == 1 && d.p.box <= 96)
            d.pd_certified = d.pd_certified && trig_nonneg_exact(d.p);
    }

    // ||p||_X <= 2(N+1) mu(B+W)/mu(V) ||f||_X with B = W+W+W and N the
    // point count of B-B-(W+W)
    std::set<Element> B = WWW;
    std::set<Element> BBWW = sumset(g, sumset(g, B, negate_set(g, B)), sumset(g, W, W));
    S N(static_cast<long>(BBWW.size()));
    S muBW(static_cast<long>(sumset(g, B, W).size()));
    d.norm_bound_constant = S(2) * (N + S(1)) * muBW / S(static_cast<long>(vs.size()));
    LatticeTiling t(g.kind == GroupKind::Finite ? g.dims() : g.rank, 1);
    d.norm_bound_holds = mixed_norm_X(t, d.p) <= d.norm_bound_constant * mixed_norm_X(t, f) + tol;
    return d;
}

}  // namespace delsarte
