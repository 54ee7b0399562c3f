#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace delsarte {

/// Group element: one integer coordinate per cyclic factor (finite groups,
/// reduced mod orders) or per generator of Z^d (free case, unreduced).
using Element = std::vector<long>;

enum class GroupKind { Finite, FreeDiscrete };

/// A finite Abelian group given as a product of cyclic factors, or Z^d with
/// a finite symmetric working window [-W,W]^d.
struct GroupSpec {
    GroupKind kind = GroupKind::Finite;
    std::vector<long> orders;  // Finite: cyclic factor orders, all >= 1
    int rank = 0;              // FreeDiscrete
    long window = 0;           // FreeDiscrete: window radius W >= 0
    long exponent = 1;         // Finite: lcm of orders
    bool exact_available = false;

    int dims() const { return kind == GroupKind::Finite ? static_cast<int>(orders.size()) : rank; }

    long order() const {
        long n = 1;
        for (long o : orders) n *= o;
        return n;
    }

    /// Number of representable points (group order, or window box size).
    long point_count() const {
        if (kind == GroupKind::Finite) return order();
        long n = 1;
        for (int i = 0; i < rank; ++i) n *= 2 * window + 1;
        return n;
    }

    Element reduce(Element e) const {
        if (kind == GroupKind::Finite) {
            for (std::size_t i = 0; i < orders.size(); ++i) {
                e[i] %= orders[i];
                if (e[i] < 0) e[i] += orders[i];
            }
        }
        return e;
    }

    Element zero() const { return Element(dims(), 0); }

    Element neg(const Element& e) const {
        Element r(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) r[i] = -e[i];
        return reduce(r);
    }

    Element add(const Element& a, const Element& b) const {
        Element r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
        return reduce(r);
    }

    Element sub(const Element& a, const Element& b) const {
        Element r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
        return reduce(r);
    }

    /// Finite groups: mixed-radix index of an element, 0 <= idx < order().
    long index_of(const Element& e) const {
        Element r = reduce(e);
        long idx = 0;
        for (std::size_t i = 0; i < orders.size(); ++i) idx = idx * orders[i] + r[i];
        return idx;
    }

    Element element_at(long idx) const {
        Element e(orders.size());
        for (std::size_t i = orders.size(); i-- > 0;) {
            e[i] = idx % orders[i];
            idx /= orders[i];
        }
        return e;
    }

    bool in_window(const Element& e) const {
        if (kind == GroupKind::Finite) return true;
        for (long c : e)
            if (c > window || c < -window) return false;
        return true;
    }
};

inline GroupSpec make_finite_group(const std::vector<long>& orders) {
    if (orders.empty()) throw std::invalid_argument("empty group descriptor");
    for (long o : orders)
        if (o < 1) throw std::invalid_argument("cyclic factor order must be >= 1");
    GroupSpec g;
    g.kind = GroupKind::Finite;
    g.orders = orders;
    g.exponent = 1;
    for (long o : orders) g.exponent = std::lcm(g.exponent, o);
    g.exact_available = (g.exponent == 1 || g.exponent == 2 || g.exponent == 3 ||
                         g.exponent == 4 || g.exponent == 6);
    return g;
}

inline GroupSpec make_free_group(int rank, long window) {
    if (rank < 1) throw std::invalid_argument("rank must be >= 1");
    if (window < 0) throw std::invalid_argument("window radius must be >= 0");
    GroupSpec g;
    g.kind = GroupKind::FreeDiscrete;
    g.rank = rank;
    g.window = window;
    g.exponent = 0;
    g.exact_available = true;  // values are stored exactly; spectra live on the torus
    return g;
}

/// A subset of the group, stored either directly or as the complement of a
/// finite set (so that co-finite subsets of Z^d stay representable).
struct Region {
    std::set<Element> members;
    bool complement_flag = false;

    bool contains(const Element& e) const {
        bool in = members.count(e) > 0;
        return complement_flag ? !in : in;
    }

    static Region of(std::vector<Element> elems) {
        Region r;
        r.members.insert(elems.begin(), elems.end());
        return r;
    }

    static Region full() {
        Region r;
        r.complement_flag = true;
        return r;
    }

    static Region empty_set() { return Region{}; }

    Region complemented() const {
        Region r = *this;
        r.complement_flag = !r.complement_flag;
        return r;
    }

    bool is_full() const { return complement_flag && members.empty(); }
    bool is_empty() const { return !complement_flag && members.empty(); }
};

/// Omega := Omega cap (-Omega). Idempotent; result is closed under negation.
inline Region symmetrize_region(const GroupSpec& g, const Region& omega) {
    Region out;
    out.complement_flag = omega.complement_flag;
    if (!omega.complement_flag) {
        for (const Element& e : omega.members)
            if (omega.contains(g.neg(e))) out.members.insert(g.reduce(e));
    } else {
        // complement representation: (S^c) cap (-(S^c)) = (S cup -S)^c
        for (const Element& e : omega.members) {
            out.members.insert(g.reduce(e));
            out.members.insert(g.neg(e));
        }
    }
    return out;
}

inline bool region_symmetric(const GroupSpec& g, const Region& r) {
    for (const Element& e : r.members)
        if (!r.members.count(g.neg(e))) return false;
    return true;
}

/// Lattice L = N*Z^d with tile B = {0,...,N-1}^d; every g in Z^d splits
/// uniquely as g = l + b.
struct LatticeTiling {
    int rank = 1;
    long modulus = 1;  // N >= 1

    LatticeTiling(int d, long n) : rank(d), modulus(n) {
        if (d < 1 || n < 1) throw std::invalid_argument("invalid tiling");
    }

    std::pair<Element, Element> coset_decompose(const Element& g) const {
        Element l(g.size()), b(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            long bi = g[i] % modulus;
            if (bi < 0) bi += modulus;
            b[i] = bi;
            l[i] = g[i] - bi;
        }
        return {l, b};
    }

    /// Max absolute generator coefficient of a lattice point.
    long lattice_norm(const Element& l) const {
        long m = 0;
        for (long c : l) {
            if (c % modulus != 0) throw std::invalid_argument("point is not in the lattice");
            m = std::max(m, std::labs(c / modulus));
        }
        return m;
    }
};

/// Representatives of the inversion orbits {x, -x}; the zero orbit comes
/// first, then lexicographically smallest indices.
inline std::vector<long> inversion_orbit_reps(const GroupSpec& g) {
    std::vector<long> reps;
    long n = g.order();
    std::vector<char> seen(n, 0);
    for (long i = 0; i < n; ++i) {
        if (seen[i]) continue;
        seen[i] = 1;
        seen[g.index_of(g.neg(g.element_at(i)))] = 1;
        reps.push_back(i);
    }
    return reps;
}

inline std::vector<long> orbit_of(const GroupSpec& g, long idx) {
    long m = g.index_of(g.neg(g.element_at(idx)));
    if (m == idx) return {idx};
    return {idx, m};
}

}  // namespace delsarte
