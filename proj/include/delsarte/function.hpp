#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

#include "delsarte/group.hpp"
#include "delsarte/scalar.hpp"

namespace delsarte {

template <class S>
using VectorX = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using MatrixX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

/// Finitely supported scalar function on a group. Finite groups store a
/// dense vector over all elements; Z^d functions carry their own bounding
/// box [-box,box]^d (independent of the group's working window, so that
/// convolutions may grow support).
template <class S>
struct GroupFunction {
    GroupSpec group;
    long box = 0;         // FreeDiscrete only
    VectorX<S> values;    // dense over index space

    GroupFunction() = default;

    explicit GroupFunction(const GroupSpec& g, long box_radius = -1) : group(g) {
        if (g.kind == GroupKind::Finite) {
            values = VectorX<S>::Zero(g.order());
        } else {
            box = box_radius < 0 ? g.window : box_radius;
            values = VectorX<S>::Zero(box_count());
        }
    }

    long box_count() const {
        long n = 1;
        for (int i = 0; i < group.rank; ++i) n *= 2 * box + 1;
        return n;
    }

    long size() const { return values.size(); }

    long index_of(const Element& e) const {
        if (group.kind == GroupKind::Finite) return group.index_of(e);
        long idx = 0;
        for (long c : e) {
            if (c < -box || c > box) return -1;
            idx = idx * (2 * box + 1) + (c + box);
        }
        return idx;
    }

    Element element_at(long idx) const {
        if (group.kind == GroupKind::Finite) return group.element_at(idx);
        Element e(group.rank);
        long base = 2 * box + 1;
        for (int i = group.rank; i-- > 0;) {
            e[i] = idx % base - box;
            idx /= base;
        }
        return e;
    }

    S at(const Element& e) const {
        long i = index_of(e);
        return i < 0 ? S(0) : values[i];
    }

    void set(const Element& e, const S& v) {
        long i = index_of(e);
        if (i < 0) throw std::out_of_range("element outside function box");
        values[i] = v;
    }

    GroupFunction reflected() const {
        GroupFunction r(group, box);
        for (long i = 0; i < size(); ++i) {
            Element e = group.kind == GroupKind::Finite ? group.neg(element_at(i))
                                                        : negate(element_at(i));
            r.values[r.index_of(e)] = values[i];
        }
        return r;
    }

    bool is_even() const {
        for (long i = 0; i < size(); ++i) {
            Element m = group.kind == GroupKind::Finite ? group.neg(element_at(i))
                                                        : negate(element_at(i));
            long j = index_of(m);
            S other = j < 0 ? S(0) : values[j];
            if (values[i] != other) return false;
        }
        return true;
    }

    bool is_zero() const {
        for (long i = 0; i < size(); ++i)
            if (values[i] != S(0)) return false;
        return true;
    }

    S sum() const { return values.sum(); }

    S l1_norm() const {
        S n(0);
        for (long i = 0; i < size(); ++i) n += abs_val(values[i]);
        return n;
    }

    std::vector<Element> support() const {
        std::vector<Element> s;
        for (long i = 0; i < size(); ++i)
            if (values[i] != S(0)) s.push_back(element_at(i));
        return s;
    }

    static Element negate(const Element& e) {
        Element r(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) r[i] = -e[i];
        return r;
    }
};

template <class S>
GroupFunction<S> delta(const GroupSpec& g, const Element& e, const S& mass = S(1)) {
    long b = 0;
    if (g.kind == GroupKind::FreeDiscrete)
        for (long c : e) b = std::max(b, std::labs(c));
    GroupFunction<S> f(g, b);
    f.set(e, mass);
    return f;
}

template <class S>
GroupFunction<S> constant_function(const GroupSpec& g, const S& c) {
    if (g.kind != GroupKind::Finite)
        throw std::invalid_argument("constant functions are finite-group only");
    GroupFunction<S> f(g);
    f.values.setConstant(c);
    return f;
}

/// f = f_e + f_o with f_e even and f_o odd; exact in exact arithmetic.
template <class S>
std::pair<GroupFunction<S>, GroupFunction<S>> even_odd_split(const GroupFunction<S>& f) {
    GroupFunction<S> fr = f.reflected();
    GroupFunction<S> e = f, o = f;
    e.values = (f.values + fr.values) / S(2);
    o.values = (f.values - fr.values) / S(2);
    return {e, o};
}

template <class S>
GroupFunction<S> add(const GroupFunction<S>& a, const GroupFunction<S>& b) {
    if (a.group.kind == GroupKind::Finite) {
        GroupFunction<S> r = a;
        r.values += b.values;
        return r;
    }
    GroupFunction<S> r(a.group, std::max(a.box, b.box));
    for (long i = 0; i < a.size(); ++i) r.values[r.index_of(a.element_at(i))] += a.values[i];
    for (long i = 0; i < b.size(); ++i) r.values[r.index_of(b.element_at(i))] += b.values[i];
    return r;
}

template <class S>
GroupFunction<S> scale(const GroupFunction<S>& f, const S& c) {
    GroupFunction<S> r = f;
    r.values *= c;
    return r;
}

/// Group convolution (f * g)(x) = sum_y f(y) g(x - y). On Z^d the result box
/// is the sum of the operand boxes.
template <class S>
GroupFunction<S> convolve(const GroupFunction<S>& f, const GroupFunction<S>& g) {
    if (f.group.kind == GroupKind::Finite) {
        GroupFunction<S> r(f.group);
        long n = f.size();
        for (long i = 0; i < n; ++i) {
            if (f.values[i] == S(0)) continue;
            Element x = f.group.element_at(i);
            for (long j = 0; j < n; ++j) {
                if (g.values[j] == S(0)) continue;
                r.values[f.group.index_of(f.group.add(x, g.group.element_at(j)))] +=
                    f.values[i] * g.values[j];
            }
        }
        return r;
    }
    GroupFunction<S> r(f.group, f.box + g.box);
    for (long i = 0; i < f.size(); ++i) {
        if (f.values[i] == S(0)) continue;
        Element x = f.element_at(i);
        for (long j = 0; j < g.size(); ++j) {
            if (g.values[j] == S(0)) continue;
            Element y = g.element_at(j);
            Element z(x.size());
            for (std::size_t k = 0; k < x.size(); ++k) z[k] = x[k] + y[k];
            r.values[r.index_of(z)] += f.values[i] * g.values[j];
        }
    }
    return r;
}

/// Indicator of a finite set of elements.
template <class S>
GroupFunction<S> indicator(const GroupSpec& g, const std::vector<Element>& set) {
    long b = 0;
    if (g.kind == GroupKind::FreeDiscrete)
        for (const Element& e : set)
            for (long c : e) b = std::max(b, std::labs(c));
    GroupFunction<S> f(g, b);
    for (const Element& e : set) f.set(g.kind == GroupKind::Finite ? g.reduce(e) : e, S(1));
    return f;
}

template <class S>
GroupFunction<S> translate(const GroupFunction<S>& f, const Element& x) {
    if (f.group.kind == GroupKind::Finite) {
        GroupFunction<S> r(f.group);
        for (long i = 0; i < f.size(); ++i)
            r.values[f.group.index_of(f.group.add(f.group.element_at(i), x))] = f.values[i];
        return r;
    }
    long shift = 0;
    for (long c : x) shift = std::max(shift, std::labs(c));
    GroupFunction<S> r(f.group, f.box + shift);
    for (long i = 0; i < f.size(); ++i) {
        Element e = f.element_at(i);
        for (std::size_t k = 0; k < e.size(); ++k) e[k] += x[k];
        r.values[r.index_of(e)] = f.values[i];
    }
    return r;
}

template <class S>
GroupFunction<double> to_float(const GroupFunction<S>& f) {
    GroupFunction<double> r(f.group, f.box);
    for (long i = 0; i < f.size(); ++i) r.values[i] = to_double(f.values[i]);
    return r;
}

}  // namespace delsarte
