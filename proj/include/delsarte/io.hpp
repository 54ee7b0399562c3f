#pragma once

#include <json.hpp>

#include "delsarte/zd_bounds.hpp"

namespace delsarte {

using nlohmann::json;

// --- scalars ---------------------------------------------------------------

inline json scalar_to_json(const Rational& v) { return to_string(v); }
inline json scalar_to_json(double v) { return v; }

template <class S>
S scalar_from_json(const json& j) {
    if constexpr (std::is_same_v<S, Rational>) {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long>());
        return rationalize(j.get<double>(), 1e-12);
    } else {
        if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
        return j.get<double>();
    }
}

// --- groups ----------------------------------------------------------------

inline json group_to_json(const GroupSpec& g) {
    if (g.kind == GroupKind::Finite) return json{{"finite", g.orders}};
    return json{{"free", {{"rank", g.rank}, {"window", g.window}}}};
}

inline GroupSpec group_from_json(const json& j) {
    if (j.contains("finite")) return make_finite_group(j.at("finite").get<std::vector<long>>());
    if (j.contains("free")) {
        const json& f = j.at("free");
        return make_free_group(f.at("rank").get<int>(), f.at("window").get<long>());
    }
    throw std::invalid_argument("group: expected {\"finite\":[...]} or {\"free\":{...}}");
}

// --- elements and regions --------------------------------------------------

inline Element element_from_json(const json& j, int dims) {
    Element e;
    if (j.is_number_integer()) {
        e.push_back(j.get<long>());
    } else if (j.is_array()) {
        for (const json& c : j) e.push_back(c.get<long>());
    } else {
        throw std::invalid_argument("element: expected integer or array of integers");
    }
    if (static_cast<int>(e.size()) != dims)
        throw std::invalid_argument("element has wrong number of coordinates");
    return e;
}

inline json element_to_json(const Element& e) {
    if (e.size() == 1) return e[0];
    return json(e);
}

inline std::string element_key(const Element& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e[i]);
    }
    return s;
}

inline Element element_from_key(const std::string& key, int dims) {
    Element e;
    std::size_t pos = 0;
    while (pos <= key.size()) {
        std::size_t next = key.find(',', pos);
        if (next == std::string::npos) next = key.size();
        e.push_back(std::stol(key.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (static_cast<int>(e.size()) != dims)
        throw std::invalid_argument("element key has wrong number of coordinates");
    return e;
}

inline Region region_from_json(const json& j, const GroupSpec& g) {
    Region r;
    const json* members = &j;
    if (j.is_object()) {
        if (j.contains("complement")) r.complement_flag = j.at("complement").get<bool>();
        members = &j.at("members");
    }
    for (const json& m : *members) r.members.insert(g.reduce(element_from_json(m, g.dims())));
    return r;
}

inline json region_to_json(const Region& r) {
    json members = json::array();
    for (const Element& e : r.members) members.push_back(element_to_json(e));
    if (!r.complement_flag) return members;
    return json{{"members", members}, {"complement", true}};
}

// --- functions and functionals ---------------------------------------------

template <class S>
json function_to_json(const GroupFunction<S>& f) {
    json atoms = json::object();
    for (long i = 0; i < f.size(); ++i)
        if (f.values[i] != S(0)) atoms[element_key(f.element_at(i))] = scalar_to_json(f.values[i]);
    return atoms;
}

template <class S>
GroupFunction<S> function_from_json(const json& j, const GroupSpec& g) {
    long box = 0;
    if (g.kind == GroupKind::FreeDiscrete)
        for (auto& [key, val] : j.items())
            for (long c : element_from_key(key, g.dims())) box = std::max(box, std::labs(c));
    GroupFunction<S> f(g, box);
    for (auto& [key, val] : j.items())
        f.set(g.reduce(element_from_key(key, g.dims())), scalar_from_json<S>(val));
    return f;
}

template <class S>
json functional_to_json(const MeasureFunctional<S>& psi) {
    json out = json::object();
    if (psi.constant != S(0)) out["constant"] = scalar_to_json(psi.constant);
    out["atoms"] = function_to_json(psi.atoms);
    return out;
}

template <class S>
MeasureFunctional<S> functional_from_json(const json& j, const GroupSpec& g) {
    S c = j.contains("constant") ? scalar_from_json<S>(j.at("constant")) : S(0);
    GroupFunction<S> atoms = j.contains("atoms") ? function_from_json<S>(j.at("atoms"), g)
                                                 : GroupFunction<S>(g);
    return MeasureFunctional<S>(std::move(atoms), c);
}

// --- problems and certificates ---------------------------------------------

template <class S>
DelsarteInstance<S> instance_from_json(const json& j) {
    GroupSpec g = group_from_json(j.at("group"));
    DelsarteInstance<S> inst;
    inst.group = g;
    inst.omega_plus = region_from_json(j.at("omega"), g);
    inst.omega_minus = j.contains("omega_minus") ? region_from_json(j.at("omega_minus"), g)
                                                 : Region::full();
    inst.rho = j.contains("rho") ? functional_from_json<S>(j.at("rho"), g)
                                 : MeasureFunctional<S>(g, S(-1));
    inst.sigma = j.contains("sigma") ? functional_from_json<S>(j.at("sigma"), g) : dirac<S>(g);
    return inst;
}

template <class S>
json instance_to_json(const DelsarteInstance<S>& inst, const std::string& mode) {
    return json{{"group", group_to_json(inst.group)},
                {"omega", region_to_json(inst.omega_plus)},
                {"omega_minus", region_to_json(inst.omega_minus)},
                {"rho", functional_to_json(inst.rho)},
                {"sigma", functional_to_json(inst.sigma)},
                {"mode", mode}};
}

template <class S>
json certificate_to_json(const DualCertificate<S>& c) {
    return json{{"s", scalar_to_json(c.s)},
                {"kappa", function_to_json(c.kappa_plus)},
                {"kappa_minus", function_to_json(c.kappa_minus)},
                {"nu", function_to_json(c.nu)},
                {"gap_to_primal", scalar_to_json(c.gap_to_primal)}};
}

template <class S>
DualCertificate<S> certificate_from_json(const json& j, const GroupSpec& g) {
    DualCertificate<S> c;
    c.s = scalar_from_json<S>(j.at("s"));
    c.kappa_plus = function_from_json<S>(j.at("kappa"), g);
    c.kappa_minus = j.contains("kappa_minus") ? function_from_json<S>(j.at("kappa_minus"), g)
                                              : GroupFunction<S>(g);
    c.nu = function_from_json<S>(j.at("nu"), g);
    if (j.contains("gap_to_primal")) c.gap_to_primal = scalar_from_json<S>(j.at("gap_to_primal"));
    return c;
}

template <class S>
json sign_swap_report_to_json(const SignSwapReport<S>& r) {
    return json{{"k", function_to_json(r.k)},
                {"positive_support", region_to_json(r.positive_support)},
                {"negative_support", region_to_json(r.negative_support)},
                {"total_sum", scalar_to_json(r.total_sum)},
                {"value_at_zero", scalar_to_json(r.value_at_zero)},
                {"positive_mass", scalar_to_json(r.positive_mass)},
                {"negative_mass", scalar_to_json(r.negative_mass)},
                {"checks",
                 {{"positivity_in_W", r.positivity_in_W},
                  {"negativity_in_SWW", r.negativity_in_SWW},
                  {"sum_zero", r.sum_zero},
                  {"minus_one_on_S", r.minus_one_on_S},
                  {"pd_certified", r.pd_certified},
                  {"pd_exact_checked", r.pd_exact_checked}}}};
}

inline json periodic_certificate_to_json(const PeriodicDualCertificate& c) {
    json spec = json::array();
    for (long i = 0; i < c.spectrum.size(); ++i) spec.push_back(scalar_to_json(c.spectrum[i]));
    return json{{"d", c.d},
                {"period", c.period},
                {"spectrum", spec},
                {"s", scalar_to_json(c.s)},
                {"exact", c.exact}};
}

inline PeriodicDualCertificate periodic_certificate_from_json(const json& j) {
    PeriodicDualCertificate c;
    c.d = j.at("d").get<int>();
    c.period = j.at("period").get<long>();
    const json& spec = j.at("spectrum");
    c.spectrum = VectorX<Rational>::Zero(static_cast<long>(spec.size()));
    for (long i = 0; i < c.spectrum.size(); ++i) c.spectrum[i] = scalar_from_json<Rational>(spec[i]);
    c.s = scalar_from_json<Rational>(j.at("s"));
    c.exact = j.value("exact", false);
    return c;
}

}  // namespace delsarte
