#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace delsarte {

/// Exact scalar used whenever the group exponent admits rational character
/// real parts (exponent in {1,2,3,4,6}).
using Rational = boost::multiprecision::mpq_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline Rational abs_val(const Rational& q) { return q < 0 ? Rational(-q) : q; }
inline double abs_val(double x) { return std::fabs(x); }

/// Serializes a rational losslessly as "p/q" (or "p" when q == 1).
inline std::string to_string(const Rational& q) {
    std::string s = boost::multiprecision::numerator(q).str();
    if (boost::multiprecision::denominator(q) != 1)
        s += "/" + boost::multiprecision::denominator(q).str();
    return s;
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        // allow plain integers and decimal literals
        auto dot = s.find('.');
        if (dot == std::string::npos) return Rational(s);
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        Rational denom = 1;
        for (std::size_t i = dot + 1; i < s.size(); ++i) denom *= 10;
        return Rational(digits) / denom;
    }
    Rational num(s.substr(0, slash));
    Rational den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return num / den;
}

/// Per-scalar numerical contract: exact arithmetic carries zero tolerance,
/// floating point uses the declared feasibility tolerance.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static Rational feas_eps() { return Rational(0); }
    static Rational gap_eps() { return Rational(0); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double feas_eps() { return 1e-9; }
    static double gap_eps() { return 1e-6; }
};

/// Nearest rational with small denominator within tol of x (continued
/// fractions). Used to lift float LP solutions to exact witnesses.
inline Rational rationalize(double x, double tol = 1e-9) {
    if (std::fabs(x) < tol) return Rational(0);
    bool neg = x < 0;
    double v = std::fabs(x);
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double a = v;
    for (int i = 0; i < 40; ++i) {
        long long ai = static_cast<long long>(std::floor(a));
        long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 != 0 && std::fabs(static_cast<double>(p2) / static_cast<double>(q2) - v) < tol) {
            Rational r(p2, q2);
            return neg ? Rational(-r) : r;
        }
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = a - static_cast<double>(ai);
        if (frac < 1e-15) break;
        a = 1.0 / frac;
    }
    Rational r(p1, q1 == 0 ? 1 : q1);
    return neg ? Rational(-r) : r;
}

}  // namespace delsarte
