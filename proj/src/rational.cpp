#include "toricstab/rational.hpp"

#include <boost/multiprecision/number.hpp>

#include <numeric>

namespace toricstab {

std::string to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(Integer(s));
        }
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw Error("BadRational", "zero denominator in '" + s + "'");
        return Rational(num) / Rational(den);
    } catch (const std::exception& e) {
        throw Error("BadRational", "cannot parse '" + s + "': " + e.what());
    }
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw Error("BadRational", "non-finite double");
    Rational r;
    mpq_set_d(r.backend().data(), x);
    return r;
}

Integer lcm_denominators(const RatVector& v) {
    Integer l = 1;
    for (Eigen::Index i = 0; i < v.size(); ++i) l = lcm(l, denominator(v(i)));
    return l;
}

std::int64_t gcd_entries(const IntVector& v) {
    std::int64_t g = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) g = std::gcd(g, v(i));
    return g;
}

IntVector primitivize(const RatVector& direction) {
    const Eigen::Index n = direction.size();
    Integer l = lcm_denominators(direction);
    std::vector<Integer> scaled(static_cast<size_t>(n));
    Integer g = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        scaled[static_cast<size_t>(i)] = numerator(Rational(direction(i) * Rational(l)));
        g = gcd(g, scaled[static_cast<size_t>(i)]);
    }
    if (g == 0) throw Error("ZeroVector", "cannot primitivize the zero vector");
    IntVector out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Integer q = scaled[static_cast<size_t>(i)] / g;
        out(i) = q.convert_to<std::int64_t>();
    }
    return out;
}

}  // namespace toricstab
