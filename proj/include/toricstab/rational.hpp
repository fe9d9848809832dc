// Exact rational scalar type and Eigen aliases shared by all modules.
#ifndef TORICSTAB_RATIONAL_HPP
#define TORICSTAB_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricstab {

using Rational = boost::multiprecision::mpq_rational;
using Integer  = boost::multiprecision::mpz_int;

using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Domain error with a machine-readable code ("UnboundedPolytope", ...).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

/// Canonical "p/q" form: q > 0, gcd(p,q) = 1, zero prints as "0/1".
std::string to_string(const Rational& r);

/// Accepts "p/q" or a bare integer "p"; canonicalizes; rejects q = 0.
Rational parse_rational(const std::string& s);

double to_double(const Rational& r);

/// Exact Rational from a double (doubles are dyadic rationals).
Rational rational_from_double(double x);

Integer lcm_denominators(const RatVector& v);

/// gcd of |entries|; 0 for the zero vector.
std::int64_t gcd_entries(const IntVector& v);

/// Scales a rational direction to the primitive integer vector with the
/// same orientation. Rejects the zero vector.
IntVector primitivize(const RatVector& direction);

inline RatVector to_rational(const IntVector& v) {
    RatVector r(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) r(i) = Rational(v(i));
    return r;
}

inline Eigen::VectorXd to_double(const RatVector& v) {
    Eigen::VectorXd r(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) r(i) = to_double(v(i));
    return r;
}

}  // namespace toricstab

#endif  // TORICSTAB_RATIONAL_HPP
