// Exact rational linear programming with verifiable certificates.
//
// Minimize c.x subject to A x >= b and E x = d, all variables free.
// Two-phase primal simplex over arbitrary-precision rationals with Bland's
// anti-cycling rule, so the outcome is deterministic and exact.
#ifndef TORICSTAB_LP_HPP
#define TORICSTAB_LP_HPP

#include "toricstab/rational.hpp"

namespace toricstab {

struct LinearProgram {
    RatVector objective;  // c
    RatMatrix ineq_lhs;   // A
    RatVector ineq_rhs;   // b
    RatMatrix eq_lhs;     // E (may have zero rows)
    RatVector eq_rhs;     // d

    Eigen::Index num_vars() const { return objective.size(); }

    static LinearProgram minimize(const RatVector& c) {
        LinearProgram lp;
        lp.objective = c;
        lp.ineq_lhs.resize(0, c.size());
        lp.ineq_rhs.resize(0);
        lp.eq_lhs.resize(0, c.size());
        lp.eq_rhs.resize(0);
        return lp;
    }
    void add_inequality(const RatVector& a, const Rational& rhs);  // a.x >= rhs
    void add_equality(const RatVector& a, const Rational& rhs);    // a.x == rhs
};

struct LPOutcome {
    enum class Kind { Optimal, Unbounded, Infeasible };
    Kind kind;

    // Optimal
    RatVector point;
    RatVector dual_ineq;  // multipliers for A x >= b, componentwise >= 0
    RatVector dual_eq;    // multipliers for E x = d, free sign
    Rational value;

    // Unbounded: recession direction with c.ray < 0
    RatVector ray;

    // Infeasible: Farkas certificate, ineq part >= 0
    RatVector farkas_ineq;
    RatVector farkas_eq;
};

/// Deterministic exact solve. Throws Error("DimensionMismatch") on malformed
/// input.
LPOutcome solve(const LinearProgram& lp);

/// Independent re-check of the outcome's certificate, entirely in exact
/// arithmetic: primal/dual feasibility, complementary slackness and strong
/// duality for Optimal; recession-cone membership and strict descent for
/// Unbounded; the Farkas identity for Infeasible.
bool certificate_ok(const LinearProgram& lp, const LPOutcome& outcome);

}  // namespace toricstab

#endif  // TORICSTAB_LP_HPP
