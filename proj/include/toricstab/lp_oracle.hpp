// Brute-force LP reference, independent of the simplex path: enumerates all
// basic solutions for the optimum and all extreme recession rays for
// unboundedness.  Complete for pointed feasible regions (e.g. every variable
// bounded below), which the random generator guarantees.
#ifndef TORICSTAB_LP_ORACLE_HPP
#define TORICSTAB_LP_ORACLE_HPP

#include "toricstab/lp.hpp"

namespace toricstab {

struct OracleResult {
    LPOutcome::Kind kind;
    Rational value;  // meaningful for Optimal
};

OracleResult brute_force_lp(const LinearProgram& lp);

}  // namespace toricstab

#endif  // TORICSTAB_LP_ORACLE_HPP
