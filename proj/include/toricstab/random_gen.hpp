// Seeded random instances for the property suites: unimodular transforms,
// small Delzant polytopes, convex PL functions and pointed LPs.
#ifndef TORICSTAB_RANDOM_GEN_HPP
#define TORICSTAB_RANDOM_GEN_HPP

#include "toricstab/lp.hpp"
#include "toricstab/plconvex.hpp"

#include <cstdint>
#include <random>

namespace toricstab {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
    /// Rational with numerator in [-max_num, max_num] and denominator in [1, max_den].
    Rational rational(int max_num, int max_den) {
        return Rational(uniform(-max_num, max_num)) / Rational(uniform(1, max_den));
    }
    double real01() { return std::uniform_real_distribution<double>(0, 1)(eng_); }
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

/// Product of elementary integer shears and swaps; |det| = 1 with small entries.
IntMatrix random_unimodular(Rng& rng, Eigen::Index n, int steps = 5);

RatVector random_translation(Rng& rng, Eigen::Index n, int max_num = 3, int max_den = 3);

/// A random catalog polytope moved by a random unimodular affine map
/// (Delzant by construction).
DelzantPolytope random_delzant2d(Rng& rng);

AffineFunction random_affine(Rng& rng, Eigen::Index n, int max_num = 2, int max_den = 3);

/// max of `pieces` random affine functions (convex by construction).
MaxAffinePL random_convex_pl(Rng& rng, Eigen::Index n, int pieces);

/// Small LP whose feasible region is pointed (every variable carries a lower
/// bound), suitable for the brute-force oracle.  At most 6 variables and 10
/// rows including the bounds.
LinearProgram random_pointed_lp(Rng& rng);

}  // namespace toricstab

#endif  // TORICSTAB_RANDOM_GEN_HPP
