// Toric K-stability data computed exactly from the moment polytope: the
// Donaldson functional L(f), the Futaki character, the non-Archimedean
// J-norm, stability ratios, the per-subdivision stability threshold delta,
// destabilizer scans, and toric test-configuration polytopes.
#ifndef TORICSTAB_STABILITY_HPP
#define TORICSTAB_STABILITY_HPP

#include "toricstab/plconvex.hpp"

#include <optional>

namespace toricstab {

/// L(f) = integral of f over the boundary (d-sigma) minus Shat times the
/// interior integral; linear in f, zero on constants by construction.
Rational donaldson_functional(const DelzantPolytope& P, const AffineFunction& f);
Rational donaldson_functional(const DelzantPolytope& P, const MaxAffinePL& f);
Rational donaldson_functional(const DelzantPolytope& P, const MeshPL& f);
Rational donaldson_functional(const DelzantPolytope& P, const PLFunction& f);

/// (L(x_1), ..., L(x_n)); the zero flag means L vanishes on all affine
/// functions.
std::pair<RatVector, bool> futaki_character(const DelzantPolytope& P);

/// inf over affine l of (1/V) int (f+l) - min (f+l), exact via one LP on the
/// crease-refined mesh.  Zero exactly when f is affine on P.
Rational j_norm(const DelzantPolytope& P, const MaxAffinePL& f);
Rational j_norm(const DelzantPolytope& P, const MeshPL& f);  // throws NotConvex
Rational j_norm(const DelzantPolytope& P, const PLFunction& f);

/// L(f) / ||f||_J; throws Error("AffineInput") when the norm vanishes.
Rational stability_ratio(const DelzantPolytope& P, const PLFunction& f);

struct DeltaResult {
    Rational delta;
    MeshPL minimizer;  // normalized: min 0 at the barycenter, mean 1
};

/// Exact minimum of L over convex mesh functions with ||f||_J = 1, gauged so
/// the barycenter lies in the minimizing set.  Requires a vanishing Futaki
/// character (throws Error("FutakiNonzero") otherwise).
DeltaResult delta_on_subdivision(const DelzantPolytope& P, const SimplicialSubdivision& sub);

struct StabilityReport {
    enum class Verdict { UnstableAffine, DestabilizerFound, NoDestabilizerUpToDepth };
    RatVector futaki;
    bool futaki_zero = false;
    std::vector<std::pair<int, Rational>> delta_by_depth;
    Verdict verdict = Verdict::NoDestabilizerUpToDepth;
    std::optional<PLFunction> witness;
    Rational witness_L;
    Rational witness_J;
};

StabilityReport delta_scan(const DelzantPolytope& P, int max_depth, int max_points = 20000);

struct SimpleScanResult {
    MaxAffinePL f;
    Rational ratio;
    Rational L;
    Rational jnorm;
};

/// Best (lowest) stability ratio among single-crease functions
/// max(0, <a,x> - c) over the given candidate grid.
std::optional<SimpleScanResult> simple_pl_scan(
    const DelzantPolytope& P,
    const std::vector<std::pair<IntVector, std::vector<Rational>>>& creases);

struct TestConfiguration {
    DelzantPolytope big;                        // in dimension n+1
    std::vector<std::vector<RatVector>> cells;  // maximal linearity cells of f
};

/// Facet data of the big polytope {(x, lambda) : f(x) <= lambda <= max_P f}
/// plus the induced decomposition of P.  Rejects constant f
/// (Error("ConstantPL")); mesh input must be convex (Error("NotConvex")).
TestConfiguration build_test_config(const DelzantPolytope& P, const MaxAffinePL& f);
TestConfiguration build_test_config(const DelzantPolytope& P, const MeshPL& f);
TestConfiguration build_test_config(const DelzantPolytope& P, const PLFunction& f);

}  // namespace toricstab

#endif  // TORICSTAB_STABILITY_HPP
