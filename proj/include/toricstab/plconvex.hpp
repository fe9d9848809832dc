// Rational piecewise-linear convex functions on a Delzant polytope, in the
// two representations the library works with: max-of-affine (user input) and
// values on a simplicial mesh (the LP search space).  Conversions, exact
// evaluation, convexity checking via hinge conditions, minimization and
// exact integration live here.
#ifndef TORICSTAB_PLCONVEX_HPP
#define TORICSTAB_PLCONVEX_HPP

#include "toricstab/polytope.hpp"

#include <utility>
#include <variant>
#include <vector>

namespace toricstab {

struct AffineFunction {
    RatVector a;
    Rational b;
    Rational operator()(const RatVector& x) const {
        Rational s = b;
        for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * x(i);
        return s;
    }
};

struct MaxAffinePL {
    std::vector<AffineFunction> pieces;  // f = max over pieces
};

struct MeshPL {
    SimplicialSubdivision subdivision;
    RatVector values;  // one per subdivision point
};

using PLFunction = std::variant<MaxAffinePL, MeshPL>;

/// One hinge of a mesh: an interior facet with its two incident cells and the
/// exact convexity gap (value at the opposite vertex minus the affine
/// extension from the other cell; convex means gap >= 0).
struct Hinge {
    std::vector<int> facet;
    int cell_a = 0, cell_b = 0;
    Rational gap;
};

struct ConvexityReport {
    bool convex = true;
    std::vector<Hinge> hinges;        // all interior hinges, deterministic order
    int first_violation = -1;         // index into hinges, or -1
};

/// Interior-facet hinge structure of a subdivision (gaps left at zero).
std::vector<Hinge> mesh_hinges(const SimplicialSubdivision& sub);

Rational evaluate(const MaxAffinePL& f, const RatVector& x);
/// Deterministic cell lookup (lowest cell index whose closure contains x).
/// Throws Error("PointOutsideP") when no cell contains x.
Rational evaluate(const MeshPL& f, const RatVector& x);
Rational evaluate(const PLFunction& f, const RatVector& x);

/// Drops pieces whose strict dominance region in P is empty, deduplicates.
MaxAffinePL canonicalize(const DelzantPolytope& P, const MaxAffinePL& f);

/// Cuts P along all pairwise piece-difference hyperplanes and triangulates,
/// so every cell lies in one linearity region of f; values are f at points.
MeshPL crease_refine(const DelzantPolytope& P, const MaxAffinePL& f, int max_points = 20000);

ConvexityReport is_convex(const MeshPL& f);

/// Exact minimum over P and a witness point.  Mesh functions minimize over
/// subdivision points (lexicographically least witness); max-affine functions
/// solve the epigraph LP.
std::pair<Rational, RatVector> min_over(const DelzantPolytope& P, const MaxAffinePL& f);
std::pair<Rational, RatVector> min_over(const DelzantPolytope& P, const MeshPL& f);
std::pair<Rational, RatVector> min_over(const DelzantPolytope& P, const PLFunction& f);

enum class Region { Interior, Boundary };

/// Exact integral against Lebesgue measure (Interior) or d-sigma (Boundary).
Rational integrate(const DelzantPolytope& P, const AffineFunction& f, Region region);
Rational integrate(const DelzantPolytope& P, const MaxAffinePL& f, Region region);
Rational integrate(const DelzantPolytope& P, const MeshPL& f, Region region);
Rational integrate(const DelzantPolytope& P, const PLFunction& f, Region region);

/// f minus its mean (1/vol) * integral over P.
MaxAffinePL tilde(const DelzantPolytope& P, const MaxAffinePL& f);
MeshPL tilde(const DelzantPolytope& P, const MeshPL& f);
PLFunction tilde(const DelzantPolytope& P, const PLFunction& f);

/// The affine function each mesh cell induces (exact interpolation).
AffineFunction cell_affine(const MeshPL& f, int cell);

MaxAffinePL add(const MaxAffinePL& f, const AffineFunction& l);
MeshPL add(const MeshPL& f, const AffineFunction& l);
MaxAffinePL scale(const MaxAffinePL& f, const Rational& q);  // q >= 0
MeshPL scale(const MeshPL& f, const Rational& q);

PLFunction transform(const PLFunction& f, const IntMatrix& A, const RatVector& t);

}  // namespace toricstab

#endif  // TORICSTAB_PLCONVEX_HPP
