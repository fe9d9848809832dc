// Exact rational geometry of Delzant moment polytopes: construction and
// validation from facet data, vertex enumeration, lattice-normalized boundary
// measure, triangulations and nested simplicial subdivisions, and exact
// integration of functions that are affine on simplices.
//
// Everything here is arbitrary-precision rational; nothing rounds.
#ifndef TORICSTAB_POLYTOPE_HPP
#define TORICSTAB_POLYTOPE_HPP

#include "toricstab/rational.hpp"

#include <optional>
#include <vector>

namespace toricstab {

/// P = { x : <x, normal_k> - offset_k >= 0 }.  Normals are primitive integer
/// vectors.  Construction validates that P is bounded, full-dimensional and
/// irredundant (the Delzant vertex condition is checked separately by
/// check_delzant, so that near-misses can still be constructed and reported).
class DelzantPolytope {
public:
    DelzantPolytope(IntMatrix normals, RatVector offsets);

    Eigen::Index dim() const { return normals_.cols(); }
    Eigen::Index num_facets() const { return normals_.rows(); }
    const IntMatrix& normals() const { return normals_; }
    const RatVector& offsets() const { return offsets_; }
    IntVector normal(Eigen::Index k) const { return normals_.row(k).transpose(); }

    /// l_k(x) = <x, normal_k> - offset_k.
    Rational facet_value(Eigen::Index k, const RatVector& x) const;
    bool contains(const RatVector& x) const;

    /// Vertices in lexicographic order.
    const std::vector<RatVector>& vertices() const { return vertices_; }

private:
    IntMatrix normals_;
    RatVector offsets_;
    std::vector<RatVector> vertices_;
};

struct SimplicialSubdivision {
    Eigen::Index dim = 0;
    std::vector<RatVector> points;
    std::vector<std::vector<int>> cells;  // (dim+1) point indices each
    int depth = 0;                        // refinement provenance
};

struct DelzantReport {
    struct VertexCheck {
        RatVector vertex;
        std::vector<int> incident_facets;
        Rational det;  // 0 when the facet count is not dim
        bool ok = false;
    };
    std::vector<VertexCheck> vertex_checks;
    bool normals_primitive = true;
    bool valid = false;
};

/// A boundary simplex together with the facet of P carrying it and its exact
/// lattice (d-sigma) mass.
struct BoundarySimplex {
    int facet = 0;
    std::vector<RatVector> vertices;  // dim points spanning an (n-1)-simplex
    std::vector<int> indices;         // indices into the owning point list
    Rational mass;
};

DelzantReport check_delzant(const DelzantPolytope& P);

Rational volume(const DelzantPolytope& P);
Rational boundary_area(const DelzantPolytope& P);
Rational mean_scalar(const DelzantPolytope& P);
RatVector barycenter(const DelzantPolytope& P);

/// Deterministic triangulation of P using only its vertices (recursive
/// coning from the lexicographically least vertex of every face, so the
/// induced triangulation of a face depends only on the face).
SimplicialSubdivision triangulate(const DelzantPolytope& P);

/// The boundary of P triangulated facet by facet, with exact d-sigma masses.
/// For dim 1 each facet is a single point of mass 1.
std::vector<BoundarySimplex> boundary_mesh(const DelzantPolytope& P);

/// Nested graded mesh: lattice points of spacing 1/(L 2^depth) inside P
/// (L = lcm of the vertex coordinate denominators), the vertices and the
/// barycenter.  Depth k+1 refines depth k cell by cell, so piecewise-linear
/// function spaces are nested along the depth sequence.  Throws
/// Error("MeshTooLarge") beyond `max_points`.
SimplicialSubdivision subdivide(const DelzantPolytope& P, int depth, int max_points = 20000);

/// Exact volume of a cell list; equals volume(P) for every valid subdivision.
Rational subdivision_volume(const SimplicialSubdivision& sub);

/// Structural validation: positive cell volumes, exact partition of P,
/// every vertex of P among the points, no point inside a foreign cell.
void validate_subdivision(const DelzantPolytope& P, const SimplicialSubdivision& sub);

/// Boundary facets of a subdivision of P, with d-sigma masses (each must lie
/// in a facet of P).
std::vector<BoundarySimplex> subdivision_boundary(const DelzantPolytope& P,
                                                  const SimplicialSubdivision& sub);

Rational support_function(const std::vector<IntVector>& weights, const RatVector& lambda);

/// A P + t for unimodular integer A; exact facet data of the image.
DelzantPolytope transform(const DelzantPolytope& P, const IntMatrix& A, const RatVector& t);
SimplicialSubdivision transform(const SimplicialSubdivision& sub, const IntMatrix& A,
                                const RatVector& t);

// -- low-level exact helpers shared with the PL and stability modules --

/// |det(v_1-v_0, ..., v_n-v_0)| / n!.
Rational simplex_volume(const std::vector<RatVector>& verts);

/// d-sigma mass of an (n-1)-simplex lying in the hyperplane <x,normal>=offset:
/// |det(edges, w)| / (n-1)! for any w with <normal, w> = 1.
Rational facet_simplex_mass(const std::vector<RatVector>& verts, const IntVector& normal);

/// Barycentric coordinates of x in the simplex, or nullopt if degenerate.
std::optional<RatVector> barycentric_coordinates(const std::vector<RatVector>& verts,
                                                 const RatVector& x);

/// Insert a point into a subdivision by stellar subdivision of every cell
/// whose closure contains it.  No-op when the point coincides with an
/// existing one.  Returns the point index.
int stellar_insert(SimplicialSubdivision& sub, const RatVector& p);

/// Triangulate the convex region { x : <rows_i, x> >= rhs_i } given its
/// (already enumerated) vertex list; recursive lexicographic coning, so the
/// triangulation induced on a face is intrinsic to that face.
std::vector<std::vector<int>> cone_triangulate(const std::vector<RatVector>& verts,
                                               const std::vector<RatVector>& row_normals,
                                               const RatVector& row_rhs);

/// All vertices of { x : <rows_i, x> >= rhs_i }, deduplicated, lexicographic.
/// Throws on unbounded or empty regions.
std::vector<RatVector> enumerate_vertices(const std::vector<RatVector>& row_normals,
                                          const RatVector& row_rhs);

}  // namespace toricstab

#endif  // TORICSTAB_POLYTOPE_HPP
