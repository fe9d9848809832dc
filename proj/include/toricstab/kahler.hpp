// Symplectic-potential numerics on the moment polytope: Guillemin potentials
// with polynomial and affine parts, closed-form Hessians, the Abreu
// scalar-curvature operator by distance-scaled finite differences, boundary
// aware graded quadrature for the toric energies E and M, normalization,
// the reference functionals L0/M0 and energy rays along piecewise-linear
// directions.
//
// This module is double precision with per-operation tolerances; everything
// exact lives in the other modules.
#ifndef TORICSTAB_KAHLER_HPP
#define TORICSTAB_KAHLER_HPP

#include "toricstab/plconvex.hpp"

#include <memory>
#include <vector>

namespace toricstab {

struct SymplecticPotential {
    struct Monomial {
        std::vector<int> exponents;
        Rational coeff;
    };
    DelzantPolytope polytope;
    std::vector<Monomial> smooth_poly;  // smooth perturbation, rational coefficients
    AffineFunction affine;              // rational affine part

    explicit SymplecticPotential(DelzantPolytope P);
};

/// The canonical potential (1/2) sum l_k log l_k with zero smooth and affine
/// parts.
SymplecticPotential guillemin_potential(const DelzantPolytope& P);

struct GridSpec {
    double margin = 0.04;    // exclusion band (Euclidean distance to the boundary)
    double spacing = 0.05;   // evaluation-grid spacing
    double fd_step = 0.009;  // finite-difference step as a fraction of boundary distance
    int quadrature = 0;      // graded segments per direction and end; 0 = dimension default

    void validate() const;
    int grade_for(Eigen::Index dim) const;
};

struct EnergyReport {
    double E = 0;               // -(1/V) int u
    double M = 0;               // nonlinear_term + linear_term (the paper-normalized V*M)
    double nonlinear_term = 0;  // - int log det Hess u
    double linear_term = 0;     // int_boundary u - Shat int u
    double error_estimate = 0;
};

double distance_to_boundary(const DelzantPolytope& P, const Eigen::VectorXd& x);

double potential_value(const SymplecticPotential& u, const Eigen::VectorXd& x);
/// Value with facet `skip`'s l log l summand dropped (its limit on that facet
/// is zero); this is the closed-form boundary trace.
double boundary_trace(const SymplecticPotential& u, const Eigen::VectorXd& x, int skip);
Eigen::VectorXd potential_gradient(const SymplecticPotential& u, const Eigen::VectorXd& x);

/// Closed-form Hessian; throws Error("TooCloseToBoundary") inside the margin.
Eigen::MatrixXd hessian(const SymplecticPotential& u, const Eigen::VectorXd& x,
                        const GridSpec& grid = {});

/// S(x) = -(1/2) sum_ij d^2 (Hess u)^{-1}_ij / dx_i dx_j by central
/// differences with step fd_step * distance-to-boundary, Richardson
/// extrapolated.  Throws TooCloseToBoundary / SingularHessian.
double abreu_scalar(const SymplecticPotential& u, const Eigen::VectorXd& x,
                    const GridSpec& grid = {});

/// Hessian positive definite (leading principal minors, tolerance 1e-12) on
/// the margin-interior evaluation grid; throws Error("NotPositiveDefinite").
void validate_potential(const SymplecticPotential& u, const GridSpec& grid = {});

/// Damped Newton from the barycenter to the interior minimizer, then
/// subtracts the tangent plane there, so the result has value 0 and zero
/// gradient at the minimizer.  Throws Error("NewtonDivergence") with a trace.
SymplecticPotential normalize(const SymplecticPotential& u, const GridSpec& grid = {});

double energy_E(const SymplecticPotential& u, const GridSpec& grid = {});

EnergyReport energy_M(const SymplecticPotential& u, const GridSpec& grid = {});
/// Same computation on a caller-supplied base mesh (cells must partition P);
/// the quadrature is aligned to the mesh cells.
EnergyReport energy_M(const SymplecticPotential& u, const GridSpec& grid,
                      const SimplicialSubdivision& base);

/// (1/V) int u for a normalized potential (Error("NotNormalized") otherwise);
/// the artifact's stand-in for Aubin's J along the torus-invariant slice.
double j_proxy(const SymplecticPotential& u, const GridSpec& grid = {});

/// L0(u) = int_boundary u - int A0 u with A0 the Abreu scalar of u0 on the
/// quadrature nodes, and V M0(u) = -int log det Hess u + L0(u).
double L0(const SymplecticPotential& u0, const SymplecticPotential& u,
          const GridSpec& grid = {});
EnergyReport M0(const SymplecticPotential& u0, const SymplecticPotential& u,
                const GridSpec& grid = {});

/// Precomputes the quadrature nodes and the A0 field once for repeated M0
/// evaluations against a fixed reference potential.
class M0Evaluator {
public:
    M0Evaluator(const SymplecticPotential& u0, const GridSpec& grid = {});
    ~M0Evaluator();
    M0Evaluator(M0Evaluator&&) noexcept;
    double operator()(const SymplecticPotential& u) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct RayTable {
    std::vector<std::pair<double, double>> rows;  // (t, M(u + t f~))
    double slope = 0;                             // least-squares slope over t
    double donaldson_L = 0;                       // exact L(f), for comparison
};

/// Energies along u + t f~ with f~ = f - mean(f); the quadrature mesh is the
/// crease refinement of f, so the a.e. Hessian along the ray is that of u.
RayTable ray_energy(const SymplecticPotential& u, const MaxAffinePL& f,
                    const std::vector<double>& t_list, const GridSpec& grid = {});
RayTable ray_energy(const SymplecticPotential& u, const PLFunction& f,
                    const std::vector<double>& t_list, const GridSpec& grid = {});

/// Max-norm residual of Hess_psi(grad u(x)) * Hess_u(x) - I, with Hess_psi
/// obtained by finite differences of the Newton-inverted gradient map.
double hessian_dual_residual(const SymplecticPotential& u, const Eigen::VectorXd& x,
                             const GridSpec& grid = {});

/// Interior evaluation-grid points (spacing lattice, margin-clipped).
std::vector<Eigen::VectorXd> evaluation_grid(const DelzantPolytope& P, const GridSpec& grid = {});

}  // namespace toricstab

#endif  // TORICSTAB_KAHLER_HPP
