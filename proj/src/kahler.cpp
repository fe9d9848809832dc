#include "toricstab/kahler.hpp"

#include "toricstab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace toricstab {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Cached double-precision view of a potential.
struct Ctx {
    MatrixXd normals;   // facet normals as rows
    VectorXd offsets;
    VectorXd norm2;     // squared Euclidean norms of the normals
    std::vector<std::pair<std::vector<int>, double>> poly;
    VectorXd affine_a;
    double affine_b;
    Eigen::Index n;

    explicit Ctx(const SymplecticPotential& u) {
        const DelzantPolytope& P = u.polytope;
        n = P.dim();
        normals.resize(P.num_facets(), n);
        offsets.resize(P.num_facets());
        norm2.resize(P.num_facets());
        for (Eigen::Index k = 0; k < P.num_facets(); ++k) {
            for (Eigen::Index j = 0; j < n; ++j)
                normals(k, j) = static_cast<double>(P.normals()(k, j));
            offsets(k) = to_double(P.offsets()(k));
            norm2(k) = normals.row(k).squaredNorm();
        }
        for (const auto& mono : u.smooth_poly) poly.emplace_back(mono.exponents, to_double(mono.coeff));
        affine_a = to_double(u.affine.a);
        affine_b = to_double(u.affine.b);
    }

    VectorXd ell(const VectorXd& x) const { return normals * x - offsets; }

    double poly_value(const VectorXd& x) const {
        double s = 0;
        for (const auto& [e, c] : poly) {
            double t = c;
            for (Eigen::Index i = 0; i < n; ++i)
                for (int r = 0; r < e[static_cast<size_t>(i)]; ++r) t *= x(i);
            s += t;
        }
        return s;
    }

    VectorXd poly_gradient(const VectorXd& x) const {
        VectorXd g = VectorXd::Zero(n);
        for (const auto& [e, c] : poly) {
            for (Eigen::Index i = 0; i < n; ++i) {
                const int ei = e[static_cast<size_t>(i)];
                if (ei == 0) continue;
                double t = c * ei;
                for (Eigen::Index j = 0; j < n; ++j) {
                    const int target = e[static_cast<size_t>(j)] - (j == i ? 1 : 0);
                    for (int r = 0; r < target; ++r) t *= x(j);
                }
                g(i) += t;
            }
        }
        return g;
    }

    MatrixXd poly_hessian(const VectorXd& x) const {
        MatrixXd h = MatrixXd::Zero(n, n);
        for (const auto& [e, c] : poly) {
            for (Eigen::Index i = 0; i < n; ++i) {
                for (Eigen::Index j = i; j < n; ++j) {
                    const int ei = e[static_cast<size_t>(i)];
                    const int ej = e[static_cast<size_t>(j)];
                    double factor;
                    if (i == j) {
                        if (ei < 2) continue;
                        factor = static_cast<double>(ei) * (ei - 1);
                    } else {
                        if (ei < 1 || ej < 1) continue;
                        factor = static_cast<double>(ei) * ej;
                    }
                    double t = c * factor;
                    for (Eigen::Index k = 0; k < n; ++k) {
                        int target = e[static_cast<size_t>(k)];
                        if (k == i) --target;
                        if (k == j) --target;
                        for (int r = 0; r < target; ++r) t *= x(k);
                    }
                    h(i, j) += t;
                    if (i != j) h(j, i) += t;
                }
            }
        }
        return h;
    }

    double value(const VectorXd& x, int skip = -1) const {
        VectorXd l = ell(x);
        double s = 0;
        for (Eigen::Index k = 0; k < l.size(); ++k) {
            if (static_cast<int>(k) == skip) continue;
            if (l(k) > 0) s += 0.5 * l(k) * std::log(l(k));
        }
        return s + poly_value(x) + affine_a.dot(x) + affine_b;
    }

    VectorXd gradient(const VectorXd& x) const {
        VectorXd l = ell(x);
        VectorXd g = affine_a + poly_gradient(x);
        for (Eigen::Index k = 0; k < l.size(); ++k)
            g += 0.5 * (std::log(l(k)) + 1.0) * normals.row(k).transpose();
        return g;
    }

    MatrixXd hess(const VectorXd& x) const {
        VectorXd l = ell(x);
        MatrixXd h = poly_hessian(x);
        for (Eigen::Index k = 0; k < l.size(); ++k)
            h += (0.5 / l(k)) * (normals.row(k).transpose() * normals.row(k));
        return h;
    }

    bool strictly_inside(const VectorXd& x) const {
        VectorXd l = ell(x);
        for (Eigen::Index k = 0; k < l.size(); ++k)
            if (!(l(k) > 0)) return false;
        return true;
    }

    double dist(const VectorXd& x) const {
        VectorXd l = ell(x);
        double d = std::numeric_limits<double>::infinity();
        for (Eigen::Index k = 0; k < l.size(); ++k)
            d = std::min(d, l(k) / std::sqrt(norm2(k)));
        return d;
    }
};

MatrixXd invert_spd(const MatrixXd& h) {
    Eigen::LLT<MatrixXd> llt(h);
    if (llt.info() != Eigen::Success)
        throw Error("SingularHessian", "Hessian is not positive definite at a sample point");
    MatrixXd w = llt.solve(MatrixXd::Identity(h.rows(), h.cols()));
    const double kappa = h.cwiseAbs().maxCoeff() * w.cwiseAbs().maxCoeff();
    if (!(kappa < 1e10) || !w.allFinite())
        throw Error("SingularHessian", "Hessian conditioning below 1e-10");
    return w;
}

double log_det_spd(const MatrixXd& h) {
    Eigen::LLT<MatrixXd> llt(h);
    if (llt.info() != Eigen::Success)
        throw Error("SingularHessian", "Hessian is not positive definite at a quadrature node");
    double s = 0;
    for (Eigen::Index i = 0; i < h.rows(); ++i) s += std::log(llt.matrixL()(i, i));
    return 2.0 * s;
}

// Gauss-Legendre nodes and weights on [0,1], computed once per order by
// Newton iteration on the recurrence.
void gauss01(int q, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(static_cast<size_t>(q));
    weights.resize(static_cast<size_t>(q));
    for (int k = 0; k < q; ++k) {
        double x = std::cos(M_PI * (k + 0.75) / (q + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int j = 2; j <= q; ++j) {
                double p2 = ((2.0 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = q * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<size_t>(q - 1 - k)] = 0.5 * (x + 1);
        weights[static_cast<size_t>(q - 1 - k)] = 1.0 / ((1 - x * x) * dp * dp);
    }
}

// Composite 1D rule on [0,1], geometrically graded toward both endpoints.
void graded_axis(int grade, int q, std::vector<double>& nodes, std::vector<double>& weights) {
    std::vector<double> gx, gw;
    gauss01(q, gx, gw);
    std::vector<double> breaks;
    breaks.push_back(0.0);
    for (int j = grade; j >= 1; --j) breaks.push_back(std::ldexp(1.0, -j));
    for (int j = 2; j <= grade; ++j) breaks.push_back(1.0 - std::ldexp(1.0, -j));
    breaks.push_back(1.0);
    nodes.clear();
    weights.clear();
    for (size_t s = 0; s + 1 < breaks.size(); ++s) {
        const double a = breaks[s], b = breaks[s + 1];
        for (int k = 0; k < q; ++k) {
            nodes.push_back(a + (b - a) * gx[static_cast<size_t>(k)]);
            weights.push_back((b - a) * gw[static_cast<size_t>(k)]);
        }
    }
}

struct INode {
    VectorXd x;
    double w;
    int cell;
    VectorXd lambda;  // barycentric w.r.t. the cell's vertex order
};
struct BNode {
    VectorXd x;
    double w;  // includes the d-sigma mass normalization
    int facet;
    int simplex;
    VectorXd lambda;
};

struct QuadratureSet {
    std::vector<INode> interior;
    std::vector<BNode> boundary;
    std::vector<std::vector<int>> cell_points;  // per interior cell
    std::vector<std::vector<int>> bs_points;    // per boundary simplex
    std::vector<VectorXd> mesh_points;          // base mesh points (double)
};

constexpr long kNodeBudget = 30000000;

// Duffy-type tensor rule on one simplex; calls body(x, weight, lambda).
template <typename F>
void simplex_tensor_rule(const std::vector<VectorXd>& verts, double measure, int grade, int q,
                         F&& body) {
    const int d = static_cast<int>(verts.size()) - 1;
    if (d == 0) {
        VectorXd lam(1);
        lam(0) = 1.0;
        body(verts[0], measure, lam);
        return;
    }
    std::vector<double> axis_nodes, axis_weights;
    graded_axis(grade, q, axis_nodes, axis_weights);
    const size_t na = axis_nodes.size();
    double dfact = 1;
    for (int i = 2; i <= d; ++i) dfact *= i;

    std::vector<size_t> idx(static_cast<size_t>(d), 0);
    while (true) {
        double w = measure * dfact;
        VectorXd lam(d + 1);
        double prefix = 1.0;
        for (int i = 0; i < d; ++i) {
            const double s = axis_nodes[idx[static_cast<size_t>(i)]];
            w *= axis_weights[idx[static_cast<size_t>(i)]];
            for (int rep = 0; rep < d - 1 - i; ++rep) w *= s;
            lam(i) = prefix * (1.0 - s);
            prefix *= s;
        }
        lam(d) = prefix;
        VectorXd x = VectorXd::Zero(verts[0].size());
        for (int i = 0; i <= d; ++i) x += lam(i) * verts[static_cast<size_t>(i)];
        body(x, w, lam);

        int pos = d - 1;
        while (pos >= 0) {
            if (++idx[static_cast<size_t>(pos)] < na) break;
            idx[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
}

QuadratureSet build_quadrature(const DelzantPolytope& P, const SimplicialSubdivision& base,
                               const GridSpec& grid) {
    const Eigen::Index n = P.dim();
    const int grade = grid.grade_for(n);
    const int q = n <= 2 ? 8 : 5;

    QuadratureSet Q;
    for (const auto& p : base.points) Q.mesh_points.push_back(to_double(p));

    {
        const long per_cell = static_cast<long>(std::pow(2.0 * grade * q, static_cast<double>(n)));
        if (per_cell * static_cast<long>(base.cells.size()) > kNodeBudget)
            throw Error("QuadratureBudgetExceeded", "graded rule exceeds the node budget");
    }

    for (size_t c = 0; c < base.cells.size(); ++c) {
        Q.cell_points.push_back(base.cells[c]);
        std::vector<VectorXd> verts;
        std::vector<RatVector> rverts;
        for (int i : base.cells[c]) {
            verts.push_back(Q.mesh_points[static_cast<size_t>(i)]);
            rverts.push_back(base.points[static_cast<size_t>(i)]);
        }
        const double vol = to_double(simplex_volume(rverts));
        simplex_tensor_rule(verts, vol, grade, q,
                            [&](const VectorXd& x, double w, const VectorXd& lam) {
                                Q.interior.push_back({x, w, static_cast<int>(c), lam});
                            });
    }

    const int bq = n - 1 <= 2 ? 8 : 5;
    auto bsimplices = subdivision_boundary(P, base);
    for (size_t s = 0; s < bsimplices.size(); ++s) {
        const auto& bs = bsimplices[s];
        Q.bs_points.push_back(bs.indices);
        std::vector<VectorXd> verts;
        for (const auto& v : bs.vertices) verts.push_back(to_double(v));
        simplex_tensor_rule(verts, to_double(bs.mass), grade, bq,
                            [&](const VectorXd& x, double w, const VectorXd& lam) {
                                Q.boundary.push_back(
                                    {x, w, bs.facet, static_cast<int>(s), lam});
                            });
    }
    return Q;
}

double abreu_scalar_raw(const Ctx& ctx, const VectorXd& x, double fd_fraction) {
    const Eigen::Index n = ctx.n;
    const double h0 = fd_fraction * ctx.dist(x);
    auto term = [&](double h) {
        MatrixXd w0 = invert_spd(ctx.hess(x));
        double sum = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            VectorXd xp = x, xm = x;
            xp(i) += h;
            xm(i) -= h;
            if (!ctx.strictly_inside(xp) || !ctx.strictly_inside(xm))
                throw Error("TooCloseToBoundary", "finite-difference stencil leaves the polytope");
            MatrixXd wp = invert_spd(ctx.hess(xp));
            MatrixXd wm = invert_spd(ctx.hess(xm));
            sum += (wp(i, i) - 2 * w0(i, i) + wm(i, i)) / (h * h);
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
                xpp(i) += h;
                xpp(j) += h;
                xpm(i) += h;
                xpm(j) -= h;
                xmp(i) -= h;
                xmp(j) += h;
                xmm(i) -= h;
                xmm(j) -= h;
                if (!ctx.strictly_inside(xpp) || !ctx.strictly_inside(xmm) ||
                    !ctx.strictly_inside(xpm) || !ctx.strictly_inside(xmp))
                    throw Error("TooCloseToBoundary",
                                "finite-difference stencil leaves the polytope");
                const double mixed = (invert_spd(ctx.hess(xpp))(i, j) -
                                      invert_spd(ctx.hess(xpm))(i, j) -
                                      invert_spd(ctx.hess(xmp))(i, j) +
                                      invert_spd(ctx.hess(xmm))(i, j)) /
                                     (4 * h * h);
                sum += 2 * mixed;
            }
        }
        return -0.5 * sum;
    };
    const double coarse = term(h0);
    const double fine = term(h0 / 2);
    return (4 * fine - coarse) / 3;  // Richardson for the O(h^2) stencil
}

struct NewtonResult {
    VectorXd x;
    std::string trace;
};

NewtonResult newton_minimize(const Ctx& ctx, const DelzantPolytope& P) {
    VectorXd x = to_double(barycenter(P));
    std::ostringstream trace;
    for (int iter = 0; iter < 200; ++iter) {
        VectorXd g = ctx.gradient(x);
        const double gn = g.cwiseAbs().maxCoeff();
        trace << "iter " << iter << " |grad| " << gn << "\n";
        if (gn < 1e-12) return {x, trace.str()};
        Eigen::LLT<MatrixXd> llt(ctx.hess(x));
        if (llt.info() != Eigen::Success)
            throw Error("NewtonDivergence", "indefinite Hessian\n" + trace.str());
        VectorXd d = llt.solve(-g);
        double s = 1.0;
        while (true) {
            VectorXd xn = x + s * d;
            if (ctx.strictly_inside(xn) &&
                ctx.gradient(xn).cwiseAbs().maxCoeff() <= (1 - 0.25 * s) * gn) {
                x = xn;
                break;
            }
            s *= 0.5;
            if (s < 1e-16)
                throw Error("NewtonDivergence", "line search stalled\n" + trace.str());
        }
    }
    throw Error("NewtonDivergence", "no convergence in 200 iterations\n" + trace.str());
}

double least_squares_slope(const std::vector<std::pair<double, double>>& rows) {
    double tm = 0, mm = 0;
    for (const auto& [t, m] : rows) {
        tm += t;
        mm += m;
    }
    tm /= static_cast<double>(rows.size());
    mm /= static_cast<double>(rows.size());
    double num = 0, den = 0;
    for (const auto& [t, m] : rows) {
        num += (t - tm) * (m - mm);
        den += (t - tm) * (t - tm);
    }
    if (den == 0) throw Error("BadRay", "need at least two distinct ray parameters");
    return num / den;
}

struct EnergyParts {
    double int_u = 0;
    double int_neg_logdet = 0;
    double bnd_u = 0;
};

EnergyParts accumulate_energies(const Ctx& ctx, const QuadratureSet& Q) {
    EnergyParts parts;
    for (const auto& node : Q.interior) {
        parts.int_u += node.w * ctx.value(node.x);
        parts.int_neg_logdet -= node.w * log_det_spd(ctx.hess(node.x));
    }
    for (const auto& node : Q.boundary) parts.bnd_u += node.w * ctx.value(node.x, node.facet);
    return parts;
}

EnergyReport energy_report_from(const Ctx& ctx, const DelzantPolytope& P,
                                const SimplicialSubdivision& base, const GridSpec& grid) {
    const double V = to_double(volume(P));
    const double shat = to_double(mean_scalar(P));

    auto run = [&](const GridSpec& g) {
        QuadratureSet Q = build_quadrature(P, base, g);
        EnergyParts parts = accumulate_energies(ctx, Q);
        EnergyReport r;
        r.E = -parts.int_u / V;
        r.nonlinear_term = parts.int_neg_logdet;
        r.linear_term = parts.bnd_u - shat * parts.int_u;
        r.M = r.nonlinear_term + r.linear_term;
        return r;
    };

    EnergyReport fine = run(grid);
    GridSpec coarse_grid = grid;
    coarse_grid.quadrature = std::max(4, grid.grade_for(P.dim()) - 4);
    EnergyReport coarse = run(coarse_grid);
    fine.error_estimate =
        std::max({std::abs(fine.M - coarse.M), std::abs(fine.E - coarse.E), 1e-14});
    return fine;
}

}  // namespace

SymplecticPotential::SymplecticPotential(DelzantPolytope P) : polytope(std::move(P)) {
    affine.a = RatVector::Zero(polytope.dim());
    affine.b = 0;
}

SymplecticPotential guillemin_potential(const DelzantPolytope& P) {
    return SymplecticPotential(P);
}

void GridSpec::validate() const {
    if (!(margin > 0) || !(spacing > 0) || !(fd_step > 0) || quadrature < 0)
        throw Error("BadGrid", "margin, spacing and fd_step must be positive");
    if (!(fd_step < margin / 4)) throw Error("BadGrid", "fd_step must be below margin/4");
}

int GridSpec::grade_for(Eigen::Index dim) const {
    if (quadrature > 0) return quadrature;
    return dim <= 1 ? 22 : dim == 2 ? 16 : 10;
}

double distance_to_boundary(const DelzantPolytope& P, const VectorXd& x) {
    return Ctx(SymplecticPotential(P)).dist(x);
}

double potential_value(const SymplecticPotential& u, const VectorXd& x) {
    return Ctx(u).value(x);
}

double boundary_trace(const SymplecticPotential& u, const VectorXd& x, int skip) {
    return Ctx(u).value(x, skip);
}

VectorXd potential_gradient(const SymplecticPotential& u, const VectorXd& x) {
    return Ctx(u).gradient(x);
}

MatrixXd hessian(const SymplecticPotential& u, const VectorXd& x, const GridSpec& grid) {
    grid.validate();
    Ctx ctx(u);
    if (ctx.dist(x) < grid.margin)
        throw Error("TooCloseToBoundary", "Hessian requested inside the margin band");
    return ctx.hess(x);
}

double abreu_scalar(const SymplecticPotential& u, const VectorXd& x, const GridSpec& grid) {
    grid.validate();
    Ctx ctx(u);
    if (ctx.dist(x) < grid.margin)
        throw Error("TooCloseToBoundary", "scalar curvature requested inside the margin band");
    return abreu_scalar_raw(ctx, x, grid.fd_step);
}

std::vector<VectorXd> evaluation_grid(const DelzantPolytope& P, const GridSpec& grid) {
    grid.validate();
    const Eigen::Index n = P.dim();
    VectorXd lo = to_double(P.vertices()[0]), hi = lo;
    for (const auto& v : P.vertices()) {
        VectorXd vd = to_double(v);
        lo = lo.cwiseMin(vd);
        hi = hi.cwiseMax(vd);
    }
    Ctx ctx{SymplecticPotential(P)};
    std::vector<VectorXd> out;
    std::vector<long> k(static_cast<size_t>(n)), kmin(static_cast<size_t>(n)),
        kmax(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        kmin[static_cast<size_t>(i)] = static_cast<long>(std::ceil(lo(i) / grid.spacing));
        kmax[static_cast<size_t>(i)] = static_cast<long>(std::floor(hi(i) / grid.spacing));
        k[static_cast<size_t>(i)] = kmin[static_cast<size_t>(i)];
    }
    while (true) {
        VectorXd x(n);
        for (Eigen::Index i = 0; i < n; ++i) x(i) = grid.spacing * k[static_cast<size_t>(i)];
        if (ctx.dist(x) >= grid.margin) out.push_back(x);
        Eigen::Index pos = n - 1;
        while (pos >= 0) {
            if (++k[static_cast<size_t>(pos)] <= kmax[static_cast<size_t>(pos)]) break;
            k[static_cast<size_t>(pos)] = kmin[static_cast<size_t>(pos)];
            --pos;
        }
        if (pos < 0) break;
    }
    if (out.empty()) throw Error("BadGrid", "no grid points survive the margin");
    return out;
}

void validate_potential(const SymplecticPotential& u, const GridSpec& grid) {
    grid.validate();
    Ctx ctx(u);
    for (const auto& x : evaluation_grid(u.polytope, grid)) {
        MatrixXd h = ctx.hess(x);
        // Leading principal minors via incremental determinants.
        for (Eigen::Index k = 1; k <= h.rows(); ++k) {
            if (!(h.topLeftCorner(k, k).determinant() > 1e-12))
                throw Error("NotPositiveDefinite",
                            "Hessian minor fails at an evaluation-grid point");
        }
    }
}

SymplecticPotential normalize(const SymplecticPotential& u, const GridSpec& grid) {
    grid.validate();
    Ctx ctx(u);
    NewtonResult nr = newton_minimize(ctx, u.polytope);
    const VectorXd g = ctx.gradient(nr.x);
    const double val = ctx.value(nr.x);

    SymplecticPotential out = u;
    RatVector gr(u.polytope.dim());
    RatVector xr(u.polytope.dim());
    for (Eigen::Index i = 0; i < u.polytope.dim(); ++i) {
        gr(i) = rational_from_double(g(i));
        xr(i) = rational_from_double(nr.x(i));
    }
    out.affine.a -= gr;
    Rational shift = rational_from_double(val);
    for (Eigen::Index i = 0; i < u.polytope.dim(); ++i) shift -= gr(i) * xr(i);
    out.affine.b -= shift;

    Ctx cnew(out);
    for (const auto& x : evaluation_grid(u.polytope, grid)) {
        if (cnew.value(x) < -1e-10)
            throw Error("NormalizeCheck", "normalized potential dips below -1e-10 on the grid");
    }
    return out;
}

double energy_E(const SymplecticPotential& u, const GridSpec& grid) {
    grid.validate();
    Ctx ctx(u);
    const DelzantPolytope& P = u.polytope;
    const double V = to_double(volume(P));
    auto run = [&](const GridSpec& g) {
        QuadratureSet Q = build_quadrature(P, triangulate(P), g);
        double s = 0;
        for (const auto& node : Q.interior) s += node.w * ctx.value(node.x);
        return -s / V;
    };
    return run(grid);
}

EnergyReport energy_M(const SymplecticPotential& u, const GridSpec& grid) {
    return energy_M(u, grid, triangulate(u.polytope));
}

EnergyReport energy_M(const SymplecticPotential& u, const GridSpec& grid,
                      const SimplicialSubdivision& base) {
    grid.validate();
    validate_potential(u, grid);
    Ctx ctx(u);
    return energy_report_from(ctx, u.polytope, base, grid);
}

double j_proxy(const SymplecticPotential& u, const GridSpec& grid) {
    grid.validate();
    Ctx ctx(u);
    NewtonResult nr = newton_minimize(ctx, u.polytope);
    if (std::abs(ctx.value(nr.x)) > 1e-8 || ctx.gradient(nr.x).cwiseAbs().maxCoeff() > 1e-8)
        throw Error("NotNormalized", "potential violates the normalization conditions");
    const DelzantPolytope& P = u.polytope;
    QuadratureSet Q = build_quadrature(P, triangulate(P), grid);
    double s = 0;
    for (const auto& node : Q.interior) s += node.w * ctx.value(node.x);
    return s / to_double(volume(P));
}

namespace {

double L0_with(const Ctx& c0, const Ctx& cu, const QuadratureSet& Q, double fd_fraction) {
    double interior = 0;
    for (const auto& node : Q.interior)
        interior += node.w * abreu_scalar_raw(c0, node.x, fd_fraction) * cu.value(node.x);
    double bnd = 0;
    for (const auto& node : Q.boundary) bnd += node.w * cu.value(node.x, node.facet);
    return bnd - interior;
}

}  // namespace

double L0(const SymplecticPotential& u0, const SymplecticPotential& u, const GridSpec& grid) {
    grid.validate();
    Ctx c0(u0), cu(u);
    const DelzantPolytope& P = u0.polytope;
    QuadratureSet Q = build_quadrature(P, triangulate(P), grid);
    return L0_with(c0, cu, Q, grid.fd_step);
}

EnergyReport M0(const SymplecticPotential& u0, const SymplecticPotential& u,
                const GridSpec& grid) {
    grid.validate();
    validate_potential(u, grid);
    Ctx c0(u0), cu(u);
    const DelzantPolytope& P = u0.polytope;
    const double V = to_double(volume(P));

    auto run = [&](const GridSpec& g) {
        QuadratureSet Q = build_quadrature(P, triangulate(P), g);
        EnergyReport r;
        double int_u = 0;
        for (const auto& node : Q.interior) {
            r.nonlinear_term -= node.w * log_det_spd(cu.hess(node.x));
            int_u += node.w * cu.value(node.x);
        }
        r.linear_term = L0_with(c0, cu, Q, g.fd_step);
        r.E = -int_u / V;
        r.M = r.nonlinear_term + r.linear_term;
        return r;
    };
    EnergyReport fine = run(grid);
    GridSpec coarse_grid = grid;
    coarse_grid.quadrature = std::max(4, grid.grade_for(P.dim()) - 4);
    EnergyReport coarse = run(coarse_grid);
    fine.error_estimate =
        std::max({std::abs(fine.M - coarse.M), std::abs(fine.E - coarse.E), 1e-14});
    return fine;
}

struct M0Evaluator::Impl {
    DelzantPolytope P;
    QuadratureSet Q;
    std::vector<double> a0;  // Abreu scalar of u0 at the interior nodes

    Impl(const SymplecticPotential& u0, const GridSpec& grid)
        : P(u0.polytope), Q(build_quadrature(P, triangulate(P), grid)) {
        Ctx c0(u0);
        a0.reserve(Q.interior.size());
        for (const auto& node : Q.interior)
            a0.push_back(abreu_scalar_raw(c0, node.x, grid.fd_step));
    }
};

M0Evaluator::M0Evaluator(const SymplecticPotential& u0, const GridSpec& grid)
    : impl_(std::make_unique<Impl>(u0, grid)) {
    grid.validate();
}
M0Evaluator::~M0Evaluator() = default;
M0Evaluator::M0Evaluator(M0Evaluator&&) noexcept = default;

double M0Evaluator::operator()(const SymplecticPotential& u) const {
    Ctx cu(u);
    double nonlinear = 0, interior = 0, bnd = 0;
    for (size_t i = 0; i < impl_->Q.interior.size(); ++i) {
        const auto& node = impl_->Q.interior[i];
        nonlinear -= node.w * log_det_spd(cu.hess(node.x));
        interior += node.w * impl_->a0[i] * cu.value(node.x);
    }
    for (const auto& node : impl_->Q.boundary) bnd += node.w * cu.value(node.x, node.facet);
    return nonlinear + bnd - interior;
}

RayTable ray_energy(const SymplecticPotential& u, const MaxAffinePL& f,
                    const std::vector<double>& t_list, const GridSpec& grid) {
    grid.validate();
    for (double t : t_list)
        if (t < 0) throw Error("BadRay", "ray parameters must be nonnegative");
    const DelzantPolytope& P = u.polytope;
    MeshPL mesh = crease_refine(P, f);
    MeshPL centered = tilde(P, mesh);

    EnergyReport base = energy_M(u, grid, mesh.subdivision);

    // Exact-per-cell linear functional applied to f~ (affine on every cell).
    QuadratureSet Q = build_quadrature(P, mesh.subdivision, grid);
    std::vector<double> fvals;
    for (Eigen::Index i = 0; i < centered.values.size(); ++i)
        fvals.push_back(to_double(centered.values(i)));
    double int_f = 0;
    for (const auto& node : Q.interior) {
        double v = 0;
        const auto& pts = Q.cell_points[static_cast<size_t>(node.cell)];
        for (Eigen::Index i = 0; i < node.lambda.size(); ++i)
            v += node.lambda(i) * fvals[static_cast<size_t>(pts[static_cast<size_t>(i)])];
        int_f += node.w * v;
    }
    double bnd_f = 0;
    for (const auto& node : Q.boundary) {
        double v = 0;
        const auto& pts = Q.bs_points[static_cast<size_t>(node.simplex)];
        for (Eigen::Index i = 0; i < node.lambda.size(); ++i)
            v += node.lambda(i) * fvals[static_cast<size_t>(pts[static_cast<size_t>(i)])];
        bnd_f += node.w * v;
    }
    const double Lf_quadrature = bnd_f - to_double(mean_scalar(P)) * int_f;

    RayTable table;
    for (double t : t_list) table.rows.emplace_back(t, base.M + t * Lf_quadrature);
    table.slope = least_squares_slope(table.rows);
    table.donaldson_L = to_double(donaldson_functional(P, f));
    return table;
}

RayTable ray_energy(const SymplecticPotential& u, const PLFunction& f,
                    const std::vector<double>& t_list, const GridSpec& grid) {
    if (std::holds_alternative<MaxAffinePL>(f))
        return ray_energy(u, std::get<MaxAffinePL>(f), t_list, grid);
    const MeshPL& mesh = std::get<MeshPL>(f);
    ConvexityReport report = is_convex(mesh);
    if (!report.convex) throw Error("NotConvex", "ray direction must be convex");
    MaxAffinePL pieces;
    for (size_t c = 0; c < mesh.subdivision.cells.size(); ++c)
        pieces.pieces.push_back(cell_affine(mesh, static_cast<int>(c)));
    return ray_energy(u, canonicalize(u.polytope, pieces), t_list, grid);
}

double hessian_dual_residual(const SymplecticPotential& u, const VectorXd& x,
                             const GridSpec& grid) {
    grid.validate();
    Ctx ctx(u);
    if (ctx.dist(x) < grid.margin)
        throw Error("TooCloseToBoundary", "duality probe requested inside the margin band");
    const Eigen::Index n = ctx.n;
    const MatrixXd H = ctx.hess(x);
    const VectorXd xi = ctx.gradient(x);

    auto inverse_gradient = [&](const VectorXd& target) {
        VectorXd y = x;
        for (int it = 0; it < 100; ++it) {
            VectorXd r = ctx.gradient(y) - target;
            if (r.cwiseAbs().maxCoeff() < 1e-13) return y;
            VectorXd d = Eigen::LLT<MatrixXd>(ctx.hess(y)).solve(-r);
            double s = 1.0;
            while (!ctx.strictly_inside(y + s * d)) {
                s *= 0.5;
                if (s < 1e-16) throw Error("NewtonDivergence", "gradient inversion stalled");
            }
            y += s * d;
        }
        throw Error("NewtonDivergence", "gradient inversion did not converge");
    };

    const double delta = 1e-5 * (1.0 + xi.cwiseAbs().maxCoeff());
    MatrixXd hess_psi(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        VectorXd xp = xi, xm = xi;
        xp(j) += delta;
        xm(j) -= delta;
        hess_psi.col(j) = (inverse_gradient(xp) - inverse_gradient(xm)) / (2 * delta);
    }
    return (hess_psi * H - MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace toricstab
