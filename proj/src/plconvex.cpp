#include "toricstab/plconvex.hpp"

#include "toricstab/lp.hpp"

#include <algorithm>
#include <map>

namespace toricstab {

namespace {

bool lex_less(const RatVector& a, const RatVector& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a(i) != b(i)) return a(i) < b(i);
    return false;
}

bool vec_eq(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a(i) != b(i)) return false;
    return true;
}

std::vector<RatVector> cell_vertices(const SimplicialSubdivision& sub,
                                     const std::vector<int>& cell) {
    std::vector<RatVector> verts;
    verts.reserve(cell.size());
    for (int i : cell) verts.push_back(sub.points[static_cast<size_t>(i)]);
    return verts;
}

}  // namespace

Rational evaluate(const MaxAffinePL& f, const RatVector& x) {
    if (f.pieces.empty()) throw Error("EmptyPL", "max-affine function with no pieces");
    Rational best = f.pieces[0](x);
    for (size_t i = 1; i < f.pieces.size(); ++i) {
        Rational v = f.pieces[i](x);
        if (v > best) best = v;
    }
    return best;
}

Rational evaluate(const MeshPL& f, const RatVector& x) {
    for (size_t c = 0; c < f.subdivision.cells.size(); ++c) {
        auto bary = barycentric_coordinates(cell_vertices(f.subdivision, f.subdivision.cells[c]), x);
        if (!bary) continue;
        bool inside = true;
        for (Eigen::Index i = 0; i < bary->size(); ++i)
            if ((*bary)(i) < 0) inside = false;
        if (!inside) continue;
        Rational v = 0;
        const auto& cell = f.subdivision.cells[c];
        for (size_t i = 0; i < cell.size(); ++i)
            v += (*bary)(static_cast<Eigen::Index>(i)) * f.values(cell[i]);
        return v;
    }
    throw Error("PointOutsideP", "evaluation point is outside the mesh");
}

Rational evaluate(const PLFunction& f, const RatVector& x) {
    return std::visit([&](const auto& g) { return evaluate(g, x); }, f);
}

MaxAffinePL canonicalize(const DelzantPolytope& P, const MaxAffinePL& f) {
    if (f.pieces.empty()) throw Error("EmptyPL", "max-affine function with no pieces");
    const Eigen::Index n = P.dim();
    std::vector<AffineFunction> pieces;
    for (const auto& p : f.pieces) {
        bool dup = false;
        for (const auto& q : pieces)
            if (vec_eq(p.a, q.a) && p.b == q.b) dup = true;
        if (!dup) pieces.push_back(p);
    }
    // Sequentially drop pieces with empty strict-dominance region.
    for (size_t i = 0; i < pieces.size() && pieces.size() > 1;) {
        LinearProgram lp = LinearProgram::minimize(RatVector::Zero(n + 1));
        lp.objective(n) = -1;
        for (Eigen::Index k = 0; k < P.num_facets(); ++k) {
            RatVector row(n + 1);
            row.head(n) = to_rational(P.normal(k));
            row(n) = 0;
            lp.add_inequality(row, P.offsets()(k));
        }
        for (size_t j = 0; j < pieces.size(); ++j) {
            if (j == i) continue;
            RatVector row(n + 1);
            row.head(n) = pieces[i].a - pieces[j].a;
            row(n) = -1;
            lp.add_inequality(row, pieces[j].b - pieces[i].b);
        }
        RatVector cap = RatVector::Zero(n + 1);
        cap(n) = -1;
        lp.add_inequality(cap, Rational(-1));
        LPOutcome o = solve(lp);
        const bool essential = o.kind == LPOutcome::Kind::Optimal && o.point(n) > 0;
        if (essential)
            ++i;
        else
            pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(i));
    }
    return MaxAffinePL{pieces};
}

MeshPL crease_refine(const DelzantPolytope& P, const MaxAffinePL& f, int max_points) {
    const Eigen::Index n = P.dim();
    MaxAffinePL fc = canonicalize(P, f);

    std::vector<RatVector> base_rows;
    for (Eigen::Index k = 0; k < P.num_facets(); ++k) base_rows.push_back(to_rational(P.normal(k)));

    // Pairwise piece-difference hyperplanes <h,x> = c.
    std::vector<std::pair<RatVector, Rational>> planes;
    for (size_t i = 0; i < fc.pieces.size(); ++i) {
        for (size_t j = i + 1; j < fc.pieces.size(); ++j) {
            RatVector h = fc.pieces[i].a - fc.pieces[j].a;
            bool zero = true;
            for (Eigen::Index k = 0; k < n; ++k)
                if (h(k) != 0) zero = false;
            if (zero) continue;
            planes.emplace_back(h, fc.pieces[j].b - fc.pieces[i].b);
        }
    }

    struct RegionState {
        std::vector<int> signs;  // one per processed plane, +1 or -1
        std::vector<RatVector> verts;
    };
    std::vector<RegionState> regions{{{}, P.vertices()}};

    auto region_rows = [&](const RegionState& r, size_t upto) {
        std::vector<RatVector> rows = base_rows;
        RatVector rhs(P.offsets().size() + static_cast<Eigen::Index>(upto));
        rhs.head(P.offsets().size()) = P.offsets();
        for (size_t h = 0; h < upto; ++h) {
            const int s = r.signs[h];
            rows.push_back(s > 0 ? planes[h].first : RatVector(-planes[h].first));
            rhs(P.offsets().size() + static_cast<Eigen::Index>(h)) =
                s > 0 ? planes[h].second : -planes[h].second;
        }
        return std::make_pair(rows, rhs);
    };

    for (size_t h = 0; h < planes.size(); ++h) {
        std::vector<RegionState> next;
        for (auto& r : regions) {
            bool pos = false, neg = false;
            for (const auto& v : r.verts) {
                Rational val = -planes[h].second;
                for (Eigen::Index i = 0; i < n; ++i) val += planes[h].first(i) * v(i);
                if (val > 0) pos = true;
                if (val < 0) neg = true;
            }
            if (pos && neg) {
                for (int s : {1, -1}) {
                    RegionState child = r;
                    child.signs.push_back(s);
                    auto [rows, rhs] = region_rows(child, h + 1);
                    child.verts = enumerate_vertices(rows, rhs);
                    next.push_back(std::move(child));
                }
            } else {
                r.signs.push_back(pos || !neg ? 1 : -1);
                next.push_back(std::move(r));
            }
        }
        regions = std::move(next);
    }

    MeshPL mesh;
    mesh.subdivision.dim = n;
    auto global_index = [&](const RatVector& p) {
        for (size_t i = 0; i < mesh.subdivision.points.size(); ++i)
            if (vec_eq(mesh.subdivision.points[i], p)) return static_cast<int>(i);
        mesh.subdivision.points.push_back(p);
        if (static_cast<int>(mesh.subdivision.points.size()) > max_points)
            throw Error("MeshTooLarge", "crease refinement exceeds the point cap");
        return static_cast<int>(mesh.subdivision.points.size() - 1);
    };

    for (const auto& r : regions) {
        auto [rows, rhs] = region_rows(r, planes.size());
        auto cells = cone_triangulate(r.verts, rows, rhs);
        for (const auto& cell : cells) {
            std::vector<int> g;
            for (int idx : cell) g.push_back(global_index(r.verts[static_cast<size_t>(idx)]));
            std::sort(g.begin(), g.end());
            mesh.subdivision.cells.push_back(std::move(g));
        }
    }

    mesh.values.resize(static_cast<Eigen::Index>(mesh.subdivision.points.size()));
    for (size_t i = 0; i < mesh.subdivision.points.size(); ++i)
        mesh.values(static_cast<Eigen::Index>(i)) = evaluate(fc, mesh.subdivision.points[i]);
    return mesh;
}

std::vector<Hinge> mesh_hinges(const SimplicialSubdivision& sub) {
    std::map<std::vector<int>, std::vector<int>> facets;  // facet -> incident cells
    for (size_t c = 0; c < sub.cells.size(); ++c) {
        const auto& cell = sub.cells[c];
        for (size_t skip = 0; skip < cell.size(); ++skip) {
            std::vector<int> f;
            for (size_t j = 0; j < cell.size(); ++j)
                if (j != skip) f.push_back(cell[j]);
            std::sort(f.begin(), f.end());
            facets[f].push_back(static_cast<int>(c));
        }
    }
    std::vector<Hinge> out;
    for (const auto& [f, cells] : facets) {
        if (cells.size() != 2) continue;
        Hinge h;
        h.facet = f;
        h.cell_a = cells[0];
        h.cell_b = cells[1];
        h.gap = 0;
        out.push_back(std::move(h));
    }
    return out;
}

ConvexityReport is_convex(const MeshPL& f) {
    ConvexityReport report;
    report.hinges = mesh_hinges(f.subdivision);
    for (size_t hi = 0; hi < report.hinges.size(); ++hi) {
        Hinge& h = report.hinges[hi];
        const auto& cell_a = f.subdivision.cells[static_cast<size_t>(h.cell_a)];
        const auto& cell_b = f.subdivision.cells[static_cast<size_t>(h.cell_b)];
        int opposite = -1;
        for (int v : cell_b)
            if (std::find(h.facet.begin(), h.facet.end(), v) == h.facet.end()) opposite = v;
        auto bary = barycentric_coordinates(cell_vertices(f.subdivision, cell_a),
                                            f.subdivision.points[static_cast<size_t>(opposite)]);
        if (!bary) throw Error("BadSubdivision", "degenerate hinge cell");
        Rational ext = 0;
        for (size_t i = 0; i < cell_a.size(); ++i)
            ext += (*bary)(static_cast<Eigen::Index>(i)) * f.values(cell_a[i]);
        h.gap = f.values(opposite) - ext;
        if (h.gap < 0 && report.first_violation < 0) {
            report.first_violation = static_cast<int>(hi);
            report.convex = false;
        }
    }
    return report;
}

std::pair<Rational, RatVector> min_over(const DelzantPolytope& P, const MaxAffinePL& f) {
    if (f.pieces.empty()) throw Error("EmptyPL", "max-affine function with no pieces");
    const Eigen::Index n = P.dim();
    LinearProgram lp = LinearProgram::minimize(RatVector::Zero(n + 1));
    lp.objective(n) = 1;
    for (Eigen::Index k = 0; k < P.num_facets(); ++k) {
        RatVector row(n + 1);
        row.head(n) = to_rational(P.normal(k));
        row(n) = 0;
        lp.add_inequality(row, P.offsets()(k));
    }
    for (const auto& piece : f.pieces) {
        RatVector row(n + 1);
        row.head(n) = -piece.a;
        row(n) = 1;
        lp.add_inequality(row, piece.b);
    }
    LPOutcome o = solve(lp);
    if (o.kind != LPOutcome::Kind::Optimal)
        throw Error("MinimizationFailed", "epigraph LP did not return an optimum");
    return {o.value, RatVector(o.point.head(n))};
}

std::pair<Rational, RatVector> min_over(const DelzantPolytope&, const MeshPL& f) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < f.values.size(); ++i) {
        if (f.values(i) < f.values(best) ||
            (f.values(i) == f.values(best) &&
             lex_less(f.subdivision.points[static_cast<size_t>(i)],
                      f.subdivision.points[static_cast<size_t>(best)])))
            best = i;
    }
    return {f.values(best), f.subdivision.points[static_cast<size_t>(best)]};
}

std::pair<Rational, RatVector> min_over(const DelzantPolytope& P, const PLFunction& f) {
    return std::visit([&](const auto& g) { return min_over(P, g); }, f);
}

Rational integrate(const DelzantPolytope& P, const AffineFunction& f, Region region) {
    if (region == Region::Interior) {
        SimplicialSubdivision t = triangulate(P);
        Rational acc = 0;
        for (const auto& cell : t.cells) {
            auto verts = cell_vertices(t, cell);
            Rational mean = 0;
            for (const auto& v : verts) mean += f(v);
            mean /= Rational(static_cast<int>(verts.size()));
            acc += simplex_volume(verts) * mean;
        }
        return acc;
    }
    Rational acc = 0;
    for (const auto& bs : boundary_mesh(P)) {
        Rational mean = 0;
        for (const auto& v : bs.vertices) mean += f(v);
        mean /= Rational(static_cast<int>(bs.vertices.size()));
        acc += bs.mass * mean;
    }
    return acc;
}

Rational integrate(const DelzantPolytope& P, const MeshPL& f, Region region) {
    if (subdivision_volume(f.subdivision) != volume(P))
        throw Error("MeshMismatch", "mesh does not cover P");
    if (region == Region::Interior) {
        Rational acc = 0;
        for (const auto& cell : f.subdivision.cells) {
            Rational mean = 0;
            for (int i : cell) mean += f.values(i);
            mean /= Rational(static_cast<int>(cell.size()));
            acc += simplex_volume(cell_vertices(f.subdivision, cell)) * mean;
        }
        return acc;
    }
    Rational acc = 0;
    for (const auto& bs : subdivision_boundary(P, f.subdivision)) {
        Rational mean = 0;
        for (int i : bs.indices) mean += f.values(i);
        mean /= Rational(static_cast<int>(bs.indices.size()));
        acc += bs.mass * mean;
    }
    return acc;
}

Rational integrate(const DelzantPolytope& P, const MaxAffinePL& f, Region region) {
    if (f.pieces.size() == 1) return integrate(P, f.pieces[0], region);
    return integrate(P, crease_refine(P, f), region);
}

Rational integrate(const DelzantPolytope& P, const PLFunction& f, Region region) {
    return std::visit([&](const auto& g) { return integrate(P, g, region); }, f);
}

MaxAffinePL tilde(const DelzantPolytope& P, const MaxAffinePL& f) {
    Rational c = integrate(P, f, Region::Interior) / volume(P);
    MaxAffinePL out = f;
    for (auto& piece : out.pieces) piece.b -= c;
    return out;
}

MeshPL tilde(const DelzantPolytope& P, const MeshPL& f) {
    Rational c = integrate(P, f, Region::Interior) / volume(P);
    MeshPL out = f;
    for (Eigen::Index i = 0; i < out.values.size(); ++i) out.values(i) -= c;
    return out;
}

PLFunction tilde(const DelzantPolytope& P, const PLFunction& f) {
    return std::visit([&](const auto& g) -> PLFunction { return tilde(P, g); }, f);
}

AffineFunction cell_affine(const MeshPL& f, int cell) {
    const auto& idx = f.subdivision.cells[static_cast<size_t>(cell)];
    const Eigen::Index n = f.subdivision.dim;
    RatMatrix m(n + 1, n + 1);
    RatVector rhs(n + 1);
    for (Eigen::Index r = 0; r <= n; ++r) {
        const RatVector& v = f.subdivision.points[static_cast<size_t>(idx[static_cast<size_t>(r)])];
        for (Eigen::Index j = 0; j < n; ++j) m(r, j) = v(j);
        m(r, n) = 1;
        rhs(r) = f.values(idx[static_cast<size_t>(r)]);
    }
    Eigen::FullPivLU<RatMatrix> lu(m);
    RatVector sol = lu.solve(rhs);
    AffineFunction out;
    out.a = sol.head(n);
    out.b = sol(n);
    return out;
}

MaxAffinePL add(const MaxAffinePL& f, const AffineFunction& l) {
    MaxAffinePL out = f;
    for (auto& piece : out.pieces) {
        piece.a += l.a;
        piece.b += l.b;
    }
    return out;
}

MeshPL add(const MeshPL& f, const AffineFunction& l) {
    MeshPL out = f;
    for (Eigen::Index i = 0; i < out.values.size(); ++i)
        out.values(i) += l(out.subdivision.points[static_cast<size_t>(i)]);
    return out;
}

MaxAffinePL scale(const MaxAffinePL& f, const Rational& q) {
    if (q < 0) throw Error("BadScale", "nonnegative scaling only");
    MaxAffinePL out = f;
    for (auto& piece : out.pieces) {
        piece.a *= q;
        piece.b *= q;
    }
    if (q == 0) out.pieces.resize(1);
    return out;
}

MeshPL scale(const MeshPL& f, const Rational& q) {
    if (q < 0) throw Error("BadScale", "nonnegative scaling only");
    MeshPL out = f;
    out.values *= q;
    return out;
}

PLFunction transform(const PLFunction& f, const IntMatrix& A, const RatVector& t) {
    RatMatrix Ar(A.rows(), A.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) Ar(i, j) = Rational(A(i, j));
    Rational det = Ar.determinant();
    if (det != 1 && det != -1) throw Error("NotUnimodular", "matrix determinant is not +-1");
    RatMatrix AinvT = Ar.inverse().transpose();
    if (std::holds_alternative<MaxAffinePL>(f)) {
        MaxAffinePL out = std::get<MaxAffinePL>(f);
        for (auto& piece : out.pieces) {
            RatVector a2 = AinvT * piece.a;
            piece.b -= a2.dot(t);
            piece.a = a2;
        }
        return out;
    }
    MeshPL out = std::get<MeshPL>(f);
    out.subdivision = transform(out.subdivision, A, t);
    return out;
}

}  // namespace toricstab
