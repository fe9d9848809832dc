#include "toricstab/polytope.hpp"

#include "toricstab/lp.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace toricstab {

namespace {

bool lex_less(const RatVector& a, const RatVector& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) != b(i)) return a(i) < b(i);
    }
    return false;
}

bool vec_eq(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a(i) != b(i)) return false;
    return true;
}

Rational dot(const RatVector& a, const RatVector& b) {
    Rational s = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
    return s;
}

Integer factorial(Eigen::Index n) {
    Integer f = 1;
    for (Eigen::Index i = 2; i <= n; ++i) f *= i;
    return f;
}

// All k-subsets of {0..m-1} in lexicographic order.
template <typename F>
void for_each_subset(int m, int k, F&& body) {
    if (k > m || k <= 0) return;
    std::vector<int> idx(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
    while (true) {
        body(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] == m - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<size_t>(pos)];
        for (int j = pos + 1; j < k; ++j)
            idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
}

Eigen::Index affine_rank(const std::vector<RatVector>& verts, const std::vector<int>& face) {
    if (face.size() <= 1) return 0;
    const Eigen::Index n = verts[0].size();
    RatMatrix m(static_cast<Eigen::Index>(face.size()) - 1, n);
    const RatVector& base = verts[static_cast<size_t>(face[0])];
    for (size_t i = 1; i < face.size(); ++i)
        m.row(static_cast<Eigen::Index>(i - 1)) =
            (verts[static_cast<size_t>(face[i])] - base).transpose();
    return Eigen::FullPivLU<RatMatrix>(m).rank();
}

// Recursive lexicographic coning over the face lattice.  The triangulation
// of any face is computed from that face's vertex set alone, so adjacent
// regions sharing a face triangulate it identically.
struct FaceTriangulator {
    const std::vector<RatVector>& verts;
    const std::vector<RatVector>& rows;
    const RatVector& rhs;
    std::map<std::vector<int>, std::vector<std::vector<int>>> memo;

    std::vector<std::vector<int>> run(std::vector<int> face) {
        std::sort(face.begin(), face.end());
        auto it = memo.find(face);
        if (it != memo.end()) return it->second;

        std::vector<std::vector<int>> out;
        const Eigen::Index r = affine_rank(verts, face);
        if (r == 0) {
            out.push_back(face);
            memo[face] = out;
            return out;
        }
        int apex = face[0];
        for (int v : face)
            if (lex_less(verts[static_cast<size_t>(v)], verts[static_cast<size_t>(apex)])) apex = v;

        std::set<std::vector<int>> subfaces;
        for (size_t j = 0; j < rows.size(); ++j) {
            std::vector<int> tight;
            for (int v : face)
                if (dot(rows[j], verts[static_cast<size_t>(v)]) == rhs(static_cast<Eigen::Index>(j)))
                    tight.push_back(v);
            if (tight.empty() || tight.size() == face.size()) continue;
            if (affine_rank(verts, tight) != r - 1) continue;
            std::sort(tight.begin(), tight.end());
            subfaces.insert(tight);
        }
        for (const auto& sub : subfaces) {
            if (std::find(sub.begin(), sub.end(), apex) != sub.end()) continue;
            for (auto simplex : run(sub)) {
                simplex.push_back(apex);
                std::sort(simplex.begin(), simplex.end());
                out.push_back(simplex);
            }
        }
        std::sort(out.begin(), out.end());
        memo[face] = out;
        return out;
    }
};

LinearProgram base_lp(const DelzantPolytope& P) {
    const Eigen::Index n = P.dim();
    LinearProgram lp = LinearProgram::minimize(RatVector::Zero(n));
    for (Eigen::Index k = 0; k < P.num_facets(); ++k)
        lp.add_inequality(to_rational(P.normal(k)), P.offsets()(k));
    return lp;
}

}  // namespace

std::vector<RatVector> enumerate_vertices(const std::vector<RatVector>& row_normals,
                                          const RatVector& row_rhs) {
    if (row_normals.empty()) throw Error("EmptyPolytope", "no constraints");
    const Eigen::Index n = row_normals[0].size();
    const int m = static_cast<int>(row_normals.size());
    std::vector<RatVector> found;
    for_each_subset(m, static_cast<int>(n), [&](const std::vector<int>& idx) {
        RatMatrix mat(n, n);
        RatVector b(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            mat.row(i) = row_normals[static_cast<size_t>(idx[static_cast<size_t>(i)])].transpose();
            b(i) = row_rhs(idx[static_cast<size_t>(i)]);
        }
        Eigen::FullPivLU<RatMatrix> lu(mat);
        if (lu.rank() != n) return;
        RatVector x = lu.solve(b);
        for (size_t j = 0; j < row_normals.size(); ++j)
            if (dot(row_normals[j], x) < row_rhs(static_cast<Eigen::Index>(j))) return;
        for (const auto& v : found)
            if (vec_eq(v, x)) return;
        found.push_back(x);
    });
    if (found.empty()) throw Error("EmptyPolytope", "vertex enumeration found no feasible vertex");
    std::sort(found.begin(), found.end(), lex_less);
    return found;
}

DelzantPolytope::DelzantPolytope(IntMatrix normals, RatVector offsets)
    : normals_(std::move(normals)), offsets_(std::move(offsets)) {
    const Eigen::Index n = normals_.cols();
    const Eigen::Index m = normals_.rows();
    if (n < 1 || m != offsets_.size() || m < n + 1)
        throw Error("BadPolytope", "need at least dim+1 facets and matching offsets");
    for (Eigen::Index k = 0; k < m; ++k) {
        if (gcd_entries(normal(k)) != 1)
            throw Error("NonPrimitiveNormal",
                        "facet " + std::to_string(k) + " normal is not primitive");
    }

    // Bounded and nonempty: extremize every coordinate.
    for (Eigen::Index j = 0; j < n; ++j) {
        for (int sign : {1, -1}) {
            LinearProgram lp = base_lp(*this);
            lp.objective = RatVector::Zero(n);
            lp.objective(j) = sign;
            LPOutcome o = solve(lp);
            if (o.kind == LPOutcome::Kind::Infeasible)
                throw Error("EmptyPolytope", "facet system is infeasible");
            if (o.kind == LPOutcome::Kind::Unbounded)
                throw Error("UnboundedPolytope",
                            "recession direction along coordinate " + std::to_string(j));
        }
    }

    // Full-dimensional: max t with l_k(x) >= t for all k, t <= 1.
    {
        LinearProgram lp = LinearProgram::minimize(RatVector::Zero(n + 1));
        lp.objective(n) = -1;
        for (Eigen::Index k = 0; k < m; ++k) {
            RatVector row(n + 1);
            row.head(n) = to_rational(normal(k));
            row(n) = -1;
            lp.add_inequality(row, offsets_(k));
        }
        RatVector cap = RatVector::Zero(n + 1);
        cap(n) = -1;
        lp.add_inequality(cap, Rational(-1));
        LPOutcome o = solve(lp);
        if (o.kind != LPOutcome::Kind::Optimal || !(o.point(n) > 0))
            throw Error("DegeneratePolytope", "polytope has empty interior");
    }

    // Irredundant: every facet carries an (n-1)-dimensional face.
    for (Eigen::Index k = 0; k < m; ++k) {
        LinearProgram lp = LinearProgram::minimize(RatVector::Zero(n + 1));
        lp.objective(n) = -1;
        for (Eigen::Index j = 0; j < m; ++j) {
            if (j == k) continue;
            RatVector row(n + 1);
            row.head(n) = to_rational(normal(j));
            row(n) = -1;
            lp.add_inequality(row, offsets_(j));
        }
        RatVector eq(n + 1);
        eq.head(n) = to_rational(normal(k));
        eq(n) = 0;
        lp.add_equality(eq, offsets_(k));
        RatVector cap = RatVector::Zero(n + 1);
        cap(n) = -1;
        lp.add_inequality(cap, Rational(-1));
        LPOutcome o = solve(lp);
        if (o.kind != LPOutcome::Kind::Optimal || !(o.point(n) > 0))
            throw Error("RedundantFacet", "facet " + std::to_string(k) +
                                              " does not support an (n-1)-face");
    }

    std::vector<RatVector> rows;
    for (Eigen::Index k = 0; k < m; ++k) rows.push_back(to_rational(normal(k)));
    vertices_ = enumerate_vertices(rows, offsets_);
}

Rational DelzantPolytope::facet_value(Eigen::Index k, const RatVector& x) const {
    Rational s = -offsets_(k);
    for (Eigen::Index i = 0; i < dim(); ++i) s += Rational(normals_(k, i)) * x(i);
    return s;
}

bool DelzantPolytope::contains(const RatVector& x) const {
    for (Eigen::Index k = 0; k < num_facets(); ++k)
        if (facet_value(k, x) < 0) return false;
    return true;
}

DelzantReport check_delzant(const DelzantPolytope& P) {
    const Eigen::Index n = P.dim();
    DelzantReport report;
    report.normals_primitive = true;  // enforced at construction
    report.valid = true;
    for (const auto& v : P.vertices()) {
        DelzantReport::VertexCheck check;
        check.vertex = v;
        for (Eigen::Index k = 0; k < P.num_facets(); ++k)
            if (P.facet_value(k, v) == 0) check.incident_facets.push_back(static_cast<int>(k));
        if (static_cast<Eigen::Index>(check.incident_facets.size()) == n) {
            RatMatrix m(n, n);
            for (Eigen::Index i = 0; i < n; ++i)
                m.row(i) = to_rational(P.normal(check.incident_facets[static_cast<size_t>(i)]))
                               .transpose();
            check.det = m.determinant();
            check.ok = (check.det == 1 || check.det == -1);
        } else {
            check.det = 0;
            check.ok = false;
        }
        report.valid = report.valid && check.ok;
        report.vertex_checks.push_back(std::move(check));
    }
    return report;
}

Rational simplex_volume(const std::vector<RatVector>& verts) {
    const Eigen::Index n = verts[0].size();
    if (static_cast<Eigen::Index>(verts.size()) != n + 1)
        throw Error("BadSimplex", "need dim+1 vertices");
    RatMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m.row(i) = (verts[static_cast<size_t>(i + 1)] - verts[0]).transpose();
    Rational det = m.determinant();
    if (det < 0) det = -det;
    return det / Rational(factorial(n));
}

Rational facet_simplex_mass(const std::vector<RatVector>& verts, const IntVector& normal) {
    const Eigen::Index n = normal.size();
    if (static_cast<Eigen::Index>(verts.size()) != n)
        throw Error("BadSimplex", "facet simplex needs dim vertices");
    if (n == 1) return 1;
    Rational nn = 0;
    for (Eigen::Index i = 0; i < n; ++i) nn += Rational(normal(i)) * Rational(normal(i));
    RatMatrix m(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        m.row(i) = (verts[static_cast<size_t>(i + 1)] - verts[0]).transpose();
    for (Eigen::Index j = 0; j < n; ++j) m(n - 1, j) = Rational(normal(j)) / nn;
    Rational det = m.determinant();
    if (det < 0) det = -det;
    return det / Rational(factorial(n - 1));
}

std::optional<RatVector> barycentric_coordinates(const std::vector<RatVector>& verts,
                                                 const RatVector& x) {
    const Eigen::Index n = x.size();
    RatMatrix m(n + 1, n + 1);
    RatVector b(n + 1);
    for (Eigen::Index j = 0; j <= n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) m(i, j) = verts[static_cast<size_t>(j)](i);
        m(n, j) = 1;
    }
    b.head(n) = x;
    b(n) = 1;
    Eigen::FullPivLU<RatMatrix> lu(m);
    if (lu.rank() != n + 1) return std::nullopt;
    return lu.solve(b);
}

SimplicialSubdivision triangulate(const DelzantPolytope& P) {
    SimplicialSubdivision sub;
    sub.dim = P.dim();
    sub.points = P.vertices();
    std::vector<RatVector> rows;
    for (Eigen::Index k = 0; k < P.num_facets(); ++k) rows.push_back(to_rational(P.normal(k)));
    sub.cells = cone_triangulate(sub.points, rows, P.offsets());
    return sub;
}

std::vector<std::vector<int>> cone_triangulate(const std::vector<RatVector>& verts,
                                               const std::vector<RatVector>& row_normals,
                                               const RatVector& row_rhs) {
    FaceTriangulator tri{verts, row_normals, row_rhs, {}};
    std::vector<int> all(verts.size());
    for (size_t i = 0; i < verts.size(); ++i) all[i] = static_cast<int>(i);
    return tri.run(all);
}

std::vector<BoundarySimplex> boundary_mesh(const DelzantPolytope& P) {
    const Eigen::Index n = P.dim();
    std::vector<RatVector> rows;
    for (Eigen::Index k = 0; k < P.num_facets(); ++k) rows.push_back(to_rational(P.normal(k)));
    FaceTriangulator tri{P.vertices(), rows, P.offsets(), {}};

    std::vector<BoundarySimplex> out;
    for (Eigen::Index k = 0; k < P.num_facets(); ++k) {
        std::vector<int> tight;
        for (size_t v = 0; v < P.vertices().size(); ++v)
            if (P.facet_value(k, P.vertices()[v]) == 0) tight.push_back(static_cast<int>(v));
        for (const auto& cell : tri.run(tight)) {
            BoundarySimplex bs;
            bs.facet = static_cast<int>(k);
            bs.indices = cell;
            for (int idx : cell) bs.vertices.push_back(P.vertices()[static_cast<size_t>(idx)]);
            if (static_cast<Eigen::Index>(bs.vertices.size()) != n)
                throw Error("BadPolytope", "facet triangulation produced a degenerate simplex");
            bs.mass = facet_simplex_mass(bs.vertices, P.normal(k));
            out.push_back(std::move(bs));
        }
    }
    return out;
}

Rational volume(const DelzantPolytope& P) {
    SimplicialSubdivision t = triangulate(P);
    return subdivision_volume(t);
}

Rational subdivision_volume(const SimplicialSubdivision& sub) {
    Rational v = 0;
    for (const auto& cell : sub.cells) {
        std::vector<RatVector> verts;
        for (int i : cell) verts.push_back(sub.points[static_cast<size_t>(i)]);
        v += simplex_volume(verts);
    }
    return v;
}

Rational boundary_area(const DelzantPolytope& P) {
    Rational a = 0;
    for (const auto& bs : boundary_mesh(P)) a += bs.mass;
    return a;
}

Rational mean_scalar(const DelzantPolytope& P) { return boundary_area(P) / volume(P); }

RatVector barycenter(const DelzantPolytope& P) {
    SimplicialSubdivision t = triangulate(P);
    RatVector acc = RatVector::Zero(P.dim());
    Rational vol = 0;
    for (const auto& cell : t.cells) {
        std::vector<RatVector> verts;
        for (int i : cell) verts.push_back(t.points[static_cast<size_t>(i)]);
        Rational v = simplex_volume(verts);
        RatVector c = RatVector::Zero(P.dim());
        for (const auto& p : verts) c += p;
        c /= Rational(static_cast<int>(verts.size()));
        acc += v * c;
        vol += v;
    }
    return acc / vol;
}

int stellar_insert(SimplicialSubdivision& sub, const RatVector& p) {
    for (size_t i = 0; i < sub.points.size(); ++i)
        if (vec_eq(sub.points[i], p)) return static_cast<int>(i);

    std::vector<std::pair<size_t, RatVector>> hits;  // cell index, barycentrics
    for (size_t c = 0; c < sub.cells.size(); ++c) {
        std::vector<RatVector> verts;
        for (int i : sub.cells[c]) verts.push_back(sub.points[static_cast<size_t>(i)]);
        auto bary = barycentric_coordinates(verts, p);
        if (!bary) throw Error("BadSubdivision", "degenerate cell during insertion");
        bool inside = true;
        for (Eigen::Index i = 0; i < bary->size(); ++i)
            if ((*bary)(i) < 0) inside = false;
        if (inside) hits.emplace_back(c, *bary);
    }
    if (hits.empty()) throw Error("PointOutsideSubdivision", "stellar insertion point not covered");

    sub.points.push_back(p);
    const int pidx = static_cast<int>(sub.points.size() - 1);
    std::vector<std::vector<int>> fresh;
    for (const auto& [c, bary] : hits) {
        const auto& cell = sub.cells[c];
        for (size_t i = 0; i < cell.size(); ++i) {
            if (bary(static_cast<Eigen::Index>(i)) == 0) continue;
            std::vector<int> ncell;
            for (size_t j = 0; j < cell.size(); ++j)
                if (j != i) ncell.push_back(cell[j]);
            ncell.push_back(pidx);
            std::sort(ncell.begin(), ncell.end());
            fresh.push_back(std::move(ncell));
        }
    }
    for (auto it = hits.rbegin(); it != hits.rend(); ++it)
        sub.cells.erase(sub.cells.begin() + static_cast<std::ptrdiff_t>(it->first));
    for (auto& cell : fresh) sub.cells.push_back(std::move(cell));
    return pidx;
}

namespace {

// Lattice points of (1/scale) Z^n inside P, in lexicographic order.
std::vector<RatVector> lattice_points(const DelzantPolytope& P, const Integer& scale) {
    const Eigen::Index n = P.dim();
    std::vector<std::pair<Integer, Integer>> ranges;
    for (Eigen::Index i = 0; i < n; ++i) {
        Rational lo = P.vertices()[0](i), hi = lo;
        for (const auto& v : P.vertices()) {
            if (v(i) < lo) lo = v(i);
            if (v(i) > hi) hi = v(i);
        }
        // ceil(lo*scale), floor(hi*scale)
        Rational ls = lo * Rational(scale), hs = hi * Rational(scale);
        Integer lfloor = numerator(ls) / denominator(ls);
        if (Rational(lfloor) > ls) lfloor -= 1;
        Integer lceil = (Rational(lfloor) == ls) ? lfloor : lfloor + 1;
        Integer hfloor = numerator(hs) / denominator(hs);
        if (Rational(hfloor) > hs) hfloor -= 1;
        ranges.emplace_back(lceil, hfloor);
    }
    std::vector<RatVector> out;
    RatVector x(n);
    std::vector<Integer> counter;
    for (const auto& r : ranges) counter.push_back(r.first);
    if (n == 0) return out;
    while (true) {
        for (Eigen::Index i = 0; i < n; ++i)
            x(i) = Rational(counter[static_cast<size_t>(i)]) / Rational(scale);
        if (P.contains(x)) out.push_back(x);
        Eigen::Index pos = n - 1;
        while (pos >= 0) {
            counter[static_cast<size_t>(pos)] += 1;
            if (counter[static_cast<size_t>(pos)] <= ranges[static_cast<size_t>(pos)].second) break;
            counter[static_cast<size_t>(pos)] = ranges[static_cast<size_t>(pos)].first;
            --pos;
        }
        if (pos < 0) break;
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

}  // namespace

SimplicialSubdivision subdivide(const DelzantPolytope& P, int depth, int max_points) {
    if (depth < 0) throw Error("BadDepth", "depth must be >= 0");
    Integer L = 1;
    for (const auto& v : P.vertices()) L = lcm(L, lcm_denominators(v));

    SimplicialSubdivision sub = triangulate(P);
    stellar_insert(sub, barycenter(P));

    Integer scale = L;
    for (int level = 0; level <= depth; ++level) {
        std::vector<RatVector> pts = lattice_points(P, scale);
        std::vector<RatVector> fresh;
        for (const auto& p : pts) {
            bool known = false;
            for (const auto& q : sub.points)
                if (vec_eq(p, q)) {
                    known = true;
                    break;
                }
            if (!known) fresh.push_back(p);
        }
        if (static_cast<int>(sub.points.size() + fresh.size()) > max_points)
            throw Error("MeshTooLarge", "subdivision would exceed " + std::to_string(max_points) +
                                            " points");
        for (const auto& p : fresh) stellar_insert(sub, p);
        scale *= 2;
    }
    sub.depth = depth;
    return sub;
}

void validate_subdivision(const DelzantPolytope& P, const SimplicialSubdivision& sub) {
    const Eigen::Index n = P.dim();
    if (sub.dim != n) throw Error("BadSubdivision", "dimension mismatch");
    for (const auto& cell : sub.cells) {
        if (static_cast<Eigen::Index>(cell.size()) != n + 1)
            throw Error("BadSubdivision", "cell arity");
        std::vector<RatVector> verts;
        for (int i : cell) verts.push_back(sub.points[static_cast<size_t>(i)]);
        if (!(simplex_volume(verts) > 0)) throw Error("BadSubdivision", "flat cell");
    }
    if (subdivision_volume(sub) != volume(P))
        throw Error("BadSubdivision", "cells do not partition P");
    for (const auto& v : P.vertices()) {
        bool found = false;
        for (const auto& p : sub.points)
            if (vec_eq(p, v)) found = true;
        if (!found) throw Error("BadSubdivision", "missing polytope vertex");
    }
    for (const auto& p : sub.points)
        if (!P.contains(p)) throw Error("BadSubdivision", "point outside P");
    // No mesh point may lie inside a cell it is not a vertex of.
    for (size_t q = 0; q < sub.points.size(); ++q) {
        for (const auto& cell : sub.cells) {
            if (std::find(cell.begin(), cell.end(), static_cast<int>(q)) != cell.end()) continue;
            std::vector<RatVector> verts;
            for (int i : cell) verts.push_back(sub.points[static_cast<size_t>(i)]);
            auto bary = barycentric_coordinates(verts, sub.points[q]);
            if (!bary) continue;
            bool inside = true;
            for (Eigen::Index i = 0; i < bary->size(); ++i)
                if ((*bary)(i) < 0) inside = false;
            if (inside) throw Error("BadSubdivision", "point inside a foreign cell");
        }
    }
    subdivision_boundary(P, sub);  // throws when the skeleton is inconsistent
}

std::vector<BoundarySimplex> subdivision_boundary(const DelzantPolytope& P,
                                                  const SimplicialSubdivision& sub) {
    std::map<std::vector<int>, int> facet_count;
    for (const auto& cell : sub.cells) {
        for (size_t skip = 0; skip < cell.size(); ++skip) {
            std::vector<int> f;
            for (size_t j = 0; j < cell.size(); ++j)
                if (j != skip) f.push_back(cell[j]);
            std::sort(f.begin(), f.end());
            ++facet_count[f];
        }
    }
    std::vector<BoundarySimplex> out;
    for (const auto& [f, count] : facet_count) {
        if (count > 2) throw Error("BadSubdivision", "facet shared by more than two cells");
        if (count != 1) continue;
        int supporting = -1;
        for (Eigen::Index k = 0; k < P.num_facets(); ++k) {
            bool all_tight = true;
            for (int idx : f)
                if (P.facet_value(k, sub.points[static_cast<size_t>(idx)]) != 0) all_tight = false;
            if (all_tight) {
                supporting = static_cast<int>(k);
                break;
            }
        }
        if (supporting < 0)
            throw Error("BadSubdivision", "boundary facet of the mesh is not on the boundary of P");
        BoundarySimplex bs;
        bs.facet = supporting;
        bs.indices = f;
        for (int idx : f) bs.vertices.push_back(sub.points[static_cast<size_t>(idx)]);
        bs.mass = facet_simplex_mass(bs.vertices, P.normal(supporting));
        out.push_back(std::move(bs));
    }
    return out;
}

Rational support_function(const std::vector<IntVector>& weights, const RatVector& lambda) {
    if (weights.empty()) throw Error("EmptyWeightSet", "support function of an empty set");
    Rational best;
    bool first = true;
    for (const auto& chi : weights) {
        Rational v = dot(to_rational(chi), lambda);
        if (first || v > best) {
            best = v;
            first = false;
        }
    }
    return best;
}

DelzantPolytope transform(const DelzantPolytope& P, const IntMatrix& A, const RatVector& t) {
    const Eigen::Index n = P.dim();
    if (A.rows() != n || A.cols() != n || t.size() != n)
        throw Error("DimensionMismatch", "transform shape");
    RatMatrix Ar(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) Ar(i, j) = Rational(A(i, j));
    Rational det = Ar.determinant();
    if (det != 1 && det != -1) throw Error("NotUnimodular", "matrix determinant is not +-1");
    RatMatrix AinvT = Ar.inverse().transpose();

    IntMatrix normals(P.num_facets(), n);
    RatVector offsets(P.num_facets());
    for (Eigen::Index k = 0; k < P.num_facets(); ++k) {
        RatVector alpha = AinvT * to_rational(P.normal(k));
        IntVector prim = primitivize(alpha);  // already integer and primitive
        normals.row(k) = prim.transpose();
        offsets(k) = P.offsets()(k) + dot(to_rational(prim), t);
    }
    return DelzantPolytope(normals, offsets);
}

SimplicialSubdivision transform(const SimplicialSubdivision& sub, const IntMatrix& A,
                                const RatVector& t) {
    RatMatrix Ar(A.rows(), A.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) Ar(i, j) = Rational(A(i, j));
    SimplicialSubdivision out = sub;
    for (auto& p : out.points) p = RatVector(Ar * p + t);
    return out;
}

}  // namespace toricstab
