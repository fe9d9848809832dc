#include "toricstab/stability.hpp"

#include "toricstab/lp.hpp"

#include <algorithm>

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

Rational j_norm_on_mesh(const DelzantPolytope& P, const MeshPL& f) {
    const Eigen::Index n = P.dim();
    const Rational V = volume(P);
    const RatVector bary = barycenter(P);
    const Rational mean = integrate(P, f, Region::Interior) / V;

    // Variables (a, t): minimize <bary, a> - t  subject to
    // <v, a> - t >= -f(v) for every mesh point v; the affine offset cancels
    // and the inner minimum of f + <a, .> is attained at a mesh point.
    LinearProgram lp = LinearProgram::minimize(RatVector::Zero(n + 1));
    lp.objective.head(n) = bary;
    lp.objective(n) = -1;
    for (size_t i = 0; i < f.subdivision.points.size(); ++i) {
        RatVector row(n + 1);
        row.head(n) = f.subdivision.points[i];
        row(n) = -1;
        lp.add_inequality(row, -f.values(static_cast<Eigen::Index>(i)));
    }
    LPOutcome o = solve(lp);
    if (o.kind != LPOutcome::Kind::Optimal)
        throw Error("JNormLP", "gauge LP failed to produce an optimum");
    return mean + o.value;
}

}  // namespace

Rational donaldson_functional(const DelzantPolytope& P, const AffineFunction& f) {
    return integrate(P, f, Region::Boundary) - mean_scalar(P) * integrate(P, f, Region::Interior);
}

Rational donaldson_functional(const DelzantPolytope& P, const MeshPL& f) {
    return integrate(P, f, Region::Boundary) - mean_scalar(P) * integrate(P, f, Region::Interior);
}

Rational donaldson_functional(const DelzantPolytope& P, const MaxAffinePL& f) {
    if (f.pieces.size() == 1) return donaldson_functional(P, f.pieces[0]);
    return donaldson_functional(P, crease_refine(P, f));
}

Rational donaldson_functional(const DelzantPolytope& P, const PLFunction& f) {
    return std::visit([&](const auto& g) { return donaldson_functional(P, g); }, f);
}

std::pair<RatVector, bool> futaki_character(const DelzantPolytope& P) {
    const Eigen::Index n = P.dim();
    RatVector out(n);
    bool zero = true;
    for (Eigen::Index i = 0; i < n; ++i) {
        AffineFunction coord;
        coord.a = RatVector::Zero(n);
        coord.a(i) = 1;
        coord.b = 0;
        out(i) = donaldson_functional(P, coord);
        if (out(i) != 0) zero = false;
    }
    return {out, zero};
}

Rational j_norm(const DelzantPolytope& P, const MaxAffinePL& f) {
    return j_norm_on_mesh(P, crease_refine(P, f));
}

Rational j_norm(const DelzantPolytope& P, const MeshPL& f) {
    ConvexityReport report = is_convex(f);
    if (!report.convex) throw Error("NotConvex", "mesh function violates a hinge condition");
    return j_norm_on_mesh(P, f);
}

Rational j_norm(const DelzantPolytope& P, const PLFunction& f) {
    return std::visit([&](const auto& g) { return j_norm(P, g); }, f);
}

Rational stability_ratio(const DelzantPolytope& P, const PLFunction& f) {
    Rational jn = j_norm(P, f);
    if (jn == 0) throw Error("AffineInput", "stability ratio undefined for affine functions");
    return donaldson_functional(P, f) / jn;
}

DeltaResult delta_on_subdivision(const DelzantPolytope& P, const SimplicialSubdivision& sub) {
    auto [futaki, futaki_zero] = futaki_character(P);
    if (!futaki_zero)
        throw Error("FutakiNonzero",
                    "delta is -infinity along the affine destabilizer; see futaki_character");

    const Eigen::Index n = P.dim();
    const Eigen::Index N = static_cast<Eigen::Index>(sub.points.size());
    const Rational V = volume(P);
    const Rational shat = mean_scalar(P);

    RatVector w_int = RatVector::Zero(N);
    for (const auto& cell : sub.cells) {
        std::vector<RatVector> verts;
        for (int i : cell) verts.push_back(sub.points[static_cast<size_t>(i)]);
        const Rational share = simplex_volume(verts) / Rational(static_cast<int>(cell.size()));
        for (int i : cell) w_int(i) += share;
    }
    RatVector w_bd = RatVector::Zero(N);
    for (const auto& bs : subdivision_boundary(P, sub)) {
        const Rational share = bs.mass / Rational(static_cast<int>(bs.indices.size()));
        for (int i : bs.indices) w_bd(i) += share;
    }

    LinearProgram lp = LinearProgram::minimize(RatVector(w_bd - shat * w_int));

    for (const auto& hinge : mesh_hinges(sub)) {
        const auto& cell_a = sub.cells[static_cast<size_t>(hinge.cell_a)];
        const auto& cell_b = sub.cells[static_cast<size_t>(hinge.cell_b)];
        int opposite = -1;
        for (int v : cell_b)
            if (std::find(hinge.facet.begin(), hinge.facet.end(), v) == hinge.facet.end())
                opposite = v;
        std::vector<RatVector> verts;
        for (int i : cell_a) verts.push_back(sub.points[static_cast<size_t>(i)]);
        auto bary = barycentric_coordinates(verts, sub.points[static_cast<size_t>(opposite)]);
        if (!bary) throw Error("BadSubdivision", "degenerate hinge cell");
        RatVector row = RatVector::Zero(N);
        row(opposite) += 1;
        for (size_t i = 0; i < cell_a.size(); ++i)
            row(cell_a[i]) -= (*bary)(static_cast<Eigen::Index>(i));
        lp.add_inequality(row, Rational(0));
    }

    for (Eigen::Index v = 0; v < N; ++v) {
        RatVector row = RatVector::Zero(N);
        row(v) = 1;
        lp.add_inequality(row, Rational(0));
    }

    // f(barycenter) = 0 through the containing cell.
    {
        const RatVector bary = barycenter(P);
        bool placed = false;
        for (const auto& cell : sub.cells) {
            std::vector<RatVector> verts;
            for (int i : cell) verts.push_back(sub.points[static_cast<size_t>(i)]);
            auto lam = barycentric_coordinates(verts, bary);
            if (!lam) continue;
            bool inside = true;
            for (Eigen::Index i = 0; i < lam->size(); ++i)
                if ((*lam)(i) < 0) inside = false;
            if (!inside) continue;
            RatVector row = RatVector::Zero(N);
            for (size_t i = 0; i < cell.size(); ++i)
                row(cell[i]) += (*lam)(static_cast<Eigen::Index>(i));
            lp.add_equality(row, Rational(0));
            placed = true;
            break;
        }
        if (!placed) throw Error("BadSubdivision", "barycenter not covered by the subdivision");
    }

    // mean = 1, i.e. the gauged J-norm is 1 on the feasible set.
    lp.add_equality(w_int, V);

    LPOutcome o = solve(lp);
    if (o.kind == LPOutcome::Kind::Infeasible)
        throw Error("DeltaLP", "no convex mesh function matches the gauge on this subdivision");
    if (o.kind != LPOutcome::Kind::Optimal)
        throw Error("DeltaLP", "delta LP unexpectedly unbounded");

    DeltaResult result;
    result.delta = o.value;
    result.minimizer.subdivision = sub;
    result.minimizer.values = o.point;
    return result;
}

StabilityReport delta_scan(const DelzantPolytope& P, int max_depth, int max_points) {
    StabilityReport report;
    auto [futaki, zero] = futaki_character(P);
    report.futaki = futaki;
    report.futaki_zero = zero;
    if (!zero) {
        report.verdict = StabilityReport::Verdict::UnstableAffine;
        MaxAffinePL witness;
        AffineFunction l;
        l.a = -futaki;
        l.b = 0;
        witness.pieces.push_back(l);
        report.witness = witness;
        report.witness_L = donaldson_functional(P, l);
        report.witness_J = 0;
        return report;
    }
    report.verdict = StabilityReport::Verdict::NoDestabilizerUpToDepth;
    for (int depth = 0; depth <= max_depth; ++depth) {
        DeltaResult r = delta_on_subdivision(P, subdivide(P, depth, max_points));
        report.delta_by_depth.emplace_back(depth, r.delta);
        report.witness = r.minimizer;
        report.witness_L = r.delta;
        report.witness_J = 1;
        if (r.delta <= 0) {
            report.verdict = StabilityReport::Verdict::DestabilizerFound;
            break;
        }
    }
    return report;
}

std::optional<SimpleScanResult> simple_pl_scan(
    const DelzantPolytope& P,
    const std::vector<std::pair<IntVector, std::vector<Rational>>>& creases) {
    auto [futaki, zero] = futaki_character(P);
    if (!zero) throw Error("FutakiNonzero", "simple scan requires a vanishing Futaki character");

    std::optional<SimpleScanResult> best;
    for (const auto& [normal, offsets] : creases) {
        Rational lo, hi;
        bool first = true;
        for (const auto& v : P.vertices()) {
            Rational val = 0;
            for (Eigen::Index i = 0; i < normal.size(); ++i) val += Rational(normal(i)) * v(i);
            if (first || val < lo) lo = val;
            if (first || val > hi) hi = val;
            first = false;
        }
        for (const Rational& c : offsets) {
            if (!(lo < c && c < hi)) continue;  // crease misses the interior
            MaxAffinePL f;
            f.pieces.push_back(AffineFunction{RatVector::Zero(P.dim()), Rational(0)});
            f.pieces.push_back(AffineFunction{to_rational(normal), -c});
            Rational L = donaldson_functional(P, f);
            Rational jn = j_norm(P, f);
            if (jn == 0) continue;
            Rational ratio = L / jn;
            if (!best || ratio < best->ratio) best = SimpleScanResult{f, ratio, L, jn};
        }
    }
    return best;
}

namespace {

// Drop rows that do not support an n-dimensional face of the candidate
// system, scanning sequentially.
void prune_redundant_rows(std::vector<RatVector>& rows, std::vector<Rational>& rhs) {
    const Eigen::Index n = rows[0].size();
    for (size_t k = 0; k < rows.size() && rows.size() > static_cast<size_t>(n) + 1;) {
        LinearProgram lp = LinearProgram::minimize(RatVector::Zero(n + 1));
        lp.objective(n) = -1;
        for (size_t j = 0; j < rows.size(); ++j) {
            if (j == k) continue;
            RatVector row(n + 1);
            row.head(n) = rows[j];
            row(n) = -1;
            lp.add_inequality(row, rhs[j]);
        }
        RatVector eq(n + 1);
        eq.head(n) = rows[k];
        eq(n) = 0;
        lp.add_equality(eq, rhs[k]);
        RatVector cap = RatVector::Zero(n + 1);
        cap(n) = -1;
        lp.add_inequality(cap, Rational(-1));
        LPOutcome o = solve(lp);
        const bool essential = o.kind == LPOutcome::Kind::Optimal && o.point(n) > 0;
        if (essential) {
            ++k;
        } else {
            rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(k));
            rhs.erase(rhs.begin() + static_cast<std::ptrdiff_t>(k));
        }
    }
}

}  // namespace

TestConfiguration build_test_config(const DelzantPolytope& P, const MaxAffinePL& f) {
    const Eigen::Index n = P.dim();
    MaxAffinePL fc = canonicalize(P, f);
    {
        bool constant = fc.pieces.size() == 1;
        if (constant)
            for (Eigen::Index i = 0; i < n; ++i)
                if (fc.pieces[0].a(i) != 0) constant = false;
        if (constant)
            throw Error("ConstantPL", "constant f yields a height-zero test configuration");
    }

    Rational maxf;
    bool first = true;
    for (const auto& v : P.vertices()) {
        Rational val = evaluate(fc, v);
        if (first || val > maxf) maxf = val;
        first = false;
    }

    std::vector<RatVector> rows;
    std::vector<Rational> rhs;
    for (Eigen::Index k = 0; k < P.num_facets(); ++k) {
        RatVector row = RatVector::Zero(n + 1);
        row.head(n) = to_rational(P.normal(k));
        rows.push_back(row);
        rhs.push_back(P.offsets()(k));
    }
    {
        RatVector top = RatVector::Zero(n + 1);
        top(n) = -1;
        rows.push_back(top);
        rhs.push_back(-maxf);
    }
    for (const auto& piece : fc.pieces) {
        RatVector dir(n + 1);
        dir.head(n) = -piece.a;
        dir(n) = 1;
        IntVector prim = primitivize(dir);
        const Rational mu = Rational(prim(n));  // positive scale applied by primitivize
        rows.push_back(to_rational(prim));
        rhs.push_back(mu * piece.b);
    }
    prune_redundant_rows(rows, rhs);

    IntMatrix normals(static_cast<Eigen::Index>(rows.size()), n + 1);
    RatVector offsets(static_cast<Eigen::Index>(rows.size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        IntVector prim = primitivize(rows[i]);
        normals.row(static_cast<Eigen::Index>(i)) = prim.transpose();
        offsets(static_cast<Eigen::Index>(i)) = rhs[i];
    }

    TestConfiguration out{DelzantPolytope(normals, offsets), {}};

    std::vector<RatVector> prow;
    for (Eigen::Index k = 0; k < P.num_facets(); ++k) prow.push_back(to_rational(P.normal(k)));
    for (size_t i = 0; i < fc.pieces.size(); ++i) {
        std::vector<RatVector> crows = prow;
        RatVector crhs(P.offsets().size() + static_cast<Eigen::Index>(fc.pieces.size()) - 1);
        crhs.head(P.offsets().size()) = P.offsets();
        Eigen::Index at = P.offsets().size();
        for (size_t j = 0; j < fc.pieces.size(); ++j) {
            if (j == i) continue;
            crows.push_back(fc.pieces[i].a - fc.pieces[j].a);
            crhs(at++) = fc.pieces[j].b - fc.pieces[i].b;
        }
        auto verts = enumerate_vertices(crows, crhs);
        std::sort(verts.begin(), verts.end(), lex_less);
        out.cells.push_back(std::move(verts));
    }
    return out;
}

TestConfiguration build_test_config(const DelzantPolytope& P, const MeshPL& f) {
    ConvexityReport report = is_convex(f);
    if (!report.convex) throw Error("NotConvex", "mesh function violates a hinge condition");
    MaxAffinePL pieces;
    for (size_t c = 0; c < f.subdivision.cells.size(); ++c) {
        AffineFunction piece = cell_affine(f, static_cast<int>(c));
        bool dup = false;
        for (const auto& q : pieces.pieces)
            if (vec_eq(piece.a, q.a) && piece.b == q.b) dup = true;
        if (!dup) pieces.pieces.push_back(piece);
    }
    return build_test_config(P, pieces);
}

TestConfiguration build_test_config(const DelzantPolytope& P, const PLFunction& f) {
    return std::visit([&](const auto& g) { return build_test_config(P, g); }, f);
}

}  // namespace toricstab
