#include "toricstab/io.hpp"

namespace toricstab {

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string()) throw Error("BadJson", "expected a rational string");
    return parse_rational(j.get<std::string>());
}

Json vector_to_json(const RatVector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
    return out;
}

RatVector vector_from_json(const Json& j) {
    if (!j.is_array()) throw Error("BadJson", "expected an array of rationals");
    RatVector v(static_cast<Eigen::Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = rational_from_json(j[i]);
    return v;
}

Json polytope_to_json(const DelzantPolytope& P) {
    Json facets = Json::array();
    for (Eigen::Index k = 0; k < P.num_facets(); ++k) {
        Json normal = Json::array();
        for (Eigen::Index i = 0; i < P.dim(); ++i) normal.push_back(P.normals()(k, i));
        facets.push_back({{"normal", normal}, {"offset", to_string(P.offsets()(k))}});
    }
    return {{"dim", P.dim()}, {"facets", facets}};
}

DelzantPolytope polytope_from_json(const Json& j) {
    if (!j.contains("dim") || !j.contains("facets"))
        throw Error("BadJson", "polytope JSON needs dim and facets");
    const Eigen::Index n = j.at("dim").get<Eigen::Index>();
    const auto& facets = j.at("facets");
    IntMatrix normals(static_cast<Eigen::Index>(facets.size()), n);
    RatVector offsets(static_cast<Eigen::Index>(facets.size()));
    for (size_t k = 0; k < facets.size(); ++k) {
        const auto& normal = facets[k].at("normal");
        if (static_cast<Eigen::Index>(normal.size()) != n)
            throw Error("BadJson", "facet normal has the wrong length");
        for (size_t i = 0; i < normal.size(); ++i)
            normals(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) =
                normal[i].get<std::int64_t>();
        offsets(static_cast<Eigen::Index>(k)) = rational_from_json(facets[k].at("offset"));
    }
    return DelzantPolytope(normals, offsets);
}

Json subdivision_to_json(const SimplicialSubdivision& sub) {
    Json points = Json::array();
    for (const auto& p : sub.points) points.push_back(vector_to_json(p));
    Json cells = Json::array();
    for (const auto& c : sub.cells) cells.push_back(c);
    return {{"points", points}, {"cells", cells}};
}

SimplicialSubdivision subdivision_from_json(const Json& j) {
    SimplicialSubdivision sub;
    for (const auto& p : j.at("points")) sub.points.push_back(vector_from_json(p));
    if (sub.points.empty()) throw Error("BadJson", "subdivision needs points");
    sub.dim = sub.points[0].size();
    for (const auto& c : j.at("cells")) sub.cells.push_back(c.get<std::vector<int>>());
    return sub;
}

Json pl_to_json(const PLFunction& f) {
    if (std::holds_alternative<MaxAffinePL>(f)) {
        const auto& ma = std::get<MaxAffinePL>(f);
        Json pieces = Json::array();
        for (const auto& piece : ma.pieces)
            pieces.push_back({{"a", vector_to_json(piece.a)}, {"b", to_string(piece.b)}});
        return {{"type", "max_affine"}, {"pieces", pieces}};
    }
    const auto& mesh = std::get<MeshPL>(f);
    Json values = Json::array();
    for (Eigen::Index i = 0; i < mesh.values.size(); ++i)
        values.push_back(to_string(mesh.values(i)));
    return {{"type", "mesh"},
            {"subdivision", subdivision_to_json(mesh.subdivision)},
            {"values", values}};
}

PLFunction pl_from_json(const Json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "max_affine") {
        MaxAffinePL f;
        for (const auto& piece : j.at("pieces"))
            f.pieces.push_back(
                AffineFunction{vector_from_json(piece.at("a")), rational_from_json(piece.at("b"))});
        if (f.pieces.empty()) throw Error("BadJson", "max_affine needs at least one piece");
        return f;
    }
    if (type == "mesh") {
        MeshPL f;
        f.subdivision = subdivision_from_json(j.at("subdivision"));
        f.values = vector_from_json(j.at("values"));
        if (f.values.size() != static_cast<Eigen::Index>(f.subdivision.points.size()))
            throw Error("BadJson", "mesh value count does not match the point count");
        return f;
    }
    throw Error("BadJson", "unknown PL function type '" + type + "'");
}

Json potential_to_json(const SymplecticPotential& u) {
    Json poly = Json::array();
    for (const auto& mono : u.smooth_poly)
        poly.push_back({{"exponents", mono.exponents}, {"coeff", to_string(mono.coeff)}});
    return {{"polytope", polytope_to_json(u.polytope)},
            {"smooth_poly", poly},
            {"affine", {{"a", vector_to_json(u.affine.a)}, {"b", to_string(u.affine.b)}}}};
}

SymplecticPotential potential_from_json(const Json& j) {
    SymplecticPotential u(polytope_from_json(j.at("polytope")));
    if (j.contains("smooth_poly")) {
        for (const auto& mono : j.at("smooth_poly")) {
            SymplecticPotential::Monomial m;
            m.exponents = mono.at("exponents").get<std::vector<int>>();
            if (static_cast<Eigen::Index>(m.exponents.size()) != u.polytope.dim())
                throw Error("BadJson", "monomial exponent length mismatch");
            m.coeff = rational_from_json(mono.at("coeff"));
            u.smooth_poly.push_back(std::move(m));
        }
    }
    if (j.contains("affine")) {
        u.affine.a = vector_from_json(j.at("affine").at("a"));
        u.affine.b = rational_from_json(j.at("affine").at("b"));
        if (u.affine.a.size() != u.polytope.dim())
            throw Error("BadJson", "affine part dimension mismatch");
    }
    return u;
}

Json delzant_report_to_json(const DelzantReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.vertex_checks) {
        checks.push_back({{"vertex", vector_to_json(c.vertex)},
                          {"incident_facets", c.incident_facets},
                          {"det", to_string(c.det)},
                          {"ok", c.ok}});
    }
    return {{"valid", report.valid},
            {"normals_primitive", report.normals_primitive},
            {"vertices", checks}};
}

Json stability_report_to_json(const StabilityReport& report) {
    Json deltas = Json::array();
    for (const auto& [depth, value] : report.delta_by_depth)
        deltas.push_back({{"depth", depth}, {"value", to_string(value)}});
    std::string verdict;
    switch (report.verdict) {
        case StabilityReport::Verdict::UnstableAffine: verdict = "UnstableAffine"; break;
        case StabilityReport::Verdict::DestabilizerFound: verdict = "DestabilizerFound"; break;
        case StabilityReport::Verdict::NoDestabilizerUpToDepth:
            verdict = "NoDestabilizerUpToDepth";
            break;
    }
    Json out = {{"futaki", vector_to_json(report.futaki)},
                {"futaki_zero", report.futaki_zero},
                {"delta", deltas},
                {"verdict", verdict}};
    if (report.witness) {
        out["witness"] = pl_to_json(*report.witness);
        out["witness_L"] = to_string(report.witness_L);
        out["witness_J"] = to_string(report.witness_J);
    }
    return out;
}

Json energy_report_to_json(const EnergyReport& report) {
    return {{"E", report.E},
            {"M", report.M},
            {"nonlinear_term", report.nonlinear_term},
            {"linear_term", report.linear_term},
            {"error_estimate", report.error_estimate}};
}

Json test_config_to_json(const TestConfiguration& config) {
    Json out = polytope_to_json(config.big);
    Json cells = Json::array();
    for (const auto& cell : config.cells) {
        Json verts = Json::array();
        for (const auto& v : cell) verts.push_back(vector_to_json(v));
        cells.push_back(verts);
    }
    out["cells"] = cells;
    return out;
}

}  // namespace toricstab
