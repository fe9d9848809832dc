#include "toricstab/catalog.hpp"

namespace toricstab {

DelzantPolytope make_interval(const Rational& length) {
    IntMatrix normals(2, 1);
    normals << 1, -1;
    RatVector offsets(2);
    offsets << Rational(0), -length;
    return DelzantPolytope(normals, offsets);
}

DelzantPolytope make_simplex2(const Rational& scale) {
    IntMatrix normals(3, 2);
    normals << 1, 0, 0, 1, -1, -1;
    RatVector offsets(3);
    offsets << Rational(0), Rational(0), -scale;
    return DelzantPolytope(normals, offsets);
}

DelzantPolytope make_square(const Rational& side) {
    IntMatrix normals(4, 2);
    normals << 1, 0, 0, 1, -1, 0, 0, -1;
    RatVector offsets(4);
    offsets << Rational(0), Rational(0), -side, -side;
    return DelzantPolytope(normals, offsets);
}

DelzantPolytope make_hirzebruch_fano() {
    IntMatrix normals(4, 2);
    normals << 1, 0, 0, 1, 1, 1, -1, -1;
    RatVector offsets(4);
    offsets << Rational(-1), Rational(-1), Rational(-1), Rational(-1);
    return DelzantPolytope(normals, offsets);
}

DelzantPolytope make_cube() {
    IntMatrix normals(6, 3);
    normals << 1, 0, 0, 0, 1, 0, 0, 0, 1, -1, 0, 0, 0, -1, 0, 0, 0, -1;
    RatVector offsets(6);
    offsets << Rational(0), Rational(0), Rational(0), Rational(-1), Rational(-1), Rational(-1);
    return DelzantPolytope(normals, offsets);
}

DelzantPolytope make_bad_triangle() {
    IntMatrix normals(3, 2);
    normals << 1, 0, 0, 1, -1, -2;
    RatVector offsets(3);
    offsets << Rational(0), Rational(0), Rational(-2);
    return DelzantPolytope(normals, offsets);
}

std::vector<CatalogEntry> catalog() {
    std::vector<CatalogEntry> out;
    out.push_back({"interval", make_interval(), true, true,
                   "[0,1]; vol 1, boundary 2, Shat 2, Futaki 0, delta 2"});
    out.push_back({"simplex2", make_simplex2(), true, true,
                   "standard 2-simplex; vol 1/2, boundary 3, Shat 6"});
    out.push_back({"square", make_square(), true, true,
                   "[0,1]^2; vol 1, boundary 4, Shat 4, Futaki 0"});
    out.push_back({"hirzebruch_fano", make_hirzebruch_fano(), true, false,
                   "F1 anticanonical; vol 4, boundary 8, Futaki (1/3,1/3)"});
    out.push_back({"cube", make_cube(), true, true, "[0,1]^3; vol 1, boundary 6, Shat 6"});
    out.push_back({"bad_triangle", make_bad_triangle(), false, false,
                   "vertex (0,1) has normal determinant -2; fails check_delzant"});
    return out;
}

std::optional<CatalogEntry> catalog_lookup(const std::string& name) {
    std::string base = name;
    std::optional<Rational> param;
    const auto open = name.find('(');
    if (open != std::string::npos && name.back() == ')') {
        base = name.substr(0, open);
        param = parse_rational(name.substr(open + 1, name.size() - open - 2));
        if (!(*param > 0)) throw Error("BadCatalogParameter", "size parameter must be positive");
    }
    if (base == "interval")
        return CatalogEntry{name, make_interval(param.value_or(1)), true, true, "[0,lambda]"};
    if (base == "simplex2")
        return CatalogEntry{name, make_simplex2(param.value_or(1)), true, true, "scaled 2-simplex"};
    if (base == "square")
        return CatalogEntry{name, make_square(param.value_or(1)), true, true, "[0,lambda]^2"};
    for (auto& entry : catalog())
        if (entry.name == base && !param) return entry;
    return std::nullopt;
}

}  // namespace toricstab
