// Built-in example polytopes for demos and the verification suites.
#ifndef TORICSTAB_CATALOG_HPP
#define TORICSTAB_CATALOG_HPP

#include "toricstab/polytope.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toricstab {

struct CatalogEntry {
    std::string name;
    DelzantPolytope polytope;
    bool expect_delzant = true;
    bool expect_futaki_zero = true;
    std::string notes;
};

DelzantPolytope make_interval(const Rational& length = 1);     // [0, length]
DelzantPolytope make_simplex2(const Rational& scale = 1);      // x,y >= 0, x+y <= scale
DelzantPolytope make_square(const Rational& side = 1);         // [0, side]^2
DelzantPolytope make_hirzebruch_fano();                        // F1 anticanonical polygon
DelzantPolytope make_cube();                                   // [0,1]^3
DelzantPolytope make_bad_triangle();  // fails the vertex determinant condition

/// Entries with default parameters, in a fixed order.
std::vector<CatalogEntry> catalog();

/// Resolves "name" or "name(p/q)" for the parametric families; nullopt when
/// the name is unknown.
std::optional<CatalogEntry> catalog_lookup(const std::string& name);

}  // namespace toricstab

#endif  // TORICSTAB_CATALOG_HPP
