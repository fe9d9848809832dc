// JSON wire formats.  Exact quantities travel as canonical rational strings
// "p/q"; floats appear only in energy reports and CSV.
#ifndef TORICSTAB_IO_HPP
#define TORICSTAB_IO_HPP

#include "toricstab/kahler.hpp"
#include "toricstab/stability.hpp"

#include <json.hpp>

namespace toricstab {

using Json = nlohmann::json;

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json vector_to_json(const RatVector& v);
RatVector vector_from_json(const Json& j);

Json polytope_to_json(const DelzantPolytope& P);
DelzantPolytope polytope_from_json(const Json& j);

Json subdivision_to_json(const SimplicialSubdivision& sub);
SimplicialSubdivision subdivision_from_json(const Json& j);

Json pl_to_json(const PLFunction& f);
PLFunction pl_from_json(const Json& j);

Json potential_to_json(const SymplecticPotential& u);
SymplecticPotential potential_from_json(const Json& j);

Json delzant_report_to_json(const DelzantReport& report);
Json stability_report_to_json(const StabilityReport& report);
Json energy_report_to_json(const EnergyReport& report);
Json test_config_to_json(const TestConfiguration& config);

}  // namespace toricstab

#endif  // TORICSTAB_IO_HPP
