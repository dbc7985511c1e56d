#pragma once

// Wire formats.
//
//   HaarExpansion  {"coeffs":[{"j":int,"k":uint,"c":float},...]}
//   Multiplier     {"base":[{"k":uint,"v":float}],"default":float}
//   GradientField  {"components":[{"i":uint,"expansion":<HaarExpansion>}]}
//   EnergyReport   {"s","integral","spectral","gradient","c"}
//   CzReport       {"c0_witness","max_delta_knorm","regularity_violations","trials","seed",...}
//   DyadicInterval {"j":int,"k":uint}
//   StepFunction   CSV: "j=J,M=M" header, then one value per cell.
//
// Malformed input raises ParseError.

#include "dyadic/energy.hpp"
#include "dyadic/harness.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace dyadic {

using Json = nlohmann::ordered_json;

Json to_json(const DyadicInterval& interval);
Json to_json(const HaarExpansion& f);
Json to_json(const Multiplier& m);
Json to_json(const GradientField& g);
Json to_json(const EnergyReport& r);
Json to_json(const CzReport& r);
Json to_json(const SweepReport& r);
Json to_json(const SuiteReport& r);
Json to_json(const KernelVector& k);
Json to_json(const PairingResult& r);

HaarExpansion expansion_from_json(const Json& j);
Multiplier multiplier_from_json(const Json& j);
GradientField gradient_from_json(const Json& j);
DyadicInterval interval_from_json(const Json& j);

Json read_json_file(const std::string& path);

void write_csv(std::ostream& os, const StepFunction& g);
StepFunction read_csv(std::istream& is);
void write_csv(std::ostream& os, const SweepReport& r);

}  // namespace dyadic
