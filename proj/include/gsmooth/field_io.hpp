#pragma once

#include <iosfwd>

#include "json.hpp"

#include "gsmooth/phasespace.hpp"

namespace gsmooth {

// CSV layout:
//   # label,sigma1,sigma2,min,max,step
//   # <label>,<sigma1>,<sigma2>,<min>,<max>,<step>
//   one grid row (fixed alpha_1, increasing alpha_2) per line
// All numbers are written with 17 significant digits.
void write_field_csv(std::ostream& out, const PhaseSpaceField& field);
PhaseSpaceField read_field_csv(std::istream& in);

// {"label", "sigma1", "sigma2", "grid": {"min", "max", "step"}, "values": [[...], ...]}
nlohmann::json field_to_json(const PhaseSpaceField& field);
PhaseSpaceField field_from_json(const nlohmann::json& j);

}  // namespace gsmooth
