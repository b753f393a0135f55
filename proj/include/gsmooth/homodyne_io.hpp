#pragma once

#include <iosfwd>

#include "json.hpp"

#include "gsmooth/homodyne.hpp"

namespace gsmooth {

// Sample CSV layout:
//   # seed,eta1,eta2,count,state
//   # <seed>,<eta1>,<eta2>,<count>,<state spec text>
//   <alpha1>,<alpha2>          (one line per sample, 17 significant digits)
// The state text is last on its line and may itself contain commas.
void write_samples_csv(std::ostream& out, const SampleSet& set);
SampleSet read_samples_csv(std::istream& in);

nlohmann::json complex_to_json(complex z);
complex complex_from_json(const nlohmann::json& j);

nlohmann::json detector_to_json(const DetectorModel& detector);

/// Report schema (wall time only when `include_timing`):
/// {"state", "seed", "sample_count", "detector": {...},
///  "targets": [{"target": [n, m], "estimate": {"re", "im"}, "std_error",
///               "method", "oracle": {"re", "im"}, "abs_error"}],
///  "wall_time_s"?}
nlohmann::json report_to_json(const ReconstructionReport& report, bool include_timing = false);
ReconstructionReport report_from_json(const nlohmann::json& j);

}  // namespace gsmooth
