#pragma once

#include <string>
#include <string_view>

#include "gsmooth/fock.hpp"

namespace gsmooth {

// Text grammar `kind[:args]`:
//   vacuum | fock:N | coherent:Z | thermal:NBAR | cat:Z[,PHASE] | squeezed:R
// where Z is a complex literal such as `1.5`, `1.5+0.3i`, `-2i`.
// `squeezed_vacuum` is accepted as a synonym of `squeezed`.
// Throws InvalidSpec on malformed input.
StateSpec parse_state_spec(std::string_view text);

/// Canonical text form; parse_state_spec(format_state_spec(s)) == s.
std::string format_state_spec(const StateSpec& spec);

complex parse_complex(std::string_view text);
std::string format_complex(complex z);

}  // namespace gsmooth
