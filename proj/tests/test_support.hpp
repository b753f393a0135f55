#pragma once

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gsmooth/fock.hpp"
#include "gsmooth/phasespace.hpp"
#include "gsmooth/state_spec.hpp"

namespace gsmooth::testing {

inline const std::vector<std::string>& test_state_names() {
    static const std::vector<std::string> names = {"vacuum", "fock:1", "fock:2", "coherent:1.5",
                                                   "cat:1.5,0", "thermal:0.5", "squeezed:0.3"};
    return names;
}

inline DensityMatrix test_state(const std::string& name, int dim = kDefaultDim) {
    return build_state(parse_state_spec(name), dim);
}

// Wigner fields on the default grid, computed once per test binary.
inline const PhaseSpaceField& cached_wigner(const std::string& name) {
    static std::map<std::string, PhaseSpaceField> cache;
    auto it = cache.find(name);
    if (it == cache.end()) {
        it = cache.emplace(name, wigner_grid(test_state(name), QuadratureGrid::standard())).first;
    }
    return it->second;
}

inline double sup_norm(const PhaseSpaceField& a, const PhaseSpaceField& b) {
    return (a.values() - b.values()).cwiseAbs().maxCoeff();
}

inline int grid_index(const QuadratureGrid& grid, double coordinate) {
    return static_cast<int>(std::lround((coordinate - grid.min()) / grid.step()));
}

}  // namespace gsmooth::testing
