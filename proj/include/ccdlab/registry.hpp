#pragma once

#include "ccdlab/spinchain.hpp"

namespace ccdlab {

/// Named unitaries: "cphase" (two-qubit exp(i t Z tensor Z), uses t),
/// "cnot", "identity" (any n).  Unknown names throw.
Mat example_unitary(const std::string& name, int n = 2, double t = 0.0);

/// Named states: "ghz" (any n >= 2), "w" (n = 3), "w4" (n = 4).
Vec example_state(const std::string& name, int n = 3);

/// Named chain presets: "xxx" (Jx=Jy=Jz=1), "xyz" (1, 0.7, 0.3), "ising"
/// (Jz=1), "xy" (J=1, g and h_z left at 0 for the caller to set).
SpinChainSpec example_chain(const std::string& name, int n);

std::vector<std::string> example_names();

}  // namespace ccdlab
