#pragma once

// Pinned acceptance suite: eleven numbered criteria covering the whole
// library, each printing one PASS/FAIL line with the measured numbers next
// to the bound they were held to.  The bounds are fixed here; tol_scale
// relaxes all of them uniformly (the CLI wires DUALFRENET_TOL_SCALE through
// it).  The randomized sweeps derive every sample from `seed` per index, so
// a run is bit-identical whether or not `parallel` is set.

#include <cstdint>
#include <ostream>

namespace dualfrenet {

bool run_acceptance(std::uint64_t seed, bool parallel, double tol_scale, std::ostream& out);

} // namespace dualfrenet
