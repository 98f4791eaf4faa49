#pragma once

// Umbrella header for the phase-retrieval feasibility toolkit.

#include "rrrkit/analysis.hpp"
#include "rrrkit/model.hpp"
#include "rrrkit/objective.hpp"
#include "rrrkit/probgen.hpp"
#include "rrrkit/projectors.hpp"
#include "rrrkit/random.hpp"
#include "rrrkit/serialize.hpp"
#include "rrrkit/solvers.hpp"
#include "rrrkit/types.hpp"
