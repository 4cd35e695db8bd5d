#pragma once

// Umbrella header for the CHSH-overlap entanglement toolkit.

#include "chshov/chsh.hpp"
#include "chshov/concurrence.hpp"
#include "chshov/distill.hpp"
#include "chshov/families.hpp"
#include "chshov/gte.hpp"
#include "chshov/matrix.hpp"
#include "chshov/pair_overlaps.hpp"
#include "chshov/random_unitary.hpp"
#include "chshov/so_generators.hpp"
#include "chshov/state.hpp"
#include "chshov/state_io.hpp"
#include "chshov/threshold_scan.hpp"
