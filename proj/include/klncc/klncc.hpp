#pragma once

// Umbrella header for the kLNCC / FPkLNCCT toolkit: exact-cost graphs,
// SAT-to-negative-cycle reductions, desk-scale exact detectors, and the
// oracle-equivalence harness.

#include "klncc/cnf.hpp"
#include "klncc/detect.hpp"
#include "klncc/dimacs.hpp"
#include "klncc/dpll.hpp"
#include "klncc/error.hpp"
#include "klncc/graph.hpp"
#include "klncc/graph_io.hpp"
#include "klncc/harness.hpp"
#include "klncc/rational.hpp"
#include "klncc/reduction.hpp"
#include "klncc/reduction_io.hpp"
