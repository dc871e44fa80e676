#pragma once

// Two indistinguishable fermionic continuous-time quantum walkers on a ring,
// evolved unitarily or under the two-component steepest-entropy-ascent
// master equation, with the paper-standard observables.

#include "seawalk/config.hpp"
#include "seawalk/csv.hpp"
#include "seawalk/graph.hpp"
#include "seawalk/hamiltonian.hpp"
#include "seawalk/hilbert.hpp"
#include "seawalk/integrator.hpp"
#include "seawalk/observables.hpp"
#include "seawalk/run.hpp"
#include "seawalk/sea.hpp"
#include "seawalk/state.hpp"
#include "seawalk/types.hpp"
