#pragma once

// Simulation toolkit for pre- and post-selected quantum systems: ideal
// projective measurements with a seeded Monte Carlo chain runner, the
// conditional-probability and weak-value analytics of the two-state
// description, a Gaussian-pointer model of weakly coupled readout, and an
// executable catalog of worked scenarios.

#include "tsvf/complexmat.hpp"
#include "tsvf/measurement.hpp"
#include "tsvf/observable.hpp"
#include "tsvf/parallel.hpp"
#include "tsvf/random_instances.hpp"
#include "tsvf/report.hpp"
#include "tsvf/rng.hpp"
#include "tsvf/scenarios.hpp"
#include "tsvf/selftest.hpp"
#include "tsvf/spectral.hpp"
#include "tsvf/state.hpp"
#include "tsvf/two_state.hpp"
#include "tsvf/weak_pointer.hpp"
