#pragma once

// Iterative regularisation of linear inverse problems in variable
// exponent Lebesgue sequence spaces: space primitives, matched
// projector/adjoint pairs, modular-based deterministic and stochastic
// gradient descent, and a CT-style experiment harness.

#include "varlp/common.hpp"
#include "varlp/commands.hpp"
#include "varlp/config.hpp"
#include "varlp/duality.hpp"
#include "varlp/exponent_map.hpp"
#include "varlp/exponent_strategies.hpp"
#include "varlp/geometry.hpp"
#include "varlp/io.hpp"
#include "varlp/linear_operator.hpp"
#include "varlp/luxemburg.hpp"
#include "varlp/metrics.hpp"
#include "varlp/modular.hpp"
#include "varlp/noise.hpp"
#include "varlp/parallel.hpp"
#include "varlp/partition.hpp"
#include "varlp/phantom.hpp"
#include "varlp/radon.hpp"
#include "varlp/rng.hpp"
#include "varlp/solver.hpp"
#include "varlp/step_schedule.hpp"
