#pragma once

// Umbrella header: truncated dual-number (jet) arithmetic, its shift-matrix
// realization, the Hermite/truncated-exponential special function layer,
// closed-form truncated parameter integrals, heat- and Schroedinger-type
// evolution, numerical cross-check oracles, and the expression front-end.

#include "errors.hpp"
#include "scalar.hpp"
#include "jet.hpp"
#include "functions.hpp"
#include "matrix.hpp"
#include "special.hpp"
#include "gamma.hpp"
#include "numerical.hpp"
#include "integrals.hpp"
#include "evolution.hpp"
#include "expr.hpp"
