#pragma once

// Umbrella header for the library (the CLI layer lives in cli.hpp).

#include "rational.hpp"
#include "expr.hpp"
#include "operator.hpp"
#include "factor.hpp"
#include "solver.hpp"
#include "parser.hpp"
#include "render.hpp"
#include "verify.hpp"
