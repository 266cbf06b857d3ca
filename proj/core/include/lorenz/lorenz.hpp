#pragma once

#include "lorenz/bounds.hpp"
#include "lorenz/copulas.hpp"
#include "lorenz/diagnostics.hpp"
#include "lorenz/engine.hpp"
#include "lorenz/errors.hpp"
#include "lorenz/grid.hpp"
#include "lorenz/marginals.hpp"
#include "lorenz/quadrature.hpp"
#include "lorenz/state.hpp"
