#pragma once

/// Umbrella header.

#include "conelyap/charpoly.hpp"
#include "conelyap/cones.hpp"
#include "conelyap/coupling.hpp"
#include "conelyap/dynamics.hpp"
#include "conelyap/errors.hpp"
#include "conelyap/linprog.hpp"
#include "conelyap/lyapunov.hpp"
#include "conelyap/matrix.hpp"
#include "conelyap/monotone.hpp"
#include "conelyap/problem.hpp"
#include "conelyap/rational.hpp"
#include "conelyap/spectral.hpp"
