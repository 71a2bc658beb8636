#pragma once

// Umbrella header: exact computation of Mather-Jacobian multiplier ideals
// of monomial ideals on affine toric varieties, with an independent
// resolution-based evaluation for cross-checking.

#include "mjtoric/errors.hpp"
#include "mjtoric/io.hpp"
#include "mjtoric/jacobian.hpp"
#include "mjtoric/matrix.hpp"
#include "mjtoric/mj.hpp"
#include "mjtoric/numeric.hpp"
#include "mjtoric/polyhedron.hpp"
#include "mjtoric/resolution.hpp"
#include "mjtoric/semigroup.hpp"
#include "mjtoric/toric_ideal.hpp"
