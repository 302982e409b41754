#pragma once

/// \file dirac.hpp
///
/// Umbrella header.

#include "dirac/errors.hpp"
#include "dirac/exterior.hpp"
#include "dirac/interior.hpp"
#include "dirac/levinson.hpp"
#include "dirac/nodes.hpp"
#include "dirac/parallel.hpp"
#include "dirac/phase_shift.hpp"
#include "dirac/potential.hpp"
#include "dirac/projective.hpp"
#include "dirac/serialization.hpp"
#include "dirac/special_functions.hpp"
#include "dirac/spectrum.hpp"
#include "dirac/sweep.hpp"
