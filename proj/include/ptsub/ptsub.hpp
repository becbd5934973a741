#pragma once

#include "ptsub/connectivity.hpp"
#include "ptsub/errors.hpp"
#include "ptsub/geometry.hpp"
#include "ptsub/intersect.hpp"
#include "ptsub/lattice.hpp"
#include "ptsub/meshio.hpp"
#include "ptsub/rational.hpp"
#include "ptsub/validation.hpp"
