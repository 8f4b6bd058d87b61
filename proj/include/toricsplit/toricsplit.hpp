#pragma once

#include "toricsplit/arf.hpp"
#include "toricsplit/charnum.hpp"
#include "toricsplit/cohomology.hpp"
#include "toricsplit/error.hpp"
#include "toricsplit/fan.hpp"
#include "toricsplit/handles.hpp"
#include "toricsplit/lattice.hpp"
#include "toricsplit/lp.hpp"
#include "toricsplit/matrix.hpp"
#include "toricsplit/numeric.hpp"
