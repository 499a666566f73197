#pragma once

// Umbrella header.

#include "chain.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "monotonicity.hpp"
#include "montecarlo.hpp"
#include "parallel.hpp"
#include "pattern.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "serialize.hpp"
#include "sturm.hpp"
#include "transition.hpp"
