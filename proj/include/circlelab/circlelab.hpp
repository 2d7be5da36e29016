#pragma once

#include "circlelab/arcs.hpp"
#include "circlelab/common.hpp"
#include "circlelab/ergodic.hpp"
#include "circlelab/expsums.hpp"
#include "circlelab/fourier.hpp"
#include "circlelab/io.hpp"
#include "circlelab/multipliers.hpp"
#include "circlelab/polyavg.hpp"
#include "circlelab/polynomial.hpp"
#include "circlelab/seminorms.hpp"
#include "circlelab/signal.hpp"
