#pragma once

#include "qdot/error.hpp"
#include "qdot/qmath.hpp"
#include "qdot/dot_model.hpp"
#include "qdot/correlations.hpp"
#include "qdot/channels.hpp"
#include "qdot/sweep.hpp"
#include "qdot/plot.hpp"
