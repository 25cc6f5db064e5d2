#pragma once

#include "fovlap/calib_graph.hpp"
#include "fovlap/camera.hpp"
#include "fovlap/config.hpp"
#include "fovlap/errors.hpp"
#include "fovlap/formation.hpp"
#include "fovlap/geometry.hpp"
#include "fovlap/montecarlo.hpp"
#include "fovlap/overlap.hpp"
#include "fovlap/rng.hpp"
#include "fovlap/scenario.hpp"
#include "fovlap/sweep.hpp"
