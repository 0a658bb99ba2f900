#pragma once

// Umbrella header for the noiselab library.

#include "noiselab/bench.hpp"
#include "noiselab/bench_config.hpp"
#include "noiselab/filters.hpp"
#include "noiselab/image.hpp"
#include "noiselab/iris.hpp"
#include "noiselab/metrics.hpp"
#include "noiselab/noise.hpp"
#include "noiselab/pnm.hpp"
#include "noiselab/rng.hpp"
#include "noiselab/util.hpp"
