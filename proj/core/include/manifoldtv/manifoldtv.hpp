#pragma once

// Umbrella header for the manifold-tv core library.

#include "manifoldtv/averaging.hpp"
#include "manifoldtv/color.hpp"
#include "manifoldtv/errors.hpp"
#include "manifoldtv/image.hpp"
#include "manifoldtv/manifold.hpp"
#include "manifoldtv/manifolds.hpp"
#include "manifoldtv/metrics.hpp"
#include "manifoldtv/mvf.hpp"
#include "manifoldtv/noise.hpp"
#include "manifoldtv/prox.hpp"
#include "manifoldtv/rng.hpp"
#include "manifoldtv/solvers.hpp"
#include "manifoldtv/visual.hpp"
