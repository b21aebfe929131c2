#pragma once

// Convenience umbrella: pulls in the whole library.

#include "version.hpp"
#include "errors.hpp"
#include "tolerances.hpp"
#include "precision.hpp"
#include "series.hpp"
#include "kernels.hpp"
#include "widths.hpp"
#include "threshold.hpp"
#include "oracles.hpp"
#include "linsolve.hpp"
#include "skspline.hpp"
#include "cli.hpp"
