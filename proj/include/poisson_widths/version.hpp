#pragma once

#define POISSON_WIDTHS_VERSION_MAJOR 0
#define POISSON_WIDTHS_VERSION_MINOR 1
#define POISSON_WIDTHS_VERSION_PATCH 0
#define POISSON_WIDTHS_VERSION "0.1.0"

namespace poisson_widths {

inline const char* library_version() { return POISSON_WIDTHS_VERSION; }

} // namespace poisson_widths
