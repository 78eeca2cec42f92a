#pragma once

// Grid sweep engine. Per-point evaluations are pure, so the parallel path
// fills a value table with OpenMP and reduces serially; results are
// identical to the serial reference path bit for bit.

#include <functional>
#include <optional>

#include "hpsurf/types.hpp"

namespace hpsurf {

enum class Exec { Serial, Parallel, Auto };

Exec default_exec();

struct GridReduction {
  double max_value = 0.0;       // max over included points; 0 when none
  int argmax = -1;              // linear index of the max (lowest on ties)
  long included = 0;
  long excluded = 0;            // points where the evaluation was degenerate
  bool any() const { return included > 0; }
};

using PointEval = std::function<std::optional<double>(double x, double y)>;

// Evaluates f on every grid point; degenerate_point from f counts as excluded.
GridReduction grid_max(const GridSpec& grid, const PointEval& f, Exec exec = Exec::Auto);

// Full value table (NaN at excluded points), row-major over (j*nx + i).
std::vector<double> grid_table(const GridSpec& grid, const PointEval& f,
                               Exec exec = Exec::Auto);

}  // namespace hpsurf
