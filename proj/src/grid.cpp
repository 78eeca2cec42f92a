#include "hpsurf/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hpsurf {

Exec default_exec() {
  const char* env = std::getenv("HPSURF_EXEC");
  if (env != nullptr) {
    const std::string v(env);
    if (v == "serial") return Exec::Serial;
    if (v == "parallel") return Exec::Parallel;
  }
  return Exec::Auto;
}

static bool run_parallel(Exec exec, int points) {
#ifdef _OPENMP
  if (exec == Exec::Parallel) return true;
  if (exec == Exec::Auto) return points >= 1024;
#else
  (void)exec;
  (void)points;
#endif
  return false;
}

static void fill_table(const GridSpec& grid, const PointEval& f, Exec exec,
                       std::vector<double>& table) {
  const int total = grid.size();
  table.assign(total, std::numeric_limits<double>::quiet_NaN());
  auto eval_one = [&](int idx) {
    const PointXY p = grid.point(idx);
    try {
      const std::optional<double> v = f(p.x, p.y);
      if (v.has_value()) table[idx] = *v;
    } catch (const degenerate_point&) {
      // excluded
    }
  };
  if (run_parallel(exec, total)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int idx = 0; idx < total; ++idx) eval_one(idx);
  } else {
    for (int idx = 0; idx < total; ++idx) eval_one(idx);
  }
}

GridReduction grid_max(const GridSpec& grid, const PointEval& f, Exec exec) {
  std::vector<double> table;
  fill_table(grid, f, exec, table);
  GridReduction r;
  for (int idx = 0; idx < static_cast<int>(table.size()); ++idx) {
    if (std::isnan(table[idx])) {
      ++r.excluded;
      continue;
    }
    if (r.included == 0 || table[idx] > r.max_value) {
      r.max_value = table[idx];
      r.argmax = idx;
    }
    ++r.included;
  }
  if (r.included == 0) r.max_value = 0.0;
  return r;
}

std::vector<double> grid_table(const GridSpec& grid, const PointEval& f, Exec exec) {
  std::vector<double> table;
  fill_table(grid, f, exec, table);
  return table;
}

}  // namespace hpsurf
