#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpsurf {

using Cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// Extended-precision value type used by the finite-difference engine.
using LCplx = std::complex<long double>;
using LCVec = Eigen::Matrix<LCplx, Eigen::Dynamic, 1>;

struct PointXY {
  double x = 0.0;
  double y = 0.0;
};

// Rectangular parameter domain [x0,x1] x [y0,y1].
struct Cell {
  double x0 = 0.0, x1 = 1.0;
  double y0 = 0.0, y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double min_extent() const { return std::min(width(), height()); }
};

struct GridSpec {
  Cell cell;
  int nx = 9;
  int ny = 9;

  int size() const { return nx * ny; }

  PointXY point(int idx) const {
    const int i = idx % nx;
    const int j = idx / nx;
    const double fx = nx > 1 ? static_cast<double>(i) / (nx - 1) : 0.0;
    const double fy = ny > 1 ? static_cast<double>(j) / (ny - 1) : 0.0;
    return {cell.x0 + fx * cell.width(), cell.y0 + fy * cell.height()};
  }
};

// Raised at parameter points where a quantity is undefined (zero lift,
// vanishing metric factor, terminated frame). Grid sweeps catch it and
// record the point as excluded.
struct degenerate_point : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kDegenerateThreshold = 1e-12;

}  // namespace hpsurf
