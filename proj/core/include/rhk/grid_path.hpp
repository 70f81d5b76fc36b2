#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rhk {

enum class PathLabel { X_T, Lambda_T, Z_T, Y_limit, X_limit };

// Values of a process on the uniform grid t_i = i/n of [0, 1].
// Counting paths (X_T, Lambda_T) are validated nondecreasing with
// values[0] = 0; X_limit starts at 0 but may dip where the raw Y path went
// negative, so monotonicity is not enforced for it.
struct GridPath {
  double step = 0.0;            // h = 1/n
  std::vector<double> values;   // n + 1 values
  PathLabel label = PathLabel::X_T;
};

GridPath make_grid_path(double step, std::vector<double> values, PathLabel label);

std::string to_string(PathLabel label);

inline GridPath make_grid_path(double step, std::vector<double> values,
                               PathLabel label) {
  GridPath p{step, std::move(values), label};
  if (p.values.size() < 2)
    throw std::invalid_argument("GridPath: need at least two grid values");
  const bool counting = label == PathLabel::X_T || label == PathLabel::Lambda_T;
  if (counting || label == PathLabel::X_limit) {
    if (p.values.front() != 0.0)
      throw std::invalid_argument("GridPath: counting paths start at 0");
  }
  if (counting) {
    for (std::size_t i = 1; i < p.values.size(); ++i)
      if (p.values[i] < p.values[i - 1])
        throw std::invalid_argument("GridPath: counting path must be nondecreasing");
  }
  return p;
}

inline std::string to_string(PathLabel label) {
  switch (label) {
    case PathLabel::X_T: return "X_T";
    case PathLabel::Lambda_T: return "Lambda_T";
    case PathLabel::Z_T: return "Z_T";
    case PathLabel::Y_limit: return "Y";
    case PathLabel::X_limit: return "X";
  }
  return "?";
}

}  // namespace rhk
