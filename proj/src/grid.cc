#include "depthwarp/grid.h"

#include <cmath>

namespace depthwarp {

namespace {

std::string pixel_name(const ScalarGrid& g, size_t idx) {
  int y = static_cast<int>(idx) / g.width;
  int x = static_cast<int>(idx) % g.width;
  return "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
}

}  // namespace

DepthMap::DepthMap(ScalarGrid g) : grid(std::move(g)) {
  for (size_t i = 0; i < grid.values.size(); ++i) {
    double v = grid.values[i];
    if (!std::isfinite(v) || v <= 0.0) {
      throw InvalidInputError("depth map entry at pixel " +
                              pixel_name(grid, i) + " is not positive finite");
    }
  }
}

void validate_finite(const ScalarGrid& grid, const std::string& what) {
  for (size_t i = 0; i < grid.values.size(); ++i) {
    if (!std::isfinite(grid.values[i])) {
      throw InvalidInputError(what + " entry at pixel " +
                              pixel_name(grid, i) + " is not finite");
    }
  }
}

void validate_image_range(const Image& image, const std::string& what) {
  for (double v : image.values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InvalidInputError(what + " has values outside [0, 1]");
    }
  }
}

}  // namespace depthwarp
