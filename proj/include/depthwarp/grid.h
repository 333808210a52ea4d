#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "depthwarp/errors.h"

namespace depthwarp {

// Row-major single-channel raster of doubles. The basic currency of the
// library: depth maps, relative-depth fields, masks, residuals and other
// per-pixel intermediates are all ScalarGrids.
struct ScalarGrid {
  int height = 0;
  int width = 0;
  std::vector<double> values;  // height * width, row-major

  ScalarGrid() = default;
  ScalarGrid(int h, int w, double fill = 0.0)
      : height(h), width(w), values(static_cast<size_t>(h) * w, fill) {}

  double& at(int y, int x) { return values[static_cast<size_t>(y) * width + x]; }
  double at(int y, int x) const {
    return values[static_cast<size_t>(y) * width + x];
  }
  size_t size() const { return values.size(); }
  bool same_shape(const ScalarGrid& o) const {
    return height == o.height && width == o.width;
  }
};

// Row-major, channel-interleaved image with values in [0, 1].
struct Image {
  int height = 0;
  int width = 0;
  int channels = 0;  // 1 or 3
  std::vector<double> values;

  Image() = default;
  Image(int h, int w, int c, double fill = 0.0)
      : height(h),
        width(w),
        channels(c),
        values(static_cast<size_t>(h) * w * c, fill) {}

  double& at(int y, int x, int c) {
    return values[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  double at(int y, int x, int c) const {
    return values[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  bool same_shape(const Image& o) const {
    return height == o.height && width == o.width && channels == o.channels;
  }
};

// Binary per-pixel validity indicator. Entries are exactly 0 or 1; a pixel is
// valid when its projection lands inside the other view and in front of its
// camera.
struct ValidityMask {
  ScalarGrid grid;

  ValidityMask() = default;
  ValidityMask(int h, int w) : grid(h, w, 0.0) {}

  bool valid(int y, int x) const { return grid.at(y, x) != 0.0; }
  void set(int y, int x, bool v) { grid.at(y, x) = v ? 1.0 : 0.0; }
  long count() const {
    long n = 0;
    for (double v : grid.values) n += (v != 0.0);
    return n;
  }
};

// Strictly positive, finite depth raster (meters).
struct DepthMap {
  ScalarGrid grid;

  DepthMap() = default;
  explicit DepthMap(ScalarGrid g);  // validates positivity and finiteness
};

// Throws InvalidInputError naming the first offending entry.
void validate_finite(const ScalarGrid& grid, const std::string& what);
void validate_image_range(const Image& image, const std::string& what);

}  // namespace depthwarp
