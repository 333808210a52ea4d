#include "depthwarp/filters.h"

#include <algorithm>
#include <string>

namespace depthwarp {

namespace {

// Correlation kernels; gy is the transpose of gx.
constexpr int kSobelX[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
constexpr int kSobelY[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};

inline int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

void check_even(int height, int width) {
  if (height % 2 != 0 || width % 2 != 0) {
    throw InvalidInputError("downsample2x requires even dimensions, got " +
                            std::to_string(width) + "x" +
                            std::to_string(height));
  }
}

}  // namespace

SobelGradients sobel_gradients(const ScalarGrid& grid) {
  if (grid.height < 3 || grid.width < 3) {
    throw InvalidInputError("sobel_gradients requires a grid of at least 3x3");
  }
  SobelGradients out;
  out.gx = ScalarGrid(grid.height, grid.width, 0.0);
  out.gy = ScalarGrid(grid.height, grid.width, 0.0);
  // Accumulated as paired differences so constant input cancels exactly.
  for (int y = 0; y < grid.height; ++y) {
    const int ym = clamp_index(y - 1, grid.height);
    const int yp = clamp_index(y + 1, grid.height);
    for (int x = 0; x < grid.width; ++x) {
      const int xm = clamp_index(x - 1, grid.width);
      const int xp = clamp_index(x + 1, grid.width);
      out.gx.at(y, x) = (grid.at(ym, xp) - grid.at(ym, xm)) +
                        2.0 * (grid.at(y, xp) - grid.at(y, xm)) +
                        (grid.at(yp, xp) - grid.at(yp, xm));
      out.gy.at(y, x) = (grid.at(yp, xm) - grid.at(ym, xm)) +
                        2.0 * (grid.at(yp, x) - grid.at(ym, x)) +
                        (grid.at(yp, xp) - grid.at(ym, xp));
    }
  }
  return out;
}

void sobel_backward(const ScalarGrid& upstream_gx,
                    const ScalarGrid& upstream_gy, ScalarGrid* grad_input) {
  const int h = upstream_gx.height;
  const int w = upstream_gx.width;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double ux = upstream_gx.at(y, x);
      const double uy = upstream_gy.at(y, x);
      if (ux == 0.0 && uy == 0.0) continue;
      for (int dy = -1; dy <= 1; ++dy) {
        const int yy = clamp_index(y + dy, h);
        for (int dx = -1; dx <= 1; ++dx) {
          const int xx = clamp_index(x + dx, w);
          grad_input->at(yy, xx) += ux * kSobelX[dy + 1][dx + 1];
          grad_input->at(yy, xx) += uy * kSobelY[dy + 1][dx + 1];
        }
      }
    }
  }
}

ScalarGrid downsample2x(const ScalarGrid& grid) {
  check_even(grid.height, grid.width);
  ScalarGrid out(grid.height / 2, grid.width / 2, 0.0);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      out.at(y, x) = 0.25 * (grid.at(2 * y, 2 * x) + grid.at(2 * y, 2 * x + 1) +
                             grid.at(2 * y + 1, 2 * x) +
                             grid.at(2 * y + 1, 2 * x + 1));
    }
  }
  return out;
}

Image downsample2x(const Image& image) {
  check_even(image.height, image.width);
  Image out(image.height / 2, image.width / 2, image.channels, 0.0);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      for (int c = 0; c < image.channels; ++c) {
        out.at(y, x, c) = 0.25 * (image.at(2 * y, 2 * x, c) +
                                  image.at(2 * y, 2 * x + 1, c) +
                                  image.at(2 * y + 1, 2 * x, c) +
                                  image.at(2 * y + 1, 2 * x + 1, c));
      }
    }
  }
  return out;
}

void downsample2x_backward(const ScalarGrid& upstream_coarse,
                           ScalarGrid* grad_fine) {
  for (int y = 0; y < upstream_coarse.height; ++y) {
    for (int x = 0; x < upstream_coarse.width; ++x) {
      const double g = 0.25 * upstream_coarse.at(y, x);
      grad_fine->at(2 * y, 2 * x) += g;
      grad_fine->at(2 * y, 2 * x + 1) += g;
      grad_fine->at(2 * y + 1, 2 * x) += g;
      grad_fine->at(2 * y + 1, 2 * x + 1) += g;
    }
  }
}

}  // namespace depthwarp
