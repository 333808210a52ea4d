#include "depthwarp/sampling.h"

#include <cmath>

namespace depthwarp {

namespace {

struct Corners {
  int x0, y0, x1, y1;
  double wx, wy;
};

inline bool in_bounds(double u, double v, int width, int height) {
  // Written so that NaN coordinates also fail the test.
  return u >= 0.0 && u <= width - 1 && v >= 0.0 && v <= height - 1;
}

inline Corners corners_at(double u, double v, int width, int height) {
  Corners c;
  c.x0 = static_cast<int>(std::floor(u));
  c.y0 = static_cast<int>(std::floor(v));
  c.wx = u - c.x0;
  c.wy = v - c.y0;
  // At u == width-1 the floor cell is the last column; the right neighbour
  // is clamped and carries weight exactly 0.
  c.x1 = c.x0 + 1 < width ? c.x0 + 1 : width - 1;
  c.y1 = c.y0 + 1 < height ? c.y0 + 1 : height - 1;
  return c;
}

void check_dims(int sh, int sw, const ProjectionMap& coords) {
  if (coords.height <= 0 || coords.width <= 0) {
    throw InvalidInputError("bilinear_sample: empty coordinate map");
  }
  (void)sh;
  (void)sw;
}

}  // namespace

SampledGrid bilinear_sample(const ScalarGrid& source,
                            const ProjectionMap& coords) {
  check_dims(source.height, source.width, coords);
  SampledGrid out;
  out.values = ScalarGrid(coords.height, coords.width, 0.0);
  out.mask = ValidityMask(coords.height, coords.width);
  for (int y = 0; y < coords.height; ++y) {
    for (int x = 0; x < coords.width; ++x) {
      const size_t i = coords.index(y, x);
      if (!coords.in_front[i] ||
          !in_bounds(coords.u[i], coords.v[i], source.width, source.height)) {
        continue;
      }
      const Corners c =
          corners_at(coords.u[i], coords.v[i], source.width, source.height);
      const double tl = source.at(c.y0, c.x0);
      const double tr = source.at(c.y0, c.x1);
      const double bl = source.at(c.y1, c.x0);
      const double br = source.at(c.y1, c.x1);
      out.values.at(y, x) = tl * (1.0 - c.wx) * (1.0 - c.wy) +
                            tr * c.wx * (1.0 - c.wy) +
                            bl * (1.0 - c.wx) * c.wy + br * c.wx * c.wy;
      out.mask.set(y, x, true);
    }
  }
  return out;
}

SampledImage bilinear_sample(const Image& source, const ProjectionMap& coords) {
  check_dims(source.height, source.width, coords);
  SampledImage out;
  out.values = Image(coords.height, coords.width, source.channels, 0.0);
  out.mask = ValidityMask(coords.height, coords.width);
  for (int y = 0; y < coords.height; ++y) {
    for (int x = 0; x < coords.width; ++x) {
      const size_t i = coords.index(y, x);
      if (!coords.in_front[i] ||
          !in_bounds(coords.u[i], coords.v[i], source.width, source.height)) {
        continue;
      }
      const Corners c =
          corners_at(coords.u[i], coords.v[i], source.width, source.height);
      const double w_tl = (1.0 - c.wx) * (1.0 - c.wy);
      const double w_tr = c.wx * (1.0 - c.wy);
      const double w_bl = (1.0 - c.wx) * c.wy;
      const double w_br = c.wx * c.wy;
      for (int ch = 0; ch < source.channels; ++ch) {
        out.values.at(y, x, ch) = source.at(c.y0, c.x0, ch) * w_tl +
                                  source.at(c.y0, c.x1, ch) * w_tr +
                                  source.at(c.y1, c.x0, ch) * w_bl +
                                  source.at(c.y1, c.x1, ch) * w_br;
      }
      out.mask.set(y, x, true);
    }
  }
  return out;
}

void bilinear_sample_backward(const ScalarGrid& source,
                              const ProjectionMap& coords,
                              const ValidityMask& mask,
                              const ScalarGrid& upstream,
                              ScalarGrid* grad_source, ScalarGrid* grad_u,
                              ScalarGrid* grad_v) {
  for (int y = 0; y < coords.height; ++y) {
    for (int x = 0; x < coords.width; ++x) {
      if (!mask.valid(y, x)) continue;
      const double up = upstream.at(y, x);
      if (up == 0.0) continue;
      const size_t i = coords.index(y, x);
      const Corners c =
          corners_at(coords.u[i], coords.v[i], source.width, source.height);
      const double tl = source.at(c.y0, c.x0);
      const double tr = source.at(c.y0, c.x1);
      const double bl = source.at(c.y1, c.x0);
      const double br = source.at(c.y1, c.x1);
      if (grad_source != nullptr) {
        grad_source->at(c.y0, c.x0) += up * (1.0 - c.wx) * (1.0 - c.wy);
        grad_source->at(c.y0, c.x1) += up * c.wx * (1.0 - c.wy);
        grad_source->at(c.y1, c.x0) += up * (1.0 - c.wx) * c.wy;
        grad_source->at(c.y1, c.x1) += up * c.wx * c.wy;
      }
      if (grad_u != nullptr) {
        grad_u->at(y, x) += up * ((1.0 - c.wy) * (tr - tl) + c.wy * (br - bl));
      }
      if (grad_v != nullptr) {
        grad_v->at(y, x) += up * ((1.0 - c.wx) * (bl - tl) + c.wx * (br - tr));
      }
    }
  }
}

void bilinear_sample_backward(const Image& source, const ProjectionMap& coords,
                              const ValidityMask& mask, const Image& upstream,
                              Image* grad_source, ScalarGrid* grad_u,
                              ScalarGrid* grad_v) {
  for (int y = 0; y < coords.height; ++y) {
    for (int x = 0; x < coords.width; ++x) {
      if (!mask.valid(y, x)) continue;
      const size_t i = coords.index(y, x);
      const Corners c =
          corners_at(coords.u[i], coords.v[i], source.width, source.height);
      const double w_tl = (1.0 - c.wx) * (1.0 - c.wy);
      const double w_tr = c.wx * (1.0 - c.wy);
      const double w_bl = (1.0 - c.wx) * c.wy;
      const double w_br = c.wx * c.wy;
      for (int ch = 0; ch < source.channels; ++ch) {
        const double up = upstream.at(y, x, ch);
        if (up == 0.0) continue;
        const double tl = source.at(c.y0, c.x0, ch);
        const double tr = source.at(c.y0, c.x1, ch);
        const double bl = source.at(c.y1, c.x0, ch);
        const double br = source.at(c.y1, c.x1, ch);
        if (grad_source != nullptr) {
          grad_source->at(c.y0, c.x0, ch) += up * w_tl;
          grad_source->at(c.y0, c.x1, ch) += up * w_tr;
          grad_source->at(c.y1, c.x0, ch) += up * w_bl;
          grad_source->at(c.y1, c.x1, ch) += up * w_br;
        }
        if (grad_u != nullptr) {
          grad_u->at(y, x) +=
              up * ((1.0 - c.wy) * (tr - tl) + c.wy * (br - bl));
        }
        if (grad_v != nullptr) {
          grad_v->at(y, x) +=
              up * ((1.0 - c.wx) * (bl - tl) + c.wx * (br - tr));
        }
      }
    }
  }
}

}  // namespace depthwarp
