#pragma once

#include <cstdint>
#include <vector>

#include "depthwarp/camera.h"
#include "depthwarp/grid.h"

namespace depthwarp {

// Points closer than this to the target camera plane count as behind it.
// Keeps the perspective division away from the singularity at z = 0.
constexpr double kMinProjectedDepth = 1e-9;

// Dense cross-view projection of a source raster: for every source pixel the
// continuous target-pixel coordinate, the depth after the rigid transform
// (z in the target camera frame) and whether the point lies in front of the
// target camera. Coordinates of behind-camera pixels are set to (-1, -1).
struct ProjectionMap {
  int height = 0;
  int width = 0;
  std::vector<double> u;            // target column coordinate
  std::vector<double> v;            // target row coordinate
  std::vector<double> depth;        // z after transform (may be <= 0)
  std::vector<uint8_t> in_front;    // depth > kMinProjectedDepth

  ProjectionMap() = default;
  ProjectionMap(int h, int w)
      : height(h),
        width(w),
        u(static_cast<size_t>(h) * w, 0.0),
        v(static_cast<size_t>(h) * w, 0.0),
        depth(static_cast<size_t>(h) * w, 0.0),
        in_front(static_cast<size_t>(h) * w, 0) {}

  size_t index(int y, int x) const { return static_cast<size_t>(y) * width + x; }
};

// Projection of a single source pixel together with the derivatives of the
// outputs with respect to the source depth value (the backward pass chains
// through these).
struct PixelProjection {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
  bool in_front = false;
  double du_ddepth = 0.0;
  double dv_ddepth = 0.0;
  double ddepth_ddepth = 0.0;
};

// Back-projects (u, v) with k_src at the given depth, applies the rigid
// transform and reprojects with k_dst. Differentiable in depth.
PixelProjection project_point(double u, double v, double depth,
                              const CameraIntrinsics& k_src,
                              const CameraIntrinsics& k_dst,
                              const RigidPose& pose_src_to_dst);

// Dense version over a whole depth map. Depth entries must be positive and
// finite; a bad entry raises InvalidInputError naming the pixel.
ProjectionMap project_pixels(const DepthMap& depth,
                             const CameraIntrinsics& k_src,
                             const CameraIntrinsics& k_dst,
                             const RigidPose& pose_src_to_dst);

}  // namespace depthwarp
