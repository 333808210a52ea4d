#include "depthwarp/projection.h"

#include <cmath>
#include <string>

namespace depthwarp {

PixelProjection project_point(double u, double v, double depth,
                              const CameraIntrinsics& k_src,
                              const CameraIntrinsics& k_dst,
                              const RigidPose& pose_src_to_dst) {
  // Ray through the pixel in the source camera frame, z normalized to 1.
  const double rx = (u - k_src.cx) / k_src.fx;
  const double ry = (v - k_src.cy) / k_src.fy;

  const Eigen::Matrix3d& rot = pose_src_to_dst.rotation;
  const Eigen::Vector3d& t = pose_src_to_dst.translation;

  // q = R * ray; the transformed point is q * depth + t, so q is also the
  // derivative of the transformed point with respect to depth.
  const double qx = rot(0, 0) * rx + rot(0, 1) * ry + rot(0, 2);
  const double qy = rot(1, 0) * rx + rot(1, 1) * ry + rot(1, 2);
  const double qz = rot(2, 0) * rx + rot(2, 1) * ry + rot(2, 2);

  const double px = qx * depth + t.x();
  const double py = qy * depth + t.y();
  const double pz = qz * depth + t.z();

  PixelProjection out;
  out.depth = pz;
  out.ddepth_ddepth = qz;
  out.in_front = pz > kMinProjectedDepth;
  if (out.in_front) {
    out.u = k_dst.fx * (px / pz) + k_dst.cx;
    out.v = k_dst.fy * (py / pz) + k_dst.cy;
    const double inv_pz2 = 1.0 / (pz * pz);
    out.du_ddepth = k_dst.fx * (qx * pz - px * qz) * inv_pz2;
    out.dv_ddepth = k_dst.fy * (qy * pz - py * qz) * inv_pz2;
  } else {
    out.u = -1.0;
    out.v = -1.0;
  }
  return out;
}

ProjectionMap project_pixels(const DepthMap& depth,
                             const CameraIntrinsics& k_src,
                             const CameraIntrinsics& k_dst,
                             const RigidPose& pose_src_to_dst) {
  const ScalarGrid& d = depth.grid;
  ProjectionMap map(d.height, d.width);
  for (int y = 0; y < d.height; ++y) {
    for (int x = 0; x < d.width; ++x) {
      const double dv = d.at(y, x);
      if (!std::isfinite(dv) || dv <= 0.0) {
        throw InvalidInputError("depth at pixel (" + std::to_string(x) + ", " +
                                std::to_string(y) +
                                ") is not positive finite");
      }
      PixelProjection p = project_point(x, y, dv, k_src, k_dst,
                                        pose_src_to_dst);
      const size_t i = map.index(y, x);
      map.u[i] = p.u;
      map.v[i] = p.v;
      map.depth[i] = p.depth;
      map.in_front[i] = p.in_front ? 1 : 0;
    }
  }
  return map;
}

}  // namespace depthwarp
