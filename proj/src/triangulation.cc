#include "depthwarp/triangulation.h"

#include <cmath>

#include "depthwarp/errors.h"

namespace depthwarp {

Eigen::Vector3d triangulate_midpoint(const Eigen::Vector3d& origin_a,
                                     const Eigen::Vector3d& dir_a,
                                     const Eigen::Vector3d& origin_b,
                                     const Eigen::Vector3d& dir_b) {
  if (std::abs(dir_a.squaredNorm() - 1.0) > 1e-9 ||
      std::abs(dir_b.squaredNorm() - 1.0) > 1e-9) {
    throw InvalidInputError("triangulation directions must be unit length");
  }
  const double c = dir_a.dot(dir_b);
  if (std::abs(c) >= 1.0 - 1e-9) {
    throw DegenerateGeometryError("rays are parallel, cannot triangulate");
  }

  // Minimize |origin_a + s*dir_a - origin_b - t*dir_b|^2. With unit
  // directions the normal equations reduce to a 2x2 system with
  // determinant 1 - c^2.
  const Eigen::Vector3d w = origin_a - origin_b;
  const double da_w = dir_a.dot(w);
  const double db_w = dir_b.dot(w);
  const double inv_det = 1.0 / (1.0 - c * c);
  const double s = (c * db_w - da_w) * inv_det;
  const double t = (db_w - c * da_w) * inv_det;

  const Eigen::Vector3d pa = origin_a + s * dir_a;
  const Eigen::Vector3d pb = origin_b + t * dir_b;
  return 0.5 * (pa + pb);
}

}  // namespace depthwarp
