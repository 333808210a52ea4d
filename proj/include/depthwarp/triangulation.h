#pragma once

#include <Eigen/Dense>

namespace depthwarp {

// Midpoint of the shortest segment between two rays, via the closed-form
// 2x2 normal equations of the closest-point problem. Directions must be
// unit length; near-parallel rays raise DegenerateGeometryError.
Eigen::Vector3d triangulate_midpoint(const Eigen::Vector3d& origin_a,
                                     const Eigen::Vector3d& dir_a,
                                     const Eigen::Vector3d& origin_b,
                                     const Eigen::Vector3d& dir_b);

}  // namespace depthwarp
