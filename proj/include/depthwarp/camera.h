#pragma once

#include <Eigen/Dense>

#include "depthwarp/errors.h"

namespace depthwarp {

// Pinhole intrinsics. Pixel coordinates are (u, v) with u the column index,
// v the row index, origin at the center of the top-left pixel.
struct CameraIntrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;

  CameraIntrinsics() = default;
  CameraIntrinsics(double fx_, double fy_, double cx_, double cy_);
};

// Rigid transform X_out = rotation * X_in + translation.
// Used both as camera-to-world poses and as view-to-view relative poses.
struct RigidPose {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  RigidPose() = default;
  RigidPose(const Eigen::Matrix3d& r, const Eigen::Vector3d& t);

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const {
    return rotation * p + translation;
  }
  RigidPose inverse() const;
};

// Relative transform taking frame-a coordinates to frame-b coordinates,
// given camera-to-world poses of both frames: b^-1 after a.
RigidPose relative_pose(const RigidPose& world_pose_a,
                        const RigidPose& world_pose_b);

// Intrinsics of the same camera after halving the raster `levels` times with
// 2x2 block averaging. Preserves pixel-center geometry: the center of a
// coarse pixel maps to fine coordinate 2*u + 0.5.
CameraIntrinsics downscale_intrinsics(const CameraIntrinsics& k, int levels);

}  // namespace depthwarp
