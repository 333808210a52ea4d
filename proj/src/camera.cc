#include "depthwarp/camera.h"

namespace depthwarp {

namespace {
constexpr double kRigidTol = 1e-9;
}

CameraIntrinsics::CameraIntrinsics(double fx_, double fy_, double cx_,
                                   double cy_)
    : fx(fx_), fy(fy_), cx(cx_), cy(cy_) {
  if (!(fx > 0.0) || !(fy > 0.0)) {
    throw InvalidInputError("camera focal lengths must be positive");
  }
}

RigidPose::RigidPose(const Eigen::Matrix3d& r, const Eigen::Vector3d& t)
    : rotation(r), translation(t) {
  Eigen::Matrix3d rtr = r.transpose() * r;
  if ((rtr - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > kRigidTol) {
    throw InvalidInputError("pose rotation is not orthonormal");
  }
  if (std::abs(r.determinant() - 1.0) > kRigidTol) {
    throw InvalidInputError("pose rotation determinant is not +1");
  }
  if (!t.allFinite()) {
    throw InvalidInputError("pose translation is not finite");
  }
}

RigidPose RigidPose::inverse() const {
  RigidPose inv;
  inv.rotation = rotation.transpose();
  inv.translation = -(rotation.transpose() * translation);
  return inv;
}

RigidPose relative_pose(const RigidPose& world_pose_a,
                        const RigidPose& world_pose_b) {
  RigidPose rel;
  rel.rotation = world_pose_b.rotation.transpose() * world_pose_a.rotation;
  rel.translation = world_pose_b.rotation.transpose() *
                    (world_pose_a.translation - world_pose_b.translation);
  return rel;
}

CameraIntrinsics downscale_intrinsics(const CameraIntrinsics& k, int levels) {
  CameraIntrinsics out = k;
  for (int i = 0; i < levels; ++i) {
    out.fx *= 0.5;
    out.fy *= 0.5;
    out.cx = (out.cx - 0.5) * 0.5;
    out.cy = (out.cy - 0.5) * 0.5;
  }
  return out;
}

}  // namespace depthwarp
