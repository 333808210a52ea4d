#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "depthwarp/camera.h"
#include "depthwarp/grid.h"

namespace depthwarp {

// Median scene depth of a view (meters). Fixes the absolute scale of the
// relative-depth field: depth = mu * exp(relative).
struct MedianDepth {
  double value = 0.0;

  MedianDepth() = default;
  explicit MedianDepth(double v);  // must be positive finite
};

// Triangulated 3D point in the world frame, tagged with the view pair it
// came from.
struct SparsePoint {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  int pair_id = 0;
};

struct SparsePointCloud {
  std::vector<SparsePoint> points;
};

// Elementwise mu * exp(relative). Strictly positive output; the derivative
// with respect to each input entry equals the output entry.
DepthMap scale_transform(const ScalarGrid& relative, const MedianDepth& mu);

// One sparse-depth sample: continuous pixel location and camera-frame depth.
struct SparseViewDepth {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
};

// Projects every cloud point into the view and keeps those in front of the
// camera that land inside the raster. An empty result is legal.
std::vector<SparseViewDepth> sparse_view_depths(const SparsePointCloud& cloud,
                                                const CameraIntrinsics& k,
                                                const RigidPose& world_pose,
                                                int height, int width);

// Lower median: the element at index floor((n-1)/2) of the ascending sort.
// Always a member of the input list.
MedianDepth median_depth(std::vector<double> depths);

// Line-oriented text serialization: "x y z pair_id" per line.
void save_point_cloud(const std::string& path, const SparsePointCloud& cloud);
SparsePointCloud load_point_cloud(const std::string& path);

}  // namespace depthwarp
