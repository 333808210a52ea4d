#include "depthwarp/scale.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace depthwarp {

MedianDepth::MedianDepth(double v) : value(v) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw InvalidInputError("median depth must be positive finite");
  }
}

DepthMap scale_transform(const ScalarGrid& relative, const MedianDepth& mu) {
  validate_finite(relative, "relative depth");
  ScalarGrid out(relative.height, relative.width, 0.0);
  for (size_t i = 0; i < relative.values.size(); ++i) {
    out.values[i] = mu.value * std::exp(relative.values[i]);
  }
  return DepthMap(std::move(out));
}

std::vector<SparseViewDepth> sparse_view_depths(const SparsePointCloud& cloud,
                                                const CameraIntrinsics& k,
                                                const RigidPose& world_pose,
                                                int height, int width) {
  if (cloud.points.empty()) {
    throw InvalidInputError("sparse point cloud is empty");
  }
  const RigidPose world_to_cam = world_pose.inverse();
  std::vector<SparseViewDepth> out;
  out.reserve(cloud.points.size());
  for (const SparsePoint& p : cloud.points) {
    const Eigen::Vector3d cam = world_to_cam.apply(p.position);
    if (cam.z() <= 0.0) continue;
    SparseViewDepth s;
    s.u = k.fx * cam.x() / cam.z() + k.cx;
    s.v = k.fy * cam.y() / cam.z() + k.cy;
    s.depth = cam.z();
    if (s.u < 0.0 || s.u > width - 1 || s.v < 0.0 || s.v > height - 1) {
      continue;
    }
    out.push_back(s);
  }
  return out;
}

MedianDepth median_depth(std::vector<double> depths) {
  if (depths.empty()) {
    throw InsufficientDataError("cannot take the median of an empty list");
  }
  const size_t idx = (depths.size() - 1) / 2;
  std::nth_element(depths.begin(), depths.begin() + idx, depths.end());
  return MedianDepth(depths[idx]);
}

void save_point_cloud(const std::string& path, const SparsePointCloud& cloud) {
  std::ofstream out(path);
  if (!out) {
    throw InvalidInputError("cannot open " + path + " for writing");
  }
  char line[128];
  for (const SparsePoint& p : cloud.points) {
    std::snprintf(line, sizeof(line), "%.17g %.17g %.17g %d\n", p.position.x(),
                  p.position.y(), p.position.z(), p.pair_id);
    out << line;
  }
}

SparsePointCloud load_point_cloud(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInputError("cannot open " + path + " for reading");
  }
  SparsePointCloud cloud;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    SparsePoint p;
    if (!(ss >> p.position.x() >> p.position.y() >> p.position.z() >>
          p.pair_id)) {
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": expected 'x y z pair_id'");
    }
    cloud.points.push_back(p);
  }
  return cloud;
}

}  // namespace depthwarp
