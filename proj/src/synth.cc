#include "depthwarp/synth.h"

#include <cmath>
#include <numbers>
#include <optional>

#include "depthwarp/config.h"
#include "depthwarp/random.h"

namespace depthwarp {

namespace {

constexpr double kMinHitDistance = 1e-9;

struct Hit {
  double lambda = 0.0;       // distance along the (z-normalized) ray
  Eigen::Vector3d point;     // world-frame intersection
};

std::optional<double> plane_hit(const ScenePlane& plane,
                                const Eigen::Vector3d& origin,
                                const Eigen::Vector3d& dir) {
  const double denom = plane.normal.dot(dir);
  if (std::abs(denom) < 1e-12) return std::nullopt;
  const double lambda = (plane.offset - plane.normal.dot(origin)) / denom;
  if (lambda <= kMinHitDistance) return std::nullopt;
  return lambda;
}

// Nearest in-region surface hit, or nothing if the ray misses the scene.
std::optional<Hit> intersect_scene(const PlanarScene& scene,
                                   const Eigen::Vector3d& origin,
                                   const Eigen::Vector3d& dir) {
  std::optional<Hit> best;
  const auto consider = [&](const ScenePlane& plane, bool first_region) {
    const std::optional<double> lambda = plane_hit(plane, origin, dir);
    if (!lambda) return;
    const Eigen::Vector3d point = origin + *lambda * dir;
    if (scene.plane2.has_value()) {
      const bool in_first = point.x() < scene.split_x;
      if (in_first != first_region) return;
    }
    if (!best || *lambda < best->lambda) {
      best = Hit{*lambda, point};
    }
  };
  consider(scene.plane, true);
  if (scene.plane2.has_value()) {
    consider(*scene.plane2, false);
  }
  return best;
}

double texture_value(const PlanarScene& scene, const Eigen::Vector3d& point,
                     int channel) {
  double v = 0.5;
  for (const SinusoidComponent& comp : scene.texture[channel]) {
    v += comp.amplitude *
         std::sin(2.0 * std::numbers::pi * comp.frequency.dot(point) +
                  comp.phase);
  }
  // Guard against last-ulp excursions outside the image range.
  return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

}  // namespace

void validate_scene(const PlanarScene& scene) {
  const auto check_plane = [](const ScenePlane& p, const char* name) {
    if (std::abs(p.normal.squaredNorm() - 1.0) > 1e-9) {
      throw InvalidInputError(std::string(name) +
                              " normal must be unit length");
    }
    if (!(p.offset > 0.0) || !std::isfinite(p.offset)) {
      throw InvalidInputError(std::string(name) +
                              " offset must be positive finite");
    }
  };
  check_plane(scene.plane, "plane");
  if (scene.plane2.has_value()) {
    check_plane(*scene.plane2, "plane2");
  }
  for (int c = 0; c < 3; ++c) {
    double amp_sum = 0.0;
    for (const SinusoidComponent& comp : scene.texture[c]) {
      if (!std::isfinite(comp.amplitude) || !comp.frequency.allFinite() ||
          !std::isfinite(comp.phase)) {
        throw InvalidInputError("texture component is not finite");
      }
      amp_sum += std::abs(comp.amplitude);
    }
    if (amp_sum > 0.5) {
      throw InvalidInputError(
          "texture amplitudes of a channel must sum to at most 0.5");
    }
  }
}

RenderedView render_view(const PlanarScene& scene, const CameraIntrinsics& k,
                         const RigidPose& world_pose, int height, int width) {
  validate_scene(scene);
  if (height <= 0 || width <= 0) {
    throw InvalidInputError("render_view requires positive dimensions");
  }
  Image image(height, width, 3, 0.0);
  ScalarGrid depth(height, width, 0.0);
  const Eigen::Vector3d origin = world_pose.translation;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Eigen::Vector3d ray_cam((x - k.cx) / k.fx, (y - k.cy) / k.fy, 1.0);
      const Eigen::Vector3d dir = world_pose.rotation * ray_cam;
      const std::optional<Hit> hit = intersect_scene(scene, origin, dir);
      if (!hit) {
        throw SceneConfigError("pixel (" + std::to_string(x) + ", " +
                               std::to_string(y) +
                               ") does not hit the scene in front of the "
                               "camera");
      }
      // The ray has unit camera z, so lambda is the camera-frame depth.
      depth.at(y, x) = hit->lambda;
      for (int c = 0; c < 3; ++c) {
        image.at(y, x, c) = texture_value(scene, hit->point, c);
      }
    }
  }
  return RenderedView{std::move(image), DepthMap(std::move(depth))};
}

SparsePointCloud sample_correspondences(const PlanarScene& scene,
                                        const CameraIntrinsics& k1,
                                        const RigidPose& pose1,
                                        const CameraIntrinsics& k2,
                                        const RigidPose& pose2, int height,
                                        int width, int n, uint64_t seed) {
  validate_scene(scene);
  if (n < 1) {
    throw InvalidInputError("sample_correspondences requires n >= 1");
  }
  DeterministicRng rng(seed);
  const RigidPose world_to_cam2 = pose2.inverse();
  SparsePointCloud cloud;
  cloud.points.reserve(n);
  // Bounded rejection sampling over view-1 pixels with the visibility test
  // in view 2.
  long attempts = 0;
  const long max_attempts = 10000L * n;
  while (static_cast<int>(cloud.points.size()) < n) {
    if (++attempts > max_attempts) {
      throw SceneConfigError(
          "could not sample enough correspondences visible in both views");
    }
    const double u = rng.uniform() * (width - 1);
    const double v = rng.uniform() * (height - 1);
    const Eigen::Vector3d ray_cam((u - k1.cx) / k1.fx, (v - k1.cy) / k1.fy,
                                  1.0);
    const Eigen::Vector3d dir = pose1.rotation * ray_cam;
    const std::optional<Hit> hit =
        intersect_scene(scene, pose1.translation, dir);
    if (!hit) continue;
    const Eigen::Vector3d cam2 = world_to_cam2.apply(hit->point);
    if (cam2.z() <= kMinHitDistance) continue;
    const double u2 = k2.fx * cam2.x() / cam2.z() + k2.cx;
    const double v2 = k2.fy * cam2.y() / cam2.z() + k2.cy;
    if (u2 < 0.0 || u2 > width - 1 || v2 < 0.0 || v2 > height - 1) continue;
    cloud.points.push_back(SparsePoint{hit->point, 0});
  }
  return cloud;
}

SceneDescriptor parse_scene_descriptor(const std::string& path) {
  const std::vector<KeyValueEntry> entries = parse_key_value_file(path);
  SceneDescriptor d;
  bool has_resolution = false, has_k1 = false, has_pose1 = false,
       has_pose2 = false, has_plane = false, has_k2 = false;

  const auto parse_pose = [&](const KeyValueEntry& e) {
    const std::vector<double> v = parse_doubles(e, path, 12);
    Eigen::Matrix3d r;
    Eigen::Vector3d t;
    for (int row = 0; row < 3; ++row) {
      for (int col = 0; col < 3; ++col) r(row, col) = v[row * 4 + col];
      t(row) = v[row * 4 + 3];
    }
    return RigidPose(r, t);  // validates orthonormality
  };
  const auto parse_plane = [&](const KeyValueEntry& e) {
    const std::vector<double> v = parse_doubles(e, path, 4);
    ScenePlane p;
    p.normal = Eigen::Vector3d(v[0], v[1], v[2]);
    p.offset = v[3];
    return p;
  };
  const auto parse_intrinsics = [&](const KeyValueEntry& e) {
    const std::vector<double> v = parse_doubles(e, path, 4);
    return CameraIntrinsics(v[0], v[1], v[2], v[3]);
  };

  for (const KeyValueEntry& e : entries) {
    if (e.key == "resolution") {
      const std::vector<double> v = parse_doubles(e, path, 2);
      d.width = static_cast<int>(v[0]);
      d.height = static_cast<int>(v[1]);
      has_resolution = true;
    } else if (e.key == "seed") {
      d.seed = static_cast<uint64_t>(parse_long(e, path));
    } else if (e.key == "sparse_points") {
      d.sparse_points = static_cast<int>(parse_long(e, path));
    } else if (e.key == "intrinsics") {
      d.k1 = parse_intrinsics(e);
      has_k1 = true;
    } else if (e.key == "intrinsics2") {
      d.k2 = parse_intrinsics(e);
      has_k2 = true;
    } else if (e.key == "pose1") {
      d.pose1 = parse_pose(e);
      has_pose1 = true;
    } else if (e.key == "pose2") {
      d.pose2 = parse_pose(e);
      has_pose2 = true;
    } else if (e.key == "plane") {
      d.scene.plane = parse_plane(e);
      has_plane = true;
    } else if (e.key == "plane2") {
      d.scene.plane2 = parse_plane(e);
    } else if (e.key == "split_x") {
      d.scene.split_x = parse_double(e, path);
    } else if (e.key == "texture") {
      const std::vector<double> v = parse_doubles(e, path, 6);
      const int channel = static_cast<int>(v[0]);
      if (channel < 0 || channel > 2) {
        throw ParseError(path + ":" + std::to_string(e.line) +
                         ": texture channel must be 0, 1 or 2");
      }
      SinusoidComponent comp;
      comp.amplitude = v[1];
      comp.frequency = Eigen::Vector3d(v[2], v[3], v[4]);
      comp.phase = v[5];
      d.scene.texture[channel].push_back(comp);
    } else {
      throw ParseError(path + ":" + std::to_string(e.line) +
                       ": unknown key '" + e.key + "'");
    }
  }

  if (!has_resolution || !has_k1 || !has_pose1 || !has_pose2 || !has_plane) {
    throw ParseError(path +
                     ": descriptor requires resolution, intrinsics, pose1, "
                     "pose2 and plane");
  }
  if (!has_k2) d.k2 = d.k1;
  if (d.width < 2 || d.height < 2) {
    throw ParseError(path + ": resolution must be at least 2x2");
  }
  if (d.sparse_points < 1) {
    throw ParseError(path + ": sparse_points must be at least 1");
  }
  validate_scene(d.scene);
  return d;
}

}  // namespace depthwarp
