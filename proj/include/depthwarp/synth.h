#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "depthwarp/camera.h"
#include "depthwarp/grid.h"
#include "depthwarp/scale.h"

namespace depthwarp {

// One sinusoidal texture component: amplitude * sin(2*pi * freq . X + phase)
// evaluated at the 3D surface point X, which makes every rendered view of the
// same surface photometrically consistent by construction.
struct SinusoidComponent {
  double amplitude = 0.0;
  Eigen::Vector3d frequency = Eigen::Vector3d::Zero();  // cycles per meter
  double phase = 0.0;
};

struct ScenePlane {
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();  // unit length
  double offset = 1.0;                                // normal . X = offset
};

// Textured plane scene, optionally split into two non-intersecting planes by
// a world-x threshold. The texture value of channel c is
// 0.5 + sum of the channel's components; amplitudes must keep it in [0, 1].
struct PlanarScene {
  ScenePlane plane;
  std::optional<ScenePlane> plane2;
  double split_x = 0.0;  // points with world x < split_x belong to plane 1
  std::array<std::vector<SinusoidComponent>, 3> texture;
};
void validate_scene(const PlanarScene& scene);

struct RenderedView {
  Image image;  // 3 channels
  DepthMap depth;
};

// Closed-form ray/plane rendering: exact ground-truth depth per pixel plus
// the sinusoid texture at the intersection point. A pixel whose ray misses
// the surface in front of the camera raises SceneConfigError naming it.
RenderedView render_view(const PlanarScene& scene, const CameraIntrinsics& k,
                         const RigidPose& world_pose, int height, int width);

// Seeded sampling of n surface points visible in both views of an
// height x width raster; returns their exact 3D positions. Deterministic
// for a fixed seed.
SparsePointCloud sample_correspondences(const PlanarScene& scene,
                                        const CameraIntrinsics& k1,
                                        const RigidPose& pose1,
                                        const CameraIntrinsics& k2,
                                        const RigidPose& pose2, int height,
                                        int width, int n, uint64_t seed);

// Scene descriptor file: key-value text with resolution, seed, intrinsics,
// the two camera-to-world poses, plane(s) and texture components. Schema is
// documented in the README.
struct SceneDescriptor {
  PlanarScene scene;
  CameraIntrinsics k1, k2;
  RigidPose pose1, pose2;
  int height = 0;
  int width = 0;
  uint64_t seed = 0;
  int sparse_points = 200;
};
SceneDescriptor parse_scene_descriptor(const std::string& path);

}  // namespace depthwarp
