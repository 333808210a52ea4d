#pragma once

#include <string>
#include <vector>

#include "depthwarp/camera.h"
#include "depthwarp/losses.h"

namespace depthwarp {

// Stable CLI exit codes: 0 success, 2 validation/parse error, 3 numerical
// failure (no overlap, divergence, gradcheck threshold violation).
constexpr int kExitSuccess = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

// Plain-text camera file: per view one "fx fy cx cy" line followed by three
// rows of the 3x4 camera-to-world [R|t] matrix.
struct CamerasFile {
  CameraIntrinsics k1, k2;
  RigidPose pose1, pose2;
};
void write_cameras_file(const std::string& path, const CamerasFile& cameras);
CamerasFile read_cameras_file(const std::string& path);

// Loads view images, cameras and the sparse cloud from a directory written
// by `synth`, computing the per-view median depths from the cloud.
ScenePair load_scene_pair(const std::string& scene_dir);

// Entry point behind main(): args exclude the program name. Returns the
// process exit code; all diagnostics go to the streams.
int run_cli(const std::vector<std::string>& args);

}  // namespace depthwarp
