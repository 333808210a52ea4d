#pragma once

#include <string>

#include "depthwarp/grid.h"

namespace depthwarp {

// Depth-error metrics. RMS(log) uses base-10 logarithms.
struct MetricReport {
  double abs_rel = 0.0;
  double sq_rel = 0.0;
  double rms = 0.0;
  double rms_log = 0.0;
  long pixel_count = 0;

  std::string to_text() const;  // aligned table, notes the log10 convention
  std::string to_csv() const;   // header + one row
};

// Scales pred so its lower median matches the ground truth's lower median.
DepthMap median_align(const DepthMap& pred, const DepthMap& gt);

// Abs Rel = mean |p-g|/g, Sq Rel = mean (p-g)^2/g, RMS = sqrt(mean (p-g)^2),
// RMS(log) = sqrt(mean (log10 p - log10 g)^2).
MetricReport compute_metrics(const DepthMap& pred, const DepthMap& gt);

}  // namespace depthwarp
