#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "depthwarp/losses.h"

namespace depthwarp {

struct FiniteDiffOptions {
  double step = 1e-4;
  long sample_count = 256;
  uint64_t seed = 0;
  // Entries whose numerator and denominator are both below this are reported
  // as zero error (avoids 0/0 noise on exactly-zero gradients).
  double zero_floor = 1e-10;
  // Test hook: adds `corrupt_delta` to the named analytic gradient entry
  // before comparing (entry index into view 1's field, -1 disables).
  long corrupt_entry = -1;
  double corrupt_delta = 0.0;
};

struct FiniteDiffEntry {
  int view = 0;  // 1 or 2
  int y = 0;
  int x = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  double rel_error = 0.0;
  bool flagged = false;  // projection straddles a bilinear cell or mask edge
};

struct FiniteDiffReport {
  std::vector<FiniteDiffEntry> entries;
  double max_rel_error = 0.0;   // over non-flagged entries
  double mean_rel_error = 0.0;  // over non-flagged entries
  long checked_count = 0;       // non-flagged entries
  long flagged_count = 0;

  // Fraction of non-flagged entries with rel_error < threshold.
  double pass_fraction(double threshold) const;
  std::string to_text(double threshold) const;
};

// Central differences of total_loss on a seeded random subset of field
// entries versus the analytic gradients. The perturbed evaluations reuse the
// adaptive weights of the unperturbed forward pass, matching the gradient's
// treatment of them as constants. Entries whose +/- evaluations fall in
// different bilinear cells (or flip a mask bit) at any scale are flagged and
// excluded from the error statistics.
FiniteDiffReport finite_diff_check(const ScenePair& pair,
                                   const ScalarGrid& rel_field_1,
                                   const ScalarGrid& rel_field_2,
                                   const LossWeights& weights,
                                   const FiniteDiffOptions& options = {});

}  // namespace depthwarp
