#pragma once

// Randomized property sweep over convex hulls of points on a sphere.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qstar/pipeline.hpp"

namespace qstar {

struct SweepOptions {
  int instances = 0;
  int min_points = 6;
  int max_points = 30;
  std::uint64_t seed = 1;
  bool parallel = true;  // one OpenMP task per instance
  LoopOptions loop;
  PipelineOptions pipeline;
};

enum class SweepStatus { Completed, LoopFailed, PipelineFailed };
const char* to_string(SweepStatus s);

struct SweepInstance {
  int index = 0;
  int points = 0;
  int face = -1;
  Vec2 uv{};
  double direction = 0.0;
  SweepStatus status = SweepStatus::LoopFailed;
  std::string error;
  LoopKind kind = LoopKind::ClosedGeodesic;
  int cuts = 0;
  int x_cuts = 0;
  bool passed = false;
  std::vector<Check> checks;
};

struct CheckTally {
  int pass = 0;
  int fail = 0;
  int not_applicable = 0;
  double worst = 0.0;
};

struct SweepReport {
  SweepOptions options;
  std::vector<SweepInstance> instances;
  int loops_built = 0;
  int completed = 0;
  int passed = 0;
  std::map<std::string, CheckTally> tally;
};

/// Instance i draws its hull and seed ray from std::seed_seq{seed, i}, so the
/// report does not depend on the thread count.
SweepReport run_sweep(const SweepOptions& opts);
/// Same report computed one instance at a time.
SweepReport run_sweep_serial(SweepOptions opts);

}  // namespace qstar
