#pragma once

// The full unfolding pipeline with its verification report.

#include <optional>

#include "qstar/unfold.hpp"
#include "qstar/verify.hpp"

namespace qstar {

struct PipelineOptions {
  SearchOptions search;
  bool parallel = false;    // OpenMP shortest-path searches
  int oracle_max_faces = 0; // > 0 enables the brute-force comparison
};

struct PipelineResult {
  QuasigeodesicLoop loop;
  Half halves[2];
  std::vector<CutSegment> cuts[2];
  LoopBreaks breaks;
  PlanarDevelopment dev[2];
  std::optional<ChainReport> chain;
  Seam seam;
  UnfoldedPolygon unfolded;
  ConservationResult conservation;
  VerificationReport report;
  int n = 0;  // vertices
  int q = 0;  // faces crossed by the loop
  int m = 0;  // n + q
};

/// Cuts, flattens, develops and joins; fills the verification report.
/// Geometric failures propagate as GeometryError.
PipelineResult run_pipeline(const Polyhedron& poly, const QuasigeodesicLoop& loop, const PipelineOptions& opts = {});

}  // namespace qstar
