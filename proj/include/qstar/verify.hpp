#pragma once

// Independent oracles and invariant checks.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qstar/unfold.hpp"

namespace qstar {

struct BruteForceResult {
  double length = std::numeric_limits<double>::infinity();
  std::vector<int> pieces;  // piece sequence of the best path
  Vec3 foot{};
  int max_faces = 0;        // completeness bound used
  long sequences = 0;       // sequences enumerated
};

/// max_faces default: 8 for solids with at most 12 faces, else ceil(1.5 sqrt(F)).
int default_max_faces(const Polyhedron& poly);

/// Exhaustive shortest distance from interior vertex v to the boundary of H
/// over simple piece sequences spanning at most max_faces original faces.
BruteForceResult brute_force_shortest(const Polyhedron& poly, const Half& H, int v, int max_faces);

struct SimplicityResult {
  bool simple = true;
  std::pair<int, int> edges{-1, -1};  // offending edge pair
};

/// Exact simplicity test of a closed polyline. Throws InputError on fewer
/// than three vertices or a zero-length edge.
SimplicityResult polygon_simple(std::span<const Vec2> poly);

enum class CheckStatus { Pass, Fail, NotApplicable };
const char* to_string(CheckStatus s);

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::NotApplicable;
  double residual = 0.0;
  std::string certificate;
};

struct VerificationReport {
  std::vector<Check> checks;

  /// Adds a check; a name may appear only once.
  void add(std::string name, CheckStatus status, double residual = 0.0, std::string certificate = {});
  void add_bound(std::string name, double residual, double tolerance, std::string certificate = {});
  const Check* find(const std::string& name) const;
  bool passed() const;
};

/// Geodesic distance from an interior vertex to sampled points on the loop is
/// at least the cut length; returns the smallest sampled distance.
double min_sampled_distance(const Polyhedron& poly, const Half& H, int v, int samples_per_segment,
                            int max_faces);

struct ConservationResult {
  double expected_area = 0.0;        // surface area plus triangle areas
  double area_residual = 0.0;
  double surface_area_residual = 0.0;  // polygon with the triangles removed
  double cut_pairing = 0.0;          // largest mismatch between the two images of a cut
};

ConservationResult conservation(const Polyhedron& poly, const UnfoldedPolygon& result,
                                const PlanarDevelopment& left, const PlanarDevelopment& right);

}  // namespace qstar
