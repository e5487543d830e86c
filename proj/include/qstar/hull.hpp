#pragma once

// Random convex polyhedra for the property sweep.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qstar/geometry.hpp"

namespace qstar {

/// Triangulated convex hull; faces counterclockwise seen from outside.
/// Throws InputError when the points are fewer than four or coplanar.
std::vector<std::array<int, 3>> convex_hull(std::span<const Vec3> pts);

/// OFF text of the hull, keeping only hull vertices.
std::string hull_off(std::span<const Vec3> pts);

/// n points uniformly distributed on the unit sphere.
std::vector<Vec3> random_sphere_points(int n, std::uint64_t seed);

}  // namespace qstar
