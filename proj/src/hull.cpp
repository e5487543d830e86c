#include "qstar/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "qstar/errors.hpp"

namespace qstar {

namespace {

double volume(Vec3 a, Vec3 b, Vec3 c, Vec3 d) { return dot(cross(b - a, c - a), d - a); }

}  // namespace

std::vector<std::array<int, 3>> convex_hull(std::span<const Vec3> pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 4) throw InputError("convex hull needs at least four points");
  double scale = 0.0;
  for (const Vec3& p : pts) scale = std::max(scale, norm(p - pts[0]));
  const double eps = 1e-12 * scale * scale * scale;

  int i1 = -1, i2 = -1, i3 = -1;
  for (int i = 1; i < n && i1 < 0; ++i)
    if (norm(pts[i] - pts[0]) > 1e-9 * scale) i1 = i;
  for (int i = 1; i < n && i1 >= 0 && i2 < 0; ++i)
    if (norm(cross(pts[i1] - pts[0], pts[i] - pts[0])) > 1e-9 * scale * scale) i2 = i;
  for (int i = 1; i < n && i2 >= 0 && i3 < 0; ++i)
    if (std::abs(volume(pts[0], pts[i1], pts[i2], pts[i])) > eps) i3 = i;
  if (i3 < 0) throw InputError("convex hull points are coplanar");

  std::vector<std::array<int, 3>> faces;
  if (volume(pts[0], pts[i1], pts[i2], pts[i3]) < 0.0) std::swap(i1, i2);
  faces = {{0, i2, i1}, {0, i1, i3}, {0, i3, i2}, {i1, i2, i3}};

  for (int p = 1; p < n; ++p) {
    if (p == i1 || p == i2 || p == i3) continue;
    std::vector<bool> visible(faces.size());
    bool any = false;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      const auto& t = faces[f];
      visible[f] = volume(pts[t[0]], pts[t[1]], pts[t[2]], pts[p]) > eps;
      any = any || visible[f];
    }
    if (!any) continue;
    std::map<std::pair<int, int>, int> directed;
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (visible[f])
        for (int k = 0; k < 3; ++k) ++directed[{faces[f][k], faces[f][(k + 1) % 3]}];
    std::vector<std::array<int, 3>> next;
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (!visible[f]) next.push_back(faces[f]);
    for (const auto& [e, cnt] : directed)
      if (!directed.count({e.second, e.first})) next.push_back({e.first, e.second, p});
    faces = std::move(next);
  }
  return faces;
}

std::string hull_off(std::span<const Vec3> pts) {
  const auto faces = convex_hull(pts);
  std::vector<int> index(pts.size(), -1);
  std::vector<int> used;
  for (const auto& t : faces)
    for (int v : t)
      if (index[v] < 0) {
        index[v] = static_cast<int>(used.size());
        used.push_back(v);
      }
  std::ostringstream os;
  os.precision(17);
  os << "OFF\n" << used.size() << ' ' << faces.size() << " 0\n";
  for (int v : used) os << pts[v].x << ' ' << pts[v].y << ' ' << pts[v].z << '\n';
  for (const auto& t : faces) os << "3 " << index[t[0]] << ' ' << index[t[1]] << ' ' << index[t[2]] << '\n';
  return os.str();
}

std::vector<Vec3> random_sphere_points(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Vec3> pts;
  while (static_cast<int>(pts.size()) < n) {
    const Vec3 p{g(rng), g(rng), g(rng)};
    const double r = norm(p);
    if (r > 1e-6) pts.push_back(p / r);
  }
  return pts;
}

}  // namespace qstar
