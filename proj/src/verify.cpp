#include "qstar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qstar/errors.hpp"

namespace qstar {

int default_max_faces(const Polyhedron& poly) {
  const int f = poly.num_faces();
  if (f <= 12) return 8;
  return static_cast<int>(std::ceil(1.5 * std::sqrt(static_cast<double>(f))));
}

namespace {

// n . p + c >= 0
struct HalfPlane {
  Vec2 n{};
  double c = 0.0;
  double eval(Vec2 p) const { return dot(n, p) + c; }
};

HalfPlane left_of(Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  HalfPlane h{{-d.y, d.x}, 0.0};
  h.c = -dot(h.n, a);
  return h;
}

struct Visible {
  const std::vector<int>* seq;
  int side;
  Vec2 a, b;      // target side, unrolled into the root frame
  double t0, t1;  // visible parameter range
  Vec2 source;
};

using Visitor = std::function<void(const Visible&)>;

void enumerate(const Polyhedron& P, const Half& H, int v, int max_faces, const Visitor& visit,
               long& count) {
  const double eps = 1e-12 * P.diagonal();
  std::vector<int> seq;
  std::vector<HalfPlane> cons;
  Vec2 V{};

  std::function<void(int, Rigid2, int, int, int)> rec = [&](int pi, Rigid2 place, int entry, int corner,
                                                            int faces) {
    ++count;
    const Piece& pc = H.pieces[pi];
    const int n = pc.size();
    for (int j = 0; j < n; ++j) {
      if (entry < 0 ? (j == corner || j == (corner + n - 1) % n) : j == entry) continue;
      const Vec2 a = place.apply(pc.coords[j]), b = place.apply(pc.coords[(j + 1) % n]);
      double t0 = 0.0, t1 = 1.0;
      bool empty = false;
      for (const HalfPlane& h : cons) {
        const double g0 = h.eval(a), g1 = h.eval(b);
        const double tol = eps * norm(h.n);
        if (g0 < -tol && g1 < -tol) {
          empty = true;
          break;
        }
        if (g0 < -tol) t0 = std::max(t0, g0 / (g0 - g1));
        if (g1 < -tol) t1 = std::min(t1, g0 / (g0 - g1));
      }
      if (empty || t1 < t0) continue;
      if (pc.neighbor[j] < 0) {
        visit({&seq, j, a, b, t0, t1, V});
        continue;
      }
      const int q = pc.neighbor[j];
      if (std::find(seq.begin(), seq.end(), q) != seq.end()) continue;
      const int nf = faces + (H.pieces[q].parent_face != pc.parent_face ? 1 : 0);
      if (nf > max_faces) continue;
      Vec2 pa = a, pb = b;
      if (cross(pa - V, pb - V) < 0.0) std::swap(pa, pb);
      const std::size_t keep = cons.size();
      cons.push_back(left_of(V, pa));
      cons.push_back(left_of(pb, V));
      cons.push_back(left_of(b, a));
      seq.push_back(q);
      rec(q, place.compose(pc.transfer[j].inverse()), pc.neighbor_side[j], -1, nf);
      seq.pop_back();
      cons.resize(keep);
    }
  };

  for (auto [pi, k] : H.corners_at(v)) {
    V = H.pieces[pi].coords[k];
    seq.assign(1, pi);
    cons.clear();
    rec(pi, Rigid2{}, -1, k, 1);
  }
}

}  // namespace

BruteForceResult brute_force_shortest(const Polyhedron& P, const Half& H, int v, int max_faces) {
  if (max_faces < 1) throw InputError("max_faces must be at least 1");
  if (H.corners_at(v).empty() || H.boundary_pos.at(v) >= 0)
    throw InputError("vertex " + std::to_string(v) + " is not inside the half");
  BruteForceResult res;
  res.max_faces = max_faces;
  enumerate(
      P, H, v, max_faces,
      [&](const Visible& vis) {
        const Vec2 q0 = vis.a + (vis.b - vis.a) * vis.t0, q1 = vis.a + (vis.b - vis.a) * vis.t1;
        const double s = closest_param(q0, q1, vis.source);
        const Vec2 f = q0 + (q1 - q0) * s;
        const double d = norm(f - vis.source);
        if (d < res.length) {
          res.length = d;
          res.pieces = *vis.seq;
          const Piece& last = H.pieces[vis.seq->back()];
          const Vec2 a = last.coords[vis.side], b = last.coords[(vis.side + 1) % last.size()];
          const double tt = vis.t0 + (vis.t1 - vis.t0) * s;
          res.foot = P.to_world(last.parent_face, a + (b - a) * tt);
        }
      },
      res.sequences);
  return res;
}

double min_sampled_distance(const Polyhedron& P, const Half& H, int v, int samples, int max_faces) {
  double best = std::numeric_limits<double>::infinity();
  long count = 0;
  enumerate(
      P, H, v, max_faces,
      [&](const Visible& vis) {
        for (int i = 0; i < samples; ++i) {
          const double t = (i + 0.5) / samples;
          if (t < vis.t0 || t > vis.t1) continue;
          best = std::min(best, norm(vis.a + (vis.b - vis.a) * t - vis.source));
        }
      },
      count);
  return best;
}

SimplicityResult polygon_simple(std::span<const Vec2> poly) {
  const int n = static_cast<int>(poly.size());
  if (n < 3) throw InputError("polygon needs at least three vertices");
  std::vector<GridPoint> g(n);
  for (int i = 0; i < n; ++i) g[i] = snap(poly[i]);
  for (int i = 0; i < n; ++i)
    if (g[i] == g[(i + 1) % n]) throw InputError("polygon has a zero-length edge at " + std::to_string(i));
  SimplicityResult res;
  for (int i = 0; i < n; ++i) {
    const GridPoint &a = g[i], &b = g[(i + 1) % n];
    for (int j = i + 1; j < n; ++j) {
      const GridPoint &c = g[j], &d = g[(j + 1) % n];
      const bool next = j == i + 1, wrap = i == 0 && j == n - 1;
      bool bad;
      if (next || wrap) {
        // Adjacent edges share one endpoint; they may not fold back.
        const GridPoint& shared = next ? b : a;
        const GridPoint& p = next ? a : b;
        const GridPoint& q = next ? d : c;
        bad = orient(p, shared, q) == 0 &&
              (double(p.x - shared.x) * double(q.x - shared.x) + double(p.y - shared.y) * double(q.y - shared.y)) > 0;
        if (n == 3) bad = bad || orient(a, b, g[(i + 2) % n]) == 0;
      } else {
        bad = segments_intersect(a, b, c, d);
      }
      if (bad) {
        res.simple = false;
        res.edges = {i, j};
        return res;
      }
    }
  }
  return res;
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::NotApplicable:
      return "n/a";
  }
  return "?";
}

void VerificationReport::add(std::string name, CheckStatus status, double residual, std::string certificate) {
  if (find(name)) throw std::logic_error("duplicate verification check " + name);
  checks.push_back({std::move(name), status, residual, std::move(certificate)});
}

void VerificationReport::add_bound(std::string name, double residual, double tolerance,
                                   std::string certificate) {
  const bool ok = residual <= tolerance;
  add(std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, residual,
      ok ? std::string() : std::move(certificate));
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const Check& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool VerificationReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::Fail; });
}

ConservationResult conservation(const Polyhedron& poly, const UnfoldedPolygon& result,
                                const PlanarDevelopment& left, const PlanarDevelopment& right) {
  ConservationResult r;
  r.expected_area = poly.surface_area();
  for (const PlanarDevelopment* d : {&left, &right}) {
    for (const CurvatureTriangle& t : d->disk.triangles) r.expected_area += t.area();
    const int n = d->size();
    for (int i = 0; i < n; ++i) {
      const DiskEdge& e = d->disk.edges[i];
      if (e.kind != EdgeKind::TriangleBase || e.piece != 0) continue;
      const CurvatureTriangle& t = d->disk.triangles[e.cut];
      const Vec2 apex = d->apex[e.cut];
      const double first = norm(d->boundary[i] - apex);
      const double last = norm(d->boundary[(i + t.pieces) % n] - apex);
      r.cut_pairing = std::max({r.cut_pairing, std::abs(first - last), std::abs(first - t.leg)});
      if (t.pieces == 2) r.cut_pairing = std::max(r.cut_pairing, std::abs(norm(d->boundary[(i + 1) % n] - apex) - t.leg));
    }
  }
  r.area_residual = std::abs(polygon_area(result.polygon) - r.expected_area);
  r.surface_area_residual = std::abs(polygon_area(result.surface) - poly.surface_area());
  return r;
}

}  // namespace qstar
