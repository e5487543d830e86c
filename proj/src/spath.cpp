#include "qstar/spath.hpp"

#include <algorithm>
#include <exception>
#include <queue>

#include "qstar/errors.hpp"

namespace qstar {

namespace {

// A cone of straight paths from the source image S entering `piece` through
// the interval [A, B] of side `entry` (counterclockwise from ray SA to SB).
// Root windows sit at a corner of the source vertex and have entry = -1.
struct Window {
  int piece = -1;
  int entry = -1;
  int corner = -1;
  Vec2 S{}, A{}, B{};
  double lb = 0.0;
  int parent = -1;
  Rigid2 to_parent{};
};

struct Candidate {
  double dist = 0.0;
  int window = -1;
  int side = -1;
  Vec2 F{};
};

Vec2 nearest_on_segment(Vec2 p, Vec2 a, Vec2 b) { return a + (b - a) * closest_param(a, b, p); }

Vec2 line_intersection(Vec2 p, Vec2 q, Vec2 a, Vec2 b) {
  const Vec2 r = q - p, s = b - a;
  const double denom = cross(r, s);
  if (std::abs(denom) < 1e-300) return a;
  const double u = cross(a - p, r) / denom;
  return a + s * std::clamp(u, 0.0, 1.0);
}

struct Traced {
  std::vector<int> pieces;       // root first
  std::vector<Vec2> entry_pts;   // start of the path inside each piece
  std::vector<Vec2> exit_pts;    // end of the path inside each piece
};

Traced trace_back(const std::vector<Window>& W, const Candidate& c) {
  Traced t;
  int w = c.window;
  Vec2 S = W[w].S, F = c.F;
  std::vector<int> pieces;
  std::vector<Vec2> entries, exits;
  while (true) {
    const Window& win = W[w];
    pieces.push_back(win.piece);
    exits.push_back(F);
    if (win.entry < 0) {
      entries.push_back(win.S);
      break;
    }
    const Vec2 X = line_intersection(S, F, win.A, win.B);
    entries.push_back(X);
    S = win.to_parent.apply(S);
    F = win.to_parent.apply(X);
    w = win.parent;
  }
  t.pieces.assign(pieces.rbegin(), pieces.rend());
  t.entry_pts.assign(entries.rbegin(), entries.rend());
  t.exit_pts.assign(exits.rbegin(), exits.rend());
  return t;
}

struct Resolved {
  CutSegment cut;
  double fan_pos = 0.0;
};

Resolved resolve(const Polyhedron& P, const Half& H, int v, const std::vector<Window>& W,
                 const Candidate& c) {
  Traced t = trace_back(W, c);
  const double tol = P.tol_locus();
  // A path may reach a loop node exactly at a piece corner and then run
  // zero length through the next piece; drop such tails.
  bool trimmed = false;
  while (t.pieces.size() > 1 && norm(t.exit_pts.back() - t.entry_pts.back()) <= tol) {
    t.pieces.pop_back();
    t.entry_pts.pop_back();
    t.exit_pts.pop_back();
    trimmed = true;
  }
  Resolved r;
  CutSegment& cut = r.cut;
  cut.vertex = v;
  cut.length = c.dist;
  cut.points.push_back(P.vertex(v));
  cut.loci.push_back(SurfacePoint::at_vertex(v));
  for (std::size_t i = 0; i < t.pieces.size(); ++i) {
    const Piece& pc = H.pieces[t.pieces[i]];
    cut.piece_seq.push_back(t.pieces[i]);
    if (cut.face_seq.empty() || cut.face_seq.back() != pc.parent_face) cut.face_seq.push_back(pc.parent_face);
    cut.segments.push_back({pc.parent_face, t.entry_pts[i], t.exit_pts[i]});
    if (i + 1 < t.pieces.size()) {
      cut.loci.push_back(locate(P, pc.parent_face, t.exit_pts[i]));
      cut.points.push_back(P.to_world(pc.parent_face, t.exit_pts[i]));
    }
  }
  const int last = t.pieces.back();
  const Piece& pc = H.pieces[last];
  const Vec2 F = t.exit_pts.back();
  const Vec2 dir0 = t.exit_pts.front() - t.entry_pts.front();
  r.fan_pos = P.fan_position(v, H.pieces[t.pieces.front()].parent_face, dir0);

  cut.last_piece = last;
  cut.last_from = t.entry_pts.back();
  cut.foot_uv = F;
  cut.foot = locate(P, pc.parent_face, F);
  cut.points.push_back(P.to_world(pc.parent_face, F));
  cut.loci.push_back(cut.foot);

  const int n = pc.size();
  const int m = H.boundary_size();
  const Vec2 back = cut.last_from - F;
  for (int k = 0; k < n; ++k) {
    const int pos = H.boundary_pos.at(pc.nodes[k]);
    if (pos < 0 || norm(pc.coords[k] - F) > tol) continue;
    cut.foot_at_node = true;
    cut.foot_side = pos;
    cut.foot_s = 0.0;
    cut.foot_uv = pc.coords[k];
    cut.offset = H.fan_offset(pos, last, cut.last_from - pc.coords[k]);
    cut.hits_loop_point = H.loop_point >= 0 && H.boundary_loop_index[pos] == H.loop_point;
    return r;
  }
  if (trimmed) throw GeometryError("cut foot is not on the half boundary");
  const int j = c.side;
  const Vec2 a = pc.coords[j], b = pc.coords[(j + 1) % n];
  const int u = pc.nodes[j], w = pc.nodes[(j + 1) % n];
  const int bu = H.boundary_pos.at(u);
  if (bu < 0 || H.boundary[(bu + 1) % m] != w) throw GeometryError("cut foot is not on the half boundary");
  cut.foot_side = bu;
  cut.foot_s = closest_param(a, b, F);
  cut.offset = angle_ccw(b - a, back);
  return r;
}

}  // namespace

CutSegment shortest_to_q(const Polyhedron& P, const Half& H, int v, const SearchOptions& opts) {
  if (v < 0 || v >= P.num_vertices() || H.boundary_pos.at(v) >= 0)
    throw InputError("vertex " + std::to_string(v) + " is not inside the half");
  const auto corners = H.corners_at(v);
  if (corners.empty()) throw InputError("vertex " + std::to_string(v) + " is not inside the half");

  const double abs_tol = 1e-12 * P.diagonal();
  double best = std::numeric_limits<double>::infinity();
  auto within = [&](double d) { return d <= best * (1.0 + opts.tie_rel) + abs_tol; };

  std::vector<Window> W;
  std::vector<Candidate> cands;
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;

  for (auto [pi, k] : corners) {
    Window root;
    root.piece = pi;
    root.corner = k;
    root.S = H.pieces[pi].coords[k];
    W.push_back(root);
    queue.emplace(0.0, static_cast<int>(W.size()) - 1);
  }

  while (!queue.empty()) {
    const auto [lb, wi] = queue.top();
    queue.pop();
    if (!within(lb)) break;
    const Window win = W[wi];
    const Piece& pc = H.pieces[win.piece];
    const int n = pc.size();
    for (int j = 0; j < n; ++j) {
      if (win.entry < 0 ? (j == win.corner || j == (win.corner + n - 1) % n) : j == win.entry) continue;
      const Vec2 p0 = pc.coords[j], p1 = pc.coords[(j + 1) % n];
      double t0 = 0.0, t1 = 1.0;
      if (win.entry >= 0) {
        const double g[2][2] = {{cross(win.A - win.S, p0 - win.S), cross(win.A - win.S, p1 - win.S)},
                                {cross(p0 - win.S, win.B - win.S), cross(p1 - win.S, win.B - win.S)}};
        bool empty = false;
        for (const auto& gg : g) {
          if (gg[0] < 0.0 && gg[1] < 0.0) {
            empty = true;
          } else if (gg[0] < 0.0) {
            t0 = std::max(t0, gg[0] / (gg[0] - gg[1]));
          } else if (gg[1] < 0.0) {
            t1 = std::min(t1, gg[0] / (gg[0] - gg[1]));
          }
        }
        if (empty || t1 - t0 <= 1e-14) continue;
      }
      const Vec2 q0 = p0 + (p1 - p0) * t0, q1 = p0 + (p1 - p0) * t1;
      if (pc.neighbor[j] < 0) {
        const Vec2 F = nearest_on_segment(win.S, q0, q1);
        const double d = norm(F - win.S);
        if (d < best) best = d;
        if (within(d)) cands.push_back({d, wi, j, F});
        continue;
      }
      const double child_lb = point_segment_distance(win.S, q0, q1);
      if (!within(child_lb)) continue;
      const Rigid2& T = pc.transfer[j];
      Window child;
      child.piece = pc.neighbor[j];
      child.entry = pc.neighbor_side[j];
      child.S = T.apply(win.S);
      child.A = T.apply(q0);
      child.B = T.apply(q1);
      if (cross(child.A - child.S, child.B - child.S) < 0.0) std::swap(child.A, child.B);
      child.lb = child_lb;
      child.parent = wi;
      child.to_parent = T.inverse();
      W.push_back(child);
      if (static_cast<long>(W.size()) > opts.max_windows)
        throw GeometryError("shortest-path search cap exceeded for vertex " + std::to_string(v) +
                            " (best upper bound " + std::to_string(best) + ")");
      queue.emplace(child_lb, static_cast<int>(W.size()) - 1);
    }
  }
  if (cands.empty()) throw GeometryError("no path from vertex " + std::to_string(v) + " to the loop");

  std::vector<Resolved> ties;
  for (const Candidate& c : cands) {
    if (!within(c.dist)) continue;
    Resolved r = resolve(P, H, v, W, c);
    const double theta = P.total_angle(v);
    bool dup = false;
    for (Resolved& o : ties) {
      const double d = std::abs(o.fan_pos - r.fan_pos);
      if (std::min(d, theta - d) <= 1e-7) {
        dup = true;
        if (r.cut.length < o.cut.length) o = r;
      }
    }
    if (!dup) ties.push_back(std::move(r));
  }
  std::sort(ties.begin(), ties.end(), [](const Resolved& a, const Resolved& b) {
    if (a.cut.face_seq != b.cut.face_seq) return a.cut.face_seq < b.cut.face_seq;
    if (a.cut.foot_side != b.cut.foot_side) return a.cut.foot_side < b.cut.foot_side;
    return a.cut.foot_s < b.cut.foot_s;
  });
  CutSegment out = ties.front().cut;
  out.length = best;
  out.tied = static_cast<int>(ties.size());
  return out;
}

namespace {

std::vector<int> cut_vertices(const Polyhedron& P, const Half& H) {
  std::vector<int> vs;
  for (int v : H.contained_vertices)
    if (!P.is_flat(v)) vs.push_back(v);
  return vs;
}

void order_cuts(std::vector<CutSegment>& cuts) {
  std::stable_sort(cuts.begin(), cuts.end(), [](const CutSegment& a, const CutSegment& b) {
    if (a.hits_loop_point != b.hits_loop_point) return !a.hits_loop_point;
    if (a.hits_loop_point) return a.offset < b.offset;
    return a.vertex < b.vertex;
  });
}

}  // namespace

std::vector<CutSegment> all_cuts(const Polyhedron& P, const Half& H, const SearchOptions& opts) {
  std::vector<CutSegment> cuts;
  for (int v : cut_vertices(P, H)) cuts.push_back(shortest_to_q(P, H, v, opts));
  order_cuts(cuts);
  return cuts;
}

std::vector<CutSegment> all_cuts_parallel(const Polyhedron& P, const Half& H, const SearchOptions& opts) {
  const std::vector<int> vs = cut_vertices(P, H);
  const int n = static_cast<int>(vs.size());
  std::vector<CutSegment> cuts(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) {
    try {
      cuts[i] = shortest_to_q(P, H, vs[i], opts);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  order_cuts(cuts);
  return cuts;
}

std::optional<double> check_orthogonality(const Half& H, const CutSegment& c) {
  if (c.foot_at_node) return std::nullopt;
  const Piece& pc = H.pieces.at(c.last_piece);
  const int m = H.boundary_size();
  const int u = H.boundary[c.foot_side], w = H.boundary[(c.foot_side + 1) % m];
  for (int j = 0; j < pc.size(); ++j) {
    if (pc.nodes[j] != u || pc.nodes[(j + 1) % pc.size()] != w) continue;
    const Vec2 dir = pc.coords[(j + 1) % pc.size()] - pc.coords[j];
    return std::abs(angle_ccw(dir, c.last_from - c.foot_uv) - 0.5 * kPi);
  }
  return std::nullopt;
}

std::optional<std::pair<int, int>> find_crossing_cuts(const Half&, const std::vector<CutSegment>& cuts) {
  const int n = static_cast<int>(cuts.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool share_x = cuts[i].hits_loop_point && cuts[j].hits_loop_point;
      for (std::size_t a = 0; a < cuts[i].segments.size(); ++a) {
        for (std::size_t b = 0; b < cuts[j].segments.size(); ++b) {
          const PathSegment& s = cuts[i].segments[a];
          const PathSegment& t = cuts[j].segments[b];
          if (s.face != t.face) continue;
          const GridPoint sa = snap(s.a), sb = snap(s.b), ta = snap(t.a), tb = snap(t.b);
          if (!segments_intersect(sa, sb, ta, tb)) continue;
          const bool last_pair = a + 1 == cuts[i].segments.size() && b + 1 == cuts[j].segments.size();
          if (share_x && last_pair && sb == tb) {
            // Both end at x: only a collinear overlap counts.
            if (orient(sa, sb, ta) != 0 || dot(s.a - s.b, t.a - t.b) <= 0.0) continue;
          }
          return std::make_pair(i, j);
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace qstar
