#include "qstar/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qstar/errors.hpp"

namespace qstar {

namespace {

Vec3 newell_normal(const std::vector<Vec3>& pts) {
  Vec3 n{};
  const std::size_t k = pts.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Vec3& a = pts[i];
    const Vec3& b = pts[(i + 1) % k];
    n.x += (a.y - b.y) * (a.z + b.z);
    n.y += (a.z - b.z) * (a.x + b.x);
    n.z += (a.x - b.x) * (a.y + b.y);
  }
  return n;
}

std::string face_name(int f) { return "face " + std::to_string(f); }

}  // namespace

Polyhedron Polyhedron::from_lists(std::vector<Vec3> vertices, std::vector<std::vector<int>> faces,
                                  Tolerances tol) {
  Polyhedron p;
  p.tol_ = tol;
  p.vertices_ = std::move(vertices);
  p.faces_ = std::move(faces);
  const int nv = p.num_vertices();
  const int nf = p.num_faces();
  if (nv < 4 || nf < 4) throw InputError("polyhedron needs at least 4 vertices and 4 faces");

  Vec3 lo = p.vertices_[0], hi = p.vertices_[0];
  for (const Vec3& v : p.vertices_) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
  }
  p.diagonal_ = norm(hi - lo);
  if (!(p.diagonal_ > 0.0)) throw InputError("degenerate bounding box");

  // Faces: indices, planarity, convexity, frames.
  std::vector<int> used(nv, 0);
  p.frames_.resize(nf);
  for (int f = 0; f < nf; ++f) {
    const auto& idx = p.faces_[f];
    if (idx.size() < 3) throw InputError(face_name(f) + " has fewer than 3 corners");
    std::vector<Vec3> pts;
    for (int v : idx) {
      if (v < 0 || v >= nv) throw InputError(face_name(f) + " references vertex " + std::to_string(v));
      pts.push_back(p.vertices_[v]);
      ++used[v];
    }
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = i + 1; j < idx.size(); ++j)
        if (idx[i] == idx[j]) throw InputError(face_name(f) + " repeats a vertex");

    Frame& fr = p.frames_[f];
    const Vec3 n = newell_normal(pts);
    if (norm(n) == 0.0) throw InputError(face_name(f) + " has zero area");
    fr.normal = normalized(n);
    Vec3 centroid{};
    for (const Vec3& q : pts) centroid += q;
    centroid = centroid / static_cast<double>(pts.size());
    const double plane_tol = tol.plane_rel * p.diagonal_;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (std::abs(dot(pts[i] - centroid, fr.normal)) > plane_tol)
        throw InputError(face_name(f) + " is not planar (vertex " + std::to_string(idx[i]) + ")");
    }
    fr.origin = pts[0];
    Vec3 e = pts[1] - pts[0];
    e = e - fr.normal * dot(e, fr.normal);
    fr.ex = normalized(e);
    fr.ey = cross(fr.normal, fr.ex);
    for (const Vec3& q : pts) fr.coords.push_back({dot(q - fr.origin, fr.ex), dot(q - fr.origin, fr.ey)});
    const std::size_t k = pts.size();
    for (std::size_t i = 0; i < k; ++i) {
      const Vec2 a = fr.coords[(i + k - 1) % k], b = fr.coords[i], c = fr.coords[(i + 1) % k];
      if (cross(b - a, c - b) <= 0.0) throw InputError(face_name(f) + " is not strictly convex");
      fr.angles.push_back(angle_between(c - b, a - b));
    }
  }
  for (int v = 0; v < nv; ++v)
    if (used[v] == 0) throw InputError("vertex " + std::to_string(v) + " is not used by any face");

  // Edges: each directed side once, each undirected edge in both directions.
  std::map<std::pair<int, int>, std::pair<int, int>> directed;
  for (int f = 0; f < nf; ++f) {
    const auto& idx = p.faces_[f];
    for (int k = 0; k < static_cast<int>(idx.size()); ++k) {
      const int a = idx[k], b = idx[(k + 1) % idx.size()];
      if (!directed.emplace(std::pair{a, b}, std::pair{f, k}).second)
        throw InputError("manifold violation: edge " + std::to_string(a) + "-" + std::to_string(b) +
                         " is used by more than two faces or with inconsistent orientation");
    }
  }
  p.side_edge_.resize(nf);
  p.neighbor_.resize(nf);
  p.transfer_.resize(nf);
  for (int f = 0; f < nf; ++f) {
    p.side_edge_[f].assign(p.faces_[f].size(), -1);
    p.neighbor_[f].assign(p.faces_[f].size(), {-1, -1});
    p.transfer_[f].assign(p.faces_[f].size(), Rigid2{});
  }
  for (const auto& [ab, fk] : directed) {
    const auto [a, b] = ab;
    auto it = directed.find({b, a});
    if (it == directed.end())
      throw InputError("manifold violation: edge " + std::to_string(a) + "-" + std::to_string(b) +
                       " borders only one face");
    if (a > b) continue;
    Edge e;
    e.v0 = a;
    e.v1 = b;
    e.face[0] = fk.first;
    e.corner[0] = fk.second;
    e.face[1] = it->second.first;
    e.corner[1] = it->second.second;
    const int id = static_cast<int>(p.edges_.size());
    p.edges_.push_back(e);
    p.edge_index_[{a, b}] = id;
    p.side_edge_[e.face[0]][e.corner[0]] = id;
    p.side_edge_[e.face[1]][e.corner[1]] = id;
    p.neighbor_[e.face[0]][e.corner[0]] = {e.face[1], e.corner[1]};
    p.neighbor_[e.face[1]][e.corner[1]] = {e.face[0], e.corner[0]};
  }
  for (int f = 0; f < nf; ++f) {
    const int k = p.face_size(f);
    for (int s = 0; s < k; ++s) {
      const auto [g, j] = p.neighbor_[f][s];
      const int kg = p.face_size(g);
      const Vec2 a = p.frames_[f].coords[s], b = p.frames_[f].coords[(s + 1) % k];
      const Vec2 ga = p.frames_[g].coords[(j + 1) % kg], gb = p.frames_[g].coords[j];
      p.transfer_[f][s] = Rigid2::aligning(a, b, ga, gb);
    }
  }
  if (p.num_vertices() - p.num_edges() + nf != 2)
    throw InputError("surface is not a topological sphere (Euler characteristic " +
                     std::to_string(p.num_vertices() - p.num_edges() + nf) + ")");

  // Global convexity: every vertex behind every face plane.
  const double convex_tol = tol.convex_rel * p.diagonal_;
  for (int f = 0; f < nf; ++f) {
    const Frame& fr = p.frames_[f];
    for (int v = 0; v < nv; ++v) {
      if (dot(p.vertices_[v] - fr.origin, fr.normal) > convex_tol)
        throw InputError("convexity violation: vertex " + std::to_string(v) + " lies outside " +
                         face_name(f));
    }
  }

  // Vertex fans, ordered counterclockwise seen from outside.
  p.fans_.resize(nv);
  p.total_angle_.assign(nv, 0.0);
  std::vector<std::vector<std::pair<int, int>>> incident(nv);
  for (int f = 0; f < nf; ++f)
    for (int k = 0; k < p.face_size(f); ++k) incident[p.faces_[f][k]].push_back({f, k});
  for (int v = 0; v < nv; ++v) {
    auto [f, k] = incident[v].front();
    double offset = 0.0;
    for (std::size_t step = 0; step < incident[v].size(); ++step) {
      const double ang = p.frames_[f].angles[k];
      p.fans_[v].push_back({f, k, ang, offset});
      offset += ang;
      // Across the side entering this corner, the neighbor leaves v.
      const int kin = (k + p.face_size(f) - 1) % p.face_size(f);
      const auto [g, j] = p.neighbor_[f][kin];
      f = g;
      k = j;
    }
    if (f != p.fans_[v].front().face)
      throw InputError("vertex " + std::to_string(v) + " is not a manifold vertex");
    p.total_angle_[v] = offset;
  }
  double total_curvature = 0.0;
  for (int v = 0; v < nv; ++v) {
    const double w = p.curvature(v);
    if (w < -tol.angle)
      throw InputError("convexity violation: vertex " + std::to_string(v) + " has negative curvature");
    total_curvature += w;
  }
  if (std::abs(total_curvature - 2.0 * kTwoPi) > std::max(tol.angle, 1e-12 * nv))
    throw InputError("total curvature differs from 4pi");

  p.labels_.resize(nv);
  for (int v = 0; v < nv; ++v) p.labels_[v] = "v" + std::to_string(v);
  return p;
}

void Polyhedron::set_labels(std::vector<std::string> labels) {
  if (static_cast<int>(labels.size()) != num_vertices()) throw InputError("label count mismatch");
  labels_ = std::move(labels);
}

Vec3 Polyhedron::to_world(int f, Vec2 q) const {
  const Frame& fr = frames_.at(f);
  return fr.origin + fr.ex * q.x + fr.ey * q.y;
}

int Polyhedron::corner_of(int f, int v) const {
  const auto& idx = faces_.at(f);
  for (int k = 0; k < static_cast<int>(idx.size()); ++k)
    if (idx[k] == v) return k;
  return -1;
}

int Polyhedron::find_edge(int a, int b) const {
  auto it = edge_index_.find({std::min(a, b), std::max(a, b)});
  return it == edge_index_.end() ? -1 : it->second;
}

double Polyhedron::face_angle(int f, int v) const {
  const int k = corner_of(f, v);
  if (k < 0) throw InputError("vertex " + std::to_string(v) + " is not a corner of " + face_name(f));
  return frames_[f].angles[k];
}

double Polyhedron::fan_position(int v, int f, Vec2 dir) const {
  for (const FanCorner& c : fans_.at(v)) {
    if (c.face != f) continue;
    const auto& co = frames_[f].coords;
    const int k = static_cast<int>(co.size());
    const Vec2 out = co[(c.corner + 1) % k] - co[c.corner];
    double a = angle_ccw(out, dir);
    // Directions a hair outside the corner wrap to just below 2pi.
    if (a > 0.5 * (c.angle + kTwoPi)) a -= kTwoPi;
    return c.offset + std::clamp(a, 0.0, c.angle);
  }
  throw InputError("vertex " + std::to_string(v) + " is not a corner of " + face_name(f));
}

std::pair<int, Vec2> Polyhedron::fan_direction(int v, double position) const {
  const auto& fan = fans_.at(v);
  const double total = total_angle_.at(v);
  double pos = wrap_angle(position, total);
  const FanCorner* pick = &fan.back();
  for (const FanCorner& c : fan) {
    if (pos < c.offset + c.angle) {
      pick = &c;
      break;
    }
  }
  const auto& co = frames_[pick->face].coords;
  const int k = static_cast<int>(co.size());
  const Vec2 out = normalized(co[(pick->corner + 1) % k] - co[pick->corner]);
  const double within = std::clamp(pos - pick->offset, 0.0, pick->angle);
  return {pick->face, rotate(out, within)};
}

double Polyhedron::face_area(int f) const { return polygon_area(frames_.at(f).coords); }

double Polyhedron::surface_area() const {
  double a = 0.0;
  for (int f = 0; f < num_faces(); ++f) a += face_area(f);
  return a;
}

// ---------------------------------------------------------------------------
// OFF

namespace {

struct Token {
  std::string_view text;
  int column;
};

std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#')
      ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

template <typename T>
T parse_number(const Token& t, int line, const char* what) {
  T value{};
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  if (!t.text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ParseError(std::string("expected ") + what + ", got '" + std::string(t.text) + "'", line,
                     t.column);
  return value;
}

}  // namespace

Polyhedron load_off(std::string_view text, Tolerances tol) {
  struct Line {
    int number;
    std::vector<Token> tokens;
  };
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    auto tokens = split_tokens(text.substr(pos, end - pos));
    if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
    pos = end + 1;
  }
  std::size_t li = 0;
  auto next_line = [&](const char* what) -> const Line& {
    if (li >= lines.size()) throw ParseError(std::string("unexpected end of file, expected ") + what,
                                             number, 1);
    return lines[li++];
  };

  const Line& header = next_line("OFF header");
  if (header.tokens.size() != 1 || header.tokens[0].text != "OFF")
    throw ParseError("expected header 'OFF'", header.number, header.tokens[0].column);
  const Line& counts = next_line("counts");
  if (counts.tokens.size() != 3)
    throw ParseError("expected 'nV nF nE'", counts.number, counts.tokens[0].column);
  const long nv = parse_number<long>(counts.tokens[0], counts.number, "vertex count");
  const long nf = parse_number<long>(counts.tokens[1], counts.number, "face count");
  (void)parse_number<long>(counts.tokens[2], counts.number, "edge count");
  if (nv < 0 || nf < 0) throw ParseError("negative count", counts.number, counts.tokens[0].column);

  std::vector<Vec3> verts;
  verts.reserve(nv);
  for (long i = 0; i < nv; ++i) {
    const Line& l = next_line("vertex line");
    if (l.tokens.size() != 3) {
      const int col = l.tokens.size() > 3 ? l.tokens[3].column : l.tokens.back().column;
      throw ParseError("vertex line needs exactly 3 coordinates", l.number, col);
    }
    verts.push_back({parse_number<double>(l.tokens[0], l.number, "coordinate"),
                     parse_number<double>(l.tokens[1], l.number, "coordinate"),
                     parse_number<double>(l.tokens[2], l.number, "coordinate")});
  }
  std::vector<std::vector<int>> faces;
  faces.reserve(nf);
  for (long i = 0; i < nf; ++i) {
    const Line& l = next_line("face line");
    const long k = parse_number<long>(l.tokens[0], l.number, "corner count");
    if (k < 3 || static_cast<long>(l.tokens.size()) != k + 1)
      throw ParseError("face line must list exactly k >= 3 indices", l.number, l.tokens[0].column);
    std::vector<int> idx;
    for (long j = 1; j <= k; ++j) {
      const long v = parse_number<long>(l.tokens[j], l.number, "vertex index");
      if (v < 0 || v >= nv) throw ParseError("vertex index out of range", l.number, l.tokens[j].column);
      idx.push_back(static_cast<int>(v));
    }
    faces.push_back(std::move(idx));
  }
  if (li < lines.size())
    throw ParseError("unexpected trailing content", lines[li].number, lines[li].tokens[0].column);
  return Polyhedron::from_lists(std::move(verts), std::move(faces), tol);
}

Polyhedron load_off_file(const std::string& path, Tolerances tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_off(ss.str(), tol);
}

std::string write_off(const Polyhedron& poly) {
  std::string out = "OFF\n";
  out += std::to_string(poly.num_vertices()) + " " + std::to_string(poly.num_faces()) + " " +
         std::to_string(poly.num_edges()) + "\n";
  char buf[128];
  for (const Vec3& v : poly.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x, v.y, v.z);
    out += buf;
  }
  for (const auto& f : poly.faces()) {
    out += std::to_string(f.size());
    for (int v : f) out += " " + std::to_string(v);
    out += "\n";
  }
  return out;
}

}  // namespace qstar
