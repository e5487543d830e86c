#include "qstar/io.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "qstar/errors.hpp"

namespace qstar {

using Json = nlohmann::ordered_json;

namespace {

Json vec(Vec2 p) { return Json::array({p.x, p.y}); }
Json vec(Vec3 p) { return Json::array({p.x, p.y, p.z}); }

Json locus(const SurfacePoint& p) {
  switch (p.kind) {
    case LocusKind::Face:
      return {{"kind", "face"}, {"face", p.id}, {"uv", vec(p.uv)}};
    case LocusKind::Edge:
      return {{"kind", "edge"}, {"edge", p.id}, {"t", p.t}};
    case LocusKind::Vertex:
      return {{"kind", "vertex"}, {"vertex", p.id}};
  }
  return {};
}

SurfacePoint parse_locus(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "face") {
    const Json& uv = j.at("uv");
    return SurfacePoint::on_face(j.at("face").get<int>(), {uv.at(0).get<double>(), uv.at(1).get<double>()});
  }
  if (kind == "edge") return SurfacePoint::on_edge(j.at("edge").get<int>(), j.at("t").get<double>());
  if (kind == "vertex") return SurfacePoint::at_vertex(j.at("vertex").get<int>());
  throw InputError("unknown locus kind " + kind);
}

Json loop_record(const QuasigeodesicLoop& loop) {
  Json pts = Json::array();
  for (const LoopPoint& p : loop.points)
    pts.push_back({{"locus", locus(p.locus)}, {"pos", vec(p.pos)}, {"left", p.left}, {"right", p.right}});
  return {{"kind", to_string(loop.kind)},
          {"loop_point", loop.loop_point},
          {"beta", loop.beta},
          {"beta_side", to_string(loop.beta_side)},
          {"length", loop.length()},
          {"segment_faces", loop.segment_faces},
          {"points", pts}};
}

Json check_record(const Check& c) {
  return {{"name", c.name}, {"status", to_string(c.status)}, {"residual", c.residual}, {"certificate", c.certificate}};
}

Json half_record(const Half& h) {
  return {{"side", to_string(h.side)},
          {"vertices", h.contained_vertices},
          {"tau_q", h.tau_q},
          {"omega_q", h.omega_q},
          {"pieces", h.pieces.size()},
          {"boundary_size", h.boundary_size()}};
}

Json cut_record(const Polyhedron& poly, const QuasigeodesicLoop& loop, const Half& h, const CutSegment& c) {
  Json pts = Json::array(), loci = Json::array();
  for (const Vec3& p : c.points) pts.push_back(vec(p));
  for (const SurfacePoint& p : c.loci) loci.push_back(locus(p));
  const LoopPosition f = foot_position(loop, h, c);
  return {{"vertex", c.vertex},
          {"curvature", poly.curvature(c.vertex)},
          {"length", c.length},
          {"tied", c.tied},
          {"face_seq", c.face_seq},
          {"foot", locus(c.foot)},
          {"foot_loop_position", {{"segment", f.segment}, {"t", f.t}}},
          {"foot_at_node", c.foot_at_node},
          {"hits_loop_point", c.hits_loop_point},
          {"offset", c.offset},
          {"points", pts},
          {"loci", loci}};
}

Json development_record(const PlanarDevelopment& d) {
  Json boundary = Json::array(), edges = Json::array(), angles = Json::array(), tris = Json::array(),
       apex = Json::array();
  for (int i = 0; i < d.size(); ++i) {
    boundary.push_back(vec(d.boundary[i]));
    angles.push_back(d.disk.corners[i].angle);
    const DiskEdge& e = d.disk.edges[i];
    Json je{{"kind", to_string(e.kind)}, {"length", e.length}};
    if (e.kind == EdgeKind::QSegment) {
      je["interval"] = e.interval;
    } else {
      je["vertex"] = d.disk.cuts[e.cut].vertex;
      je["piece"] = e.piece;
    }
    edges.push_back(je);
  }
  for (const CurvatureTriangle& t : d.disk.triangles)
    tris.push_back({{"vertex", t.vertex},
                    {"omega", t.omega},
                    {"leg", t.leg},
                    {"pieces", t.pieces},
                    {"base_angle", t.base_angle()},
                    {"area", t.area()}});
  for (Vec2 a : d.apex) apex.push_back(vec(a));
  Json j{{"side", to_string(d.disk.side)},
         {"loop_side", d.disk.loop_side},
         {"boundary", boundary},
         {"edges", edges},
         {"angles", angles},
         {"triangles", tris},
         {"apex", apex},
         {"total_turn", d.total_turn},
         {"min_turn", d.min_turn},
         {"closure", d.closure},
         {"reflex", d.reflex},
         {"area", d.area()}};
  if (d.disk.loop_side) {
    j["x1"] = d.disk.x1;
    j["x2"] = d.disk.x2;
  }
  return j;
}

Json seam_candidate_record(const SeamCandidate& c) {
  return {{"interval", c.interval},
          {"length", c.length},
          {"edges", {c.edge[0], c.edge[1]}},
          {"support", {c.support[0], c.support[1]}},
          {"valid", c.valid},
          {"y_rule", c.y_rule}};
}

const char* edge_class(const PipelineResult& r, const PolygonEdge& pe) {
  if (pe.leg) return "cut";
  return to_string(r.dev[pe.half].disk.edges[pe.edge].kind);
}

std::string fmt4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s = buf;
  return s == "-0.0000" ? "0.0000" : s;
}

}  // namespace

const char* to_string(VertexRule rule) {
  switch (rule) {
    case VertexRule::Bisect:
      return "bisect";
    case VertexRule::RightPi:
      return "right-pi";
    case VertexRule::LeftPi:
      return "left-pi";
  }
  return "?";
}

VertexRule parse_vertex_rule(std::string_view s) {
  if (s == "bisect") return VertexRule::Bisect;
  if (s == "right-pi") return VertexRule::RightPi;
  if (s == "left-pi") return VertexRule::LeftPi;
  throw InputError("unknown vertex rule " + std::string(s));
}

SvgTransform svg_transform(const PipelineResult& r, double size) {
  const auto& poly = r.unfolded.polygon;
  Vec2 lo = poly.front(), hi = poly.front();
  for (Vec2 p : poly) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  SvgTransform t;
  const double extent = std::max({hi.x - lo.x, hi.y - lo.y, 1e-300});
  t.scale = size / extent;
  t.min_x = lo.x;
  t.max_y = hi.y;
  t.width = 2.0 * t.margin + t.scale * (hi.x - lo.x);
  t.height = 2.0 * t.margin + t.scale * (hi.y - lo.y);
  return t;
}

std::string result_json(const Polyhedron& poly, const PipelineResult& r, const RunMeta& meta) {
  Json j;
  j["schema"] = 1;
  j["input"] = meta.input;
  j["mode"] = meta.given_loop ? "given-loop" : "trace";
  if (!meta.given_loop)
    j["seed"] = {{"face", meta.seed_face},
                 {"uv", vec(meta.seed_uv)},
                 {"direction", meta.direction},
                 {"vertex_rule", to_string(meta.rule)}};
  j["rng_seed"] = meta.rng_seed;
  j["tolerances"] = {{"plane_rel", meta.tolerances.plane_rel},
                     {"convex_rel", meta.tolerances.convex_rel},
                     {"locus_rel", meta.tolerances.locus_rel},
                     {"angle", meta.tolerances.angle}};
  j["complexity"] = {{"n", r.n}, {"q", r.q}, {"m", r.m}};
  j["surface_area"] = poly.surface_area();
  j["loop"] = loop_record(r.loop);
  j["halves"] = Json::array({half_record(r.halves[0]), half_record(r.halves[1])});
  Json cuts = Json::array();
  for (int s = 0; s < 2; ++s) {
    Json list = Json::array();
    for (const CutSegment& c : r.cuts[s]) list.push_back(cut_record(poly, r.loop, r.halves[s], c));
    cuts.push_back(list);
  }
  j["cuts"] = cuts;
  Json breaks = Json::array();
  for (int b = 0; b < r.breaks.size(); ++b)
    breaks.push_back({{"segment", r.breaks.pos[b].segment}, {"t", r.breaks.pos[b].t}, {"arc", r.breaks.arc[b]}});
  j["loop_breaks"] = breaks;
  j["developments"] = Json::array({development_record(r.dev[0]), development_record(r.dev[1])});
  if (r.chain)
    j["chain"] = {{"k", r.chain->k},
                  {"alpha1", r.chain->alpha1},
                  {"alpha2", r.chain->alpha2},
                  {"sum_beta", r.chain->sum_beta},
                  {"tau21_formula", r.chain->tau21_formula},
                  {"tau21_chain", r.chain->tau21_chain},
                  {"max_subchain_turn", r.chain->max_subchain_turn}};
  else
    j["chain"] = nullptr;
  Json cands = Json::array();
  for (const SeamCandidate& c : r.seam.candidates) cands.push_back(seam_candidate_record(c));
  j["seam"] = {{"chosen", seam_candidate_record(r.seam.chosen)},
               {"fallback", r.seam.fallback},
               {"y1", r.seam.y1},
               {"y2", r.seam.y2},
               {"endpoints", {vec(r.unfolded.seam[0]), vec(r.unfolded.seam[1])}},
               {"candidates", cands}};
  Json verts = Json::array(), prov = Json::array(), surf = Json::array(), sprov = Json::array();
  for (std::size_t i = 0; i < r.unfolded.polygon.size(); ++i) {
    verts.push_back(vec(r.unfolded.polygon[i]));
    const PolygonEdge& pe = r.unfolded.provenance[i];
    prov.push_back({{"half", pe.half}, {"edge", pe.edge}, {"class", edge_class(r, pe)}});
  }
  for (std::size_t i = 0; i < r.unfolded.surface.size(); ++i) {
    surf.push_back(vec(r.unfolded.surface[i]));
    const PolygonEdge& pe = r.unfolded.surface_provenance[i];
    sprov.push_back({{"half", pe.half}, {"edge", pe.edge}, {"class", edge_class(r, pe)}});
  }
  const Rigid2& T = r.unfolded.right_placement;
  j["polygon"] = {{"vertices", verts},
                  {"provenance", prov},
                  {"area", polygon_area(r.unfolded.polygon)},
                  {"right_placement", {{"cos", T.c}, {"sin", T.s}, {"translation", vec(T.t)}}},
                  {"surface", {{"vertices", surf}, {"provenance", sprov}, {"area", polygon_area(r.unfolded.surface)}}}};
  j["conservation"] = {{"expected_area", r.conservation.expected_area},
                       {"area_residual", r.conservation.area_residual},
                       {"surface_area_residual", r.conservation.surface_area_residual},
                       {"cut_pairing", r.conservation.cut_pairing}};
  const SvgTransform t = svg_transform(r);
  j["svg"] = {{"transform",
               {{"scale", t.scale}, {"min_x", t.min_x}, {"max_y", t.max_y}, {"margin", t.margin}, {"y_down", true}}}};
  Json checks = Json::array();
  for (const Check& c : r.report.checks) checks.push_back(check_record(c));
  j["verification"] = {{"passed", r.report.passed()}, {"checks", checks}};
  return j.dump(2) + "\n";
}

std::string result_svg(const PipelineResult& r) {
  const SvgTransform t = svg_transform(r);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt4(t.width) << "\" height=\"" << fmt4(t.height)
     << "\" viewBox=\"0 0 " << fmt4(t.width) << ' ' << fmt4(t.height) << "\">\n";
  os << "<style>\n"
        "  .unfolding { fill: #f4f1e8; stroke: none; }\n"
        "  .q-seg { stroke: #1f5fa8; stroke-width: 1.5; }\n"
        "  .tri-base { stroke: #c0392b; stroke-width: 1.5; }\n"
        "  .cut { stroke: #7f8c8d; stroke-width: 1; stroke-dasharray: 4 3; }\n"
        "  .seam { stroke: #27ae60; stroke-width: 2.5; }\n"
        "</style>\n";
  const auto& poly = r.unfolded.polygon;
  os << "<polygon class=\"unfolding\" points=\"";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 p = t.apply(poly[i]);
    os << (i ? " " : "") << fmt4(p.x) << ',' << fmt4(p.y);
  }
  os << "\"/>\n";
  const auto line = [&](const char* cls, Vec2 a, Vec2 b) {
    const Vec2 pa = t.apply(a), pb = t.apply(b);
    os << "<line class=\"" << cls << "\" x1=\"" << fmt4(pa.x) << "\" y1=\"" << fmt4(pa.y) << "\" x2=\"" << fmt4(pb.x)
       << "\" y2=\"" << fmt4(pb.y) << "\"/>\n";
  };
  const auto& surf = r.unfolded.surface;
  for (std::size_t i = 0; i < surf.size(); ++i)
    if (r.unfolded.surface_provenance[i].leg) line("cut", surf[i], surf[(i + 1) % surf.size()]);
  for (std::size_t i = 0; i < poly.size(); ++i)
    line(edge_class(r, r.unfolded.provenance[i]), poly[i], poly[(i + 1) % poly.size()]);
  line("seam", r.unfolded.seam[0], r.unfolded.seam[1]);
  os << "</svg>\n";
  return os.str();
}

std::string loop_json(const QuasigeodesicLoop& loop) {
  Json j{{"schema", 1}, {"loop", loop_record(loop)}};
  return j.dump(2) + "\n";
}

QuasigeodesicLoop read_loop_json(const Polyhedron& poly, std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    int line = 1, column = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size()); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("malformed loop JSON", line, column);
  }
  try {
    const Json& l = j.at("loop");
    std::vector<SurfacePoint> pts;
    for (const Json& p : l.at("points")) pts.push_back(parse_locus(p.at("locus")));
    std::vector<int> faces;
    if (l.contains("segment_faces")) faces = l.at("segment_faces").get<std::vector<int>>();
    std::optional<int> lp;
    if (l.contains("loop_point") && l.at("loop_point").get<int>() >= 0) lp = l.at("loop_point").get<int>();
    return loop_from_waypoints(poly, pts, faces, lp);
  } catch (const Json::exception& e) {
    throw InputError(std::string("bad loop record: ") + e.what());
  }
}

std::string error_json(const std::string& kind, const std::string& message, int exit_code,
                       std::optional<std::pair<int, int>> line_column) {
  Json j{{"schema", 1}, {"error", {{"kind", kind}, {"message", message}, {"exit_code", exit_code}}}};
  if (line_column) {
    j["error"]["line"] = line_column->first;
    j["error"]["column"] = line_column->second;
  }
  return j.dump(2) + "\n";
}

std::string sweep_json(const SweepReport& rep) {
  const SweepOptions& o = rep.options;
  Json j;
  j["schema"] = 1;
  j["sweep"] = {{"instances", o.instances},
                {"hull_points", {o.min_points, o.max_points}},
                {"rng_seed", o.seed}};
  j["loops_built"] = rep.loops_built;
  j["completed"] = rep.completed;
  j["passed"] = rep.passed;
  Json tally = Json::object();
  for (const auto& [name, t] : rep.tally)
    tally[name] = {{"pass", t.pass}, {"fail", t.fail}, {"n/a", t.not_applicable}, {"worst", t.worst}};
  j["checks"] = tally;
  Json insts = Json::array();
  for (const SweepInstance& i : rep.instances) {
    Json ji{{"index", i.index},
            {"points", i.points},
            {"seed", {{"face", i.face}, {"uv", vec(i.uv)}, {"direction", i.direction}}},
            {"status", to_string(i.status)}};
    if (i.status == SweepStatus::Completed) {
      ji["loop_kind"] = to_string(i.kind);
      ji["cuts"] = i.cuts;
      ji["x_cuts"] = i.x_cuts;
      ji["passed"] = i.passed;
      Json failed = Json::array();
      for (const Check& c : i.checks)
        if (c.status == CheckStatus::Fail) failed.push_back(check_record(c));
      ji["failed_checks"] = failed;
    } else {
      ji["error"] = i.error;
    }
    insts.push_back(ji);
  }
  j["instances"] = insts;
  return j.dump(2) + "\n";
}

}  // namespace qstar
