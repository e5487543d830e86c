#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "qstar/errors.hpp"
#include "qstar/io.hpp"
#include "qstar/pipeline.hpp"
#include "qstar/sweep.hpp"

using namespace qstar;
using namespace qstar::testing;
using Json = nlohmann::ordered_json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string record;  // serialized output, compared across repeats
  double seconds = 0.0;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double shoelace(const std::vector<Vec2>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) a += cross(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * a;
}

// One isosceles triangle of apex omega, or two of apex omega / 2 when omega >= pi.
double triangle_area(const Polyhedron& p, const std::vector<CutSegment>& cuts) {
  double a = 0.0;
  for (const CutSegment& c : cuts) {
    const double w = p.curvature(c.vertex), l = c.length;
    a += w < kPi ? 0.5 * l * l * std::sin(w) : l * l * std::sin(0.5 * w);
  }
  return a;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

void require_convex(Outcome& o, const PlanarDevelopment& d, const char* name) {
  o.require(d.min_turn >= -1e-9, std::string(name) + " min turn " + fmt(d.min_turn));
  o.require(polygon_simple(d.boundary).simple, std::string(name) + " development not simple");
}

void require_area(Outcome& o, const Polyhedron& p, const PipelineResult& r) {
  const double expected = p.surface_area() + triangle_area(p, r.cuts[0]) + triangle_area(p, r.cuts[1]);
  const double rel = std::abs(shoelace(r.unfolded.polygon) - expected) / expected;
  o.require(rel <= 1e-9, "area relative error " + fmt(rel));
}

const CutSegment* cut_of(const PipelineResult& r, int v) {
  for (const auto& cuts : r.cuts)
    for (const CutSegment& c : cuts)
      if (c.vertex == v) return &c;
  return nullptr;
}

// Loop interval from loop vertex v to the foot of the cut from w.
int interval_to_foot(const PipelineResult& r, int v, int w) {
  int iv = -1;
  for (int i = 0; i < r.loop.size(); ++i)
    if (r.loop.points[i].locus.kind == LocusKind::Vertex && r.loop.points[i].locus.id == v) iv = i;
  for (int h = 0; h < 2; ++h)
    for (const CutSegment& c : r.cuts[h]) {
      if (c.vertex != w) continue;
      const LoopPosition f = foot_position(r.loop, r.halves[h], c);
      for (int b = 0; b < r.breaks.size(); ++b) {
        const int nb = (b + 1) % r.breaks.size();
        if (r.breaks.loop_index[b] == iv && r.breaks.pos[nb].segment == f.segment &&
            std::abs(r.breaks.pos[nb].t - f.t) < 1e-9)
          return b;
      }
    }
  return -1;
}

Outcome cube_quasigeodesic_criterion() {
  Outcome o;
  const Polyhedron& p = cube();
  const PipelineResult r = run_pipeline(p, cube_quasigeodesic());
  o.require(r.loop.kind == LoopKind::ClosedQuasigeodesic, "loop is not a closed quasigeodesic");
  require_convex(o, r.dev[0], "left");
  require_convex(o, r.dev[1], "right");
  for (int v : {2, 4}) {
    const CutSegment* c = cut_of(r, v);
    o.require(c && c->tied == 3, "tie count of v" + std::to_string(v) + " is " + (c ? std::to_string(c->tied) : "-"));
  }
  const int j = interval_to_foot(r, 5, 6);
  o.require(j >= 0 && seam_candidate(r.dev[0], r.dev[1], j).valid, "seam v5 v6' rejected");
  o.require(polygon_simple(r.unfolded.polygon).simple, "final polygon not simple");
  require_area(o, p, r);
  RunMeta m;
  m.input = "cube.off";
  m.given_loop = true;
  o.record = result_json(p, r, m);
  return o;
}

Outcome cube_geodesic_loop_criterion() {
  Outcome o;
  const Polyhedron& p = cube();
  const PipelineResult r = run_pipeline(p, cube_geodesic_loop());
  o.require(std::abs(r.loop.beta - 1.5 * kPi) <= 1e-9, "beta " + fmt(r.loop.beta));
  o.require(r.halves[0].contained_vertices.size() == 3 || r.halves[1].contained_vertices.size() == 3,
            "no side holds exactly 3 vertices");
  bool found = false;
  for (const PlanarDevelopment& d : r.dev) {
    if (!d.disk.loop_side) continue;
    found = true;
    for (int c : d.reflex) o.require(d.disk.corners[c].x_image, "reflex corner " + std::to_string(c) + " off x");
  }
  o.require(found, "no loop-side development");
  o.require(r.seam.chosen.valid && r.seam.chosen.y_rule && !r.seam.fallback, "seam not incident to an x-image extreme");
  o.require(polygon_simple(r.unfolded.polygon).simple, "final polygon not simple");
  RunMeta m;
  m.input = "cube.off";
  m.seed_face = kLoopSeedFace;
  m.seed_uv = kLoopSeedUv;
  m.direction = kLoopSeedDirection;
  o.record = result_json(p, r, m);
  return o;
}

Outcome dodecahedron_criterion() {
  Outcome o;
  const Polyhedron& p = dodecahedron();
  const PipelineResult r = run_pipeline(p, dodecahedron_geodesic());
  o.require(r.loop.kind == LoopKind::ClosedGeodesic, "loop is not a closed geodesic");
  require_convex(o, r.dev[0], "left");
  require_convex(o, r.dev[1], "right");
  o.require(polygon_simple(r.unfolded.polygon).simple, "final polygon not simple");
  require_area(o, p, r);
  RunMeta m;
  m.input = "dodecahedron.off";
  o.record = result_json(p, r, m);
  return o;
}

Outcome oracle_criterion() {
  Outcome o;
  struct Case {
    const char* name;
    const Polyhedron* poly;
    std::vector<QuasigeodesicLoop> loops;
  };
  std::vector<Case> cases{{"cube", &cube(), {cube_quasigeodesic(), cube_geodesic_loop(), cube_loop_with_x_cut()}},
                          {"tetrahedron", &tetrahedron(), {tetrahedron_geodesic()}},
                          {"octahedron", &octahedron(), {octahedron_equator()}}};
  for (Case& c : cases)
    for (int f = 0; f < c.poly->num_faces(); ++f) {
      try {
        c.loops.push_back(construct_loop(*c.poly, SurfacePoint::on_face(f, seed_point(*c.poly, f)), 0.3 + f));
      } catch (const GeometryError&) {
      }
    }
  Json rec = Json::array();
  int matched = 0, total = 0;
  for (const Case& c : cases) {
    std::vector<bool> seen(c.poly->num_vertices(), false);
    for (const QuasigeodesicLoop& q : c.loops) {
      auto [l, r] = split_halves(*c.poly, q);
      for (const Half* h : {&l, &r})
        for (int v : h->contained_vertices) {
          if (c.poly->is_flat(v)) continue;
          const double a = shortest_to_q(*c.poly, *h, v).length;
          const double b = brute_force_shortest(*c.poly, *h, v, 8).length;
          const bool ok = std::abs(a - b) <= 1e-9 * b;
          ++total;
          matched += ok;
          seen[v] = true;
          o.require(ok, std::string(c.name) + " v" + std::to_string(v) + " " + fmt(a) + " vs " + fmt(b));
          rec.push_back({{"solid", c.name}, {"vertex", v}, {"length", a}, {"oracle", b}});
        }
    }
    for (int v = 0; v < c.poly->num_vertices(); ++v)
      o.require(seen[v], std::string(c.name) + " v" + std::to_string(v) + " never off the loop");
  }
  o.detail = std::to_string(matched) + "/" + std::to_string(total) + " matched" + (o.detail.empty() ? "" : "; " + o.detail);
  o.record = rec.dump();
  return o;
}

Outcome sweep_criterion() {
  Outcome o;
  SweepOptions opts;
  opts.instances = 200;
  opts.min_points = 6;
  opts.max_points = 30;
  opts.seed = 20261016;
  const SweepReport r = run_sweep(opts);
  const double built = static_cast<double>(r.loops_built) / opts.instances;
  o.require(built > 0.9, "loops built " + fmt(built));
  o.require(r.completed == r.loops_built, std::to_string(r.loops_built - r.completed) + " runs failed after the loop");
  const char* required[] = {"gauss_bonnet", "orthogonality", "cuts_disjoint", "tau21_bound", "tau21_subchains",
                            "alpha", "final_simple"};
  for (const auto& [name, t] : r.tally) {
    bool listed = false;
    for (const char* k : required) listed |= name.rfind(k, 0) == 0;
    if (t.fail > 0) o.require(false, name + " failed " + std::to_string(t.fail) + (listed ? "" : " (extra)"));
  }
  for (const char* k : required) {
    bool present = false;
    for (const auto& [name, t] : r.tally) present |= name.rfind(k, 0) == 0 && t.pass > 0;
    o.require(present, std::string(k) + " never evaluated");
  }
  for (const SweepInstance& i : r.instances)
    if (i.status == SweepStatus::Completed && !i.passed) o.require(false, "instance " + std::to_string(i.index));
  o.detail = std::to_string(r.loops_built) + "/200 loops, " + std::to_string(r.passed) + " passed" +
             (o.detail.empty() ? "" : "; " + o.detail);
  o.record = sweep_json(r);
  return o;
}

Outcome timed(const std::function<Outcome()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = f();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = e.what();
  }
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double limit;  // seconds, 0 when untimed
  };
  const std::vector<Criterion> criteria{
      {"cube closed quasigeodesic", cube_quasigeodesic_criterion, 1.0},
      {"cube geodesic loop", cube_geodesic_loop_criterion, 1.0},
      {"dodecahedron closed geodesic", dodecahedron_criterion, 0.0},
      {"oracle equivalence", oracle_criterion, 0.0},
      {"invariant sweep", sweep_criterion, 300.0},
  };
  bool all = true;
  std::vector<std::string> first;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o = timed(criteria[i].run);
    if (criteria[i].limit > 0.0) o.require(o.seconds < criteria[i].limit, "over " + fmt(criteria[i].limit) + " s");
    std::printf("%s %zu %s (%.3f s)%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.seconds,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    all &= o.pass;
    first.push_back(o.record);
  }
  Outcome det;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Outcome again = timed(criteria[i].run);
    det.require(!first[i].empty() && again.record == first[i], "criterion " + std::to_string(i + 1) + " differs");
  }
  det.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s 6 determinism (%.3f s)%s%s\n", det.pass ? "PASS" : "FAIL", det.seconds, det.detail.empty() ? "" : ": ",
              det.detail.c_str());
  all &= det.pass;
  return all ? 0 : 1;
}
