#include <gtest/gtest.h>

#include <cmath>
#include <json.hpp>
#include <regex>
#include <set>

#include "fixtures.hpp"
#include "qstar/errors.hpp"
#include "qstar/io.hpp"

using namespace qstar;
using namespace qstar::testing;
using Json = nlohmann::json;

namespace {

RunMeta trace_meta() {
  RunMeta m;
  m.input = "cube.off";
  m.seed_face = kLoopSeedFace;
  m.seed_uv = kLoopSeedUv;
  m.direction = kLoopSeedDirection;
  return m;
}

std::vector<Vec2> json_points(const Json& arr) {
  std::vector<Vec2> out;
  for (const Json& p : arr) out.push_back({p[0].get<double>(), p[1].get<double>()});
  return out;
}

}  // namespace

TEST(LoopJson, RoundTripReproducesTheLoop) {
  const QuasigeodesicLoop q = cube_geodesic_loop();
  const QuasigeodesicLoop r = read_loop_json(cube(), loop_json(q));
  ASSERT_EQ(r.size(), q.size());
  EXPECT_EQ(r.loop_point, q.loop_point);
  EXPECT_EQ(r.kind, q.kind);
  EXPECT_EQ(r.segment_faces, q.segment_faces);
  for (int i = 0; i < q.size(); ++i) {
    EXPECT_LT(norm(r.points[i].pos - q.points[i].pos), 1e-12);
    EXPECT_NEAR(r.points[i].left, q.points[i].left, 1e-9);
  }
}

TEST(LoopJson, ResultRecordRunsAgainInGivenLoopMode) {
  const Polyhedron& p = cube();
  const PipelineResult a = run_pipeline(p, cube_geodesic_loop());
  const std::string ja = result_json(p, a, trace_meta());
  const PipelineResult b = run_pipeline(p, read_loop_json(p, ja));
  ASSERT_EQ(a.unfolded.polygon.size(), b.unfolded.polygon.size());
  for (std::size_t i = 0; i < a.unfolded.polygon.size(); ++i)
    EXPECT_LT(norm(a.unfolded.polygon[i] - b.unfolded.polygon[i]), 1e-9);
  EXPECT_EQ(Json::parse(ja)["mode"], "trace");
}

TEST(LoopJson, MalformedTextReportsLineAndColumn) {
  try {
    read_loop_json(cube(), "{\n  \"loop\": [1,\n  }");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_GE(e.column(), 3);
  }
  EXPECT_THROW(read_loop_json(cube(), "{\"schema\": 1}"), InputError);
}

TEST(ResultJson, RecordsSchemaAndVerification) {
  const Polyhedron& p = cube();
  const PipelineResult r = run_pipeline(p, cube_quasigeodesic());
  RunMeta m;
  m.input = "cube.off";
  m.given_loop = true;
  const Json j = Json::parse(result_json(p, r, m));
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["mode"], "given-loop");
  EXPECT_EQ(j["complexity"]["n"], 8);
  EXPECT_EQ(j["complexity"]["m"], j["complexity"]["n"].get<int>() + j["complexity"]["q"].get<int>());
  EXPECT_TRUE(j["verification"]["passed"].get<bool>());
  EXPECT_EQ(j["developments"].size(), 2u);
  EXPECT_NEAR(j["surface_area"].get<double>(), 6.0, 1e-12);
  EXPECT_NEAR(j["polygon"]["surface"]["area"].get<double>(), 6.0, 1e-9);
  std::set<std::string> names;
  for (const Json& c : j["verification"]["checks"]) EXPECT_TRUE(names.insert(c["name"].get<std::string>()).second);
}

TEST(ResultSvg, CoordinatesFollowTheDeclaredTransform) {
  const Polyhedron& p = cube();
  const PipelineResult r = run_pipeline(p, cube_geodesic_loop());
  const Json j = Json::parse(result_json(p, r, trace_meta()));
  const Json& t = j["svg"]["transform"];
  const double s = t["scale"], min_x = t["min_x"], max_y = t["max_y"], margin = t["margin"];
  const std::vector<Vec2> verts = json_points(j["polygon"]["vertices"]);

  const std::string svg = result_svg(r);
  const std::smatch m = [&] {
    std::smatch mm;
    std::regex_search(svg, mm, std::regex("class=\"unfolding\" points=\"([^\"]*)\""));
    return mm;
  }();
  ASSERT_FALSE(m.empty());
  std::vector<Vec2> pts;
  const std::string body = m[1];
  const std::regex pair("(-?[0-9.]+),(-?[0-9.]+)");
  for (auto it = std::sregex_iterator(body.begin(), body.end(), pair); it != std::sregex_iterator(); ++it)
    pts.push_back({std::stod((*it)[1]), std::stod((*it)[2])});
  ASSERT_EQ(pts.size(), verts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_NEAR(pts[i].x, margin + s * (verts[i].x - min_x), 1e-4);
    EXPECT_NEAR(pts[i].y, margin + s * (max_y - verts[i].y), 1e-4);
  }
  for (const char* cls : {"q-seg", "tri-base", "cut", "seam"})
    EXPECT_NE(svg.find(std::string("class=\"") + cls + "\""), std::string::npos) << cls;
}

TEST(ErrorJson, CarriesKindAndPosition) {
  const Json j = Json::parse(error_json("parse", "bad", 2, std::make_pair(3, 5)));
  EXPECT_EQ(j["error"]["kind"], "parse");
  EXPECT_EQ(j["error"]["line"], 3);
  EXPECT_EQ(j["error"]["column"], 5);
  EXPECT_EQ(j["error"]["exit_code"], 2);
}

TEST(VertexRuleNames, RoundTrip) {
  for (VertexRule r : {VertexRule::Bisect, VertexRule::RightPi, VertexRule::LeftPi})
    EXPECT_EQ(parse_vertex_rule(to_string(r)), r);
  EXPECT_THROW(parse_vertex_rule("sideways"), InputError);
}
