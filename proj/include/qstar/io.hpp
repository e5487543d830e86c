#pragma once

// JSON and SVG serialization of pipeline results.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qstar/pipeline.hpp"
#include "qstar/sweep.hpp"

namespace qstar {

struct RunMeta {
  std::string input;
  bool given_loop = false;
  int seed_face = -1;
  Vec2 seed_uv{};
  double direction = 0.0;
  VertexRule rule = VertexRule::Bisect;
  std::uint64_t rng_seed = 0;
  Tolerances tolerances;
};

/// Viewport mapping: X = margin + scale * (x - min_x), Y = margin + scale * (max_y - y).
struct SvgTransform {
  double scale = 1.0;
  double min_x = 0.0;
  double max_y = 0.0;
  double margin = 20.0;
  double width = 0.0;
  double height = 0.0;

  Vec2 apply(Vec2 p) const { return {margin + scale * (p.x - min_x), margin + scale * (max_y - p.y)}; }
};

SvgTransform svg_transform(const PipelineResult& r, double size = 800.0);

/// Full result record; `schema` 1.
std::string result_json(const Polyhedron& poly, const PipelineResult& r, const RunMeta& meta);
std::string result_svg(const PipelineResult& r);

/// Loop record alone, readable by read_loop_json.
std::string loop_json(const QuasigeodesicLoop& loop);
/// Reads the `loop` member of a loop record or of a full result record.
/// Throws ParseError on malformed JSON and InputError on a bad loop.
QuasigeodesicLoop read_loop_json(const Polyhedron& poly, std::string_view text);

std::string error_json(const std::string& kind, const std::string& message, int exit_code,
                       std::optional<std::pair<int, int>> line_column = std::nullopt);

std::string sweep_json(const SweepReport& rep);

const char* to_string(VertexRule rule);
VertexRule parse_vertex_rule(std::string_view s);

}  // namespace qstar
