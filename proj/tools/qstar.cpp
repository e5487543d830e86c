#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qstar/errors.hpp"
#include "qstar/io.hpp"
#include "qstar/pipeline.hpp"
#include "qstar/sweep.hpp"

using namespace qstar;

namespace {

struct Config {
  std::string input;
  std::optional<int> seed_face;
  std::vector<double> seed_uv;
  std::optional<double> direction;
  std::string loop_file;
  std::string out;
  std::string format = "both";
  std::optional<double> tol_angle;
  std::string vertex_rule = "bisect";
  int sweep = -1;
  std::string hull_points = "6:30";
  std::uint64_t rng_seed = 1;
  bool parallel = false;
  int oracle_faces = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

void emit(const Config& cfg, const std::string& ext, const std::string& text) {
  if (cfg.out.empty())
    std::cout << text;
  else
    write_file(cfg.out + ext, text);
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(s);
    return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw InputError("--hull-points expects LO:HI, got " + s);
  }
}

int run_sweep_mode(const Config& cfg) {
  SweepOptions opts;
  opts.instances = cfg.sweep;
  std::tie(opts.min_points, opts.max_points) = parse_range(cfg.hull_points);
  opts.seed = cfg.rng_seed;
  opts.loop.rule = parse_vertex_rule(cfg.vertex_rule);
  opts.pipeline.oracle_max_faces = cfg.oracle_faces;
  const SweepReport rep = run_sweep(opts);
  emit(cfg, ".json", sweep_json(rep));
  for (const SweepInstance& i : rep.instances)
    if (i.status == SweepStatus::PipelineFailed || (i.status == SweepStatus::Completed && !i.passed)) return 1;
  return 0;
}

int run_unfold_mode(const Config& cfg) {
  if (cfg.input.empty()) throw InputError("--input is required");
  const bool seeded = cfg.seed_face || !cfg.seed_uv.empty() || cfg.direction;
  const bool given = !cfg.loop_file.empty();
  if (seeded == given) throw InputError("supply either --seed-face/--seed-uv/--direction or --loop-file");
  if (seeded && !(cfg.seed_face && cfg.seed_uv.size() == 2 && cfg.direction))
    throw InputError("--seed-face, --seed-uv U V and --direction must be given together");

  RunMeta meta;
  meta.input = cfg.input;
  meta.rng_seed = cfg.rng_seed;
  if (cfg.tol_angle) meta.tolerances.angle = *cfg.tol_angle;
  meta.rule = parse_vertex_rule(cfg.vertex_rule);
  const Polyhedron poly = load_off_file(cfg.input, meta.tolerances);

  QuasigeodesicLoop loop;
  if (given) {
    meta.given_loop = true;
    loop = read_loop_json(poly, read_file(cfg.loop_file));
  } else {
    meta.seed_face = *cfg.seed_face;
    meta.seed_uv = {cfg.seed_uv[0], cfg.seed_uv[1]};
    meta.direction = *cfg.direction;
    if (meta.seed_face < 0 || meta.seed_face >= poly.num_faces()) throw InputError("--seed-face out of range");
    LoopOptions lo;
    lo.rule = meta.rule;
    loop = construct_loop(poly, SurfacePoint::on_face(meta.seed_face, meta.seed_uv), meta.direction, lo);
  }

  PipelineOptions po;
  po.parallel = cfg.parallel;
  po.oracle_max_faces = cfg.oracle_faces;
  const PipelineResult r = run_pipeline(poly, loop, po);
  if (cfg.format == "json" || cfg.format == "both") emit(cfg, ".json", result_json(poly, r, meta));
  if (cfg.format == "svg" || cfg.format == "both") emit(cfg, ".svg", result_svg(r));
  for (const Check& c : r.report.checks)
    if (c.status == CheckStatus::Fail)
      std::cerr << "verification failed: " << c.name << " residual " << c.residual << ' ' << c.certificate << '\n';
  return r.report.passed() ? 0 : 1;
}

int fail(const Config& cfg, const std::string& kind, const std::string& msg, int code,
         std::optional<std::pair<int, int>> lc = std::nullopt) {
  std::cerr << "error: " << msg << '\n';
  try {
    if (cfg.format != "svg") emit(cfg, ".json", error_json(kind, msg, code, lc));
  } catch (const std::exception&) {
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Star unfolding of a convex polyhedron about a quasigeodesic loop"};
  Config cfg;
  app.add_option("--input", cfg.input, "Convex polyhedron in OFF format");
  app.add_option("--seed-face", cfg.seed_face, "Face holding the seed point");
  app.add_option("--seed-uv", cfg.seed_uv, "Seed point in the face frame")->expected(2);
  app.add_option("--direction", cfg.direction, "Seed direction in radians, face frame");
  app.add_option("--loop-file", cfg.loop_file, "Loop record (JSON) for given-loop mode");
  app.add_option("--out", cfg.out, "Output path prefix; stdout when omitted");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"svg", "json", "both"}));
  app.add_option("--tol-angle", cfg.tol_angle, "Angle tolerance in radians");
  app.add_option("--vertex-rule", cfg.vertex_rule, "Geodesic continuation through vertices")
      ->check(CLI::IsMember({"bisect", "right-pi", "left-pi"}));
  app.add_option("--sweep", cfg.sweep, "Run the randomized sweep with N instances");
  app.add_option("--hull-points", cfg.hull_points, "Point count range LO:HI for sweep hulls");
  app.add_option("--rng-seed", cfg.rng_seed, "Sweep RNG seed");
  app.add_flag("--parallel", cfg.parallel, "Parallel shortest-path searches");
  app.add_option("--oracle-faces", cfg.oracle_faces, "Compare cuts with the brute-force oracle up to N faces");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cfg.sweep >= 0) return run_sweep_mode(cfg);
    return run_unfold_mode(cfg);
  } catch (const ParseError& e) {
    return fail(cfg, "parse_error", e.what(), 2, std::make_pair(e.line(), e.column()));
  } catch (const InputError& e) {
    return fail(cfg, "input_error", e.what(), 2);
  } catch (const GeometryError& e) {
    return fail(cfg, "geometry_error", e.what(), 3);
  } catch (const std::exception& e) {
    return fail(cfg, "internal_error", e.what(), 3);
  }
}
