#include "qstar/sweep.hpp"

#include <random>

#include "qstar/errors.hpp"
#include "qstar/hull.hpp"

namespace qstar {

const char* to_string(SweepStatus s) {
  switch (s) {
    case SweepStatus::Completed:
      return "completed";
    case SweepStatus::LoopFailed:
      return "loop_failed";
    case SweepStatus::PipelineFailed:
      return "pipeline_failed";
  }
  return "?";
}

namespace {

SweepInstance run_instance(const SweepOptions& opts, int index) {
  SweepInstance inst;
  inst.index = index;
  std::seed_seq seq{opts.seed, static_cast<std::uint64_t>(index)};
  std::uint64_t words[2];
  seq.generate(words, words + 2);
  std::mt19937_64 rng(words[0]);
  inst.points = std::uniform_int_distribution<int>(opts.min_points, opts.max_points)(rng);
  const Polyhedron poly = load_off(hull_off(random_sphere_points(inst.points, words[1])));

  inst.face = std::uniform_int_distribution<int>(0, poly.num_faces() - 1)(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double a = unit(rng), b = unit(rng);
  if (a + b > 1.0) {
    a = 1.0 - a;
    b = 1.0 - b;
  }
  const Vec2 c0 = poly.corner_coords(inst.face, 0), c1 = poly.corner_coords(inst.face, 1),
             c2 = poly.corner_coords(inst.face, 2);
  inst.uv = c0 + (c1 - c0) * a + (c2 - c0) * b;
  inst.direction = kTwoPi * unit(rng);

  QuasigeodesicLoop loop;
  try {
    loop = construct_loop(poly, SurfacePoint::on_face(inst.face, inst.uv), inst.direction, opts.loop);
  } catch (const std::exception& e) {
    inst.status = SweepStatus::LoopFailed;
    inst.error = e.what();
    return inst;
  }
  inst.kind = loop.kind;
  try {
    const PipelineResult r = run_pipeline(poly, loop, opts.pipeline);
    inst.status = SweepStatus::Completed;
    inst.cuts = static_cast<int>(r.cuts[0].size() + r.cuts[1].size());
    inst.x_cuts = r.chain ? r.chain->k : 0;
    inst.passed = r.report.passed();
    inst.checks = r.report.checks;
  } catch (const std::exception& e) {
    inst.status = SweepStatus::PipelineFailed;
    inst.error = e.what();
  }
  return inst;
}

SweepReport summarize(const SweepOptions& opts, std::vector<SweepInstance> insts) {
  SweepReport rep;
  rep.options = opts;
  rep.instances = std::move(insts);
  for (const SweepInstance& i : rep.instances) {
    if (i.status != SweepStatus::LoopFailed) ++rep.loops_built;
    if (i.status != SweepStatus::Completed) continue;
    ++rep.completed;
    rep.passed += i.passed;
    for (const Check& c : i.checks) {
      CheckTally& t = rep.tally[c.name];
      if (c.status == CheckStatus::Pass) ++t.pass;
      if (c.status == CheckStatus::Fail) ++t.fail;
      if (c.status == CheckStatus::NotApplicable) ++t.not_applicable;
      if (c.status != CheckStatus::NotApplicable) t.worst = std::max(t.worst, c.residual);
    }
  }
  return rep;
}

}  // namespace

SweepReport run_sweep(const SweepOptions& opts) {
  if (!opts.parallel) return run_sweep_serial(opts);
  if (opts.instances < 0 || opts.min_points < 4 || opts.max_points < opts.min_points)
    throw InputError("invalid sweep parameters");
  std::vector<SweepInstance> insts(opts.instances);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < opts.instances; ++i) insts[i] = run_instance(opts, i);
  return summarize(opts, std::move(insts));
}

SweepReport run_sweep_serial(SweepOptions opts) {
  if (opts.instances < 0 || opts.min_points < 4 || opts.max_points < opts.min_points)
    throw InputError("invalid sweep parameters");
  opts.parallel = false;
  std::vector<SweepInstance> insts;
  for (int i = 0; i < opts.instances; ++i) insts.push_back(run_instance(opts, i));
  return summarize(opts, std::move(insts));
}

}  // namespace qstar
