#include "qstar/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qstar {

namespace {

const char* half_name(int s) { return s == 0 ? "left" : "right"; }

void verify(const Polyhedron& poly, PipelineResult& r, const PipelineOptions& opts) {
  VerificationReport& rep = r.report;
  for (int s = 0; s < 2; ++s) {
    const Half& H = r.halves[s];
    const std::string h = half_name(s);
    rep.add_bound("gauss_bonnet_" + h, std::abs(H.tau_q + H.omega_q - kTwoPi), 1e-7);

    double worst = 0.0;
    int worst_v = -1;
    for (const CutSegment& c : r.cuts[s])
      if (auto d = check_orthogonality(H, c); d && *d >= worst) {
        worst = *d;
        worst_v = c.vertex;
      }
    if (worst_v < 0)
      rep.add("orthogonality_" + h, CheckStatus::NotApplicable);
    else
      rep.add_bound("orthogonality_" + h, worst, 1e-6, "vertex " + std::to_string(worst_v));

    const auto crossing = find_crossing_cuts(H, r.cuts[s]);
    rep.add("cuts_disjoint_" + h, crossing ? CheckStatus::Fail : CheckStatus::Pass, crossing ? 1.0 : 0.0,
            crossing ? "cuts " + std::to_string(crossing->first) + " and " + std::to_string(crossing->second) : "");

    const PlanarDevelopment& d = r.dev[s];
    rep.add_bound("development_turn_" + h, std::abs(d.total_turn - kTwoPi), 1e-7);
    rep.add_bound("development_closure_" + h, d.closure, 1e-9 * poly.diagonal());
    rep.add("development_simple_" + h, CheckStatus::Pass);
    if (d.disk.loop_side) {
      rep.add("development_convex_" + h, CheckStatus::NotApplicable);
      std::string bad;
      for (int c : d.reflex)
        if (!d.disk.corners[c].x_image) bad += " " + std::to_string(c);
      rep.add("reflex_only_at_x_" + h, bad.empty() ? CheckStatus::Pass : CheckStatus::Fail, 0.0,
              bad.empty() ? "" : "corners" + bad);
    } else {
      rep.add_bound("development_convex_" + h, std::max(0.0, -d.min_turn), 1e-9);
      rep.add("reflex_only_at_x_" + h, CheckStatus::NotApplicable);
    }
  }

  if (r.chain) {
    const ChainReport& c = *r.chain;
    rep.add_bound("tau21_bound", std::max(0.0, c.tau21_chain - kPi), 1e-9);
    rep.add_bound("tau21_formula", std::abs(c.tau21_chain - c.tau21_formula), 1e-7);
    rep.add_bound("tau21_subchains", std::max(0.0, c.max_subchain_turn - kPi), 1e-9);
    if (c.k > 0)
      rep.add_bound("alpha", std::max(0.0, 0.5 * kPi - std::min(c.alpha1, c.alpha2)), 1e-9);
    else
      rep.add("alpha", CheckStatus::NotApplicable);
    if (c.k >= 2)
      rep.add_bound("sum_beta", std::max(0.0, c.sum_beta - kPi), 1e-9);
    else
      rep.add("sum_beta", CheckStatus::NotApplicable);
  } else {
    for (const char* name : {"tau21_bound", "tau21_formula", "tau21_subchains", "alpha", "sum_beta"})
      rep.add(name, CheckStatus::NotApplicable);
  }

  const SeamCandidate& s = r.seam.chosen;
  rep.add("seam_support", s.valid ? CheckStatus::Pass : CheckStatus::Fail, std::max(s.support[0], s.support[1]),
          "interval " + std::to_string(s.interval));
  rep.add("final_simple", CheckStatus::Pass);
  rep.add("surface_simple", CheckStatus::Pass);
  rep.add_bound("area", r.conservation.area_residual, 1e-9 * r.conservation.expected_area);
  rep.add_bound("surface_area", r.conservation.surface_area_residual, 1e-9 * poly.surface_area());
  rep.add_bound("cut_pairing", r.conservation.cut_pairing, 1e-9 * poly.diagonal());

  if (opts.oracle_max_faces > 0) {
    double worst = 0.0;
    int worst_v = -1;
    for (int h = 0; h < 2; ++h)
      for (const CutSegment& c : r.cuts[h]) {
        const BruteForceResult b = brute_force_shortest(poly, r.halves[h], c.vertex, opts.oracle_max_faces);
        const double rel = std::abs(c.length - b.length) / b.length;
        if (rel >= worst) {
          worst = rel;
          worst_v = c.vertex;
        }
      }
    if (worst_v < 0)
      rep.add("oracle", CheckStatus::NotApplicable);
    else
      rep.add_bound("oracle", worst, 1e-9, "vertex " + std::to_string(worst_v));
  } else {
    rep.add("oracle", CheckStatus::NotApplicable);
  }
}

}  // namespace

PipelineResult run_pipeline(const Polyhedron& poly, const QuasigeodesicLoop& loop, const PipelineOptions& opts) {
  PipelineResult r;
  r.loop = loop;
  r.n = poly.num_vertices();
  r.q = loop.faces_crossed();
  r.m = r.n + r.q;
  std::tie(r.halves[0], r.halves[1]) = split_halves(poly, loop);
  for (int s = 0; s < 2; ++s)
    r.cuts[s] = opts.parallel ? all_cuts_parallel(poly, r.halves[s], opts.search) : all_cuts(poly, r.halves[s], opts.search);
  r.breaks = loop_breaks(poly, loop, r.halves[0], r.halves[1], r.cuts[0], r.cuts[1]);
  for (int s = 0; s < 2; ++s)
    r.dev[s] = develop_half(poly, insert_triangles(poly, loop, r.halves[s], r.cuts[s], r.breaks));
  for (int s = 0; s < 2; ++s)
    if (r.dev[s].disk.loop_side) r.chain = turn_of_C21(r.dev[s]);
  r.seam = select_seam(r.dev[0], r.dev[1], loop);
  r.unfolded = join(r.dev[0], r.dev[1], r.seam);
  r.conservation = conservation(poly, r.unfolded, r.dev[0], r.dev[1]);
  verify(poly, r, opts);
  return r;
}

}  // namespace qstar
