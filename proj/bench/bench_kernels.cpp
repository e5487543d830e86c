#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>

#include "qstar/hull.hpp"
#include "qstar/io.hpp"
#include "qstar/pipeline.hpp"
#include "qstar/sweep.hpp"

using namespace qstar;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

bool same_cuts(const std::vector<CutSegment>& a, const std::vector<CutSegment>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].vertex != b[i].vertex || a[i].length != b[i].length) return false;
  return true;
}

// First seed ray on a random hull whose loop leaves vertices on both sides.
std::pair<Polyhedron, QuasigeodesicLoop> workload(int points, std::uint64_t seed) {
  for (std::uint64_t s = seed;; ++s) {
    const std::vector<Vec3> pts = random_sphere_points(points, s);
    Polyhedron p = load_off(hull_off(pts));
    for (int f = 0; f < p.num_faces(); f += 7) {
      try {
        QuasigeodesicLoop q = construct_loop(p, SurfacePoint::on_face(f, {0.3, 0.3}), 0.4);
        auto [l, r] = split_halves(p, q);
        if (l.contained_vertices.size() > 10 && r.contained_vertices.size() > 10) return {std::move(p), std::move(q)};
      } catch (const std::exception&) {
      }
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  const int points = argc > 1 ? std::stoi(argv[1]) : 120;
  const int instances = argc > 2 ? std::stoi(argv[2]) : 60;
  std::printf("threads %d\n", omp_get_max_threads());

  auto [poly, loop] = workload(points, 1);
  auto [left, right] = split_halves(poly, loop);
  std::printf("all_cuts: hull of %d points, %zu + %zu vertices\n", points, left.contained_vertices.size(),
              right.contained_vertices.size());
  std::vector<CutSegment> a, b;
  const double ts = seconds([&] { a = all_cuts(poly, left), b = all_cuts(poly, right); }, 3);
  std::vector<CutSegment> pa, pb;
  const double tp = seconds([&] { pa = all_cuts_parallel(poly, left), pb = all_cuts_parallel(poly, right); }, 3);
  std::printf("  serial   %.4f s\n  parallel %.4f s  speedup %.2f  identical %s\n", ts, tp, ts / tp,
              same_cuts(a, pa) && same_cuts(b, pb) ? "yes" : "no");

  SweepOptions o;
  o.instances = instances;
  o.seed = 20261016;
  std::string js, jp;
  const double ss = seconds([&] { js = sweep_json(run_sweep_serial(o)); }, 1);
  const double sp = seconds([&] { jp = sweep_json(run_sweep(o)); }, 1);
  std::printf("sweep: %d instances\n  serial   %.4f s\n  parallel %.4f s  speedup %.2f  identical %s\n", instances,
              ss, sp, ss / sp, js == jp ? "yes" : "no");
  return js == jp && same_cuts(a, pa) && same_cuts(b, pb) ? 0 : 1;
}
