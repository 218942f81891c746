// Times each parallel kernel against its serial reference and checks that
// both give the same answer. Usage: bench_kernels [reps]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <vector>

#include <omp.h>

#include "rastar/datagen.hpp"
#include "rastar/grid.hpp"
#include "rastar/multi.hpp"
#include "rastar/raster_io.hpp"

using namespace rastar;

namespace {

double median_ms(int reps, const std::function<void()>& fn) {
  std::vector<double> t;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    t.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

void row(const char* name, double ref_ms, double par_ms, bool same) {
  std::printf("%-16s reference %9.2f ms  parallel %9.2f ms  speedup %5.2f  %s\n", name, ref_ms, par_ms,
              par_ms > 0 ? ref_ms / par_ms : 0.0, same ? "same" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::max(1, std::atoi(argv[1])) : 5;
  std::printf("threads %d, reps %d\n", omp_get_max_threads(), reps);
  bool ok = true;

  // Stamping cost grows with the number of set bits; the separable kernel's does not.
  for (double density : {0.02, 0.3}) {
    std::mt19937 rng(1);
    std::bernoulli_distribution bit(density);
    BitGrid m(512, 512);
    for (int r = 0; r < 512; ++r)
      for (int c = 0; c < 512; ++c)
        if (bit(rng)) m.set({c, r});
    BitGrid a, b;
    const double ref = median_ms(reps, [&] { a = dilate_reference(m, 5); });
    const double par = median_ms(reps, [&] { b = dilate(m, 5); });
    char name[32];
    std::snprintf(name, sizeof name, "dilate %.0f%%", density * 100);
    row(name, ref, par, a == b);
    ok = ok && a == b;
  }

  {
    ScenarioSpec spec;
    spec.seed = 3;
    spec.layout = Layout::kLot;
    spec.crossing_vehicles = {1, 1};
    const Scenario sc = build_scenario(spec);
    const ActionSet actions = ActionSet::build();
    SearchConfig cfg;
    cfg.time_limit_ms = 5000.0;
    TargetSamplerConfig tcfg;
    tcfg.max_targets = 20;
    MultiPlanReport a, b;
    const auto run = [&](bool parallel) {
      return plan_all(sc.inflated, sc.base_refpath, sc.start, sc.speed, OracleSource{}, cfg, tcfg,
                      actions, {parallel});
    };
    const double ref = median_ms(reps, [&] { a = run(false); });
    const double par = median_ms(reps, [&] { b = run(true); });
    bool same = a.per_target.size() == b.per_target.size();
    for (std::size_t i = 0; same && i < a.per_target.size(); ++i) {
      same = a.per_target[i].result.path == b.per_target[i].result.path;
    }
    row("plan_all 20", ref, par, same);
    ok = ok && same;
  }

  {
    ScenarioSpec spec;
    spec.id = "bench";
    spec.seed = 5;
    SampleGenConfig cfg;
    cfg.sampler.max_targets = 4;
    cfg.per_target = 3;
    const auto dir = std::filesystem::temp_directory_path() / "rastar_bench_kernels";
    std::filesystem::remove_all(dir);
    cfg.parallel = false;
    const double ref = median_ms(1, [&] { generate_samples(spec, cfg, dir / "serial"); });
    cfg.parallel = true;
    const double par = median_ms(1, [&] { generate_samples(spec, cfg, dir / "parallel"); });
    const bool same = read_file_bytes(dir / "serial" / "manifest.csv") ==
                      read_file_bytes(dir / "parallel" / "manifest.csv");
    row("gen-samples", ref, par, same);
    ok = ok && same;
    std::filesystem::remove_all(dir);
  }
  return ok ? 0 : 1;
}
