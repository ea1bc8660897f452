// Times the OpenMP paths against the serial reference and checks that the
// two produce bit-identical results (the parallel loops only distribute
// independent node evaluations; there are no cross-thread reductions).
#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ea/config.hpp"
#include "ea/electrostatics.hpp"
#include "ea/errors.hpp"
#include "ea/persson.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename F>
double best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = Clock::now();
    fn();
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         (a.empty() ||
          std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

}  // namespace

int main(int argc, char** argv) try {
  ea::RunConfig cfg;
  if (argc > 1) cfg = ea::parse_config_file(argv[1]);

#ifdef _OPENMP
  std::printf("openmp: %d thread(s)\n", omp_get_max_threads());
#else
  std::printf("openmp: not compiled in\n");
#endif

  const ea::RoughnessSpec spec = ea::roughness_from(cfg);
  const ea::DielectricLayer l1 = ea::insulator_from(cfg);
  const ea::DielectricLayer l2 = ea::counter_layer_from(cfg);
  const ea::GapMedium gap = ea::gap_from(cfg);
  const ea::ElasticPair pair =
      ea::ElasticPair::from_layers(l1, l2, cfg.freqs_hz.front());

  ea::PerssonOptions serial_opt;
  serial_opt.parallel = false;
  ea::PerssonOptions parallel_opt;
  parallel_opt.parallel = true;

  const ea::PerssonKernel serial_kernel(spec, pair.y_eff_pa, serial_opt);
  const ea::PerssonKernel parallel_kernel(spec, pair.y_eff_pa, parallel_opt);

  ea::SeparationDistribution ds, dp;
  const double t_dist_s =
      best_of(3, [&] { ds = serial_kernel.distribution(cfg.p0_pa); });
  const double t_dist_p =
      best_of(3, [&] { dp = parallel_kernel.distribution(cfg.p0_pa); });
  const bool dist_ok = same_bits(ds.density, dp.density) &&
                       same_bits(ds.u_m, dp.u_m) &&
                       ds.mean_separation_m == dp.mean_separation_m;
  std::printf("separation distribution: serial %.3fs, openmp %.3fs (%.2fx), "
              "bit-identical: %s\n",
              t_dist_s, t_dist_p, t_dist_s / t_dist_p,
              dist_ok ? "yes" : "NO");

  ea::SimulationConfig sim = ea::simulation_from(cfg);
  ea::ForceSweepResult rs, rp;
  sim.parallel = false;
  const double t_sweep_s =
      best_of(1, [&] { rs = ea::force_sweep(sim, spec, pair, l1, l2, gap); });
  sim.parallel = true;
  const double t_sweep_p =
      best_of(1, [&] { rp = ea::force_sweep(sim, spec, pair, l1, l2, gap); });

  bool sweep_ok = rs.points.size() == rp.points.size();
  if (sweep_ok)
    for (std::size_t i = 0; i < rs.points.size(); ++i)
      sweep_ok = sweep_ok && rs.points[i].fe_n == rp.points[i].fe_n &&
                 rs.points[i].pe_pa == rp.points[i].pe_pa &&
                 rs.points[i].mean_sep_m == rp.points[i].mean_sep_m;
  std::printf("force sweep (%zu freqs): serial %.3fs, openmp %.3fs (%.2fx), "
              "bit-identical: %s\n",
              rs.points.size(), t_sweep_s, t_sweep_p, t_sweep_s / t_sweep_p,
              sweep_ok ? "yes" : "NO");

  if (!dist_ok || !sweep_ok) {
    std::fprintf(stderr, "error: serial and parallel paths diverged\n");
    return 1;
  }
  return 0;
} catch (const ea::Error& e) {
  std::fprintf(stderr, "error: %s: %s\n", e.code_name(), e.what());
  std::fprintf(stderr, "usage: ea_bench [config-file]\n");
  return 1;
} catch (const std::exception& e) {
  std::fprintf(stderr, "error: internal: %s\n", e.what());
  return 1;
}
