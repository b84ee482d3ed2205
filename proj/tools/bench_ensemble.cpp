// Benchmark of the OpenMP ensemble sweep against the serial reference:
// integrates a batch of cylinder orbits and generates a batch of MBE
// timelines in both modes and reports wall times and speedup.
#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "attractorlab/cylinder/occupancy.hpp"
#include "attractorlab/lab/ensemble.hpp"
#include "attractorlab/numeric/rng.hpp"
#include "attractorlab/timeline/timeline.hpp"

using namespace attractorlab;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <typename Fn>
double timed(const char* label, ExecMode mode, int n, const Fn& fn) {
    const double t0 = now_seconds();
    const auto out = ensemble_map<double>(n, mode, fn);
    double acc = 0.0;
    for (double v : out) acc += v;
    const double dt = now_seconds() - t0;
    std::printf("  %-28s %8.3f s   (checksum %.6f)\n", label, dt, acc);
    return dt;
}

}  // namespace

int main(int argc, char** argv) {
    const int n_orbits = argc > 1 ? std::atoi(argv[1]) : 64;
    const int n_timelines = argc > 2 ? std::atoi(argv[2]) : 2000;

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; parallel mode falls back to serial\n");
#endif

    const auto f = CircleFieldFamily::default_geometry();
    const DescentSchedule s(-3.14159265358979 / 3.0, 3.14159265358979 / 3.0);
    const VerticalProfile v;
    CounterRng rng(1234);

    const auto orbit_job = [&](int i) {
        const double th = f.theta_north() + 0.7 + rng.uniform(static_cast<std::uint64_t>(i)) * 5.0;
        const auto orbit = integrate_orbit(th, 0.0, 200.0, f, s, v, 1e-10);
        const auto occ = occupancy(orbit, s, v, 0.1);
        return occ.chi_l.back();
    };
    const auto timeline_job = [&](int i) {
        const auto m = PolycycleModel::biangle(SaddleParams(2.0, 1.0), SaddleParams(2.0, 1.0));
        const double z0 = rng.uniform(static_cast<std::uint64_t>(i), 0.02, 0.3);
        const auto tl = generate_timeline(m, z0, 800);
        return *tl.events()[5].tA.to_plain();
    };

    std::printf("cylinder orbits (n = %d):\n", n_orbits);
    const double o_serial = timed("serial reference", ExecMode::Serial, n_orbits, orbit_job);
    const double o_par = timed("OpenMP pool", ExecMode::Parallel, n_orbits, orbit_job);
    std::printf("  speedup: %.2fx\n", o_serial / o_par);

    std::printf("biangle timelines (n = %d):\n", n_timelines);
    const double t_serial = timed("serial reference", ExecMode::Serial, n_timelines, timeline_job);
    const double t_par = timed("OpenMP pool", ExecMode::Parallel, n_timelines, timeline_job);
    std::printf("  speedup: %.2fx\n", t_serial / t_par);
    return 0;
}
