// Timing comparison of the serial reference kernels against the OpenMP path:
// segment-exponential evolution, eigenvector extraction, and sweep fan-out.

#include <chrono>
#include <cstdio>
#include <random>

#include "gcs/kernels.hpp"
#include "gcs/observables.hpp"
#include "gcs/oracle.hpp"

using namespace gcs;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double bench_evolution(int dim, int segments, kernels::Exec exec) {
    CoefficientTrack tr;
    tr.T = 10.0;
    tr.omega = Channel::sinusoid(1.0, 0.2, 1.0);
    RepLabel rep = RepLabel::su11(0.25, dim);
    StateVector psi0 = su11_cs(0.25, Complex{0.3, 0.0}, dim, 1.0);
    EvolveOptions eo;
    eo.exec = exec;
    auto t0 = Clock::now();
    auto res = schrodinger_evolve(rep, tr, psi0, segments, nullptr, eo);
    double dt = seconds_since(t0);
    std::printf("  evolve dim=%-4d segments=%-5d %-8s %8.3f s  (norm drift %.1e)\n", dim,
                segments, exec == kernels::Exec::Serial ? "serial" : "parallel", dt,
                res.max_norm_drift);
    return dt;
}

double bench_eig(int dim, int reps, kernels::Exec exec) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RVector d(dim), e(dim - 1);
    for (int i = 0; i < dim; ++i) d[i] = 2.0 * (0.25 + i) + 0.1 * u(rng);
    for (int i = 0; i + 1 < dim; ++i) e[i] = 0.4 * std::sqrt((i + 1.0) * (0.5 + i));
    auto t0 = Clock::now();
    double acc = 0.0;
    for (int r = 0; r < reps; ++r) {
        auto eig = (exec == kernels::Exec::Serial) ? kernels::tridiag_eig_reference(d, e)
                                                   : kernels::tridiag_eig_fast(d, e);
        acc += eig.values[0];
    }
    double dt = seconds_since(t0);
    std::printf("  eig    dim=%-4d reps=%-8d %-8s %8.3f s  (checksum %.6f)\n", dim, reps,
                exec == kernels::Exec::Serial ? "serial" : "parallel", dt, acc);
    return dt;
}

double bench_sweep(int points, kernels::Exec exec) {
    std::vector<double> out(points);
    auto t0 = Clock::now();
    kernels::parallel_for(
        points,
        [&](int i) {
            double k = 0.2 + 2.0 * (i % 97) / 97.0;
            double r = 0.9 * (i % 53) / 53.0;
            double th = 2.0 * M_PI * i / points;
            out[i] = uncertainty_product(k, std::polar(r, th));
        },
        exec);
    double dt = seconds_since(t0);
    double acc = 0.0;
    for (double v : out) acc += v;
    std::printf("  sweep  points=%-9d %-8s %8.3f s  (checksum %.6f)\n", points,
                exec == kernels::Exec::Serial ? "serial" : "parallel", dt, acc / points);
    return dt;
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", kernels::max_threads());

    std::printf("\nsegment-exponential evolution\n");
    double es = bench_evolution(256, 512, kernels::Exec::Serial);
    double ep = bench_evolution(256, 512, kernels::Exec::Parallel);
    bench_evolution(512, 256, kernels::Exec::Serial);
    bench_evolution(512, 256, kernels::Exec::Parallel);

    std::printf("\ntridiagonal eigensystems\n");
    double gs = bench_eig(384, 40, kernels::Exec::Serial);
    double gp = bench_eig(384, 40, kernels::Exec::Parallel);

    std::printf("\nproperty sweep fan-out\n");
    double ss = bench_sweep(2000000, kernels::Exec::Serial);
    double sp = bench_sweep(2000000, kernels::Exec::Parallel);

    std::printf("\nspeedups (serial / parallel): evolve %.2fx, eig %.2fx, sweep %.2fx\n",
                es / ep, gs / gp, ss / sp);
    return 0;
}
