// Timing comparison of the serial reference kernels against the OpenMP
// node-parallel path, on the residual workloads that dominate the sweeps.
#include <chrono>
#include <cstdio>
#include <random>

#include "solgeo/manufactured.hpp"
#include "solgeo/zerocurvature.hpp"

using namespace solgeo;

namespace {

template <class F>
double time_ms(F&& fn, int reps) {
    fn();  // warm-up
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 24;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 3;

    std::mt19937_64 rng(7);
    ManufacturedGauge gauge = ManufacturedGauge::random(rng, 2, 4, 0.05);
    GridSpec spec = periodic_grid({"x", "y", "z", "t"}, n);
    MatrixField g = sample_group(gauge, spec);

    std::printf("grid %d^4 = %zu nodes, %d reps per measurement\n", n, spec.size(), reps);

    for (Exec exec : {Exec::serial, Exec::parallel}) {
        default_exec() = exec;
        const double t_logd = time_ms([&] { (void)fd_log_deriv(g, "x"); }, reps);
        MatrixField U = fd_log_deriv(g, "x");
        MatrixField V = fd_log_deriv(g, "t");
        const double t_zc = time_ms([&] { (void)zc_residual(U, V, "x", "t"); }, reps);
        const double t_partial = time_ms([&] { (void)partial(g, "y"); }, reps);
        std::printf("%-8s  partial %8.2f ms   fd_log_deriv %8.2f ms   zc_residual %8.2f ms\n",
                    exec == Exec::serial ? "serial" : "parallel", t_partial, t_logd, t_zc);
    }
    default_exec() = Exec::parallel;

    // equality spot check: both paths must agree bit for bit
    default_exec() = Exec::serial;
    MatrixField a = fd_log_deriv(g, "x");
    default_exec() = Exec::parallel;
    MatrixField b = fd_log_deriv(g, "x");
    double dev = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dev = std::max(dev, (a[i] - b[i]).max_abs());
    std::printf("serial/parallel max deviation: %g\n", dev);
    return dev == 0.0 ? 0 : 1;
}
