// Times the OpenMP kernels against their serial reference implementations
// and checks that both produce identical bytes.
#include <chrono>
#include <cmath>
#include <cstdio>

#include <omp.h>

#include "isoval/inequalities.hpp"
#include "isoval/rng.hpp"

using namespace isoval;
using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double time_ms(F&& fn, int reps) {
    fn();  // warm up
    auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) fn();
    auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-34s %10.2f ms %10.2f ms %8.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "bitwise-equal" : "MISMATCH");
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    Rng rng(2024);
    const SphericalGrid grid = make_grid(3);

    {  // polytope-style support sums (few atoms)
        NodeMatrix atoms(64, 3);
        Vector w(64);
        for (int j = 0; j < 64; ++j) {
            atoms.row(j) = rng.unit_vector(3).transpose();
            w[j] = rng.uniform(0.1, 1.0);
        }
        auto k = [](double s) { return std::abs(s); };
        Vector a, b;
        double ts = time_ms(
            [&] { kernels::support_sum(grid.nodes, atoms, w, k, a, kernels::Exec::serial); }, 5);
        double tp = time_ms(
            [&] { kernels::support_sum(grid.nodes, atoms, w, k, b, kernels::Exec::parallel); },
            5);
        report("support_sum 8192x64 |s|", ts, tp, (a - b).lpNorm<Eigen::Infinity>() == 0.0);
    }

    {  // dense grid-against-grid sums
        auto k = [](double s) { return std::abs(s); };
        Vector a, b;
        double ts = time_ms(
            [&] {
                kernels::support_sum(grid.nodes, grid.nodes, grid.weights, k, a,
                                     kernels::Exec::serial);
            },
            1);
        double tp = time_ms(
            [&] {
                kernels::support_sum(grid.nodes, grid.nodes, grid.weights, k, b,
                                     kernels::Exec::parallel);
            },
            1);
        report("support_sum 8192x8192 |s|", ts, tp, (a - b).lpNorm<Eigen::Infinity>() == 0.0);
    }

    {  // radial function of a halfspace intersection
        NodeMatrix dual = grid.nodes * 4.0;
        Vector a, b;
        double ts =
            time_ms([&] { kernels::max_dot(grid.nodes, dual, a, kernels::Exec::serial); }, 1);
        double tp =
            time_ms([&] { kernels::max_dot(grid.nodes, dual, b, kernels::Exec::parallel); }, 1);
        report("max_dot 8192x8192", ts, tp, (a - b).lpNorm<Eigen::Infinity>() == 0.0);
    }

    {  // full smooth-body valuation (adapted quadrature per node)
        Body E = make_ellipsoid(Eigen::Vector3d(2.0, 1.0, 0.5));
        ZonalMeasure mu = ZonalMeasure::equatorial(0.5);
        SphericalGrid g1 = make_grid(3, 1);
        Vector a, b;
        kernels::set_default_exec(kernels::Exec::serial);
        double ts = time_ms([&] { a = zonal_valuation(E, mu, g1).values; }, 1);
        kernels::set_default_exec(kernels::Exec::parallel);
        double tp = time_ms([&] { b = zonal_valuation(E, mu, g1).values; }, 1);
        report("zonal_valuation ellipsoid 2048", ts, tp,
               (a - b).lpNorm<Eigen::Infinity>() == 0.0);
    }

    {  // polytope pipeline end to end
        Rng body_rng(7);
        Body K = random_hull_body(body_rng, 40);
        ZonalMeasure mu = ZonalMeasure::equatorial(0.5);
        double va = 0.0, vb = 0.0;
        kernels::set_default_exec(kernels::Exec::serial);
        double ts = time_ms([&] { va = volume_product(K, mu, 1.0, grid); }, 2);
        kernels::set_default_exec(kernels::Exec::parallel);
        double tp = time_ms([&] { vb = volume_product(K, mu, 1.0, grid); }, 2);
        report("volume_product hull40", ts, tp, va == vb);
    }
    return 0;
}
