// bench_kernels — wall-time comparison of the serial reference kernels against
// the OpenMP ones: oracle RHS-heavy integration, blurrer sweep, entropy sweep.
#include <chrono>
#include <cstdio>
#include <vector>

#include "lambda_entangle/cli.hpp"
#include "lambda_entangle/eraser.hpp"
#include "lambda_entangle/oracle.hpp"
#include "lambda_entangle/parallel.hpp"

namespace le = lambda_entangle;

namespace {

double seconds(const std::chrono::steady_clock::time_point& a,
               const std::chrono::steady_clock::time_point& b) {
    return std::chrono::duration<double>(b - a).count();
}

template <typename Fn>
double timed(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return seconds(t0, std::chrono::steady_clock::now());
}

double bench_oracle(le::oracle::Execution exec) {
    const le::SystemParams p = le::oracle::desk_params(4.0);
    const le::oracle::ModeGrid grid = le::oracle::build_grid(p, 80.0, 20.0);
    const le::photodetect::DetectorParams det{0.1, 5.0, le::Polarization::H};
    le::oracle::Options opts;
    opts.execution = exec;
    double sink = 0.0;
    const double dt = timed([&] {
        const auto trajectory = le::oracle::integrate(p, grid, 12.0, det, opts);
        sink = trajectory.samples.back().norm;
    });
    std::printf("  norm at horizon: %.12f\n", sink);
    return dt;
}

double bench_blur(int threads) {
    le::par::set_max_threads(threads);
    le::cli::RunConfig cfg = le::cli::default_config();
    cfg.blur.points = 512;
    double sink = 0.0;
    const double dt = timed([&] {
        const auto ds = le::cli::run_blur(cfg);
        sink = ds.columns[1].values.back();
    });
    std::printf("  floor coherence: %.9f\n", sink);
    return dt;
}

double bench_entropy(int threads) {
    le::par::set_max_threads(threads);
    le::cli::RunConfig cfg = le::cli::default_config();
    cfg.grid.step = 0.0002;  // 3×10⁵ points
    double sink = 0.0;
    const double dt = timed([&] {
        const auto ds = le::cli::run_entropy(cfg);
        sink = ds.columns[1].values.back();
    });
    std::printf("  S_fo at end: %.9f\n", sink);
    return dt;
}

}  // namespace

int main() {
    const int hw_threads = le::par::max_threads();
    std::printf("bench_kernels: %d thread(s) available\n\n", hw_threads);

    std::printf("oracle integrate (3201 modes/channel + detector, 12 ns horizon)\n");
    le::par::set_max_threads(1);
    const double oracle_serial = bench_oracle(le::oracle::Execution::Serial);
    le::par::set_max_threads(hw_threads);
    const double oracle_omp = bench_oracle(le::oracle::Execution::OpenMP);
    std::printf("  serial %.3fs | openmp %.3fs | speedup %.2fx\n\n", oracle_serial,
                oracle_omp, oracle_serial / oracle_omp);

    std::printf("blurrer sweep (512 windows)\n");
    const double blur_serial = bench_blur(1);
    const double blur_omp = bench_blur(hw_threads);
    std::printf("  serial %.3fs | openmp %.3fs | speedup %.2fx\n\n", blur_serial, blur_omp,
                blur_serial / blur_omp);

    std::printf("entropy curves (3e5 points)\n");
    const double entropy_serial = bench_entropy(1);
    const double entropy_omp = bench_entropy(hw_threads);
    std::printf("  serial %.3fs | openmp %.3fs | speedup %.2fx\n", entropy_serial,
                entropy_omp, entropy_serial / entropy_omp);

    le::par::set_max_threads(0);
    return 0;
}
