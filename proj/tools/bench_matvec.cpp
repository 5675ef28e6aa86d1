// Benchmark of the interaction-sum matvec: serial O(M^2) reference against
// the OpenMP/FFT path, plus the n log n growth sweep of the FFT path alone.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wavescat/fftconv.hpp"
#include "wavescat/reference.hpp"

using namespace wavescat;

namespace {

double now() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

FieldCube<double> random_field(int b, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    FieldCube<double> u(b);
    for (auto& v : u.values) v = {dist(rng), dist(rng)};
    return u;
}

double time_best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = now();
        fn();
        best = std::min(best, now() - t0);
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const double k = 0.182650747;
    std::mt19937_64 rng(42);
    const bool quick = argc > 1 && std::string(argv[1]) == "--quick";

#ifdef _OPENMP
    std::printf("threads: %d\n\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (no OpenMP)\n\n");
#endif

    std::printf("serial O(M^2) reference vs FFT path (identical results checked elsewhere):\n");
    std::printf("%6s %10s %14s %14s %10s\n", "b", "M", "direct [s]", "fft [s]", "speedup");
    for (int b : {4, 8, 12, 16}) {
        const double d = 1.0 / b;
        const FieldCube<double> u = random_field(b, rng);
        const auto sk = make_spectral_kernel<double>(b, d, k);

        const double t_direct = time_best_of(3, [&] {
            volatile auto r = ref::convolve_direct(b, d, k, u.values);
            (void)r;
        });
        FieldCube<double> out(b);
        const double t_fft = time_best_of(5, [&] { convolve(sk, u, out); });
        std::printf("%6d %10lld %14.6f %14.6f %9.1fx\n", b, static_cast<long long>(u.size()), t_direct, t_fft,
                    t_direct / t_fft);
    }

    std::printf("\nFFT matvec growth (n = padded size^3):\n");
    std::printf("%6s %10s %12s %14s %16s\n", "b", "side", "n", "matvec [s]", "t/(n log n)");
    for (int b : quick ? std::vector<int>{16, 32} : std::vector<int>{16, 32, 64, 128}) {
        const double d = 1.0 / b;
        const auto sk = make_spectral_kernel<double>(b, d, k);
        const FieldCube<double> u = random_field(b, rng);
        FieldCube<double> out(b);
        convolve(sk, u, out);  // warm-up
        const double t = time_best_of(quick ? 3 : 5, [&] { convolve(sk, u, out); });
        const double n = std::pow(static_cast<double>(sk.side), 3);
        std::printf("%6d %10d %12.0f %14.6f %16.3e\n", b, sk.side, n, t, t / (n * std::log(n)));
    }
    return 0;
}
