#include "wavescat/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wavescat {

namespace {
constexpr double kFourPi = 4.0 * std::numbers::pi;
}

Cplx green_r(double r, double k) {
    if (!(r > 0.0)) throw std::invalid_argument("Green's function is singular at zero separation");
    return std::polar(1.0 / (kFourPi * r), k * r);
}

Cplx green(const Vec3& x, const Vec3& y, double k) { return green_r(norm(x - y), k); }

int friendly_fft_size(int n) {
    for (int m = std::max(n, 1);; ++m) {
        int r = m;
        for (int f : {2, 3, 5, 7})
            while (r % f == 0) r /= f;
        if (r == 1) return m;
    }
}

namespace {

// Axis slot -> lattice offset, or |offset| >= b (unreachable) flagged as b.
inline int slot_abs_offset(int t, int b, int side) {
    if (t <= b - 1) return t;
    if (t >= side - b + 1) return side - t;
    return b;
}

}  // namespace

template <typename Real>
KernelCube<Real> build_kernel_cube(int b, double spacing, double k, int padded_side) {
    if (b < 2) throw std::invalid_argument("kernel cube needs b >= 2; a single particle has no interactions");
    if (!(spacing > 0.0)) throw std::invalid_argument("kernel cube needs a positive spacing");
    const int minimal = 2 * b - 2;
    if (padded_side == 0) padded_side = minimal;
    if (padded_side < minimal) throw std::invalid_argument("padded side must be at least 2b-2");

    KernelCube<Real> cube;
    cube.b = b;
    cube.side = padded_side;
    cube.spacing = spacing;
    cube.k = k;
    const int n1 = padded_side;
    cube.values.assign(static_cast<std::size_t>(n1) * n1 * n1, std::complex<Real>{});

    std::complex<Real>* out = cube.values.data();
#pragma omp parallel for collapse(2) schedule(static)
    for (int t1 = 0; t1 < n1; ++t1) {
        for (int t2 = 0; t2 < n1; ++t2) {
            const int d1 = slot_abs_offset(t1, b, n1);
            const int d2 = slot_abs_offset(t2, b, n1);
            std::complex<Real>* row = out + (static_cast<std::size_t>(t1) * n1 + t2) * n1;
            if (d1 >= b || d2 >= b) continue;  // already zero
            const double r12 = static_cast<double>(d1) * d1 + static_cast<double>(d2) * d2;
            for (int t3 = 0; t3 < n1; ++t3) {
                const int d3 = slot_abs_offset(t3, b, n1);
                if (d3 >= b) continue;
                if (d1 == 0 && d2 == 0 && d3 == 0) continue;  // self term stays zero
                const double r = spacing * std::sqrt(r12 + static_cast<double>(d3) * d3);
                const Cplx g = green_r(r, k);
                row[t3] = std::complex<Real>(static_cast<Real>(g.real()), static_cast<Real>(g.imag()));
            }
        }
    }
    return cube;
}

template KernelCube<double> build_kernel_cube<double>(int, double, double, int);
template KernelCube<float> build_kernel_cube<float>(int, double, double, int);

}  // namespace wavescat
