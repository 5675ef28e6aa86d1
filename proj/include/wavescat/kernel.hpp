#pragma once

#include <complex>
#include <vector>

#include "wavescat/types.hpp"

namespace wavescat {

/// Free-space Helmholtz kernel e^{ikr}/(4 pi r). Rejects coincident points.
Cplx green(const Vec3& x, const Vec3& y, double k);
Cplx green_r(double r, double k);

/// Lattice-offset table of the kernel over a circulant index space of extent
/// side >= 2b-2 per axis. Along each axis, slot t <= b-1 holds the offset +t
/// and slot t >= side-b+1 the offset t-side; with the minimal side 2b-2 the
/// slot b-1 serves both +(b-1) and -(b-1), which agree because the kernel
/// depends on |offset| only. Slot (0,0,0) is zero: the self term never enters
/// the interaction sum. Slots reachable by neither sign are zero as well.
template <typename Real>
struct KernelCube {
    int b = 0;
    int side = 0;
    double spacing = 0.0;
    double k = 0.0;
    std::vector<std::complex<Real>> values;  // side^3, z-fastest
};

/// Smallest 7-smooth integer >= n (the optional FFT-friendly padding).
int friendly_fft_size(int n);

/// padded_side == 0 selects the minimal extent 2b-2. Requires b >= 2.
template <typename Real>
KernelCube<Real> build_kernel_cube(int b, double spacing, double k, int padded_side = 0);

extern template KernelCube<double> build_kernel_cube<double>(int, double, double, int);
extern template KernelCube<float> build_kernel_cube<float>(int, double, double, int);

}  // namespace wavescat
