#pragma once

#include <vector>

#include "wavescat/types.hpp"

namespace wavescat::ref {

/// Serial reference implementations. These stay deliberately independent of
/// the FFT and OpenMP paths so tests and the benchmark can compare against
/// them: plain loops, direct kernel evaluation, dense storage.

/// O(M^2) direct interaction sum over the b^3 lattice, diagonal excluded.
std::vector<Cplx> convolve_direct(int b, double spacing, double k, const std::vector<Cplx>& u);

struct DenseMatrix {
    int n = 0;
    std::vector<Cplx> a;  // row-major n*n

    Cplx& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const Cplx& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

/// Dense system I + coupling * G over arbitrary points, diagonal set to 1.
DenseMatrix dense_system(const std::vector<Vec3>& points, double k, Cplx coupling);

std::vector<Cplx> apply_dense(const DenseMatrix& m, const std::vector<Cplx>& x);

/// Partial-pivoting LU solve; the factorization works on a copy.
std::vector<Cplx> lu_solve(DenseMatrix m, std::vector<Cplx> rhs);

/// Serial field evaluation u0x + sum_m G(x, p_m) q_m, skipping coincident points.
Cplx field_direct(const Vec3& x, const std::vector<Vec3>& points, const std::vector<Cplx>& q, double k, Cplx u0x);

}  // namespace wavescat::ref
