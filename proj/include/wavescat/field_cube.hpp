#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "wavescat/lattice.hpp"
#include "wavescat/types.hpp"

namespace wavescat {

/// Complex field sampled on the b^3 lattice nodes, z-fastest order.
template <typename Real>
struct FieldCube {
    int b = 0;
    std::vector<std::complex<Real>> values;

    FieldCube() = default;
    explicit FieldCube(int side_count)
        : b(side_count),
          values(static_cast<std::size_t>(side_count) * side_count * side_count, std::complex<Real>{}) {}

    std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
    std::complex<Real>& at(int m1, int m2, int m3) {
        return values[static_cast<std::size_t>(linear_index(b, {m1, m2, m3}))];
    }
    const std::complex<Real>& at(int m1, int m2, int m3) const {
        return values[static_cast<std::size_t>(linear_index(b, {m1, m2, m3}))];
    }
};

template <typename Real>
std::vector<Cplx> to_double(const FieldCube<Real>& cube) {
    std::vector<Cplx> out(cube.values.size());
    for (std::size_t i = 0; i < cube.values.size(); ++i)
        out[i] = Cplx(static_cast<double>(cube.values[i].real()), static_cast<double>(cube.values[i].imag()));
    return out;
}

/// Values attached to the cells of a uniform grid of cell-centered boxes
/// (the reduced-system subcubes or the collocation cells), in double
/// precision for reporting and comparison.
struct CellField {
    int side = 0;
    double cell = 1.0;
    Vec3 origin;
    std::vector<Cplx> values;  // side^3, z-fastest

    Vec3 center(std::array<int, 3> c) const {
        return origin + cell * Vec3{c[0] + 0.5, c[1] + 0.5, c[2] + 0.5};
    }

    /// Value of the cell containing x (clamped to the grid; points on a
    /// shared face go to the upper cell, matching subcube_of).
    const Cplx& value_at(const Vec3& x) const {
        auto idx = [&](double v, double o) {
            auto i = static_cast<std::int64_t>(std::floor((v - o) / cell + 1e-9));
            if (i < 0) i = 0;
            if (i >= side) i = side - 1;
            return static_cast<int>(i);
        };
        return values[static_cast<std::size_t>(
            linear_index(side, {idx(x.x, origin.x), idx(x.y, origin.y), idx(x.z, origin.z)}))];
    }
};

}  // namespace wavescat
