#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "wavescat/types.hpp"

namespace wavescat {

/// b^3 particles on the nodes of a uniform grid anchored at the domain corner,
/// node m at origin + d*(m1,m2,m3). Spacing and radius are tied through
/// d = a^((2-kappa)/3), i.e. a = d^(3/(2-kappa)).
struct UniformLattice {
    int b = 1;           // particles per side
    double d = 1.0;      // neighbor spacing [cm]
    double a = 1.0;      // particle radius [cm]
    double kappa = 0.0;  // impedance exponent, in [0,1)
    double side = 1.0;   // domain edge length [cm]
    Vec3 origin;

    std::int64_t particle_count() const { return static_cast<std::int64_t>(b) * b * b; }
};

UniformLattice build_lattice_from_b(int b, double kappa, double domain_side = 1.0, Vec3 origin = {});

/// Accepts a total particle count, which must be a perfect cube.
UniformLattice build_lattice_from_count(std::int64_t particles, double kappa, double domain_side = 1.0,
                                        Vec3 origin = {});

Vec3 particle_position(const UniformLattice& lat, std::array<int, 3> m);

// z-fastest linearization shared by every cube in the project
inline std::int64_t linear_index(int b, std::array<int, 3> m) {
    return (static_cast<std::int64_t>(m[0]) * b + m[1]) * b + m[2];
}
std::array<int, 3> index_triple(int b, std::int64_t idx);

/// Non-intersecting subcubes covering the domain, centers at cell midpoints.
struct SubcubePartition {
    int p_side = 1;
    double cell = 1.0;  // subcube edge length
    double side = 1.0;
    Vec3 origin;
    std::vector<Vec3> centers;  // p_side^3, z-fastest order

    std::int64_t count() const { return static_cast<std::int64_t>(p_side) * p_side * p_side; }
};

SubcubePartition make_partition(double domain_side, Vec3 origin, int p_side);
SubcubePartition partition(const UniformLattice& lat, int p_side);

/// Index of the subcube containing x (points on a shared face go to the upper
/// cell, the outermost faces excepted).
std::int64_t subcube_of(const SubcubePartition& part, const Vec3& x);

/// Particle totals per subcube; sums to lat.particle_count().
std::vector<std::int64_t> subcube_counts(const UniformLattice& lat, const SubcubePartition& part);

}  // namespace wavescat
