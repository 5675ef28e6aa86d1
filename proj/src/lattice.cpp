#include "wavescat/lattice.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wavescat {

namespace {

// Exact integer cube root, or -1 when m is not a perfect cube.
std::int64_t exact_cube_root(std::int64_t m) {
    if (m <= 0) return -1;
    auto r = static_cast<std::int64_t>(std::llround(std::cbrt(static_cast<double>(m))));
    for (std::int64_t c = std::max<std::int64_t>(1, r - 2); c <= r + 2; ++c) {
        if (c * c * c == m) return c;
    }
    return -1;
}

void check_kappa(double kappa) {
    if (!(kappa >= 0.0 && kappa < 1.0)) {
        throw std::invalid_argument("kappa must lie in [0,1), got " + std::to_string(kappa));
    }
}

}  // namespace

UniformLattice build_lattice_from_b(int b, double kappa, double domain_side, Vec3 origin) {
    if (b < 1) throw std::invalid_argument("lattice side count must be positive, got " + std::to_string(b));
    check_kappa(kappa);
    if (!(domain_side > 0.0)) throw std::invalid_argument("domain side must be positive");

    UniformLattice lat;
    lat.b = b;
    lat.kappa = kappa;
    lat.side = domain_side;
    lat.origin = origin;
    lat.d = domain_side / b;
    lat.a = std::pow(lat.d, 3.0 / (2.0 - kappa));
    if (b > 1 && lat.a / lat.d > 0.1) {
        std::ostringstream os;
        os << "particle radius is not small against the spacing: a/d = " << lat.a / lat.d
           << " (a = " << lat.a << ", d = " << lat.d << ")";
        warn(os.str());
    }
    return lat;
}

UniformLattice build_lattice_from_count(std::int64_t particles, double kappa, double domain_side, Vec3 origin) {
    std::int64_t b = exact_cube_root(particles);
    if (b < 0) {
        auto r = static_cast<std::int64_t>(std::floor(std::cbrt(static_cast<double>(particles))));
        while ((r + 1) * (r + 1) * (r + 1) <= particles) ++r;
        while (r > 1 && r * r * r > particles) --r;
        std::ostringstream os;
        os << "particle count " << particles << " is not a perfect cube; nearest cubes are " << r << "^3 = "
           << r * r * r << " and " << (r + 1) << "^3 = " << (r + 1) * (r + 1) * (r + 1);
        throw std::invalid_argument(os.str());
    }
    if (b > (1 << 21)) throw std::invalid_argument("lattice side count too large: " + std::to_string(b));
    return build_lattice_from_b(static_cast<int>(b), kappa, domain_side, origin);
}

Vec3 particle_position(const UniformLattice& lat, std::array<int, 3> m) {
    for (int c : m) {
        if (c < 0 || c >= lat.b) {
            throw std::out_of_range("particle index component " + std::to_string(c) + " outside [0," +
                                    std::to_string(lat.b) + ")");
        }
    }
    return lat.origin + lat.d * Vec3{static_cast<double>(m[0]), static_cast<double>(m[1]), static_cast<double>(m[2])};
}

std::array<int, 3> index_triple(int b, std::int64_t idx) {
    const std::int64_t n = static_cast<std::int64_t>(b) * b * b;
    if (idx < 0 || idx >= n) throw std::out_of_range("linear index outside lattice");
    const auto m3 = static_cast<int>(idx % b);
    const auto m2 = static_cast<int>((idx / b) % b);
    const auto m1 = static_cast<int>(idx / (static_cast<std::int64_t>(b) * b));
    return {m1, m2, m3};
}

SubcubePartition make_partition(double domain_side, Vec3 origin, int p_side) {
    if (p_side < 1) throw std::invalid_argument("partition side count must be positive");
    if (!(domain_side > 0.0)) throw std::invalid_argument("domain side must be positive");

    SubcubePartition part;
    part.p_side = p_side;
    part.side = domain_side;
    part.origin = origin;
    part.cell = domain_side / p_side;
    part.centers.reserve(static_cast<std::size_t>(part.count()));
    for (int i = 0; i < p_side; ++i)
        for (int j = 0; j < p_side; ++j)
            for (int l = 0; l < p_side; ++l)
                part.centers.push_back(origin + part.cell * Vec3{i + 0.5, j + 0.5, l + 0.5});
    return part;
}

SubcubePartition partition(const UniformLattice& lat, int p_side) {
    if (p_side > lat.b) {
        throw std::invalid_argument("partition side count " + std::to_string(p_side) +
                                    " exceeds lattice side count " + std::to_string(lat.b));
    }
    SubcubePartition part = make_partition(lat.side, lat.origin, p_side);
    if (part.cell < 3.0 * lat.d) {
        std::ostringstream os;
        os << "subcube side " << part.cell << " is not large against the particle spacing " << lat.d
           << "; the reduced-system averaging may be poor";
        warn(os.str());
    }
    return part;
}

std::int64_t subcube_of(const SubcubePartition& part, const Vec3& x) {
    auto cell_index = [&](double v, double o) {
        // the nudge sends points on a shared face to the upper cell even when
        // rounding left them epsilon below the boundary
        auto i = static_cast<std::int64_t>(std::floor((v - o) / part.cell + 1e-9));
        if (i < 0) i = 0;
        if (i >= part.p_side) i = part.p_side - 1;
        return static_cast<int>(i);
    };
    return linear_index(part.p_side, {cell_index(x.x, part.origin.x), cell_index(x.y, part.origin.y),
                                      cell_index(x.z, part.origin.z)});
}

std::vector<std::int64_t> subcube_counts(const UniformLattice& lat, const SubcubePartition& part) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(part.count()), 0);
    // Per-axis cell index of every lattice plane; the 3D count is separable.
    auto axis_counts = [&](double o_lat, double o_part) {
        std::vector<std::int64_t> c(static_cast<std::size_t>(part.p_side), 0);
        for (int m = 0; m < lat.b; ++m) {
            double v = o_lat + lat.d * m;
            auto i = static_cast<std::int64_t>(std::floor((v - o_part) / part.cell + 1e-9));
            if (i < 0) i = 0;
            if (i >= part.p_side) i = part.p_side - 1;
            ++c[static_cast<std::size_t>(i)];
        }
        return c;
    };
    const auto cx = axis_counts(lat.origin.x, part.origin.x);
    const auto cy = axis_counts(lat.origin.y, part.origin.y);
    const auto cz = axis_counts(lat.origin.z, part.origin.z);
    for (int i = 0; i < part.p_side; ++i)
        for (int j = 0; j < part.p_side; ++j)
            for (int l = 0; l < part.p_side; ++l)
                counts[static_cast<std::size_t>(linear_index(part.p_side, {i, j, l}))] =
                    cx[static_cast<std::size_t>(i)] * cy[static_cast<std::size_t>(j)] * cz[static_cast<std::size_t>(l)];
    return counts;
}

}  // namespace wavescat
