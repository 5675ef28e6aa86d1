#include "wavescat/compare.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wavescat {

namespace {

struct Accum {
    std::vector<double> sum;
    std::vector<std::int64_t> count;
    explicit Accum(std::size_t n) : sum(n, 0.0), count(n, 0) {}
};

DiffReport finalize(Accum& acc, std::string pair) {
    DiffReport rep;
    rep.pair = std::move(pair);
    rep.per_subcube.reserve(acc.sum.size());
    for (std::size_t q = 0; q < acc.sum.size(); ++q) {
        if (acc.count[q] == 0) {
            throw std::invalid_argument("aggregation subcube " + std::to_string(q) +
                                        " contains no samples; the sup-mean metric is undefined");
        }
        const double mean = acc.sum[q] / static_cast<double>(acc.count[q]);
        rep.per_subcube.emplace_back(static_cast<std::int64_t>(q), mean);
        if (mean > rep.metric) rep.metric = mean;
    }
    return rep;
}

}  // namespace

DiffReport diff_lattice_vs_cells(const UniformLattice& lat, const std::vector<Cplx>& u_lat, const CellField& other,
                                 const SubcubePartition& agg, std::string pair) {
    if (static_cast<std::int64_t>(u_lat.size()) != lat.particle_count())
        throw std::invalid_argument("lattice sample count mismatch");

    const auto nq = static_cast<std::size_t>(agg.count());
    Accum total(nq);
#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
#else
    const int max_threads = 1;
#endif
    std::vector<Accum> partial(static_cast<std::size_t>(max_threads), Accum(nq));

#pragma omp parallel for schedule(static)
    for (int m1 = 0; m1 < lat.b; ++m1) {
#ifdef _OPENMP
        Accum& acc = partial[static_cast<std::size_t>(omp_get_thread_num())];
#else
        Accum& acc = partial[0];
#endif
        for (int m2 = 0; m2 < lat.b; ++m2)
            for (int m3 = 0; m3 < lat.b; ++m3) {
                const Vec3 x = lat.origin + lat.d * Vec3{double(m1), double(m2), double(m3)};
                const auto q = static_cast<std::size_t>(subcube_of(agg, x));
                const auto i = static_cast<std::size_t>(linear_index(lat.b, {m1, m2, m3}));
                acc.sum[q] += std::abs(u_lat[i] - other.value_at(x));
                ++acc.count[q];
            }
    }
    for (const Accum& acc : partial)
        for (std::size_t q = 0; q < nq; ++q) {
            total.sum[q] += acc.sum[q];
            total.count[q] += acc.count[q];
        }
    return finalize(total, std::move(pair));
}

DiffReport diff_points_vs_cells(const std::vector<Vec3>& points, const std::vector<Cplx>& values,
                                const CellField& other, const SubcubePartition& agg, std::string pair) {
    if (points.size() != values.size()) throw std::invalid_argument("point and value counts differ");
    Accum acc(static_cast<std::size_t>(agg.count()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto q = static_cast<std::size_t>(subcube_of(agg, points[i]));
        acc.sum[q] += std::abs(values[i] - other.value_at(points[i]));
        ++acc.count[q];
    }
    return finalize(acc, std::move(pair));
}

DiffReport diff_ori_red(const UniformLattice& lat, const std::vector<Cplx>& u_ori, const CellField& red,
                        const SubcubePartition& part) {
    if (red.side != part.p_side) throw std::invalid_argument("reduced grid does not match the partition");
    return diff_lattice_vs_cells(lat, u_ori, red, part, "ORI-RED");
}

double round4(double v) { return std::round(v * 1e4) / 1e4; }

}  // namespace wavescat
