#include "wavescat/scattering.hpp"

#include <cmath>
#include <stdexcept>

#include "wavescat/kernel.hpp"

namespace wavescat {

const char* to_string(Formulation f) {
    switch (f) {
        case Formulation::ORI: return "ORI";
        case Formulation::RED: return "RED";
        case Formulation::IE: return "IE";
    }
    return "unknown";
}

Cplx incident_field(const MaterialSpec& spec, const Vec3& x) {
    return std::polar(1.0, spec.k * dot(spec.alpha, x));
}

namespace {

template <typename Real>
std::complex<Real> to_real_complex(Cplx z) {
    return {static_cast<Real>(z.real()), static_cast<Real>(z.imag())};
}

// u0 sampled on a uniform grid: corner-anchored for the particle lattice
// (offset 0) or cell-centered for collocation grids (offset 0.5).
template <typename Real>
FieldCube<Real> incident_cube(int side, double spacing, Vec3 origin, double center_offset,
                              const MaterialSpec& spec) {
    FieldCube<Real> cube(side);
    std::complex<Real>* out = cube.values.data();
#pragma omp parallel for collapse(2) schedule(static)
    for (int m1 = 0; m1 < side; ++m1)
        for (int m2 = 0; m2 < side; ++m2) {
            std::complex<Real>* row = out + (static_cast<std::size_t>(m1) * side + m2) * side;
            for (int m3 = 0; m3 < side; ++m3) {
                const Vec3 x = origin + spacing * Vec3{m1 + center_offset, m2 + center_offset, m3 + center_offset};
                row[m3] = to_real_complex<Real>(incident_field(spec, x));
            }
        }
    return cube;
}

}  // namespace

template <typename Real>
CellField CellResult<Real>::field() const {
    CellField f;
    f.side = side;
    f.cell = cell;
    f.origin = origin;
    f.values.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        f.values[i] = Cplx(static_cast<double>(u[i].real()), static_cast<double>(u[i].imag()));
    return f;
}

template <typename Real>
OriResult<Real> solve_ori(const UniformLattice& lat, const MaterialSpec& spec, const SolveOptions& opts, PadMode pad,
                          KernelCache<Real>* cache) {
    validate(spec);
    OriResult<Real> res;
    res.lat = lat;

    FieldCube<Real> u0 = incident_cube<Real>(lat.b, lat.d, lat.origin, 0.0, spec);
    const Cplx coupling = spec.c_s * spec.h * std::pow(lat.a, 2.0 - lat.kappa);

    if (lat.b >= 2) {
        res.sk = cache ? cache->get(lat.b, lat.d, spec.k, pad)
                       : std::make_shared<const SpectralKernel<Real>>(
                             make_spectral_kernel<Real>(lat.b, lat.d, spec.k, pad));
    }

    const auto c = to_real_complex<Real>(coupling);
    LinearOperator<Real> apply = [&res, c, b = lat.b](const std::vector<std::complex<Real>>& x,
                                                      std::vector<std::complex<Real>>& y) {
        if (!res.sk) {  // single particle: empty interaction sum
            y = x;
            return;
        }
        FieldCube<Real> xin;
        xin.b = b;
        xin.values = x;
        FieldCube<Real> yout;
        apply_system(*res.sk, c, xin, yout);
        y = std::move(yout.values);
    };

    res.report = cocg<Real>(apply, u0.values, opts);
    res.u.b = lat.b;
    res.u.values = res.report.solution;
    return res;
}

template <typename Real>
CellResult<Real> solve_red(const SubcubePartition& part, const MaterialSpec& spec, const SolveOptions& opts) {
    validate(spec);
    CellResult<Real> res;
    res.formulation = Formulation::RED;
    res.side = part.p_side;
    res.cell = part.cell;
    res.origin = part.origin;
    res.coupling = spec.c_s * spec.h * spec.big_n * part.cell * part.cell * part.cell;

    const auto n = static_cast<std::size_t>(part.count());
    std::vector<std::complex<Real>> u0(n);
    for (std::size_t q = 0; q < n; ++q) u0[q] = to_real_complex<Real>(incident_field(spec, part.centers[q]));

    const Cplx coupling = res.coupling;
    const double k = spec.k;
    const std::vector<Vec3>& centers = part.centers;
    LinearOperator<Real> apply = [&centers, coupling, k](const std::vector<std::complex<Real>>& x,
                                                         std::vector<std::complex<Real>>& y) {
        const auto n = static_cast<std::int64_t>(centers.size());
        if (static_cast<std::int64_t>(y.size()) != n) y.assign(static_cast<std::size_t>(n), {});
#pragma omp parallel for schedule(static)
        for (std::int64_t q = 0; q < n; ++q) {
            Cplx s{};
            const Vec3 xq = centers[static_cast<std::size_t>(q)];
            for (std::int64_t p = 0; p < n; ++p) {
                if (p == q) continue;
                s += green(xq, centers[static_cast<std::size_t>(p)], k) * Cplx(x[static_cast<std::size_t>(p)]);
            }
            y[static_cast<std::size_t>(q)] =
                x[static_cast<std::size_t>(q)] + to_real_complex<Real>(coupling * s);
        }
    };

    res.report = gmres<Real>(apply, u0, opts);
    res.u = res.report.solution;
    return res;
}

template <typename Real>
CellResult<Real> solve_ie(int c_side, double domain_side, Vec3 origin, const MaterialSpec& spec,
                          const SolveOptions& opts, PadMode pad, KernelCache<Real>* cache) {
    validate(spec);
    if (c_side < 1) throw std::invalid_argument("collocation side count must be positive");

    CellResult<Real> res;
    res.formulation = Formulation::IE;
    res.side = c_side;
    res.cell = domain_side / c_side;
    res.origin = origin;
    // p(x) w = c_s N h * cell volume
    res.coupling = spec.c_s * spec.big_n * spec.h * res.cell * res.cell * res.cell;

    FieldCube<Real> u0 = incident_cube<Real>(c_side, res.cell, origin, 0.5, spec);

    std::shared_ptr<const SpectralKernel<Real>> sk;
    if (c_side >= 2) {
        sk = cache ? cache->get(c_side, res.cell, spec.k, pad)
                   : std::make_shared<const SpectralKernel<Real>>(
                         make_spectral_kernel<Real>(c_side, res.cell, spec.k, pad));
    }

    const auto c = to_real_complex<Real>(res.coupling);
    LinearOperator<Real> apply = [&sk, c, c_side](const std::vector<std::complex<Real>>& x,
                                                  std::vector<std::complex<Real>>& y) {
        if (!sk) {
            y = x;
            return;
        }
        FieldCube<Real> xin;
        xin.b = c_side;
        xin.values = x;
        FieldCube<Real> yout;
        apply_system(*sk, c, xin, yout);
        y = std::move(yout.values);
    };

    res.report = cocg<Real>(apply, u0.values, opts);
    res.u = res.report.solution;
    return res;
}

template <typename Real>
FieldCube<Real> charges(const FieldCube<Real>& u_e, const UniformLattice& lat, const MaterialSpec& spec) {
    if (u_e.b != lat.b) throw std::invalid_argument("field extent does not match the lattice");
    const Cplx factor = -spec.c_s * std::pow(lat.a, 2.0 - lat.kappa) * spec.h;
    const auto f = to_real_complex<Real>(factor);
    FieldCube<Real> q(lat.b);
    const std::int64_t n = q.size();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) q.values[static_cast<std::size_t>(i)] = f * u_e.values[static_cast<std::size_t>(i)];
    return q;
}

namespace {

// Direct sum over all lattice nodes. Sequential per point so results do not
// depend on the thread count; parallelism lives across points.
template <typename Real>
Cplx field_at_point(const Vec3& x, const FieldCube<Real>& q, const UniformLattice& lat, const MaterialSpec& spec) {
    const double eps = 1e-9 * lat.d;
    Cplx s = incident_field(spec, x);
    const std::complex<Real>* qv = q.values.data();
    std::size_t idx = 0;
    for (int m1 = 0; m1 < lat.b; ++m1)
        for (int m2 = 0; m2 < lat.b; ++m2)
            for (int m3 = 0; m3 < lat.b; ++m3, ++idx) {
                const Vec3 pos = lat.origin + lat.d * Vec3{double(m1), double(m2), double(m3)};
                const double r = norm(x - pos);
                if (r <= eps) continue;  // skip the coincident particle's own charge
                s += green_r(r, spec.k) * Cplx(qv[idx]);
            }
    return s;
}

}  // namespace

template <typename Real>
Cplx evaluate_field(const Vec3& x, const FieldCube<Real>& q, const UniformLattice& lat, const MaterialSpec& spec) {
    if (q.b != lat.b) throw std::invalid_argument("charge cube extent does not match the lattice");
    return field_at_point(x, q, lat, spec);
}

template <typename Real>
std::vector<Cplx> evaluate_field_many(const std::vector<Vec3>& points, const FieldCube<Real>& q,
                                      const UniformLattice& lat, const MaterialSpec& spec) {
    if (q.b != lat.b) throw std::invalid_argument("charge cube extent does not match the lattice");
    std::vector<Cplx> out(points.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(points.size()); ++i)
        out[static_cast<std::size_t>(i)] = field_at_point(points[static_cast<std::size_t>(i)], q, lat, spec);
    return out;
}

std::vector<Cplx> cell_field_values(const std::vector<Vec3>& points, const CellField& u, Cplx coupling,
                                    const MaterialSpec& spec) {
    std::vector<Cplx> out(points.size());
    const double eps = 1e-9 * u.cell;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(points.size()); ++i) {
        const Vec3 x = points[static_cast<std::size_t>(i)];
        Cplx s{};
        std::size_t idx = 0;
        for (int c1 = 0; c1 < u.side; ++c1)
            for (int c2 = 0; c2 < u.side; ++c2)
                for (int c3 = 0; c3 < u.side; ++c3, ++idx) {
                    const Vec3 yc = u.origin + u.cell * Vec3{c1 + 0.5, c2 + 0.5, c3 + 0.5};
                    const double r = norm(x - yc);
                    if (r <= eps) continue;
                    s += green_r(r, spec.k) * u.values[idx];
                }
        out[static_cast<std::size_t>(i)] = incident_field(spec, x) - coupling * s;
    }
    return out;
}

std::vector<Vec3> report_grid_points(const std::vector<double>& ticks, Vec3 origin) {
    std::vector<Vec3> pts;
    pts.reserve(ticks.size() * ticks.size() * ticks.size());
    for (double x : ticks)
        for (double y : ticks)
            for (double z : ticks) pts.push_back(origin + Vec3{x, y, z});
    return pts;
}

template struct OriResult<double>;
template struct OriResult<float>;
template struct CellResult<double>;
template struct CellResult<float>;
template OriResult<double> solve_ori<double>(const UniformLattice&, const MaterialSpec&, const SolveOptions&, PadMode,
                                             KernelCache<double>*);
template OriResult<float> solve_ori<float>(const UniformLattice&, const MaterialSpec&, const SolveOptions&, PadMode,
                                           KernelCache<float>*);
template CellResult<double> solve_red<double>(const SubcubePartition&, const MaterialSpec&, const SolveOptions&);
template CellResult<float> solve_red<float>(const SubcubePartition&, const MaterialSpec&, const SolveOptions&);
template CellResult<double> solve_ie<double>(int, double, Vec3, const MaterialSpec&, const SolveOptions&, PadMode,
                                             KernelCache<double>*);
template CellResult<float> solve_ie<float>(int, double, Vec3, const MaterialSpec&, const SolveOptions&, PadMode,
                                           KernelCache<float>*);
template FieldCube<double> charges<double>(const FieldCube<double>&, const UniformLattice&, const MaterialSpec&);
template FieldCube<float> charges<float>(const FieldCube<float>&, const UniformLattice&, const MaterialSpec&);
template Cplx evaluate_field<double>(const Vec3&, const FieldCube<double>&, const UniformLattice&,
                                     const MaterialSpec&);
template Cplx evaluate_field<float>(const Vec3&, const FieldCube<float>&, const UniformLattice&, const MaterialSpec&);
template std::vector<Cplx> evaluate_field_many<double>(const std::vector<Vec3>&, const FieldCube<double>&,
                                                       const UniformLattice&, const MaterialSpec&);
template std::vector<Cplx> evaluate_field_many<float>(const std::vector<Vec3>&, const FieldCube<float>&,
                                                      const UniformLattice&, const MaterialSpec&);

}  // namespace wavescat
