#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wavescat/reference.hpp"
#include "wavescat/scattering.hpp"

using namespace wavescat;

namespace {

constexpr double kPi = std::numbers::pi;

MaterialSpec reference_spec() {
    MaterialSpec spec;
    spec.k = 2.0 * kPi * 1000.0 / 34400.0;
    spec.c_s = 4.0 * kPi;
    spec.kappa = 0.5;
    spec.big_n = 1.0;
    spec.n0 = {1.0, 0.0};
    spec.alpha = {1.0, 0.0, 0.0};
    spec.h = h_from_target_n({-1.0, 0.001}, spec);
    return spec;
}

std::vector<Vec3> lattice_points(const UniformLattice& lat) {
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(lat.particle_count()));
    for (int m1 = 0; m1 < lat.b; ++m1)
        for (int m2 = 0; m2 < lat.b; ++m2)
            for (int m3 = 0; m3 < lat.b; ++m3) pts.push_back(particle_position(lat, {m1, m2, m3}));
    return pts;
}

double max_abs_diff(const std::vector<Cplx>& a, const std::vector<Cplx>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

std::vector<std::string> quiet_warnings;
struct WarnSilencer {
    WarnHandler old;
    WarnSilencer() : old(set_warn_handler([](const std::string& m) { quiet_warnings.push_back(m); })) {}
    ~WarnSilencer() { set_warn_handler(old); }
};

}  // namespace

TEST_CASE("incident plane wave") {
    MaterialSpec spec = reference_spec();
    CHECK(incident_field(spec, {0, 0, 0}) == Cplx{1.0, 0.0});

    SUBCASE("value along the propagation direction") {
        spec.k = 0.182651;  // displayed-precision wave number of the worked example
        const Cplx u = incident_field(spec, {0.8, 0.0, 0.0});
        CHECK(u.real() == doctest::Approx(0.989342).epsilon(1e-6));
        CHECK(u.imag() == doctest::Approx(0.145591).epsilon(1e-5));
        const long double phase = 0.182651L * 0.8L;
        CHECK(u.real() == doctest::Approx(static_cast<double>(std::cos(phase))).epsilon(1e-14));
        CHECK(u.imag() == doctest::Approx(static_cast<double>(std::sin(phase))).epsilon(1e-14));
    }
    SUBCASE("orthogonal direction sees a constant wave") {
        spec.alpha = {0.0, 1.0, 0.0};
        for (double t : {0.0, 0.3, 0.9}) CHECK(std::abs(incident_field(spec, {t, 0.0, 0.0}) - Cplx{1.0, 0.0}) == 0.0);
    }
}

TEST_CASE("particle system solve") {
    WarnSilencer silence;
    MaterialSpec spec = reference_spec();
    SolveOptions opts;
    opts.tol = 1e-10;
    opts.max_iter = 200;

    SUBCASE("zero impedance keeps the incident field, one iteration") {
        spec.h = {0.0, 0.0};
        const auto lat = build_lattice_from_b(3, spec.kappa);
        const auto res = solve_ori<double>(lat, spec, opts);
        CHECK(res.report.converged);
        CHECK(res.report.iterations == 1);
        for (int m1 = 0; m1 < 3; ++m1)
            for (int m2 = 0; m2 < 3; ++m2)
                for (int m3 = 0; m3 < 3; ++m3)
                    CHECK(std::abs(res.u.at(m1, m2, m3) -
                                   incident_field(spec, particle_position(lat, {m1, m2, m3}))) <= 1e-12);
    }
    SUBCASE("27 particles match the dense solve") {
        const auto lat = build_lattice_from_b(3, spec.kappa);
        const auto res = solve_ori<double>(lat, spec, opts);
        REQUIRE(res.report.converged);

        const auto pts = lattice_points(lat);
        const Cplx coupling = spec.c_s * spec.h * std::pow(lat.a, 2.0 - lat.kappa);
        std::vector<Cplx> u0(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) u0[i] = incident_field(spec, pts[i]);
        const auto direct = ref::lu_solve(ref::dense_system(pts, spec.k, coupling), u0);
        CHECK(max_abs_diff(res.u.values, direct) <= 1e-10);
    }
    SUBCASE("a single particle sees the incident wave exactly") {
        const auto lat = build_lattice_from_b(1, spec.kappa);
        const auto res = solve_ori<double>(lat, spec, opts);
        CHECK(res.report.converged);
        CHECK(res.report.iterations == 1);
        CHECK(std::abs(res.u.values[0] - Cplx{1.0, 0.0}) <= 1e-14);
    }
}

TEST_CASE("reduced system solve") {
    WarnSilencer silence;
    MaterialSpec spec = reference_spec();
    SolveOptions opts;
    opts.tol = 1e-10;
    opts.max_iter = 200;

    SUBCASE("zero density decouples the cells") {
        spec.big_n = 0.0;
        const auto part = make_partition(1.0, {}, 2);
        const auto res = solve_red<double>(part, spec, opts);
        CHECK(res.report.converged);
        for (std::size_t q = 0; q < part.centers.size(); ++q)
            CHECK(std::abs(res.u[q] - incident_field(spec, part.centers[q])) <= 1e-12);
    }
    SUBCASE("P = 8 matches the dense solve") {
        const auto part = make_partition(1.0, {}, 2);
        const auto res = solve_red<double>(part, spec, opts);
        REQUIRE(res.report.converged);
        std::vector<Cplx> u0(part.centers.size());
        for (std::size_t i = 0; i < u0.size(); ++i) u0[i] = incident_field(spec, part.centers[i]);
        const auto direct = ref::lu_solve(ref::dense_system(part.centers, spec.k, res.coupling), u0);
        CHECK(max_abs_diff(res.u, direct) <= 1e-8);
    }
}

TEST_CASE("collocation solve") {
    WarnSilencer silence;
    MaterialSpec spec = reference_spec();
    SolveOptions opts;
    opts.tol = 1e-10;
    opts.max_iter = 200;

    SUBCASE("zero coupling keeps the incident field") {
        spec.h = {0.0, 0.0};
        const auto res = solve_ie<double>(3, 1.0, {}, spec, opts);
        CHECK(res.report.converged);
        const CellField f = res.field();
        for (int c1 = 0; c1 < 3; ++c1)
            for (int c2 = 0; c2 < 3; ++c2)
                for (int c3 = 0; c3 < 3; ++c3)
                    CHECK(std::abs(f.values[static_cast<std::size_t>(linear_index(3, {c1, c2, c3}))] -
                                   incident_field(spec, f.center({c1, c2, c3}))) <= 1e-12);
    }
    SUBCASE("C = 27 matches the dense solve") {
        const auto res = solve_ie<double>(3, 1.0, {}, spec, opts);
        REQUIRE(res.report.converged);
        const CellField f = res.field();
        std::vector<Vec3> centers;
        for (int c1 = 0; c1 < 3; ++c1)
            for (int c2 = 0; c2 < 3; ++c2)
                for (int c3 = 0; c3 < 3; ++c3) centers.push_back(f.center({c1, c2, c3}));
        std::vector<Cplx> u0(centers.size());
        for (std::size_t i = 0; i < u0.size(); ++i) u0[i] = incident_field(spec, centers[i]);
        const auto direct = ref::lu_solve(ref::dense_system(centers, spec.k, res.coupling), u0);
        CHECK(max_abs_diff(f.values, direct) <= 1e-8);
    }
    SUBCASE("the FFT path agrees with the dense reduced path on the same grid") {
        // collocation cells of side 1/4 are exactly a 4^3 partition
        const auto ie = solve_ie<double>(4, 1.0, {}, spec, opts);
        const auto red = solve_red<double>(make_partition(1.0, {}, 4), spec, opts);
        REQUIRE(ie.report.converged);
        REQUIRE(red.report.converged);
        CHECK(max_abs_diff(ie.u, red.u) <= 1e-9);
    }
}

TEST_CASE("charges follow the asymptotic monopole formula") {
    WarnSilencer silence;
    MaterialSpec spec = reference_spec();
    const auto lat = build_lattice_from_b(3, spec.kappa);

    SUBCASE("zero impedance gives zero charges") {
        spec.h = {0.0, 0.0};
        FieldCube<double> u(3);
        for (auto& v : u.values) v = {1.0, 0.0};
        const auto q = charges(u, lat, spec);
        for (const auto& v : q.values) CHECK(v == Cplx{});
    }
    SUBCASE("unit field, spherical particles") {
        MaterialSpec s = spec;
        s.h = {0.0, 1.0};
        s.allow_positive_im_h = true;
        UniformLattice l = lat;
        l.a = std::pow(1e-9, 1.0 / 1.5);  // a^(2-kappa) = 1e-9
        FieldCube<double> u(3);
        for (auto& v : u.values) v = {1.0, 0.0};
        const auto q = charges(u, l, s);
        for (const auto& v : q.values) {
            CHECK(v.real() == doctest::Approx(0.0).epsilon(1e-15));
            CHECK(v.imag() == doctest::Approx(-4.0 * kPi * 1e-9).epsilon(1e-10));
        }
    }
    SUBCASE("charge magnitudes respect the a priori bound") {
        SolveOptions opts;
        opts.tol = 1e-8;
        const auto res = solve_ori<double>(lat, spec, opts);
        REQUIRE(res.report.converged);
        const auto q = charges(res.u, lat, spec);
        double umax = 0.0;
        for (const auto& v : res.u.values) umax = std::max(umax, std::abs(v));
        const double bound = spec.c_s * std::pow(lat.a, 2.0 - lat.kappa) * std::abs(spec.h) * umax;
        for (const auto& v : q.values) CHECK(std::abs(v) <= bound * (1.0 + 1e-12));
    }
}

TEST_CASE("field evaluation through the monopole representation") {
    WarnSilencer silence;
    MaterialSpec spec = reference_spec();
    const auto lat = build_lattice_from_b(3, spec.kappa);

    SUBCASE("zero charges leave the incident wave") {
        FieldCube<double> q(3);
        for (const Vec3 x : {Vec3{0.1, 0.2, 0.3}, Vec3{2.0, -1.0, 0.5}})
            CHECK(std::abs(evaluate_field(x, q, lat, spec) - incident_field(spec, x)) == 0.0);
    }
    SUBCASE("one particle with a known charge") {
        FieldCube<double> q(3);
        const Cplx qv{2.0e-9, -3.0e-9};
        q.at(1, 1, 1) = qv;
        const Vec3 x{10.0, 0.0, 0.0};
        const Vec3 pos = particle_position(lat, {1, 1, 1});
        const Cplx want = incident_field(spec, x) + green(x, pos, spec.k) * qv;
        CHECK(std::abs(evaluate_field(x, q, lat, spec) - want) <= 1e-15);
    }
    SUBCASE("a report point on a particle skips that particle's own term") {
        FieldCube<double> q(3);
        q.at(0, 0, 0) = Cplx{1.0, 0.0};  // only the coincident particle carries charge
        const Vec3 x = particle_position(lat, {0, 0, 0});
        CHECK(std::abs(evaluate_field(x, q, lat, spec) - incident_field(spec, x)) == 0.0);
    }
    SUBCASE("matches the serial reference on many points") {
        SolveOptions opts;
        opts.tol = 1e-8;
        const auto res = solve_ori<double>(lat, spec, opts);
        const auto q = charges(res.u, lat, spec);
        const auto pts = report_grid_points({0.0, 0.2, 0.4, 0.6, 0.8});
        const auto got = evaluate_field_many(pts, q, lat, spec);
        const auto lpts = lattice_points(lat);
        const std::vector<Cplx> qv(q.values.begin(), q.values.end());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Cplx want = ref::field_direct(pts[i], lpts, qv, spec.k, incident_field(spec, pts[i]));
            CHECK(std::abs(got[i] - want) <= 1e-13);
        }
    }
}

TEST_CASE("representation values of a cell solution") {
    WarnSilencer silence;
    MaterialSpec spec = reference_spec();
    SolveOptions opts;
    opts.tol = 1e-10;
    const auto res = solve_ie<double>(3, 1.0, {}, spec, opts);
    const CellField f = res.field();

    // u(x) = u0(x) - coupling * sum_c G(x, x_c) u_c against a hand loop
    const Vec3 x{0.4, 0.0, 0.9};
    Cplx s{};
    for (int c1 = 0; c1 < 3; ++c1)
        for (int c2 = 0; c2 < 3; ++c2)
            for (int c3 = 0; c3 < 3; ++c3)
                s += green(x, f.center({c1, c2, c3}), spec.k) *
                     f.values[static_cast<std::size_t>(linear_index(3, {c1, c2, c3}))];
    const Cplx want = incident_field(spec, x) - res.coupling * s;
    const auto got = cell_field_values({x}, f, res.coupling, spec);
    CHECK(std::abs(got[0] - want) <= 1e-14);
}
