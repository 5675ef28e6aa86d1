#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wavescat/kernel.hpp"
#include "wavescat/lattice.hpp"

using namespace wavescat;

namespace {
constexpr double kPi = std::numbers::pi;

// wrapped mirror index on a circulant axis
int mirror(int t, int side) { return t == 0 ? 0 : side - t; }
}  // namespace

TEST_CASE("free-space kernel values") {
    SUBCASE("static limit") {
        const Cplx g = green({0, 0, 0}, {1, 0, 0}, 0.0);
        CHECK(g.real() == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-14));
        CHECK(g.imag() == 0.0);
    }
    SUBCASE("modulus is 1/(4 pi r) for any wave number") {
        for (double r : {0.1, 0.5, 2.0})
            for (double k : {0.0, 0.3, 2.7}) {
                const Cplx g = green_r(r, k);
                CHECK(std::abs(g) == doctest::Approx(1.0 / (4.0 * kPi * r)).epsilon(1e-14));
            }
    }
    SUBCASE("reference value at k=0.182651, r=0.5") {
        const Cplx g = green_r(0.5, 0.182651);
        // e^{i k r}/(2 pi), evaluated in extended precision
        const long double phase = 0.182651L * 0.5L;
        const long double re = std::cos(phase) / (2.0L * 3.141592653589793238L);
        const long double im = std::sin(phase) / (2.0L * 3.141592653589793238L);
        CHECK(g.real() == doctest::Approx(static_cast<double>(re)).epsilon(1e-14));
        CHECK(g.imag() == doctest::Approx(static_cast<double>(im)).epsilon(1e-14));
        CHECK(g.real() == doctest::Approx(0.158493).epsilon(1e-5));
        CHECK(g.imag() == doctest::Approx(0.014517).epsilon(1e-4));
    }
    SUBCASE("coincident points are rejected") {
        CHECK_THROWS_AS(green({1, 2, 3}, {1, 2, 3}, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(green_r(0.0, 1.0), std::invalid_argument);
    }
}

TEST_CASE("kernel cube layout") {
    const double k = 0.7, d = 0.25;

    SUBCASE("b=4 follows the 1-2-3-4-3-2 mirror pattern along each axis") {
        const auto cube = build_kernel_cube<double>(4, d, k);
        REQUIRE(cube.side == 6);
        auto at = [&](int t1, int t2, int t3) {
            return cube.values[static_cast<std::size_t>(linear_index(6, {t1, t2, t3}))];
        };
        CHECK(at(0, 0, 0) == Cplx{0.0, 0.0});  // dropped self term
        for (int t : {1, 2, 3}) CHECK(at(t, 0, 0) == green_r(d * t, k));
        CHECK(at(4, 0, 0) == at(2, 0, 0));
        CHECK(at(5, 0, 0) == at(1, 0, 0));
        // same along the other axes
        CHECK(at(0, 4, 0) == at(0, 2, 0));
        CHECK(at(0, 0, 5) == at(0, 0, 1));
    }
    SUBCASE("b=2 has nothing to mirror") {
        const auto cube = build_kernel_cube<double>(2, d, k);
        REQUIRE(cube.side == 2);
        CHECK(cube.values[0] == Cplx{0.0, 0.0});
        CHECK(cube.values[1] == green_r(d, k));
    }
    SUBCASE("b=3 wrapped entry equals its positive-offset twin") {
        const auto cube = build_kernel_cube<double>(3, d, k);
        REQUIRE(cube.side == 4);
        auto at = [&](int t1, int t2, int t3) {
            return cube.values[static_cast<std::size_t>(linear_index(4, {t1, t2, t3}))];
        };
        CHECK(at(3, 0, 0) == at(1, 0, 0));
        CHECK(at(3, 0, 0) == green_r(d, k));  // the offset -1 seen through the wrap
    }
    SUBCASE("b below 2 is rejected") {
        CHECK_THROWS_AS(build_kernel_cube<double>(1, d, k), std::invalid_argument);
    }
}

TEST_CASE("kernel cube is even under offset negation, exhaustively for small b") {
    for (int b : {2, 3, 4, 5, 6}) {
        const auto cube = build_kernel_cube<double>(b, 0.31, 1.3);
        const int s = cube.side;
        for (int t1 = 0; t1 < s; ++t1)
            for (int t2 = 0; t2 < s; ++t2)
                for (int t3 = 0; t3 < s; ++t3) {
                    const auto v = cube.values[static_cast<std::size_t>(linear_index(s, {t1, t2, t3}))];
                    const auto w = cube.values[static_cast<std::size_t>(
                        linear_index(s, {mirror(t1, s), mirror(t2, s), mirror(t3, s)}))];
                    CHECK(v == w);
                }
    }
}

TEST_CASE("friendly padded sizes") {
    CHECK(friendly_fft_size(6) == 6);
    CHECK(friendly_fft_size(62) == 63);
    CHECK(friendly_fft_size(254) == 256);
    CHECK(friendly_fft_size(1) == 1);

    SUBCASE("padded cube keeps the reachable slots and zeroes the dead band") {
        const int b = 4;
        const auto exact = build_kernel_cube<double>(b, 0.25, 0.9);
        const auto padded = build_kernel_cube<double>(b, 0.25, 0.9, 8);
        auto at = [&](const KernelCube<double>& c, int t1, int t2, int t3) {
            return c.values[static_cast<std::size_t>(linear_index(c.side, {t1, t2, t3}))];
        };
        for (int t = 0; t <= b - 1; ++t) CHECK(at(padded, t, 0, 0) == at(exact, t, 0, 0));
        for (int t = 1; t <= b - 1; ++t) CHECK(at(padded, 8 - t, 0, 0) == at(exact, t, 0, 0));
        CHECK(at(padded, 4, 0, 0) == Cplx{0.0, 0.0});  // dead band
    }
}
