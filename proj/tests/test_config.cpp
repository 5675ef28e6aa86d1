#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wavescat/config.hpp"

using namespace wavescat;

TEST_CASE("complex literals") {
    CHECK(parse_complex("-1+0.001i") == Cplx{-1.0, 0.001});
    CHECK(parse_complex("2.5") == Cplx{2.5, 0.0});
    CHECK(parse_complex("1e-3i") == Cplx{0.0, 1e-3});
    CHECK(parse_complex("-0.5-2i") == Cplx{-0.5, -2.0});
    CHECK(parse_complex("1.5e-2+3.25e-4i") == Cplx{1.5e-2, 3.25e-4});
    CHECK(parse_complex("i") == Cplx{0.0, 1.0});
    CHECK(parse_complex("-i") == Cplx{0.0, -1.0});
    CHECK(parse_complex(" 1 ") == Cplx{1.0, 0.0});
    CHECK_THROWS(parse_complex(""));
    CHECK_THROWS(parse_complex("abc"));
    CHECK_THROWS(parse_complex("1+2"));

    SUBCASE("formatting round trips") {
        for (const Cplx z : {Cplx{-1.0, 0.001}, Cplx{2.65481e-9, 5.30961e-6}, Cplx{0.0, -1.0}})
            CHECK(std::abs(parse_complex(format_complex(z)) - z) <= 1e-12 * std::max(1.0, std::abs(z)));
    }
}

TEST_CASE("defaults reproduce the reference experiment") {
    const auto cfg = parse_config_text("");
    CHECK(cfg.v == 34400.0);
    CHECK(cfg.f == 1000.0);
    CHECK(config_k(cfg) == doctest::Approx(0.182651).epsilon(2e-6));
    CHECK(config_k(cfg) == doctest::Approx(2.0 * std::numbers::pi * 1000.0 / 34400.0).epsilon(1e-15));
    CHECK(cfg.kappa == 0.5);
    CHECK(cfg.big_n == 1.0);
    CHECK(cfg.c_s == doctest::Approx(4.0 * std::numbers::pi));
    CHECK(cfg.alpha.x == 1.0);
    CHECK(cfg.n0 == Cplx{1.0, 0.0});
    REQUIRE(cfg.n_target.has_value());
    CHECK(*cfg.n_target == Cplx{-1.0, 0.001});
    CHECK(cfg.p_side == 20);
    CHECK(cfg.c_side == 40);
    CHECK(cfg.tol == 2e-5);
    CHECK(cfg.precision == Precision::Double);
    REQUIRE(cfg.formulations.size() == 2);
    CHECK(cfg.formulations[0] == Formulation::RED);
    CHECK(cfg.formulations[1] == Formulation::IE);
    CHECK(cfg.report_ticks == std::vector<double>{0.0, 0.2, 0.4, 0.6, 0.8});

    SUBCASE("the designed impedance matches the published recipe value") {
        const MaterialSpec spec = make_material(cfg);
        CHECK(spec.h.real() == doctest::Approx(2.65481e-9).epsilon(1e-5));
        CHECK(spec.h.imag() == doctest::Approx(5.30961e-6).epsilon(1e-5));
    }
}

TEST_CASE("parsing a full config") {
    const std::string text = R"(
# reference run at desk scale
b = 27
formulations = ORI, RED, IE
p_side = 3
c_side = 9
tol = 1e-6
precision = single
pad = friendly
outdir = /tmp/ws_out
report_grid = 0, 0.5
n_target = -1+0.001i
alpha = 0, 1, 0
max_iter = 333
allow_positive_im_h = true
)";
    const auto cfg = parse_config_text(text);
    CHECK(cfg.b == 27);
    CHECK(cfg.formulations.size() == 3);
    CHECK(cfg.p_side == 3);
    CHECK(cfg.c_side == 9);
    CHECK(cfg.tol == 1e-6);
    CHECK(cfg.precision == Precision::Single);
    CHECK(cfg.pad == PadMode::Friendly);
    CHECK(cfg.outdir == "/tmp/ws_out");
    CHECK(cfg.report_ticks == std::vector<double>{0.0, 0.5});
    CHECK(cfg.alpha.y == 1.0);
    CHECK(cfg.max_iter == 333);
    CHECK(cfg.allow_positive_im_h);
    CHECK(cfg.hash == fnv1a(text));
}

TEST_CASE("invalid configs name the offending field") {
    auto field_of = [](const std::string& text) {
        try {
            (void)parse_config_text(text);
        } catch (const ConfigError& e) {
            return e.field();
        }
        return std::string{};
    };
    CHECK(field_of("tol = -1") == "tol");
    CHECK(field_of("formulations = ") == "formulations");
    CHECK(field_of("formulations = FOO") == "formulations");
    CHECK(field_of("kappa = 1.0") == "kappa");
    CHECK(field_of("nonsense = 1") == "nonsense");
    CHECK(field_of("precision = half") == "precision");
    CHECK(field_of("formulations = ORI") == "m");      // ORI without M or b
    CHECK(field_of("b = 3\nm = 28\nformulations=ORI") == "b");
    CHECK(field_of("report_grid = 0, 2") == "report_grid");  // outside the unit domain
    CHECK(field_of("n_target = 2+0i\nh = 1e-6i") == "h");
}

TEST_CASE("wave number cross-check") {
    SUBCASE("explicit k alone wins") {
        const auto cfg = parse_config_text("k = 1.5");
        CHECK(config_k(cfg) == 1.5);
    }
    SUBCASE("the published rounded value passes the tolerance") {
        const auto cfg = parse_config_text("v = 34400\nf = 1000\nk = 0.182651");
        CHECK(config_k(cfg) == doctest::Approx(2.0 * std::numbers::pi / 34.4).epsilon(1e-12));
    }
    SUBCASE("a transcription error is caught") {
        CHECK_THROWS_AS((void)parse_config_text("v = 34400\nf = 1000\nk = 0.182851"), ConfigError);
    }
}

TEST_CASE("config hash is order- and content-sensitive") {
    const auto a = fnv1a("b = 3\n");
    const auto b = fnv1a("b = 4\n");
    CHECK(a != b);
    CHECK(fnv1a("") != 0);
}
