#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wavescat/fftconv.hpp"
#include "wavescat/material.hpp"
#include "wavescat/scattering.hpp"
#include "wavescat/types.hpp"

namespace wavescat {

enum class Precision { Single, Double };

/// Invalid configuration; `field` names the offending key.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error("config field '" + field + "': " + what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

/// One experiment: physics, geometry, formulations, solver settings, output.
/// Defaults reproduce the reference experiment: v=34400 cm/s, f=1000 Hz
/// (k = 2 pi f / v), alpha=(1,0,0), kappa=0.5, unit cube, N=1, n0=1,
/// n_target=-1+0.001i, P=20^3, C=40^3, tol=2e-5, formulations RED and IE.
struct ExperimentConfig {
    double v = 34400.0;
    double f = 1000.0;
    bool v_given = false;  // true when the config text set the key
    bool f_given = false;
    std::optional<double> k_explicit;
    double c_s = 4.0 * 3.14159265358979323846;
    double kappa = 0.5;
    double big_n = 1.0;
    Cplx n0{1.0, 0.0};
    std::optional<Cplx> n_target = Cplx{-1.0, 0.001};
    std::optional<Cplx> h_explicit;
    Vec3 alpha{1.0, 0.0, 0.0};
    double domain_side = 1.0;
    Vec3 origin{0.0, 0.0, 0.0};

    std::optional<std::int64_t> particles;  // M
    std::optional<int> b;
    int p_side = 20;
    int c_side = 40;
    std::vector<Formulation> formulations{Formulation::RED, Formulation::IE};

    double tol = 2e-5;
    int max_iter = 1000;
    int restart = 30;
    Precision precision = Precision::Double;
    PadMode pad = PadMode::Exact;

    std::string outdir = "out";
    std::vector<double> report_ticks{0.0, 0.2, 0.4, 0.6, 0.8};

    double im_h_threshold = 1e-4;
    bool allow_positive_im_h = false;

    std::uint64_t hash = 0;  // FNV-1a of the raw config text
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Wave number: 2 pi f / v, cross-checked against an explicit k when given.
double config_k(const ExperimentConfig& cfg);

/// Resolves h (designed from n_target or taken verbatim) and validates.
MaterialSpec make_material(const ExperimentConfig& cfg);

/// Consistency checks beyond per-key parsing; throws ConfigError.
void validate(const ExperimentConfig& cfg);

/// Complex literals of the form "re", "imi", "re+imi", "re-imi" (e.g. "-1+0.001i").
Cplx parse_complex(const std::string& text);
std::string format_complex(Cplx z);

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace wavescat
