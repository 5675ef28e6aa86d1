#include "wavescat/material.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace wavescat {

Cplx branch_sqrt(Cplx z) {
    double phi = std::arg(z);  // (-pi, pi]
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    return std::polar(std::sqrt(std::abs(z)), 0.5 * phi);
}

Cplx h_from_target_n(Cplx n_target, const MaterialSpec& spec) {
    if (!(spec.big_n > 0.0)) {
        throw std::invalid_argument("particle density N must be positive to design a material (no particles cannot "
                                    "change the medium)");
    }
    if (!(spec.c_s > 0.0) || !(spec.k > 0.0)) {
        throw std::invalid_argument("material design needs c_s > 0 and k > 0");
    }
    const Cplx p = spec.k * spec.k * (spec.n0 * spec.n0 - n_target * n_target);
    return p / (spec.c_s * spec.big_n);
}

Cplx n_from_h(const MaterialSpec& spec) {
    const Cplx n2 = spec.n0 * spec.n0 - spec.c_s * spec.big_n * spec.h / (spec.k * spec.k);
    return branch_sqrt(n2);
}

void validate(const MaterialSpec& spec) {
    if (!(spec.k > 0.0)) throw std::invalid_argument("wave number k must be positive");
    if (!(spec.c_s > 0.0)) throw std::invalid_argument("shape constant c_s must be positive");
    if (!(spec.kappa >= 0.0 && spec.kappa < 1.0)) throw std::invalid_argument("kappa must lie in [0,1)");
    if (!(spec.big_n >= 0.0)) throw std::invalid_argument("particle density N must be nonnegative");
    if (std::abs(norm(spec.alpha) - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "incident direction alpha must be a unit vector, |alpha| = " << norm(spec.alpha);
        throw std::invalid_argument(os.str());
    }
    const Cplx n0sq = spec.n0 * spec.n0;
    if (n0sq.imag() < -1e-15) throw std::invalid_argument("Im(n0^2) must be nonnegative");

    const double im_h = spec.h.imag();
    if (im_h > 0.0) {
        if (im_h <= spec.im_h_threshold || spec.allow_positive_im_h) {
            std::ostringstream os;
            os << "Im h = " << im_h << " > 0 voids the uniqueness assumption; accepted as a small perturbation";
            warn(os.str());
        } else {
            std::ostringstream os;
            os << "Im h = " << im_h << " > 0 exceeds the threshold " << spec.im_h_threshold
               << "; set allow_positive_im_h to override";
            throw std::invalid_argument(os.str());
        }
    }
}

}  // namespace wavescat
