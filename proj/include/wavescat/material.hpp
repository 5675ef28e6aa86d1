#pragma once

#include "wavescat/types.hpp"

namespace wavescat {

/// Physical data of one experiment: wave number, particle shape constant,
/// impedance function value (constant over the domain), particle density
/// constant N, original refraction coefficient and incident direction.
struct MaterialSpec {
    double k = 1.0;       // wave number [1/cm]
    double c_s = 4.0 * 3.14159265358979323846;  // |S| = c_s a^2; 4*pi for spheres
    double kappa = 0.5;
    double big_n = 1.0;   // density constant N in the distribution law
    Cplx h{0.0, 0.0};     // boundary impedance function value
    Cplx n0{1.0, 0.0};    // original refraction coefficient
    Vec3 alpha{1.0, 0.0, 0.0};

    // Im h > 0 voids the uniqueness theory; values up to the threshold are
    // accepted with a warning (small perturbations keep the operator
    // boundedly invertible), larger ones need the explicit override.
    double im_h_threshold = 1e-4;
    bool allow_positive_im_h = false;
};

/// Single-valued square root with the cut along [0,+inf):
/// |z|^(1/2) e^(i phi/2) with phi = arg z taken in [0, 2*pi).
Cplx branch_sqrt(Cplx z);

/// Impedance value that turns n0 into n_target: h = k^2 (n0^2 - n^2)/(c_s N).
Cplx h_from_target_n(Cplx n_target, const MaterialSpec& spec);

/// Refraction coefficient produced by spec.h:
/// n = branch_sqrt(n0^2 - k^-2 c_s h N).
Cplx n_from_h(const MaterialSpec& spec);

/// Checks |alpha| = 1, Im(n0^2) >= 0, k > 0, c_s > 0, N >= 0 and the Im h
/// sign policy. Throws std::invalid_argument on violation.
void validate(const MaterialSpec& spec);

}  // namespace wavescat
