#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace wavescat {

struct SolveOptions {
    double tol = 2e-5;   // relative residual target
    int max_iter = 1000;
    int restart = 30;    // GMRES cycle length
};

enum class SolveStatus { Converged, MaxIterations, Breakdown, NonFinite };

const char* to_string(SolveStatus s);

template <typename Real>
struct SolveReport {
    std::vector<std::complex<Real>> solution;
    int iterations = 0;
    double rel_residual = 0.0;  // ||rhs - A x|| / ||rhs||, recomputed from scratch at exit
    bool converged = false;
    SolveStatus status = SolveStatus::Converged;
    std::string message;
    double seconds = 0.0;
};

template <typename Real>
using LinearOperator =
    std::function<void(const std::vector<std::complex<Real>>&, std::vector<std::complex<Real>>&)>;

/// Conjugate Orthogonal Conjugate Gradient for complex-symmetric operators
/// (A = A^T, not Hermitian), using the unconjugated bilinear form throughout:
/// alpha = <r,r>/<p,Ap>, beta = <r+,r+>/<r,r>. A vanishing unconjugated
/// product with a nonzero residual is reported as a breakdown.
template <typename Real>
SolveReport<Real> cocg(const LinearOperator<Real>& apply, const std::vector<std::complex<Real>>& rhs,
                       const SolveOptions& opts = {});

/// Restarted GMRES (modified Gram-Schmidt Arnoldi, Givens least squares) for
/// general operators.
template <typename Real>
SolveReport<Real> gmres(const LinearOperator<Real>& apply, const std::vector<std::complex<Real>>& rhs,
                        const SolveOptions& opts = {});

extern template struct SolveReport<double>;
extern template struct SolveReport<float>;
extern template SolveReport<double> cocg<double>(const LinearOperator<double>&,
                                                 const std::vector<std::complex<double>>&, const SolveOptions&);
extern template SolveReport<float> cocg<float>(const LinearOperator<float>&, const std::vector<std::complex<float>>&,
                                               const SolveOptions&);
extern template SolveReport<double> gmres<double>(const LinearOperator<double>&,
                                                  const std::vector<std::complex<double>>&, const SolveOptions&);
extern template SolveReport<float> gmres<float>(const LinearOperator<float>&,
                                                const std::vector<std::complex<float>>&, const SolveOptions&);

}  // namespace wavescat
