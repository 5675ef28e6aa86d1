#include "wavescat/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>

namespace wavescat {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::MaxIterations: return "max_iterations";
        case SolveStatus::Breakdown: return "breakdown";
        case SolveStatus::NonFinite: return "non_finite";
    }
    return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;
using Cplx = std::complex<double>;

template <typename Real>
using CVec = std::vector<std::complex<Real>>;

// Norms and inner products accumulate in double regardless of Real.
template <typename Real>
double norm2(const CVec<Real>& v) {
    double s = 0.0;
#pragma omp parallel for reduction(+ : s) schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(v.size()); ++i) s += std::norm(Cplx(v[i]));
    return std::sqrt(s);
}

// Unconjugated bilinear form sum_i a_i b_i.
template <typename Real>
Cplx udot(const CVec<Real>& a, const CVec<Real>& b) {
    double re = 0.0, im = 0.0;
#pragma omp parallel for reduction(+ : re, im) schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(a.size()); ++i) {
        const Cplx p = Cplx(a[i]) * Cplx(b[i]);
        re += p.real();
        im += p.imag();
    }
    return {re, im};
}

// Hermitian inner product sum_i conj(a_i) b_i.
template <typename Real>
Cplx hdot(const CVec<Real>& a, const CVec<Real>& b) {
    double re = 0.0, im = 0.0;
#pragma omp parallel for reduction(+ : re, im) schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(a.size()); ++i) {
        const Cplx p = std::conj(Cplx(a[i])) * Cplx(b[i]);
        re += p.real();
        im += p.imag();
    }
    return {re, im};
}

template <typename Real>
double true_rel_residual(const LinearOperator<Real>& apply, const CVec<Real>& rhs, const CVec<Real>& x,
                         double rhs_norm, CVec<Real>& scratch) {
    apply(x, scratch);
    double s = 0.0;
#pragma omp parallel for reduction(+ : s) schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(rhs.size()); ++i)
        s += std::norm(Cplx(rhs[i]) - Cplx(scratch[i]));
    return std::sqrt(s) / rhs_norm;
}

template <typename Real>
void finish(SolveReport<Real>& rep, const LinearOperator<Real>& apply, const CVec<Real>& rhs, double rhs_norm,
            CVec<Real>& scratch, const SolveOptions& opts, Clock::time_point t0) {
    rep.rel_residual = true_rel_residual(apply, rhs, rep.solution, rhs_norm, scratch);
    if (rep.status == SolveStatus::Converged && !(rep.rel_residual <= opts.tol)) {
        rep.status = SolveStatus::MaxIterations;
        rep.message = "recurrence converged but the recomputed residual misses the tolerance";
    }
    rep.converged = rep.status == SolveStatus::Converged;
    rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

template <typename Real>
SolveReport<Real> cocg(const LinearOperator<Real>& apply, const CVec<Real>& rhs, const SolveOptions& opts) {
    const auto t0 = Clock::now();
    const std::size_t n = rhs.size();
    const double breakdown_eps = 1e4 * static_cast<double>(std::numeric_limits<Real>::epsilon());

    SolveReport<Real> rep;
    rep.solution.assign(n, {});
    const double rhs_norm = norm2(rhs);
    if (rhs_norm == 0.0) {
        rep.converged = true;
        rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        return rep;
    }

    CVec<Real> r = rhs;        // residual of the zero initial guess
    CVec<Real> p = rhs;
    CVec<Real> q(n), scratch(n);
    Cplx rho = udot(r, r);
    double r_norm = rhs_norm;

    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        if (std::abs(rho) <= breakdown_eps * r_norm * r_norm) {
            rep.status = SolveStatus::Breakdown;
            rep.message = "unconjugated <r,r> vanished with a nonzero residual";
            rep.iterations = iter - 1;
            finish(rep, apply, rhs, rhs_norm, scratch, opts, t0);
            return rep;
        }
        apply(p, q);
        const Cplx mu = udot(p, q);
        const double p_norm = norm2(p), q_norm = norm2(q);
        if (!std::isfinite(mu.real()) || !std::isfinite(mu.imag()) || !std::isfinite(q_norm)) {
            rep.status = SolveStatus::NonFinite;
            rep.message = "non-finite values in the operator application at iteration " + std::to_string(iter);
            rep.iterations = iter;
            finish(rep, apply, rhs, rhs_norm, scratch, opts, t0);
            return rep;
        }
        if (std::abs(mu) <= breakdown_eps * p_norm * q_norm) {
            rep.status = SolveStatus::Breakdown;
            rep.message = "unconjugated <p,Ap> vanished";
            rep.iterations = iter - 1;
            finish(rep, apply, rhs, rhs_norm, scratch, opts, t0);
            return rep;
        }
        const Cplx alpha = rho / mu;
        const std::complex<Real> a(static_cast<Real>(alpha.real()), static_cast<Real>(alpha.imag()));
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            rep.solution[i] += a * p[i];
            r[i] -= a * q[i];
        }
        rep.iterations = iter;
        r_norm = norm2(r);
        if (!std::isfinite(r_norm)) {
            rep.status = SolveStatus::NonFinite;
            rep.message = "non-finite residual at iteration " + std::to_string(iter);
            finish(rep, apply, rhs, rhs_norm, scratch, opts, t0);
            return rep;
        }
        if (r_norm / rhs_norm <= opts.tol) {
            // The recurrence may drift; trust only a residual recomputed from scratch.
            if (true_rel_residual(apply, rhs, rep.solution, rhs_norm, scratch) <= opts.tol) {
                rep.status = SolveStatus::Converged;
                finish(rep, apply, rhs, rhs_norm, scratch, opts, t0);
                return rep;
            }
        }
        const Cplx rho_next = udot(r, r);
        const Cplx beta = rho_next / rho;
        rho = rho_next;
        const std::complex<Real> bet(static_cast<Real>(beta.real()), static_cast<Real>(beta.imag()));
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) p[i] = r[i] + bet * p[i];
    }

    rep.status = SolveStatus::MaxIterations;
    rep.message = "no convergence within " + std::to_string(opts.max_iter) + " iterations";
    finish(rep, apply, rhs, rhs_norm, scratch, opts, t0);
    return rep;
}

template <typename Real>
SolveReport<Real> gmres(const LinearOperator<Real>& apply, const CVec<Real>& rhs, const SolveOptions& opts) {
    const auto t0 = Clock::now();
    const std::size_t n = rhs.size();
    const int restart = std::max(1, opts.restart);

    SolveReport<Real> rep;
    rep.solution.assign(n, {});
    const double rhs_norm = norm2(rhs);
    if (rhs_norm == 0.0) {
        rep.converged = true;
        rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        return rep;
    }

    CVec<Real> r(n), w(n), scratch(n);
    std::vector<CVec<Real>> basis;  // Arnoldi vectors, up to restart+1
    std::vector<std::vector<Cplx>> hess(static_cast<std::size_t>(restart) + 1,
                                        std::vector<Cplx>(static_cast<std::size_t>(restart), Cplx{}));
    std::vector<Cplx> cs(static_cast<std::size_t>(restart)), g(static_cast<std::size_t>(restart) + 1);
    std::vector<double> sn(static_cast<std::size_t>(restart));

    auto update_solution = [&](int cols) {
        // back-substitute the triangular least-squares system and expand
        std::vector<Cplx> y(static_cast<std::size_t>(cols));
        for (int i = cols - 1; i >= 0; --i) {
            Cplx s = g[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < cols; ++j) s -= hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(j)];
            y[static_cast<std::size_t>(i)] = s / hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
        }
        for (int j = 0; j < cols; ++j) {
            const std::complex<Real> yj(static_cast<Real>(y[static_cast<std::size_t>(j)].real()),
                                        static_cast<Real>(y[static_cast<std::size_t>(j)].imag()));
            const auto& vj = basis[static_cast<std::size_t>(j)];
#pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) rep.solution[i] += yj * vj[i];
        }
    };

    while (true) {
        // outer residual (exact; doubles as the final from-scratch check)
        apply(rep.solution, scratch);
        double beta_sq = 0.0;
#pragma omp parallel for reduction(+ : beta_sq) schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            const Cplx d = Cplx(rhs[i]) - Cplx(scratch[i]);
            r[i] = std::complex<Real>(static_cast<Real>(d.real()), static_cast<Real>(d.imag()));
            beta_sq += std::norm(d);
        }
        const double beta = std::sqrt(beta_sq);
        rep.rel_residual = beta / rhs_norm;
        if (!std::isfinite(beta)) {
            rep.status = SolveStatus::NonFinite;
            rep.message = "non-finite residual";
            break;
        }
        if (rep.rel_residual <= opts.tol) {
            rep.status = SolveStatus::Converged;
            break;
        }
        if (rep.iterations >= opts.max_iter) {
            rep.status = SolveStatus::MaxIterations;
            rep.message = "no convergence within " + std::to_string(opts.max_iter) + " iterations";
            break;
        }

        basis.assign(1, r);
        {
            const Real inv = static_cast<Real>(1.0 / beta);
#pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) basis[0][i] *= inv;
        }
        std::fill(g.begin(), g.end(), Cplx{});
        g[0] = beta;

        int cols = 0;
        bool happy = false;
        for (int j = 0; j < restart && rep.iterations < opts.max_iter; ++j) {
            ++rep.iterations;
            apply(basis[static_cast<std::size_t>(j)], w);
            for (int i = 0; i <= j; ++i) {
                const Cplx hij = hdot(basis[static_cast<std::size_t>(i)], w);
                hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = hij;
                const std::complex<Real> hr(static_cast<Real>(hij.real()), static_cast<Real>(hij.imag()));
                const auto& vi = basis[static_cast<std::size_t>(i)];
#pragma omp parallel for schedule(static)
                for (std::int64_t t = 0; t < static_cast<std::int64_t>(n); ++t) w[t] -= hr * vi[t];
            }
            const double hnext = norm2(w);
            if (!std::isfinite(hnext)) {
                rep.status = SolveStatus::NonFinite;
                rep.message = "non-finite Arnoldi vector at iteration " + std::to_string(rep.iterations);
                finish(rep, apply, rhs, rhs_norm, scratch, opts, t0);
                return rep;
            }
            // apply the accumulated Givens rotations to the new column
            Cplx hj = hess[0][static_cast<std::size_t>(j)];
            for (int i = 0; i < j; ++i) {
                const Cplx tmp = std::conj(cs[static_cast<std::size_t>(i)]) * hj +
                                 sn[static_cast<std::size_t>(i)] * hess[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j)];
                hess[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j)] =
                    -sn[static_cast<std::size_t>(i)] * hj + cs[static_cast<std::size_t>(i)] * hess[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j)];
                hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = tmp;
                hj = hess[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j)];
            }
            const double denom = std::hypot(std::abs(hj), hnext);
            if (denom == 0.0) {
                cs[static_cast<std::size_t>(j)] = 1.0;
                sn[static_cast<std::size_t>(j)] = 0.0;
            } else {
                cs[static_cast<std::size_t>(j)] = hj / denom;
                sn[static_cast<std::size_t>(j)] = hnext / denom;
            }
            hess[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] =
                std::conj(cs[static_cast<std::size_t>(j)]) * hj + sn[static_cast<std::size_t>(j)] * hnext;
            g[static_cast<std::size_t>(j) + 1] = -sn[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(j)];
            g[static_cast<std::size_t>(j)] = std::conj(cs[static_cast<std::size_t>(j)]) * g[static_cast<std::size_t>(j)];
            cols = j + 1;

            if (hnext <= 1e4 * static_cast<double>(std::numeric_limits<Real>::epsilon()) * rhs_norm) {
                happy = true;  // invariant subspace reached
                break;
            }
            basis.push_back(w);
            const Real inv = static_cast<Real>(1.0 / hnext);
#pragma omp parallel for schedule(static)
            for (std::int64_t t = 0; t < static_cast<std::int64_t>(n); ++t) basis.back()[t] *= inv;

            if (std::abs(g[static_cast<std::size_t>(j) + 1]) / rhs_norm <= opts.tol) break;
        }
        update_solution(cols);
        if (happy) {
            apply(rep.solution, scratch);
            double s = 0.0;
#pragma omp parallel for reduction(+ : s) schedule(static)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) s += std::norm(Cplx(rhs[i]) - Cplx(scratch[i]));
            rep.rel_residual = std::sqrt(s) / rhs_norm;
            rep.status = rep.rel_residual <= opts.tol ? SolveStatus::Converged : SolveStatus::Breakdown;
            if (rep.status == SolveStatus::Breakdown) rep.message = "Arnoldi stagnated short of the tolerance";
            break;
        }
    }

    rep.converged = rep.status == SolveStatus::Converged;
    rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return rep;
}

template struct SolveReport<double>;
template struct SolveReport<float>;
template SolveReport<double> cocg<double>(const LinearOperator<double>&, const std::vector<std::complex<double>>&,
                                          const SolveOptions&);
template SolveReport<float> cocg<float>(const LinearOperator<float>&, const std::vector<std::complex<float>>&,
                                        const SolveOptions&);
template SolveReport<double> gmres<double>(const LinearOperator<double>&, const std::vector<std::complex<double>>&,
                                           const SolveOptions&);
template SolveReport<float> gmres<float>(const LinearOperator<float>&, const std::vector<std::complex<float>>&,
                                         const SolveOptions&);

}  // namespace wavescat
