#include "wavescat/fft3.hpp"

#include <fftw3.h>
#ifdef _OPENMP
#include <omp.h>
#endif

#include <mutex>
#include <stdexcept>

namespace wavescat {

namespace detail {
void* fft_malloc(std::size_t bytes) {
    void* p = fftw_malloc(bytes);
    if (!p && bytes) throw std::bad_alloc();
    return p;
}
void fft_free(void* p) {
    if (p) fftw_free(p);
}
}  // namespace detail

namespace {

// The FFTW planner is not thread-safe; plan creation/destruction serializes here.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

template <typename Real>
struct Api;

template <>
struct Api<double> {
    using complex_t = fftw_complex;
    using plan_t = fftw_plan;
    static plan_t plan(int n, complex_t* buf, int sign) {
        return fftw_plan_dft_3d(n, n, n, buf, buf, sign, FFTW_ESTIMATE);
    }
    static void execute(plan_t p, complex_t* buf) { fftw_execute_dft(p, buf, buf); }
    static void destroy(plan_t p) { fftw_destroy_plan(p); }
    static void init_threads() {
#if defined(WAVESCAT_FFTW_THREADS) && defined(_OPENMP)
        static std::once_flag once;
        std::call_once(once, [] {
            fftw_init_threads();
            fftw_plan_with_nthreads(omp_get_max_threads());
        });
#endif
    }
};

template <>
struct Api<float> {
    using complex_t = fftwf_complex;
    using plan_t = fftwf_plan;
    static plan_t plan(int n, complex_t* buf, int sign) {
        return fftwf_plan_dft_3d(n, n, n, buf, buf, sign, FFTW_ESTIMATE);
    }
    static void execute(plan_t p, complex_t* buf) { fftwf_execute_dft(p, buf, buf); }
    static void destroy(plan_t p) { fftwf_destroy_plan(p); }
    static void init_threads() {
#if defined(WAVESCAT_FFTW_THREADS) && defined(_OPENMP)
        static std::once_flag once;
        std::call_once(once, [] {
            fftwf_init_threads();
            fftwf_plan_with_nthreads(omp_get_max_threads());
        });
#endif
    }
};

}  // namespace

template <typename Real>
struct Fft3<Real>::Impl {
    typename Api<Real>::plan_t fwd{};
    typename Api<Real>::plan_t bwd{};
};

template <typename Real>
Fft3<Real>::Fft3(int side) : side_(side), impl_(new Impl) {
    if (side < 1) throw std::invalid_argument("FFT extent must be positive");
    FftBuffer<Real> probe(size());
    auto* raw = reinterpret_cast<typename Api<Real>::complex_t*>(probe.data());
    std::lock_guard<std::mutex> lock(planner_mutex());
    Api<Real>::init_threads();
    impl_->fwd = Api<Real>::plan(side, raw, FFTW_FORWARD);
    impl_->bwd = Api<Real>::plan(side, raw, FFTW_BACKWARD);
    if (!impl_->fwd || !impl_->bwd) throw std::runtime_error("FFTW plan creation failed");
}

template <typename Real>
Fft3<Real>::~Fft3() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (impl_->fwd) Api<Real>::destroy(impl_->fwd);
    if (impl_->bwd) Api<Real>::destroy(impl_->bwd);
}

template <typename Real>
void Fft3<Real>::forward(std::complex<Real>* buf) const {
    Api<Real>::execute(impl_->fwd, reinterpret_cast<typename Api<Real>::complex_t*>(buf));
}

template <typename Real>
void Fft3<Real>::inverse(std::complex<Real>* buf) const {
    Api<Real>::execute(impl_->bwd, reinterpret_cast<typename Api<Real>::complex_t*>(buf));
}

template class Fft3<double>;
template class Fft3<float>;

}  // namespace wavescat
