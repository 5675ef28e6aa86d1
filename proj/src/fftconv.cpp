#include "wavescat/fftconv.hpp"

#include <cstring>
#include <stdexcept>

namespace wavescat {

int padded_side_for(int b, PadMode mode) {
    const int minimal = 2 * b - 2;
    return mode == PadMode::Exact ? minimal : friendly_fft_size(minimal);
}

template <typename Real>
SpectralKernel<Real> make_spectral_kernel(int b, double spacing, double k, PadMode mode) {
    const int side = padded_side_for(b, mode);
    KernelCube<Real> cube = build_kernel_cube<Real>(b, spacing, k, side);

    SpectralKernel<Real> sk;
    sk.b = b;
    sk.side = side;
    sk.spacing = spacing;
    sk.k = k;
    sk.fft = std::make_shared<Fft3<Real>>(side);

    FftBuffer<Real> buf(sk.fft->size());
    std::memcpy(buf.data(), cube.values.data(), cube.values.size() * sizeof(std::complex<Real>));
    sk.fft->forward(buf.data());
    sk.spectrum.assign(buf.data(), buf.data() + sk.fft->size());
    return sk;
}

template <typename Real>
void convolve(const SpectralKernel<Real>& sk, const FieldCube<Real>& u, FieldCube<Real>& out) {
    const int b = u.b;
    if (b != sk.b) {
        throw std::invalid_argument("field extent " + std::to_string(b) + " does not match the kernel's " +
                                    std::to_string(sk.b));
    }
    const int n1 = sk.side;
    const std::size_t n = static_cast<std::size_t>(n1) * n1 * n1;

    FftBuffer<Real> buf(n);
    std::complex<Real>* w = buf.data();

    // zero-pad u into the leading b^3 corner
#pragma omp parallel for schedule(static)
    for (int t1 = 0; t1 < n1; ++t1) {
        std::complex<Real>* plane = w + static_cast<std::size_t>(t1) * n1 * n1;
        std::memset(plane, 0, sizeof(std::complex<Real>) * static_cast<std::size_t>(n1) * n1);
        if (t1 < b) {
            const std::complex<Real>* src = u.values.data() + static_cast<std::size_t>(t1) * b * b;
            for (int t2 = 0; t2 < b; ++t2)
                std::memcpy(plane + static_cast<std::size_t>(t2) * n1, src + static_cast<std::size_t>(t2) * b,
                            sizeof(std::complex<Real>) * static_cast<std::size_t>(b));
        }
    }

    sk.fft->forward(w);

    const Real scale = Real(1) / static_cast<Real>(n);
    const std::complex<Real>* spec = sk.spectrum.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
        w[i] *= spec[i] * scale;

    sk.fft->inverse(w);

    if (out.b != b) out = FieldCube<Real>(b);
#pragma omp parallel for schedule(static)
    for (int t1 = 0; t1 < b; ++t1) {
        std::complex<Real>* dst = out.values.data() + static_cast<std::size_t>(t1) * b * b;
        const std::complex<Real>* plane = w + static_cast<std::size_t>(t1) * n1 * n1;
        for (int t2 = 0; t2 < b; ++t2)
            std::memcpy(dst + static_cast<std::size_t>(t2) * b, plane + static_cast<std::size_t>(t2) * n1,
                        sizeof(std::complex<Real>) * static_cast<std::size_t>(b));
    }
}

template <typename Real>
FieldCube<Real> convolve(const SpectralKernel<Real>& sk, const FieldCube<Real>& u) {
    FieldCube<Real> out(u.b);
    convolve(sk, u, out);
    return out;
}

template <typename Real>
void apply_system(const SpectralKernel<Real>& sk, std::complex<Real> coupling, const FieldCube<Real>& u,
                  FieldCube<Real>& out) {
    convolve(sk, u, out);
    std::complex<Real>* o = out.values.data();
    const std::complex<Real>* ui = u.values.data();
    const std::int64_t n = u.size();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) o[i] = ui[i] + coupling * o[i];
}

template <typename Real>
std::shared_ptr<const SpectralKernel<Real>> KernelCache<Real>::get(int b, double spacing, double k, PadMode mode) {
    const auto key = std::make_tuple(b, spacing, k, padded_side_for(b, mode));
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    auto sk = std::make_shared<SpectralKernel<Real>>(make_spectral_kernel<Real>(b, spacing, k, mode));
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = cache_.emplace(key, std::move(sk));
    return it->second;
}

template SpectralKernel<double> make_spectral_kernel<double>(int, double, double, PadMode);
template SpectralKernel<float> make_spectral_kernel<float>(int, double, double, PadMode);
template void convolve<double>(const SpectralKernel<double>&, const FieldCube<double>&, FieldCube<double>&);
template void convolve<float>(const SpectralKernel<float>&, const FieldCube<float>&, FieldCube<float>&);
template FieldCube<double> convolve<double>(const SpectralKernel<double>&, const FieldCube<double>&);
template FieldCube<float> convolve<float>(const SpectralKernel<float>&, const FieldCube<float>&);
template void apply_system<double>(const SpectralKernel<double>&, std::complex<double>, const FieldCube<double>&,
                                   FieldCube<double>&);
template void apply_system<float>(const SpectralKernel<float>&, std::complex<float>, const FieldCube<float>&,
                                  FieldCube<float>&);
template class KernelCache<double>;
template class KernelCache<float>;

}  // namespace wavescat
