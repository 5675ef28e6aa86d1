#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "wavescat/fft3.hpp"
#include "wavescat/field_cube.hpp"
#include "wavescat/kernel.hpp"

namespace wavescat {

/// FFT extent selection: the minimal 2b-2 of the padding scheme, or the next
/// 7-smooth size above it. Both produce identical convolutions; the field's
/// zero pad covers the extra slots.
enum class PadMode { Exact, Friendly };

int padded_side_for(int b, PadMode mode);

/// Forward transform of the kernel cube, reusable across matvecs. The plan
/// set is shared so concurrent convolutions only pay for their own scratch.
template <typename Real>
struct SpectralKernel {
    int b = 0;
    int side = 0;
    double spacing = 0.0;
    double k = 0.0;
    std::shared_ptr<const Fft3<Real>> fft;
    std::vector<std::complex<Real>> spectrum;  // side^3
};

template <typename Real>
SpectralKernel<Real> make_spectral_kernel(int b, double spacing, double k, PadMode mode = PadMode::Exact);

/// Interaction sum out_j = sum_{m != j} G(x_j - x_m) u_m for every lattice
/// node, computed as zero-pad -> FFT -> pointwise multiply -> inverse FFT ->
/// crop. Cost O(n log n), n = side^3.
template <typename Real>
void convolve(const SpectralKernel<Real>& sk, const FieldCube<Real>& u, FieldCube<Real>& out);

template <typename Real>
FieldCube<Real> convolve(const SpectralKernel<Real>& sk, const FieldCube<Real>& u);

/// Left-hand side of the particle system: out = u + coupling * (G * u) with
/// the self term excluded. The uniform-medium coupling is c_s h a^(2-kappa)
/// (or c_s N h * cell volume for the collocation grid).
template <typename Real>
void apply_system(const SpectralKernel<Real>& sk, std::complex<Real> coupling, const FieldCube<Real>& u,
                  FieldCube<Real>& out);

/// Spectral kernels keyed by geometry; one per (b, spacing, k, extent).
template <typename Real>
class KernelCache {
  public:
    std::shared_ptr<const SpectralKernel<Real>> get(int b, double spacing, double k, PadMode mode);

  private:
    std::map<std::tuple<int, double, double, int>, std::shared_ptr<const SpectralKernel<Real>>> cache_;
    std::mutex mutex_;
};

extern template SpectralKernel<double> make_spectral_kernel<double>(int, double, double, PadMode);
extern template SpectralKernel<float> make_spectral_kernel<float>(int, double, double, PadMode);
extern template void convolve<double>(const SpectralKernel<double>&, const FieldCube<double>&, FieldCube<double>&);
extern template void convolve<float>(const SpectralKernel<float>&, const FieldCube<float>&, FieldCube<float>&);
extern template FieldCube<double> convolve<double>(const SpectralKernel<double>&, const FieldCube<double>&);
extern template FieldCube<float> convolve<float>(const SpectralKernel<float>&, const FieldCube<float>&);
extern template void apply_system<double>(const SpectralKernel<double>&, std::complex<double>,
                                          const FieldCube<double>&, FieldCube<double>&);
extern template void apply_system<float>(const SpectralKernel<float>&, std::complex<float>, const FieldCube<float>&,
                                         FieldCube<float>&);
extern template class KernelCache<double>;
extern template class KernelCache<float>;

}  // namespace wavescat
