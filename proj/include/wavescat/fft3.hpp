#pragma once

#include <complex>
#include <cstddef>
#include <memory>

namespace wavescat {

namespace detail {
void* fft_malloc(std::size_t bytes);
void fft_free(void* p);
}  // namespace detail

/// FFTW-allocated (and therefore SIMD-aligned) complex buffer.
template <typename Real>
class FftBuffer {
  public:
    FftBuffer() = default;
    explicit FftBuffer(std::size_t count)
        : data_(static_cast<std::complex<Real>*>(detail::fft_malloc(count * sizeof(std::complex<Real>)))),
          size_(count) {}
    ~FftBuffer() { detail::fft_free(data_); }
    FftBuffer(FftBuffer&& other) noexcept : data_(other.data_), size_(other.size_) {
        other.data_ = nullptr;
        other.size_ = 0;
    }
    FftBuffer& operator=(FftBuffer&& other) noexcept {
        if (this != &other) {
            detail::fft_free(data_);
            data_ = other.data_;
            size_ = other.size_;
            other.data_ = nullptr;
            other.size_ = 0;
        }
        return *this;
    }
    FftBuffer(const FftBuffer&) = delete;
    FftBuffer& operator=(const FftBuffer&) = delete;

    std::complex<Real>* data() { return data_; }
    const std::complex<Real>* data() const { return data_; }
    std::size_t size() const { return size_; }

  private:
    std::complex<Real>* data_ = nullptr;
    std::size_t size_ = 0;
};

/// In-place 3D complex transforms of one cubic extent. Plans are built once
/// (deterministic FFTW_ESTIMATE mode) and executed on caller buffers, which
/// must come from FftBuffer so the planned alignment holds. The inverse is
/// unnormalized; convolution code folds the 1/n factor into its pointwise
/// multiply. A plan is immutable after construction and safe to share across
/// threads.
template <typename Real>
class Fft3 {
  public:
    explicit Fft3(int side);
    ~Fft3();
    Fft3(const Fft3&) = delete;
    Fft3& operator=(const Fft3&) = delete;

    void forward(std::complex<Real>* buf) const;
    void inverse(std::complex<Real>* buf) const;

    int side() const { return side_; }
    std::size_t size() const { return static_cast<std::size_t>(side_) * side_ * side_; }

  private:
    struct Impl;
    int side_ = 0;
    std::unique_ptr<Impl> impl_;
};

extern template class Fft3<double>;
extern template class Fft3<float>;

}  // namespace wavescat
