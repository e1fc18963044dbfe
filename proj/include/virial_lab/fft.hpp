#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace virial_lab {

/// One-dimensional complex FFT of a fixed length backed by FFTW.
///
/// Plans are created with FFTW_ESTIMATE so that the chosen algorithm, and
/// hence every rounding, is identical from run to run. Instances are not
/// shared between threads; use fft_for() to get the calling thread's copy.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const { return n_; }

  /// Unnormalized forward transform, X_m = sum_j x_j exp(-2 pi i j m / n).
  void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
  /// Inverse transform including the 1/n factor.
  void inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

 private:
  std::size_t n_;
  std::complex<double>* buf_in_;
  std::complex<double>* buf_out_;
  void* plan_fwd_;
  void* plan_bwd_;
};

/// Thread-local cached transform of length n.
Fft& fft_for(std::size_t n);

/// Version string of the FFT backend.
const char* fft_backend_version();

}  // namespace virial_lab
