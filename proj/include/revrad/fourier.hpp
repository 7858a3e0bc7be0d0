#ifndef REVRAD_FOURIER_HPP
#define REVRAD_FOURIER_HPP

#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "revrad/core.hpp"

namespace revrad {

// Frequency convention: angular frequency, unitary in one direction.
// Forward is the plain DFT sum_k f_k exp(-i xi z_k) sampled at
// xi = 2*pi*k/(n*step) (wrap-around bin order); inverse carries the 1/n.
// The 1/(2*pi) of the continuum inversion formulas is absorbed here and
// nowhere else.

inline double fft_xi(int k, int n, double step) {
  int kk = (k <= n / 2) ? k : k - n;
  return 2.0 * kPi * kk / (n * step);
}

inline void fft_1d(std::vector<Complex>& data, bool inverse) {
  thread_local Eigen::FFT<double> engine;
  std::vector<Complex> out(data.size());
  if (inverse)
    engine.inv(out, data);
  else
    engine.fwd(out, data);
  data.swap(out);
}

// DFT of a volume along axis 3: one complex (x1, x2) slice per frequency bin.
inline std::vector<ComplexGrid2> axial_fft(const Volume& vol) {
  const int n = vol.n;
  std::vector<ComplexGrid2> slices(n, ComplexGrid2::Zero(n, n));
  std::vector<Complex> line(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) line[k] = Complex(vol.at(i, j, k), 0.0);
      fft_1d(line, false);
      for (int k = 0; k < n; ++k) slices[k](i, j) = line[k];
    }
  return slices;
}

// Inverse transform back to a volume; returns the real part and reports the
// discarded imaginary norm relative to the output norm.
inline Volume axial_ifft(const std::vector<ComplexGrid2>& slices, double extent,
                         double* imag_residual = nullptr) {
  const int n = static_cast<int>(slices.size());
  Volume vol(n, extent);
  std::vector<Complex> line(n);
  double in2 = 0, rn2 = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) line[k] = slices[k](i, j);
      fft_1d(line, true);
      for (int k = 0; k < n; ++k) {
        vol.at(i, j, k) = line[k].real();
        rn2 += line[k].real() * line[k].real();
        in2 += line[k].imag() * line[k].imag();
      }
    }
  if (imag_residual)
    *imag_residual = (rn2 > 0) ? std::sqrt(in2 / rn2) : std::sqrt(in2);
  return vol;
}

}  // namespace revrad

#endif
