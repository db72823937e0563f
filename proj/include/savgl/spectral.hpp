#pragma once

#include <complex>
#include <vector>

namespace savgl {

/// Uniform N x N periodic collocation grid on [0, L)^2, N even.
/// Retained integer wavenumbers are -N/2+1 <= k, l <= N/2, stored in FFT
/// layout (0, 1, ..., N/2, -N/2+1, ..., -1).
class SpectralGrid {
 public:
  SpectralGrid(int n, double length);

  int n() const { return n_; }
  double length() const { return length_; }
  int size() const { return n_ * n_; }

  /// Quadrature weight (L/N)^2 of one collocation point.
  double cell_area() const;

  /// Integer wavenumber of FFT-layout index idx in [0, n).
  int wavenumber(int idx) const { return idx <= n_ / 2 ? idx : idx - n_; }

  /// FFT-layout index of integer wavenumber k in [-n/2+1, n/2].
  int index_of(int k) const { return k >= 0 ? k : k + n_; }

  /// Collocation coordinate x_i = i*L/N.
  double coord(int i) const { return length_ * i / n_; }

  friend bool operator==(const SpectralGrid& a, const SpectralGrid& b) {
    return a.n_ == b.n_ && a.length_ == b.length_;
  }

 private:
  int n_;
  double length_;
};

/// Real collocation values u_{i,j}; values[i*n + j] holds u(x_i, y_j).
struct Field {
  SpectralGrid grid;
  std::vector<double> values;

  explicit Field(const SpectralGrid& g, double fill = 0.0)
      : grid(g), values(static_cast<size_t>(g.size()), fill) {}

  double& at(int i, int j) { return values[static_cast<size_t>(i) * grid.n() + j]; }
  double at(int i, int j) const {
    return values[static_cast<size_t>(i) * grid.n() + j];
  }
};

/// Discrete Fourier coefficients in FFT layout; coeffs[a*n + b] is the mode
/// with integer wavenumbers (wavenumber(a), wavenumber(b)).
/// Convention: unnormalized forward transform, 1/N^2 on the inverse.
struct SpectralField {
  SpectralGrid grid;
  std::vector<std::complex<double>> coeffs;

  explicit SpectralField(const SpectralGrid& g)
      : grid(g), coeffs(static_cast<size_t>(g.size())) {}

  std::complex<double>& at(int a, int b) {
    return coeffs[static_cast<size_t>(a) * grid.n() + b];
  }
  std::complex<double> at(int a, int b) const {
    return coeffs[static_cast<size_t>(a) * grid.n() + b];
  }
};

/// Diagonal per-mode real multiplier s_{k,l}.
class OperatorSymbol {
 public:
  static OperatorSymbol identity(const SpectralGrid& g);
  static OperatorSymbol negation(const SpectralGrid& g);
  /// -(2*pi/L)^2 (k^2 + l^2)
  static OperatorSymbol laplacian(const SpectralGrid& g);
  /// +(2*pi/L)^4 (k^2 + l^2)^2
  static OperatorSymbol biharmonic(const SpectralGrid& g);
  /// -(2*pi/L)^6 (k^2 + l^2)^3
  static OperatorSymbol triharmonic(const SpectralGrid& g);

  OperatorSymbol scaled(double factor) const;
  /// Per-mode product (operator composition).
  OperatorSymbol multiply(const OperatorSymbol& other) const;

  const SpectralGrid& grid() const { return grid_; }
  double at(int a, int b) const {
    return mult_[static_cast<size_t>(a) * grid_.n() + b];
  }
  const std::vector<double>& values() const { return mult_; }

 private:
  explicit OperatorSymbol(const SpectralGrid& g)
      : grid_(g), mult_(static_cast<size_t>(g.size()), 0.0) {}

  SpectralGrid grid_;
  std::vector<double> mult_;
};

/// Unnormalized forward DFT: u_hat_{k,l} = sum_{i,j} u_{i,j} e^{-2pi i(ki+lj)/N}.
SpectralField forward(const Field& f);

/// Inverse DFT with the 1/N^2 factor. Checks conjugate symmetry with
/// relative tolerance 1e-10 and throws NotConjugateSymmetric beyond it;
/// the remaining imaginary residue is discarded.
Field inverse(const SpectralField& s);

/// Inverse DFT keeping the real part, no symmetry check. Used where the
/// spectrum may carry a small Nyquist asymmetry by construction.
Field inverse_real(const SpectralField& s);

/// Max relative deviation from conjugate symmetry, scaled by max |coeff|.
double conjugate_asymmetry(const SpectralField& s);

/// Per-mode product s_{k,l} * u_hat_{k,l}. Throws GridMismatch.
SpectralField apply_symbol(const OperatorSymbol& op, const SpectralField& s);

/// De-aliased spectrum of u^3 by zero padding to K = 2N: pad, inverse
/// transform on the K-grid, cube pointwise, transform back, scale by
/// (K/N)^4 and truncate to the retained modes.
SpectralField cubic_dealiased(const Field& f);

/// Spectrum of the pointwise cube with no padding (aliasing included).
SpectralField cubic_aliased(const Field& f);

/// Direct evaluation of the alias-free triple convolution
///   (1/N^4) * sum u_hat_{m,n} u_hat_{p,q} u_hat_{k-m-p,l-n-q}
/// restricted to triples whose third index stays in the retained set.
/// Test oracle, O(N^6); throws GridTooLarge for n > 16.
SpectralField brute_force_truncated_convolution(const SpectralField& s);

/// Collocation inner product (L/N)^2 sum f_{i,j} g_{i,j}.
double inner_product(const Field& f, const Field& g);

/// L2 norm induced by inner_product.
double l2_norm(const Field& f);

/// Quadratic form (f, Op f) evaluated spectrally by Parseval:
///   (L/N)^2 / N^2 * sum s_{k,l} |f_hat_{k,l}|^2.
double symbol_quadratic_form(const OperatorSymbol& op, const SpectralField& f);

/// Cross form (f, Op g) for real fields represented spectrally.
double symbol_cross_form(const OperatorSymbol& op, const SpectralField& f,
                         const SpectralField& g);

/// Parseval-side squared L2 norm (L/N)^2 / N^2 * sum |f_hat|^2.
double spectral_norm_sq(const SpectralField& f);

}  // namespace savgl
