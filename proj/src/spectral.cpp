#include "savgl/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "savgl/errors.hpp"

namespace savgl {

namespace {

/// FFTW plans keyed by (n, sign). Planning is not thread-safe, so creation
/// is serialized; executing a cached plan on new arrays is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  void execute(int n, int sign, const std::complex<double>* in,
               std::complex<double>* out) {
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto key = std::make_pair(n, sign);
      auto it = plans_.find(key);
      if (it == plans_.end()) {
        std::vector<std::complex<double>> scratch_in(
            static_cast<size_t>(n) * n);
        std::vector<std::complex<double>> scratch_out(
            static_cast<size_t>(n) * n);
        plan = fftw_plan_dft_2d(
            n, n, reinterpret_cast<fftw_complex*>(scratch_in.data()),
            reinterpret_cast<fftw_complex*>(scratch_out.data()), sign,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
      } else {
        plan = it->second;
      }
    }
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(
                         const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
  }

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) {
      fftw_destroy_plan(plan);
    }
  }

  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

void dft2d(int n, int sign, const std::complex<double>* in,
           std::complex<double>* out) {
  PlanCache::instance().execute(n, sign, in, out);
}

}  // namespace

SpectralGrid::SpectralGrid(int n, double length) : n_(n), length_(length) {
  if (n <= 0 || n % 2 != 0) {
    throw BadGrid("grid size must be a positive even integer");
  }
  if (!(length > 0.0)) {
    throw BadGrid("domain length must be positive");
  }
}

double SpectralGrid::cell_area() const {
  const double h = length_ / n_;
  return h * h;
}

OperatorSymbol OperatorSymbol::identity(const SpectralGrid& g) {
  OperatorSymbol s(g);
  std::fill(s.mult_.begin(), s.mult_.end(), 1.0);
  return s;
}

OperatorSymbol OperatorSymbol::negation(const SpectralGrid& g) {
  OperatorSymbol s(g);
  std::fill(s.mult_.begin(), s.mult_.end(), -1.0);
  return s;
}

OperatorSymbol OperatorSymbol::laplacian(const SpectralGrid& g) {
  OperatorSymbol s(g);
  const double fac = 2.0 * M_PI / g.length();
  const double fac2 = fac * fac;
  const int n = g.n();
  for (int a = 0; a < n; ++a) {
    const double k = g.wavenumber(a);
    for (int b = 0; b < n; ++b) {
      const double l = g.wavenumber(b);
      s.mult_[static_cast<size_t>(a) * n + b] = -fac2 * (k * k + l * l);
    }
  }
  return s;
}

OperatorSymbol OperatorSymbol::biharmonic(const SpectralGrid& g) {
  OperatorSymbol lap = laplacian(g);
  return lap.multiply(lap);
}

OperatorSymbol OperatorSymbol::triharmonic(const SpectralGrid& g) {
  OperatorSymbol lap = laplacian(g);
  return lap.multiply(lap).multiply(lap);
}

OperatorSymbol OperatorSymbol::scaled(double factor) const {
  OperatorSymbol s(*this);
  for (double& v : s.mult_) {
    v *= factor;
  }
  return s;
}

OperatorSymbol OperatorSymbol::multiply(const OperatorSymbol& other) const {
  if (!(grid_ == other.grid_)) {
    throw GridMismatch("symbol grids differ");
  }
  OperatorSymbol s(*this);
  for (size_t i = 0; i < s.mult_.size(); ++i) {
    s.mult_[i] *= other.mult_[i];
  }
  return s;
}

SpectralField forward(const Field& f) {
  const int n = f.grid.n();
  std::vector<std::complex<double>> in(static_cast<size_t>(n) * n);
  for (size_t i = 0; i < in.size(); ++i) {
    in[i] = f.values[i];
  }
  SpectralField out(f.grid);
  dft2d(n, FFTW_FORWARD, in.data(), out.coeffs.data());
  return out;
}

double conjugate_asymmetry(const SpectralField& s) {
  const int n = s.grid.n();
  double max_coeff = 0.0;
  for (const auto& c : s.coeffs) {
    max_coeff = std::max(max_coeff, std::abs(c));
  }
  if (max_coeff == 0.0) {
    return 0.0;
  }
  double max_dev = 0.0;
  for (int a = 0; a < n; ++a) {
    const int am = (n - a) % n;
    for (int b = 0; b < n; ++b) {
      const int bm = (n - b) % n;
      const std::complex<double> dev =
          s.at(a, b) - std::conj(s.at(am, bm));
      max_dev = std::max(max_dev, std::abs(dev));
    }
  }
  return max_dev / max_coeff;
}

Field inverse_real(const SpectralField& s) {
  const int n = s.grid.n();
  std::vector<std::complex<double>> out(static_cast<size_t>(n) * n);
  dft2d(n, FFTW_BACKWARD, s.coeffs.data(), out.data());
  Field f(s.grid);
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (size_t i = 0; i < out.size(); ++i) {
    f.values[i] = out[i].real() * scale;
  }
  return f;
}

Field inverse(const SpectralField& s) {
  const double asym = conjugate_asymmetry(s);
  if (asym > 1e-10) {
    throw NotConjugateSymmetric(
        "coefficients are not conjugate-symmetric (relative deviation " +
        std::to_string(asym) + ")");
  }
  return inverse_real(s);
}

SpectralField apply_symbol(const OperatorSymbol& op, const SpectralField& s) {
  if (!(op.grid() == s.grid)) {
    throw GridMismatch("symbol and field grids differ");
  }
  SpectralField out(s.grid);
  const auto& m = op.values();
  for (size_t i = 0; i < out.coeffs.size(); ++i) {
    out.coeffs[i] = m[i] * s.coeffs[i];
  }
  return out;
}

SpectralField cubic_dealiased(const Field& f) {
  const int n = f.grid.n();
  const int kk = 2 * n;  // K = 2N suffices for a cubic
  const SpectralField u_hat = forward(f);

  // Zero-pad the retained modes into the K-grid spectrum.
  std::vector<std::complex<double>> padded(static_cast<size_t>(kk) * kk,
                                           std::complex<double>(0.0, 0.0));
  for (int a = 0; a < n; ++a) {
    const int k = f.grid.wavenumber(a);
    const int ak = k >= 0 ? k : k + kk;
    for (int b = 0; b < n; ++b) {
      const int l = f.grid.wavenumber(b);
      const int bk = l >= 0 ? l : l + kk;
      padded[static_cast<size_t>(ak) * kk + bk] = u_hat.at(a, b);
    }
  }

  std::vector<std::complex<double>> fine(static_cast<size_t>(kk) * kk);
  dft2d(kk, FFTW_BACKWARD, padded.data(), fine.data());
  const double inv_scale = 1.0 / (static_cast<double>(kk) * kk);
  for (auto& v : fine) {
    v *= inv_scale;
    v = v * v * v;
  }
  dft2d(kk, FFTW_FORWARD, fine.data(), padded.data());

  const double r = static_cast<double>(kk) / n;
  const double scale = r * r * r * r;  // (K/N)^4
  SpectralField out(f.grid);
  for (int a = 0; a < n; ++a) {
    const int k = f.grid.wavenumber(a);
    const int ak = k >= 0 ? k : k + kk;
    for (int b = 0; b < n; ++b) {
      const int l = f.grid.wavenumber(b);
      const int bk = l >= 0 ? l : l + kk;
      out.at(a, b) = scale * padded[static_cast<size_t>(ak) * kk + bk];
    }
  }
  return out;
}

SpectralField cubic_aliased(const Field& f) {
  Field cubed(f.grid);
  for (size_t i = 0; i < f.values.size(); ++i) {
    const double u = f.values[i];
    cubed.values[i] = u * u * u;
  }
  return forward(cubed);
}

SpectralField brute_force_truncated_convolution(const SpectralField& s) {
  const int n = s.grid.n();
  if (n > 16) {
    throw GridTooLarge("brute-force convolution limited to n <= 16");
  }
  const int k_lo = -n / 2 + 1;
  const int k_hi = n / 2;
  SpectralField out(s.grid);
  const double norm = 1.0 / (static_cast<double>(n) * n * n * n);
  for (int k = k_lo; k <= k_hi; ++k) {
    for (int l = k_lo; l <= k_hi; ++l) {
      std::complex<double> acc(0.0, 0.0);
      for (int m = k_lo; m <= k_hi; ++m) {
        for (int nn = k_lo; nn <= k_hi; ++nn) {
          const std::complex<double> u_mn =
              s.at(s.grid.index_of(m), s.grid.index_of(nn));
          if (u_mn == std::complex<double>(0.0, 0.0)) {
            continue;
          }
          for (int p = k_lo; p <= k_hi; ++p) {
            const int r = k - m - p;
            if (r < k_lo || r > k_hi) {
              continue;
            }
            for (int q = k_lo; q <= k_hi; ++q) {
              const int t = l - nn - q;
              if (t < k_lo || t > k_hi) {
                continue;
              }
              acc += u_mn *
                     s.at(s.grid.index_of(p), s.grid.index_of(q)) *
                     s.at(s.grid.index_of(r), s.grid.index_of(t));
            }
          }
        }
      }
      out.at(s.grid.index_of(k), s.grid.index_of(l)) = norm * acc;
    }
  }
  return out;
}

double inner_product(const Field& f, const Field& g) {
  if (!(f.grid == g.grid)) {
    throw GridMismatch("field grids differ");
  }
  double acc = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i) {
    acc += f.values[i] * g.values[i];
  }
  return acc * f.grid.cell_area();
}

double l2_norm(const Field& f) { return std::sqrt(inner_product(f, f)); }

double symbol_quadratic_form(const OperatorSymbol& op,
                             const SpectralField& f) {
  if (!(op.grid() == f.grid)) {
    throw GridMismatch("symbol and field grids differ");
  }
  const auto& m = op.values();
  double acc = 0.0;
  for (size_t i = 0; i < m.size(); ++i) {
    acc += m[i] * std::norm(f.coeffs[i]);
  }
  const double n2 = static_cast<double>(f.grid.size());
  return acc * f.grid.cell_area() / n2;
}

double symbol_cross_form(const OperatorSymbol& op, const SpectralField& f,
                         const SpectralField& g) {
  if (!(op.grid() == f.grid) || !(f.grid == g.grid)) {
    throw GridMismatch("symbol and field grids differ");
  }
  const auto& m = op.values();
  double acc = 0.0;
  for (size_t i = 0; i < m.size(); ++i) {
    acc += m[i] * (f.coeffs[i] * std::conj(g.coeffs[i])).real();
  }
  const double n2 = static_cast<double>(f.grid.size());
  return acc * f.grid.cell_area() / n2;
}

double spectral_norm_sq(const SpectralField& f) {
  double acc = 0.0;
  for (const auto& c : f.coeffs) {
    acc += std::norm(c);
  }
  const double n2 = static_cast<double>(f.grid.size());
  return acc * f.grid.cell_area() / n2;
}

}  // namespace savgl
