// Copyright 2026 The icdiag developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "icdiag/distribution.hpp"

namespace icdiag::quantum {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kHermTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kIdentityTol = 1e-9;

namespace detail {

inline double max_abs(const ComplexMatrix& m) {
  return m.cwiseAbs().maxCoeff();
}

inline double min_eigenvalue(const ComplexMatrix& herm) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm,
                                                  Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

inline bool is_prime(int d) {
  if (d < 2) return false;
  for (int f = 2; f * f <= d; ++f) {
    if (d % f == 0) return false;
  }
  return true;
}

}  // namespace detail

// Density matrix: Hermitian within kHermTol, unit trace, eigenvalues above
// -kPsdTol. The stored matrix is symmetrized so purity is exactly real.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() < 1 || m_.rows() != m_.cols()) {
      throw std::invalid_argument("density matrix must be square");
    }
    if (detail::max_abs(m_ - m_.adjoint()) > kHermTol) {
      throw std::invalid_argument("density matrix is not Hermitian");
    }
    m_ = (0.5 * (m_ + m_.adjoint())).eval();
    const Complex tr = m_.trace();
    if (std::abs(tr.real() - 1.0) > kIdentityTol ||
        std::abs(tr.imag()) > kIdentityTol) {
      throw std::invalid_argument("density matrix trace must be 1");
    }
    m_ /= tr.real();
    if (detail::min_eigenvalue(m_) < -kPsdTol) {
      throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
  }

  static DensityMatrix pure(const ComplexVector& ket) {
    const double nrm = ket.norm();
    if (!(nrm > 0.0)) throw std::invalid_argument("zero ket");
    const ComplexVector u = ket / nrm;
    return DensityMatrix(u * u.adjoint());
  }

  static DensityMatrix maximally_mixed(int d) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    return DensityMatrix(ComplexMatrix::Identity(d, d) / double(d));
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

// tr(rho^2) = sum |rho_ij|^2 for Hermitian rho; lies in [1/d, 1].
inline double purity(const DensityMatrix& rho) {
  return rho.matrix().squaredNorm();
}

enum class Family { Basis, Mub, Mum, Etf, Sic, Gsic, Custom };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::Basis: return "basis";
    case Family::Mub: return "mub";
    case Family::Mum: return "mum";
    case Family::Etf: return "etf";
    case Family::Sic: return "sic";
    case Family::Gsic: return "gsic";
    case Family::Custom: return "custom";
  }
  return "custom";
}

// A single positive operator-valued measure. Family parameters are carried
// when the construction knows them (kappa for MUM-style smoothing, theta for
// the generalized symmetric sets, c and S for equiangular tight frames).
struct Povm {
  int d = 0;
  std::vector<ComplexMatrix> elements;
  Family family = Family::Custom;
  std::optional<double> kappa;
  std::optional<double> theta;
  std::optional<double> c;
  std::optional<double> S;

  int outcomes() const { return static_cast<int>(elements.size()); }
};

// A collection of POVMs measured on the same system (a set of bases or of
// mutually unbiased measurements).
struct MeasurementSet {
  int d = 0;
  std::vector<Povm> measurements;
  Family family = Family::Mub;
  std::optional<double> kappa;

  int count() const { return static_cast<int>(measurements.size()); }
};

// Born rule p_j = tr(M_j rho), wrapped into a validated Distribution (tiny
// negative traces from rounding are clamped there).
inline Distribution born_probabilities(const Povm& povm,
                                       const DensityMatrix& rho) {
  if (povm.d != rho.dim()) {
    throw std::invalid_argument("measurement and state dimensions differ");
  }
  std::vector<double> probs;
  probs.reserve(povm.elements.size());
  for (const auto& m : povm.elements) {
    probs.push_back((m * rho.matrix()).trace().real());
  }
  return Distribution(std::move(probs));
}

// Largest absolute entry of (sum_j M_j - 1).
inline double identity_deviation(const Povm& povm) {
  ComplexMatrix s = ComplexMatrix::Zero(povm.d, povm.d);
  for (const auto& m : povm.elements) s += m;
  return detail::max_abs(s - ComplexMatrix::Identity(povm.d, povm.d));
}

inline double min_element_eigenvalue(const Povm& povm) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& m : povm.elements) {
    lo = std::min(lo, detail::min_eigenvalue(m));
  }
  return lo;
}

// Throws unless the elements are Hermitian, positive semidefinite within
// kPsdTol and resolve the identity within kIdentityTol.
inline void validate_povm(const Povm& povm) {
  if (povm.d < 1 || povm.elements.empty()) {
    throw std::invalid_argument("empty measurement");
  }
  for (const auto& m : povm.elements) {
    if (m.rows() != povm.d || m.cols() != povm.d) {
      throw std::invalid_argument("element dimension mismatch");
    }
    if (detail::max_abs(m - m.adjoint()) > kHermTol) {
      throw std::invalid_argument("measurement element not Hermitian");
    }
  }
  if (min_element_eigenvalue(povm) < -kPsdTol) {
    throw std::invalid_argument("measurement element not positive");
  }
  if (identity_deviation(povm) > kIdentityTol) {
    throw std::invalid_argument("elements do not resolve the identity");
  }
}

namespace detail {

inline Povm basis_povm(const ComplexMatrix& basis, Family family) {
  Povm p;
  p.d = static_cast<int>(basis.rows());
  p.family = family;
  for (int j = 0; j < basis.cols(); ++j) {
    const ComplexVector k = basis.col(j);
    p.elements.push_back(k * k.adjoint());
  }
  return p;
}

}  // namespace detail

// Mutually unbiased bases for prime d: any two kets from different bases
// have squared overlap 1/d. d = 2 uses the Pauli eigenbases; odd prime d
// uses the computational basis plus the d quadratic-phase Fourier bases
// exp(2 pi i (a m^2 + j m)/d)/sqrt(d), unbiased by Gauss sums. The first M
// of the d+1 bases are returned.
inline MeasurementSet mub_set(int d, int M) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  if (M < 1 || M > d + 1) {
    throw std::invalid_argument("basis count must lie in [1, d+1]");
  }
  if (!detail::is_prime(d)) {
    throw std::invalid_argument(
        "built-in unbiased bases cover prime d only; supply a frame file "
        "for other dimensions");
  }
  std::vector<ComplexMatrix> bases;
  bases.push_back(ComplexMatrix::Identity(d, d));
  if (d == 2) {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix x(2, 2), y(2, 2);
    x << Complex(s, 0), Complex(s, 0), Complex(s, 0), Complex(-s, 0);
    y << Complex(s, 0), Complex(s, 0), Complex(0, s), Complex(0, -s);
    bases.push_back(x);
    bases.push_back(y);
  } else {
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (int a = 0; a < d; ++a) {
      ComplexMatrix b(d, d);
      for (int j = 0; j < d; ++j) {
        for (int m = 0; m < d; ++m) {
          const long long phase = (static_cast<long long>(a) * m * m +
                                   static_cast<long long>(j) * m) % d;
          const double arg = 2.0 * M_PI * static_cast<double>(phase) / d;
          b(m, j) = Complex(s * std::cos(arg), s * std::sin(arg));
        }
      }
      bases.push_back(b);
    }
  }
  MeasurementSet set;
  set.d = d;
  set.family = Family::Mub;
  set.kappa = 1.0;
  for (int i = 0; i < M; ++i) {
    set.measurements.push_back(detail::basis_povm(bases[i], Family::Mub));
    set.measurements.back().kappa = 1.0;
  }
  return set;
}

// Largest deviation of the set from unbiasedness: orthonormality within each
// basis and squared cross-overlaps equal to 1/d.
inline double mub_overlap_deviation(const MeasurementSet& set) {
  const int d = set.d;
  double dev = 0.0;
  for (int b1 = 0; b1 < set.count(); ++b1) {
    for (int b2 = b1; b2 < set.count(); ++b2) {
      for (const auto& e1 : set.measurements[b1].elements) {
        for (const auto& e2 : set.measurements[b2].elements) {
          const double o = (e1 * e2).trace().real();
          if (b1 == b2) {
            const double want = (&e1 == &e2) ? 1.0 : 0.0;
            dev = std::max(dev, std::abs(o - want));
          } else {
            dev = std::max(dev, std::abs(o - 1.0 / d));
          }
        }
      }
    }
  }
  return dev;
}

namespace detail {

// Hilbert-Schmidt orthonormal traceless Hermitian basis (generalized
// Gell-Mann operators scaled to tr F^2 = 1): real and imaginary ladder pairs
// followed by the diagonal family.
inline std::vector<ComplexMatrix> gell_mann_basis(int d) {
  std::vector<ComplexMatrix> out;
  const double r = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(d, d);
      sym(j, k) = Complex(r, 0);
      sym(k, j) = Complex(r, 0);
      out.push_back(sym);
      ComplexMatrix asym = ComplexMatrix::Zero(d, d);
      asym(j, k) = Complex(0, -r);
      asym(k, j) = Complex(0, r);
      out.push_back(asym);
    }
  }
  for (int l = 1; l < d; ++l) {
    ComplexMatrix diag = ComplexMatrix::Zero(d, d);
    const double s = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int m = 0; m < l; ++m) diag(m, m) = Complex(s, 0);
    diag(l, l) = Complex(-s * l, 0);
    out.push_back(diag);
  }
  return out;
}

// Direction operators for the smoothed unbiased measurements: d+1 groups of
// d traceless Hermitian matrices with tr(D_{n,j} D_{n,k}) = delta_{jk} - 1/d
// inside a group, orthogonal across groups, and sum_j D_{n,j} = 0. For prime
// d the directions come from the complete unbiased basis set (D = P - 1/d),
// which reaches kappa = 1. Otherwise d+1 blocks of d-1 Gell-Mann operators
// are expanded into groups with the same Gram structure; the positivity
// ceiling is then found numerically.
inline std::vector<std::vector<ComplexMatrix>> mum_directions(int d) {
  std::vector<std::vector<ComplexMatrix>> groups;
  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  if (is_prime(d)) {
    const MeasurementSet mubs = mub_set(d, d + 1);
    for (const auto& basis : mubs.measurements) {
      std::vector<ComplexMatrix> g;
      for (const auto& proj : basis.elements) {
        g.push_back(proj - eye / double(d));
      }
      groups.push_back(std::move(g));
    }
    return groups;
  }
  const auto gm = gell_mann_basis(d);
  const double rd = std::sqrt(static_cast<double>(d));
  const double scale = 1.0 / ((1.0 + rd) * rd);
  for (int n = 0; n <= d; ++n) {
    ComplexMatrix block_sum = ComplexMatrix::Zero(d, d);
    const int base = n * (d - 1);
    for (int j = 0; j < d - 1; ++j) block_sum += gm[base + j];
    std::vector<ComplexMatrix> g;
    for (int j = 0; j < d - 1; ++j) {
      g.push_back(scale * (block_sum - (d + rd) * gm[base + j]));
    }
    g.push_back(scale * (1.0 + rd) * block_sum);
    groups.push_back(std::move(g));
  }
  return groups;
}

}  // namespace detail

// Largest purity parameter kappa = tr(E^2) reachable by the built-in
// smoothed-measurement construction: 1 for prime d, otherwise fixed by the
// worst negative direction eigenvalue.
inline double mum_kappa_max(int d) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  if (detail::is_prime(d)) return 1.0;
  const auto groups = detail::mum_directions(d);
  double smax = std::numeric_limits<double>::infinity();
  for (const auto& g : groups) {
    for (const auto& dir : g) {
      const double lo = detail::min_eigenvalue(dir);
      smax = std::min(smax, (1.0 / d) / (-lo));
    }
  }
  return std::min(1.0, 1.0 / d + smax * smax * (d - 1.0) / d);
}

// d+1 mutually unbiased measurements with element purity kappa:
//   E_{n,j} = 1/d + s D_{n,j},  s = sqrt((kappa d - 1)/(d - 1)),
// so that tr E = 1, tr(E E') = 1/d across measurements, and within one
// measurement tr(E_j E_k) = kappa when j = k and (1-kappa)/(d-1) otherwise.
// kappa = 1/d is rejected as degenerate (every element collapses to 1/d);
// kappa beyond the construction's ceiling is rejected with the ceiling
// reported.
inline MeasurementSet mum_set(int d, double kappa) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  if (!(kappa > 1.0 / d)) {
    throw std::domain_error(
        "kappa must exceed 1/d; kappa = 1/d is the degenerate measurement "
        "whose elements are all 1/d");
  }
  const double cap = mum_kappa_max(d);
  if (kappa > cap + 1e-12) {
    throw std::domain_error(
        "kappa exceeds the construction ceiling kappa_max = " +
        std::to_string(cap) + " for d = " + std::to_string(d));
  }
  kappa = std::min(kappa, cap);
  const double s = std::sqrt((kappa * d - 1.0) / (d - 1.0));
  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  MeasurementSet set;
  set.d = d;
  set.family = Family::Mum;
  set.kappa = kappa;
  for (const auto& group : detail::mum_directions(d)) {
    Povm p;
    p.d = d;
    p.family = Family::Mum;
    p.kappa = kappa;
    for (const auto& dir : group) {
      p.elements.push_back(eye / double(d) + s * dir);
    }
    set.measurements.push_back(std::move(p));
  }
  return set;
}

// Largest deviation from the smoothed-measurement Gram conditions at the
// set's kappa: unit element traces, cross-measurement overlaps 1/d, inner
// overlaps kappa and (1-kappa)/(d-1).
inline double mum_gram_deviation(const MeasurementSet& set) {
  if (!set.kappa) throw std::invalid_argument("set carries no kappa");
  const int d = set.d;
  const double kappa = *set.kappa;
  const double off = (1.0 - kappa) / (d - 1.0);
  double dev = 0.0;
  for (int b = 0; b < set.count(); ++b) {
    for (const auto& e : set.measurements[b].elements) {
      dev = std::max(dev, std::abs(e.trace().real() - 1.0));
      dev = std::max(dev, std::abs(e.trace().imag()));
    }
    for (int b2 = b; b2 < set.count(); ++b2) {
      const auto& m1 = set.measurements[b].elements;
      const auto& m2 = set.measurements[b2].elements;
      for (std::size_t i = 0; i < m1.size(); ++i) {
        for (std::size_t j = 0; j < m2.size(); ++j) {
          const double o = (m1[i] * m2[j]).trace().real();
          double want = 1.0 / d;
          if (b == b2) want = (i == j) ? kappa : off;
          dev = std::max(dev, std::abs(o - want));
        }
      }
    }
  }
  return dev;
}

// Symmetric informationally complete kets: d^2 unit vectors with pairwise
// squared overlap 1/(d+1). Built in for d = 2 (Bloch tetrahedron) and d = 3
// (shift/phase orbit of the fiducial (0, 1, -1)/sqrt 2).
inline std::vector<ComplexVector> sic_vectors(int d) {
  if (d == 2) {
    const double q = 1.0 / std::sqrt(3.0);
    const double dirs[4][3] = {{q, q, q}, {q, -q, -q}, {-q, q, -q},
                               {-q, -q, q}};
    std::vector<ComplexVector> out;
    for (const auto& v : dirs) {
      const double theta = std::acos(std::clamp(v[2], -1.0, 1.0));
      const double st = std::sin(theta);
      const Complex phase =
          st > 1e-15 ? Complex(v[0] / st, v[1] / st) : Complex(1, 0);
      ComplexVector ket(2);
      ket << Complex(std::cos(theta / 2), 0), phase * std::sin(theta / 2);
      out.push_back(ket);
    }
    return out;
  }
  if (d == 3) {
    ComplexVector f(3);
    const double r = 1.0 / std::sqrt(2.0);
    f << Complex(0, 0), Complex(r, 0), Complex(-r, 0);
    std::vector<ComplexVector> out;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        ComplexVector v(3);
        for (int m = 0; m < 3; ++m) {
          const int src = ((m - a) % 3 + 3) % 3;
          const double arg = 2.0 * M_PI * (b * src % 3) / 3.0;
          v(m) = Complex(std::cos(arg), std::sin(arg)) * f(src);
        }
        out.push_back(v);
      }
    }
    return out;
  }
  throw std::invalid_argument(
      "built-in symmetric complete sets cover d = 2 and 3; supply a frame "
      "file for other dimensions");
}

// Largest deviation of pairwise squared overlaps from 1/(d+1) (and of norms
// from one).
inline double sic_overlap_deviation(const std::vector<ComplexVector>& kets) {
  if (kets.empty()) throw std::invalid_argument("empty ket list");
  const int d = static_cast<int>(kets.front().size());
  double dev = 0.0;
  for (std::size_t i = 0; i < kets.size(); ++i) {
    dev = std::max(dev, std::abs(kets[i].squaredNorm() - 1.0));
    for (std::size_t j = i + 1; j < kets.size(); ++j) {
      const double o = std::norm(kets[i].dot(kets[j]));
      dev = std::max(dev, std::abs(o - 1.0 / (d + 1)));
    }
  }
  return dev;
}

// The symmetric POVM N_j = |phi_j><phi_j|/d over the d^2 symmetric kets.
inline Povm sic_povm(const std::vector<ComplexVector>& kets) {
  if (kets.empty()) throw std::invalid_argument("empty ket list");
  const int d = static_cast<int>(kets.front().size());
  if (static_cast<int>(kets.size()) != d * d) {
    throw std::invalid_argument("a symmetric complete set needs d^2 kets");
  }
  if (sic_overlap_deviation(kets) > kIdentityTol) {
    throw std::invalid_argument(
        "kets are not symmetric informationally complete");
  }
  Povm p;
  p.d = d;
  p.family = Family::Sic;
  p.theta = 1.0 / (double(d) * d);
  for (const auto& k : kets) {
    const ComplexVector u = k / k.norm();
    p.elements.push_back((u * u.adjoint()) / double(d));
  }
  return p;
}

inline Povm sic_povm(int d) { return sic_povm(sic_vectors(d)); }

// Generalized symmetric POVM at purity parameter theta in (1/d^3, 1/d^2]:
//   Lambda_j = mu N_j + (1-mu)/d^2,  mu = sqrt((theta d^3 - 1)/(d - 1)),
// giving tr Lambda = 1/d, tr Lambda^2 = theta, and pairwise overlaps
// (1 - theta d)/(d (d^2-1)). theta = 1/d^3 is excluded: that is the
// informationally trivial measurement with every element 1/d^2.
inline Povm general_sic(const Povm& sic, double theta) {
  if (sic.family != Family::Sic) {
    throw std::invalid_argument("base measurement must be symmetric complete");
  }
  const int d = sic.d;
  const double d3 = static_cast<double>(d) * d * d;
  if (!(theta > 1.0 / d3)) {
    throw std::domain_error(
        "theta must exceed 1/d^3; the boundary value is the trivial "
        "measurement with all elements equal");
  }
  if (theta > 1.0 / (double(d) * d) + 1e-12) {
    throw std::domain_error("theta must not exceed 1/d^2");
  }
  theta = std::min(theta, 1.0 / (double(d) * d));
  const double mu = std::sqrt((theta * d3 - 1.0) / (d - 1.0));
  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  Povm p;
  p.d = d;
  p.family = Family::Gsic;
  p.theta = theta;
  for (const auto& n : sic.elements) {
    p.elements.push_back(mu * n + ((1.0 - mu) / (double(d) * d)) * eye);
  }
  return p;
}

inline Povm general_sic(int d, double theta) {
  return general_sic(sic_povm(d), theta);
}

// Largest deviation from the generalized symmetric Gram conditions:
// tr Lambda = 1/d, tr Lambda^2 = theta, cross overlaps (1-theta d)/(d(d^2-1)).
inline double gsic_gram_deviation(const Povm& p) {
  if (!p.theta) throw std::invalid_argument("measurement carries no theta");
  const int d = p.d;
  const double theta = *p.theta;
  const double cross = (1.0 - theta * d) / (d * (double(d) * d - 1.0));
  double dev = 0.0;
  for (std::size_t i = 0; i < p.elements.size(); ++i) {
    dev = std::max(dev,
                   std::abs(p.elements[i].trace().real() - 1.0 / d));
    for (std::size_t j = i; j < p.elements.size(); ++j) {
      const double o = (p.elements[i] * p.elements[j]).trace().real();
      dev = std::max(dev, std::abs(o - (i == j ? theta : cross)));
    }
  }
  return dev;
}

// Harmonic simplex frame: n = d+1 unit vectors with components
// w^{jm}/sqrt d (m = 1..d, w = exp(2 pi i/(d+1))), pairwise inner product
// -1/d. This is the smallest equiangular tight frame beyond a basis.
inline std::vector<ComplexVector> etf_simplex_vectors(int d) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<ComplexVector> out;
  for (int j = 0; j <= d; ++j) {
    ComplexVector v(d);
    for (int m = 1; m <= d; ++m) {
      const double arg = 2.0 * M_PI * ((static_cast<long long>(j) * m) % (d + 1)) / (d + 1);
      v(m - 1) = Complex(s * std::cos(arg), s * std::sin(arg));
    }
    out.push_back(v);
  }
  return out;
}

// Rescaled rank-one POVM (d/n)|phi_j><phi_j| over a tight frame.
inline Povm etf_povm(const std::vector<ComplexVector>& kets) {
  if (kets.empty()) throw std::invalid_argument("empty ket list");
  const int d = static_cast<int>(kets.front().size());
  const int n = static_cast<int>(kets.size());
  Povm p;
  p.d = d;
  p.family = Family::Etf;
  p.S = static_cast<double>(n) / d;
  p.c = n > 1 ? (static_cast<double>(n) - d) / (static_cast<double>(d) * (n - 1)) : 0.0;
  for (const auto& k : kets) {
    const ComplexVector u = k / k.norm();
    p.elements.push_back((static_cast<double>(d) / n) * (u * u.adjoint()));
  }
  validate_povm(p);
  return p;
}

inline Povm etf_simplex(int d) { return etf_povm(etf_simplex_vectors(d)); }

// Diagnostic report for a candidate equiangular tight frame.
struct EtfReport {
  int d = 0;
  int n = 0;
  double S = 0.0;            // measured frame constant (mean eigenvalue n/d)
  double c = 0.0;            // mean pairwise squared overlap
  double S_expected = 0.0;   // n/d
  double c_expected = 0.0;   // (n-d)/(d(n-1))
  double norm_deviation = 0.0;
  double tight_deviation = 0.0;        // max |frame-op eigenvalue - n/d|
  double equiangular_deviation = 0.0;  // max |overlap^2 - c|
  bool n_within_bound = true;          // n <= d^2
  std::vector<std::tuple<int, int, double>> worst_pairs;
  std::string note;

  bool tight(double tol = kIdentityTol) const {
    return tight_deviation <= tol && norm_deviation <= tol;
  }
  bool equiangular(double tol = kIdentityTol) const {
    return equiangular_deviation <= tol;
  }
  bool valid(double tol = kIdentityTol) const {
    return tight(tol) && equiangular(tol) && n_within_bound;
  }
};

inline EtfReport etf_validate(const std::vector<ComplexVector>& kets) {
  if (kets.empty()) throw std::invalid_argument("empty ket list");
  EtfReport r;
  r.d = static_cast<int>(kets.front().size());
  r.n = static_cast<int>(kets.size());
  r.S_expected = static_cast<double>(r.n) / r.d;
  r.c_expected = r.n > 1 ? (static_cast<double>(r.n) - r.d) /
                               (static_cast<double>(r.d) * (r.n - 1))
                         : 0.0;
  r.n_within_bound = r.n <= r.d * r.d;

  ComplexMatrix frame = ComplexMatrix::Zero(r.d, r.d);
  for (const auto& k : kets) {
    if (static_cast<int>(k.size()) != r.d) {
      throw std::invalid_argument("mixed vector dimensions in frame");
    }
    r.norm_deviation =
        std::max(r.norm_deviation, std::abs(k.squaredNorm() - 1.0));
    frame += k * k.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(frame,
                                                  Eigen::EigenvaluesOnly);
  double mean_eig = 0.0;
  for (int i = 0; i < r.d; ++i) mean_eig += es.eigenvalues()(i);
  mean_eig /= r.d;
  r.S = mean_eig;
  for (int i = 0; i < r.d; ++i) {
    r.tight_deviation = std::max(
        r.tight_deviation, std::abs(es.eigenvalues()(i) - r.S_expected));
  }

  double csum = 0.0;
  long pairs = 0;
  std::vector<std::tuple<int, int, double>> overlaps;
  for (int i = 0; i < r.n; ++i) {
    for (int j = i + 1; j < r.n; ++j) {
      const double o = std::norm(kets[i].dot(kets[j]));
      csum += o;
      ++pairs;
      overlaps.emplace_back(i, j, o);
    }
  }
  r.c = pairs > 0 ? csum / pairs : 0.0;
  for (const auto& t : overlaps) {
    r.equiangular_deviation =
        std::max(r.equiangular_deviation, std::abs(std::get<2>(t) - r.c));
  }
  std::sort(overlaps.begin(), overlaps.end(),
            [&](const auto& u, const auto& v) {
              return std::abs(std::get<2>(u) - r.c) >
                     std::abs(std::get<2>(v) - r.c);
            });
  for (std::size_t i = 0; i < overlaps.size() && i < 8; ++i) {
    r.worst_pairs.push_back(overlaps[i]);
  }
  if (r.valid()) {
    r.note = "tight equiangular frame; a Naimark complement exists as an "
             "equiangular tight frame of " +
             std::to_string(r.n) + " vectors in dimension " +
             std::to_string(r.n - r.d);
  }
  return r;
}

enum class StateKind { Pure, Mixed };

namespace detail {

// Deterministic standard normal pairs (Box-Muller over mt19937_64); the
// library distributions are implementation-defined, which would break the
// bit-identical seeding contract.
class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    const double u1 =
        (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    spare_ = r * std::sin(t);
    have_ = true;
    return r * std::cos(t);
  }

 private:
  std::mt19937_64 rng_;
  bool have_ = false;
  double spare_ = 0.0;
};

}  // namespace detail

// Seeded random states: Pure draws a normalized complex Gaussian ket,
// Mixed draws G G^dagger / tr(G G^dagger) (Hilbert-Schmidt measure). The
// same seed reproduces the state bit for bit.
inline DensityMatrix random_state(int d, StateKind kind, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  detail::Gaussian gauss(seed);
  if (kind == StateKind::Pure) {
    ComplexVector ket(d);
    for (int i = 0; i < d; ++i) ket(i) = Complex(gauss(), gauss());
    return DensityMatrix::pure(ket);
  }
  ComplexMatrix g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = Complex(gauss(), gauss());
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

}  // namespace icdiag::quantum
