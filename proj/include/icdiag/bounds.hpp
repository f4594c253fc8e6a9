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

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "icdiag/distribution.hpp"
#include "icdiag/entropy.hpp"

namespace icdiag::bounds {

// Floating noise allowance on the coincidence argument: a computed uniform
// distribution can land a few ulp outside [1/n, 1].
inline constexpr double kDomainTol = 1e-9;

namespace detail {

inline void require_order_le2(EntropyOrder alpha, const char* who) {
  if (alpha.value() > 2.0) {
    throw std::domain_error(std::string(who) + ": order must lie in [0,2]");
  }
}

inline double clamp_ic(double x, int n, const char* who) {
  const double lo = 1.0 / n;
  if (!(x >= lo - kDomainTol) || x > 1.0 + kDomainTol) {
    throw std::domain_error(std::string(who) +
                            ": coincidence must lie in [1/n, 1], got " +
                            std::to_string(x) + " with n = " +
                            std::to_string(n));
  }
  return std::clamp(x, lo, 1.0);
}

}  // namespace detail

// Chord coefficients of the polygonal lower boundary between the diagram
// vertices at 1/(k+1) and 1/k:
//   a_{ak} = (k+1) ln_a(k+1) - k ln_a(k)
//   b_{ak} = k(k+1) (ln_a(k+1) - ln_a(k))
// Special values: a = 2 gives a = b = 1; a = 0 gives a = 2k, b = k^2 + k.
struct PolygonalCoefficients {
  double a;
  double b;
};

inline PolygonalCoefficients coefficients(EntropyOrder alpha, int k) {
  if (k < 1) throw std::invalid_argument("segment index must be >= 1");
  detail::require_order_le2(alpha, "coefficients");
  const double lk = ln_alpha(static_cast<double>(k), alpha);
  const double lk1 = ln_alpha(static_cast<double>(k) + 1.0, alpha);
  const double kd = static_cast<double>(k);
  return {(kd + 1.0) * lk1 - kd * lk, kd * (kd + 1.0) * (lk1 - lk)};
}

struct BoundValue {
  double value;
  int achieving_k;
};

// Piecewise-linear lower boundary L_a(x) = max_k (a_{ak} - b_{ak} x) over
// k = 1..n-1. The chords connect consecutive vertices (1/k, ln_a k) of the
// diagram, and the maximum of the chord lines equals the piecewise curve
// because the slopes -b_{ak} decrease with x. Repeated evaluations at one
// (alpha, n) should go through this evaluator; the coefficient table is
// built once.
class PolygonalEvaluator {
 public:
  PolygonalEvaluator(EntropyOrder alpha, int n) : alpha_(alpha), n_(n) {
    if (n < 2) throw std::invalid_argument("need at least two outcomes");
    detail::require_order_le2(alpha, "polygonal bound");
    cs_.reserve(static_cast<std::size_t>(n - 1));
    for (int k = 1; k < n; ++k) cs_.push_back(coefficients(alpha, k));
  }

  BoundValue operator()(double x) const {
    x = detail::clamp_ic(x, n_, "polygonal bound");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& c : cs_) {
      const double v = c.a - c.b * x;
      if (v > best) best = v;
    }
    // Exact ties happen at breakpoints; report the larger segment index.
    const double tol = 1e-13 * (1.0 + std::abs(best));
    for (int k = n_ - 1; k >= 1; --k) {
      const auto& c = cs_[static_cast<std::size_t>(k - 1)];
      if (c.a - c.b * x >= best - tol) return {best, k};
    }
    return {best, 1};
  }

  EntropyOrder order() const { return alpha_; }
  int outcomes() const { return n_; }

 private:
  EntropyOrder alpha_;
  int n_;
  std::vector<PolygonalCoefficients> cs_;
};

inline BoundValue polygonal_tsallis_bound(double x, EntropyOrder alpha,
                                          int n) {
  return PolygonalEvaluator(alpha, n)(x);
}

// Segment index for the lookup form: k = floor(1/x), clamped to [1, n-1].
// Either adjacent segment is fine at a breakpoint; the chord values agree.
inline int segment_for(double x, int n) {
  if (!(x > 0.0)) throw std::domain_error("segment lookup needs x > 0");
  const double k = std::floor(1.0 / x);
  return static_cast<int>(std::clamp(k, 1.0, static_cast<double>(n - 1)));
}

inline double polygonal_tsallis_segment(double x, EntropyOrder alpha, int n) {
  if (n < 2) throw std::invalid_argument("need at least two outcomes");
  x = detail::clamp_ic(x, n, "polygonal segment");
  const auto c = coefficients(alpha, segment_for(x, n));
  return c.a - c.b * x;
}

// Renyi form of the polygonal bound,
// R_a >= ln(1 + (1-a) L_a(x))/(1-a). The transform is monotone in the
// Tsallis value, so the maximizing segment carries over.
inline BoundValue polygonal_renyi_bound(double x, EntropyOrder alpha, int n) {
  const BoundValue t = polygonal_tsallis_bound(x, alpha, n);
  if (alpha.is_unit()) return t;
  const double u = 1.0 - alpha.value();
  return {std::log1p(u * t.value) / u, t.achieving_k};
}

// Smooth comparison curve ln_a(1/x): the Jensen bound. It touches the
// polygonal boundary at the vertices x = 1/k and lies below it elsewhere.
inline double smooth_bound(double x, EntropyOrder alpha) {
  if (!(x > 0.0) || x > 1.0 + kDomainTol) {
    throw std::domain_error("smooth bound needs x in (0,1]");
  }
  detail::require_order_le2(alpha, "smooth bound");
  x = std::min(x, 1.0);
  if (alpha.is_unit()) return -std::log(x);
  const double t = 1.0 - alpha.value();
  return std::expm1(-t * std::log(x)) / t;
}

// Exact lower envelope of max probability versus coincidence. On the cell
// x in [1/k, 1/(k-1)], k >= 2:
//   Lambda(x) = (1/k)(1 + sqrt((k x - 1)/(k - 1))).
// Defined for every x in (0,1]; adjacent cells agree at the breakpoints, so
// rounding in the cell choice is harmless.
inline double maxp_lower(double x) {
  if (!(x > 0.0) || x > 1.0 + kDomainTol) {
    throw std::domain_error("maxp lower envelope needs x in (0,1]");
  }
  x = std::min(x, 1.0);
  const double k = std::max(2.0, std::ceil(1.0 / x));
  // fma keeps kx - 1 exactly rounded; the square root has unbounded slope at
  // the cell edge and would amplify an ordinary rounding of the radicand.
  const double r = std::max(0.0, std::fma(k, x, -1.0) / (k - 1.0));
  return (1.0 + std::sqrt(r)) / k;
}

// Upper envelope of max probability at fixed coincidence for n outcomes:
//   (1/n)(1 + sqrt((n-1)(n x - 1))),  x in [1/n, 1].
// Attained by one large probability with the rest equal.
inline double maxp_upper(double x, int n) {
  if (n < 2) throw std::invalid_argument("need at least two outcomes");
  x = detail::clamp_ic(x, n, "maxp upper envelope");
  const double nd = static_cast<double>(n);
  // Exactly rounded nx - 1, as in maxp_lower. A single square root of the
  // product keeps the endpoints exact: x = 1 gives sqrt((n-1)^2) = n - 1.
  const double r = std::max(0.0, std::fma(nd, x, -1.0));
  return (1.0 + std::sqrt((nd - 1.0) * r)) / nd;
}

// F_{ak}(P) = H_a(P) - a_{ak} + b_{ak} I(P): the signed distance to the
// chord line. Nonnegative for coincidence in [1/(k+1), 1/k].
inline double F_functional(const Distribution& p, EntropyOrder alpha, int k) {
  const auto c = coefficients(alpha, k);
  return tsallis(p, alpha) - c.a + c.b * coincidence(p);
}

namespace detail {

inline void require_phi_args(double x, EntropyOrder alpha, int k,
                             const char* who) {
  if (k < 1) throw std::invalid_argument(std::string(who) + ": k must be >= 1");
  if (!(x >= 0.0) || x > 1.0) {
    throw std::domain_error(std::string(who) + ": x must lie in [0,1]");
  }
  const double a = alpha.value();
  if (a <= 0.0 || a >= 2.0) {
    throw std::domain_error(std::string(who) +
                            ": order must lie strictly inside (0,2)");
  }
}

}  // namespace detail

// Chord distance along the mixture path P*(x) = x U_k + (1-x) U_{k+1},
// whose k+1 probabilities are k copies of (k+x)/(k(k+1)) plus (1-x)/(k+1)
// and whose coincidence is (k + x^2)/(k(k+1)):
//   Phi_{ak}(x) = F_{ak}(P*(x)).
// Vanishes at both ends; its sign pattern on (0,1) is what makes the chords
// a valid lower boundary.
inline double phi(double x, EntropyOrder alpha, int k) {
  detail::require_phi_args(x, alpha, k, "phi");
  const double kd = static_cast<double>(k);
  const double u = (kd + x) / (kd * (kd + 1.0));
  const double v = (1.0 - x) / (kd + 1.0);
  double h;
  if (alpha.is_unit()) {
    h = -kd * u * std::log(u) - (v > 0.0 ? v * std::log(v) : 0.0);
  } else {
    const double a = alpha.value();
    const double va = v > 0.0 ? std::pow(v, a) : 0.0;
    h = (kd * std::pow(u, a) + va - 1.0) / (1.0 - a);
  }
  const auto c = coefficients(alpha, k);
  const double ic = (kd + x * x) / (kd * (kd + 1.0));
  return h - c.a + c.b * ic;
}

// d/dx Phi_{ak}(x) =
//   (a/(1-a)) (k^{1-a}(k+x)^{a-1} - (1-x)^{a-1})/(k+1)^a
//   + 2x (ln_a(k+1) - ln_a(k)).
// At x = 1 the derivative is -inf for a <= 1 (returned as such) and finite
// negative for a in (1,2).
inline double phi_prime(double x, EntropyOrder alpha, int k) {
  detail::require_phi_args(x, alpha, k, "phi_prime");
  const double kd = static_cast<double>(k);
  const double chord = 2.0 * x *
                       (ln_alpha(kd + 1.0, alpha) - ln_alpha(kd, alpha));
  if (alpha.is_unit()) {
    if (x >= 1.0) return -std::numeric_limits<double>::infinity();
    return std::log(kd * (1.0 - x) / (kd + x)) / (kd + 1.0) + chord;
  }
  const double a = alpha.value();
  const double lead = a / (1.0 - a) *
                      (std::pow(kd, 1.0 - a) * std::pow(kd + x, a - 1.0) -
                       std::pow(1.0 - x, a - 1.0)) /
                      std::pow(kd + 1.0, a);
  return lead + chord;
}

// d^2/dx^2 Phi_{ak}(x) = 2 (ln_a(k+1) - ln_a(k))
//   - a (k^{1-a}(k+x)^{a-2} + (1-x)^{a-2})/(k+1)^a.
// Positive at x = 0, and -inf at x = 1 for a < 2.
inline double phi_double_prime(double x, EntropyOrder alpha, int k) {
  detail::require_phi_args(x, alpha, k, "phi_double_prime");
  const double kd = static_cast<double>(k);
  const double a = alpha.value();
  const double curve = 2.0 * (ln_alpha(kd + 1.0, alpha) - ln_alpha(kd, alpha));
  return curve - a *
                     (std::pow(kd, 1.0 - a) * std::pow(kd + x, a - 2.0) +
                      std::pow(1.0 - x, a - 2.0)) /
                     std::pow(kd + 1.0, a);
}

// Inflection point of f_{ak}(x) = eta_a(x) + b_{ak} x^2 on (0,1):
//   xi_{ak} = (2 b_{ak}/a)^{1/(a-2)}.
// For a = 1 this is 1/(2 b_{1k}), which sits inside
// (1/(2(k+1)), 1/(2k)).
inline double inflection_xi(EntropyOrder alpha, int k) {
  if (k < 1) throw std::invalid_argument("inflection_xi: k must be >= 1");
  const double a = alpha.value();
  if (a <= 0.0 || a >= 2.0) {
    throw std::domain_error("inflection_xi needs order strictly inside (0,2)");
  }
  const double b = coefficients(alpha, k).b;
  return std::exp(std::log(2.0 * b / a) / (a - 2.0));
}

// g_k(a) = a/(k+1) + 2 (1+1/k)^{1-a} - 2 on (1,2]. Strictly positive below
// a = 2 and zero at a = 2; this is the sign certificate for the chord
// ordering used by the polygonal boundary.
inline double lemma_g(EntropyOrder alpha, int k) {
  if (k < 1) throw std::invalid_argument("lemma_g: k must be >= 1");
  const double a = alpha.value();
  if (a <= 1.0 || a > 2.0) {
    throw std::domain_error("lemma_g needs order in (1,2]");
  }
  const double kd = static_cast<double>(k);
  return a / (kd + 1.0) + 2.0 * std::pow(1.0 + 1.0 / kd, 1.0 - a) - 2.0;
}

}  // namespace icdiag::bounds
