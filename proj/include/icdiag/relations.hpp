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
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "icdiag/bounds.hpp"
#include "icdiag/distribution.hpp"
#include "icdiag/entropy.hpp"
#include "icdiag/quantum.hpp"

namespace icdiag::relations {

enum class EntropyKind { Tsallis, Renyi, MinEntropy };

inline const char* kind_name(EntropyKind k) {
  switch (k) {
    case EntropyKind::Tsallis: return "tsallis";
    case EntropyKind::Renyi: return "renyi";
    case EntropyKind::MinEntropy: return "min";
  }
  return "tsallis";
}

// Everything a state-dependent uncertainty bound needs. The abscissa fed to
// the polygonal machinery is built from these; purity defaults to 1 (pure
// states give the state-independent form).
struct ScenarioParams {
  quantum::Family family = quantum::Family::Sic;
  int d = 0;
  int M = 1;  // number of measurements (basis or smoothed-measurement sets)
  int n = 0;  // frame size; d^2 for the symmetric families
  std::optional<double> kappa;
  std::optional<double> theta;
  std::optional<double> c;  // frame overlap constant, derived when absent
  std::optional<double> S;  // frame constant, derived when absent
  double purity = 1.0;
};

struct BoundReport {
  quantum::Family family = quantum::Family::Sic;
  int d = 0;
  int M = 1;
  int n = 0;
  std::optional<double> kappa;
  std::optional<double> theta;
  double alpha = 1.0;
  EntropyKind kind = EntropyKind::Tsallis;
  double purity = 1.0;
  double bound = 0.0;
  int achieving_k = 1;
  std::optional<double> measured;
  std::optional<double> slack;  // measured - bound when measured is present
  std::string note;
};

namespace detail {

inline void require_purity(int d, double& purity) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  const double lo = 1.0 / d;
  if (!(purity >= lo - 1e-9) || purity > 1.0 + 1e-9) {
    throw std::domain_error("purity must lie in [1/d, 1], got " +
                            std::to_string(purity));
  }
  purity = std::clamp(purity, lo, 1.0);
}

inline BoundReport polygonal_report(const ScenarioParams& p,
                                    EntropyOrder alpha, EntropyKind kind,
                                    double abscissa, int outcomes) {
  const bounds::BoundValue bv =
      kind == EntropyKind::Renyi
          ? bounds::polygonal_renyi_bound(abscissa, alpha, outcomes)
          : bounds::polygonal_tsallis_bound(abscissa, alpha, outcomes);
  BoundReport r;
  r.family = p.family;
  r.d = p.d;
  r.M = p.M;
  r.n = p.n;
  r.kappa = p.kappa;
  r.theta = p.theta;
  r.alpha = alpha.value();
  r.kind = kind;
  r.purity = p.purity;
  r.bound = bv.value;
  r.achieving_k = bv.achieving_k;
  return r;
}

}  // namespace detail

// Average coincidence across M unbiased bases: (purity d + M - 1)/(M d).
inline double mub_abscissa(int d, int M, double purity) {
  detail::require_purity(d, purity);
  if (M < 1 || M > d + 1) {
    throw std::invalid_argument("basis count must lie in [1, d+1]");
  }
  return (purity * d + M - 1.0) / (static_cast<double>(M) * d);
}

// Average coincidence across M smoothed unbiased measurements:
// (M-1)/(M d) + (1 - kappa + (kappa d - 1) purity)/(M (d-1)).
inline double mum_abscissa(int d, int M, double kappa, double purity) {
  detail::require_purity(d, purity);
  if (M < 1 || M > d + 1) {
    throw std::invalid_argument("measurement count must lie in [1, d+1]");
  }
  if (!(kappa > 1.0 / d) || kappa > 1.0 + 1e-12) {
    throw std::domain_error("kappa must lie in (1/d, 1]");
  }
  return (M - 1.0) / (static_cast<double>(M) * d) +
         (1.0 - kappa + (kappa * d - 1.0) * purity) /
             (static_cast<double>(M) * (d - 1.0));
}

// Coincidence ceiling for a rank-one tight-frame measurement:
// (S c + (1-c) purity)/S^2 with S = n/d and c d = (n-d)/(n-1).
inline double etf_abscissa(int d, int n, double purity,
                           std::optional<double> c = std::nullopt,
                           std::optional<double> S = std::nullopt) {
  detail::require_purity(d, purity);
  if (n < d) throw std::invalid_argument("frame needs n >= d vectors");
  if (n > d * d) {
    throw std::invalid_argument("equiangular frame needs n <= d^2 vectors");
  }
  const double Sv = S ? *S : static_cast<double>(n) / d;
  const double cv = c ? *c
                      : (n > 1 ? (static_cast<double>(n) - d) /
                                     (static_cast<double>(d) * (n - 1))
                               : 0.0);
  return (Sv * cv + (1.0 - cv) * purity) / (Sv * Sv);
}

// Exact coincidence of the symmetric complete measurement:
// (1 + purity)/(d (d+1)).
inline double sic_abscissa(int d, double purity) {
  detail::require_purity(d, purity);
  return (1.0 + purity) / (static_cast<double>(d) * (d + 1));
}

// Exact coincidence of the generalized symmetric measurement:
// (d (1 - theta d) + (theta d^3 - 1) purity)/(d (d^2 - 1)).
// Written centered at the maximally mixed state so purity = 1/d lands on
// the breakpoint abscissa 1/d^2 exactly; the square-root envelope has an
// infinite one-sided slope there and must not be fed a stray ulp above it.
inline double gsic_abscissa(int d, double theta, double purity) {
  detail::require_purity(d, purity);
  const double d3 = static_cast<double>(d) * d * d;
  if (!(theta > 1.0 / d3) || theta > 1.0 / (static_cast<double>(d) * d) + 1e-12) {
    throw std::domain_error("theta must lie in (1/d^3, 1/d^2]");
  }
  return 1.0 / (static_cast<double>(d) * d) +
         (theta * d3 - 1.0) * (purity - 1.0 / d) /
             (d * (static_cast<double>(d) * d - 1.0));
}

// Tsallis bound on the average entropy of M unbiased bases, orders [0,2]:
// the polygonal boundary evaluated at the average-coincidence abscissa,
// with segments up to d-1.
inline BoundReport mub_avg_bound(const ScenarioParams& p, EntropyOrder alpha) {
  ScenarioParams q = p;
  detail::require_purity(q.d, q.purity);
  const double x = mub_abscissa(q.d, q.M, q.purity);
  return detail::polygonal_report(q, alpha, EntropyKind::Tsallis, x, q.d);
}

inline BoundReport mum_tsallis_bound(const ScenarioParams& p,
                                     EntropyOrder alpha) {
  ScenarioParams q = p;
  detail::require_purity(q.d, q.purity);
  if (!q.kappa) throw std::invalid_argument("smoothed bound needs kappa");
  const double x = mum_abscissa(q.d, q.M, *q.kappa, q.purity);
  return detail::polygonal_report(q, alpha, EntropyKind::Tsallis, x, q.d);
}

// Renyi bound for averaged smoothed measurements. Proven only for orders in
// [1,2]: the average of Renyi entropies is not a monotone function of the
// average coincidence below order one, so such requests are refused.
inline BoundReport mum_renyi_bound(const ScenarioParams& p,
                                   EntropyOrder alpha) {
  if (alpha.value() < 1.0 - 1e-12) {
    throw std::domain_error(
        "the averaged Renyi bound holds for orders in [1,2] only");
  }
  ScenarioParams q = p;
  detail::require_purity(q.d, q.purity);
  if (!q.kappa) throw std::invalid_argument("smoothed bound needs kappa");
  const double x = mum_abscissa(q.d, q.M, *q.kappa, q.purity);
  return detail::polygonal_report(q, alpha, EntropyKind::Renyi, x, q.d);
}

struct FamilyBounds {
  BoundReport tsallis;
  std::optional<BoundReport> renyi;
};

inline FamilyBounds mum_bounds(const ScenarioParams& p, EntropyOrder alpha) {
  FamilyBounds fb{mum_tsallis_bound(p, alpha), std::nullopt};
  if (alpha.value() >= 1.0 - 1e-12) fb.renyi = mum_renyi_bound(p, alpha);
  return fb;
}

// Single-measurement bounds evaluate the polygonal boundary at the family's
// coincidence ceiling. Both entropy kinds hold for all orders in [0,2]
// here; no averaging is involved.
inline FamilyBounds etf_bounds(const ScenarioParams& p, EntropyOrder alpha) {
  ScenarioParams q = p;
  detail::require_purity(q.d, q.purity);
  const double x = etf_abscissa(q.d, q.n, q.purity, q.c, q.S);
  FamilyBounds fb{
      detail::polygonal_report(q, alpha, EntropyKind::Tsallis, x, q.n),
      detail::polygonal_report(q, alpha, EntropyKind::Renyi, x, q.n)};
  return fb;
}

inline FamilyBounds sic_bounds(const ScenarioParams& p, EntropyOrder alpha) {
  ScenarioParams q = p;
  detail::require_purity(q.d, q.purity);
  q.n = q.d * q.d;
  const double x = sic_abscissa(q.d, q.purity);
  FamilyBounds fb{
      detail::polygonal_report(q, alpha, EntropyKind::Tsallis, x, q.n),
      detail::polygonal_report(q, alpha, EntropyKind::Renyi, x, q.n)};
  return fb;
}

inline FamilyBounds gsic_bounds(const ScenarioParams& p, EntropyOrder alpha) {
  ScenarioParams q = p;
  detail::require_purity(q.d, q.purity);
  if (!q.theta) throw std::invalid_argument("generalized bound needs theta");
  q.n = q.d * q.d;
  const double x = gsic_abscissa(q.d, *q.theta, q.purity);
  FamilyBounds fb{
      detail::polygonal_report(q, alpha, EntropyKind::Tsallis, x, q.n),
      detail::polygonal_report(q, alpha, EntropyKind::Renyi, x, q.n)};
  return fb;
}

// Two-sided min-entropy estimate for the symmetric families:
//   lower = 2 ln d - ln(1 + sqrt(theta d^3 - 1) sqrt(d purity - 1))
//   upper = -ln Lambda(abscissa)
// For the maximally mixed state both sides collapse to 2 ln d.
inline std::pair<double, double> min_entropy_sandwich(
    const ScenarioParams& p) {
  ScenarioParams q = p;
  detail::require_purity(q.d, q.purity);
  double theta = 1.0 / (static_cast<double>(q.d) * q.d);
  if (q.family == quantum::Family::Gsic) {
    if (!q.theta) throw std::invalid_argument("generalized bound needs theta");
    theta = *q.theta;
  } else if (q.family != quantum::Family::Sic) {
    throw std::invalid_argument(
        "the min-entropy sandwich applies to the symmetric families");
  }
  const double d3 = static_cast<double>(q.d) * q.d * q.d;
  const double r1 = std::max(0.0, theta * d3 - 1.0);
  const double r2 = std::max(0.0, q.d * q.purity - 1.0);
  const double lower =
      2.0 * std::log(static_cast<double>(q.d)) -
      std::log1p(std::sqrt(r1) * std::sqrt(r2));
  const double upper =
      -std::log(bounds::maxp_lower(gsic_abscissa(q.d, theta, q.purity)));
  return {lower, upper};
}

namespace detail {

inline double average_entropy(const quantum::MeasurementSet& set,
                              const quantum::DensityMatrix& rho,
                              EntropyOrder alpha, EntropyKind kind) {
  double total = 0.0;
  for (const auto& m : set.measurements) {
    const Distribution p = quantum::born_probabilities(m, rho);
    total += kind == EntropyKind::Renyi ? renyi(p, alpha) : tsallis(p, alpha);
  }
  return total / set.count();
}

inline void attach_measurement(BoundReport& r, double measured) {
  r.measured = measured;
  r.slack = measured - r.bound;
}

}  // namespace detail

// Certification of a measurement set against its family bound: for every
// state and order, the measured average entropy and its slack over the
// bound. Orders outside a form's proven range are skipped, not extrapolated.
inline std::vector<BoundReport> certify(
    const quantum::MeasurementSet& set,
    const std::vector<quantum::DensityMatrix>& states,
    const std::vector<double>& alphas) {
  std::vector<BoundReport> out;
  for (const auto& rho : states) {
    ScenarioParams p;
    p.family = set.family;
    p.d = set.d;
    p.M = set.count();
    p.kappa = set.kappa;
    p.purity = quantum::purity(rho);
    for (double a : alphas) {
      const EntropyOrder alpha(a);
      BoundReport t = set.family == quantum::Family::Mum
                          ? mum_tsallis_bound(p, alpha)
                          : mub_avg_bound(p, alpha);
      detail::attach_measurement(
          t, detail::average_entropy(set, rho, alpha, EntropyKind::Tsallis));
      out.push_back(std::move(t));
      if (a >= 1.0 - 1e-12) {
        ScenarioParams q = p;
        if (!q.kappa) q.kappa = 1.0;  // unbiased bases are the kappa = 1 case
        BoundReport r = mum_renyi_bound(q, alpha);
        r.family = set.family;
        detail::attach_measurement(
            r, detail::average_entropy(set, rho, alpha, EntropyKind::Renyi));
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

// Certification of a single measurement. Family parameters drive the exact
// abscissa; measurements without them fall back to the generic polygonal
// bound at the measured coincidence, which is noted in the report.
inline std::vector<BoundReport> certify(
    const quantum::Povm& povm,
    const std::vector<quantum::DensityMatrix>& states,
    const std::vector<double>& alphas) {
  std::vector<BoundReport> out;
  for (const auto& rho : states) {
    const Distribution born = quantum::born_probabilities(povm, rho);
    ScenarioParams p;
    p.family = povm.family;
    p.d = povm.d;
    p.n = povm.outcomes();
    p.theta = povm.theta;
    p.c = povm.c;
    p.S = povm.S;
    p.purity = quantum::purity(rho);
    for (double a : alphas) {
      const EntropyOrder alpha(a);
      FamilyBounds fb;
      std::string note;
      switch (povm.family) {
        case quantum::Family::Sic:
          fb = sic_bounds(p, alpha);
          break;
        case quantum::Family::Gsic:
          fb = gsic_bounds(p, alpha);
          break;
        case quantum::Family::Etf:
        case quantum::Family::Basis:
          fb = etf_bounds(p, alpha);
          break;
        default: {
          // No family parameters: bound the entropy by the polygonal curve
          // at the coincidence actually measured.
          const double ic = coincidence(born);
          fb.tsallis = detail::polygonal_report(p, alpha,
                                                EntropyKind::Tsallis, ic,
                                                p.n);
          fb.renyi = detail::polygonal_report(p, alpha, EntropyKind::Renyi,
                                              ic, p.n);
          note = "generic bound at measured coincidence";
          break;
        }
      }
      fb.tsallis.note = note;
      detail::attach_measurement(fb.tsallis, tsallis(born, alpha));
      out.push_back(std::move(fb.tsallis));
      if (fb.renyi) {
        fb.renyi->note = note;
        detail::attach_measurement(*fb.renyi, renyi(born, alpha));
        out.push_back(std::move(*fb.renyi));
      }
    }
  }
  return out;
}

}  // namespace icdiag::relations
