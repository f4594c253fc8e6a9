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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "icdiag/distribution.hpp"

namespace icdiag {

// Generalized logarithm ln_a(x) = (x^(1-a) - 1)/(1-a); plain ln at a = 1.
// The expm1 composition keeps values stable as a -> 1.
inline double ln_alpha(double x, EntropyOrder alpha) {
  if (!(x > 0.0)) throw std::invalid_argument("ln_alpha needs x > 0");
  if (alpha.is_unit()) return std::log(x);
  const double t = 1.0 - alpha.value();
  return std::expm1(t * std::log(x)) / t;
}

// eta_a(x) = (x^a - x)/(1-a) on [0,1]; -x ln x at a = 1. eta(0) = eta(1) = 0,
// with 0^0 = 0 so the order-zero sum counts the support.
inline double eta_alpha(double x, EntropyOrder alpha) {
  if (!(x >= 0.0) || x > 1.0) {
    throw std::invalid_argument("eta_alpha needs x in [0,1]");
  }
  if (x == 0.0) return 0.0;
  if (alpha.is_unit()) return -x * std::log(x);
  const double t = alpha.value() - 1.0;
  return -x * std::expm1(t * std::log(x)) / t;
}

inline double shannon(const Distribution& p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

// Tsallis entropy H_a(P) = sum_j eta_a(p_j) = ((sum_j p_j^a) - 1)/(1-a).
// At a = 0 this is the support size minus one, at a = 2 it is 1 - I(P).
inline double tsallis(const Distribution& p, EntropyOrder alpha) {
  if (alpha.is_unit()) return shannon(p);
  const double t = alpha.value() - 1.0;
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::expm1(t * std::log(v)) / t;
  }
  return h;
}

// Renyi entropy R_a(P) = ln(sum_j p_j^a)/(1-a). Evaluated as
// ln(1 + (1-a) H_a(P))/(1-a); the log1p composition keeps the power sum's
// distance from one at full precision.
inline double renyi(const Distribution& p, EntropyOrder alpha) {
  if (alpha.is_unit()) return shannon(p);
  const double t = 1.0 - alpha.value();
  return std::log1p(t * tsallis(p, alpha)) / t;
}

// Index of coincidence I(P) = sum_j p_j^2.
inline double coincidence(const Distribution& p) {
  double s = 0.0;
  for (double v : p) s += v * v;
  return s;
}

inline double max_probability(const Distribution& p) {
  return *std::max_element(p.begin(), p.end());
}

// Min-entropy R_inf(P) = -ln max_j p_j.
inline double min_entropy(const Distribution& p) {
  return -std::log(max_probability(p));
}

}  // namespace icdiag
