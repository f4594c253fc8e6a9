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
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace icdiag {

// Entries may undershoot zero or overshoot one by at most this before
// construction fails; anything inside the band is clamped.
inline constexpr double kNegTol = 1e-10;
// Allowed deviation of the raw total from one; the vector is then
// renormalized so downstream sums are exact.
inline constexpr double kSumTol = 1e-9;

// Validated probability vector. Zero entries are kept in place: the
// order-zero entropy counts the support size, so dropping them would
// change results.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs) : p_(std::move(probs)) {
    if (p_.empty()) {
      throw std::invalid_argument("distribution needs at least one entry");
    }
    double sum = 0.0;
    for (double& v : p_) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("distribution entries must be finite");
      }
      if (v < -kNegTol || v > 1.0 + kNegTol) {
        throw std::invalid_argument("probability outside [0,1]: " +
                                    std::to_string(v));
      }
      v = std::clamp(v, 0.0, 1.0);
      sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTol) {
      throw std::invalid_argument("probabilities sum to " +
                                  std::to_string(sum) + ", expected 1");
    }
    for (double& v : p_) v /= sum;
  }

  // Uniform distribution on k outcomes, optionally padded with zeros to
  // length n >= k.
  static Distribution uniform(int k, int n = 0) {
    if (k < 1) throw std::invalid_argument("uniform support must be >= 1");
    if (n == 0) n = k;
    if (n < k) throw std::invalid_argument("padding length below support");
    std::vector<double> v(static_cast<std::size_t>(n), 0.0);
    std::fill_n(v.begin(), k, 1.0 / k);
    return Distribution(std::move(v));
  }

  int size() const { return static_cast<int>(p_.size()); }
  double operator[](int j) const { return p_[static_cast<std::size_t>(j)]; }
  const std::vector<double>& probs() const { return p_; }
  std::vector<double>::const_iterator begin() const { return p_.begin(); }
  std::vector<double>::const_iterator end() const { return p_.end(); }

 private:
  std::vector<double> p_;
};

// Entropic order alpha >= 0. Orders within 1e-8 of one are evaluated with
// the Shannon formulas; the generalized expressions degenerate there.
class EntropyOrder {
 public:
  EntropyOrder(double alpha) : alpha_(alpha) {  // NOLINT: implicit by design
    if (!std::isfinite(alpha) || alpha < 0.0) {
      throw std::invalid_argument("entropic order must be finite and >= 0");
    }
  }

  double value() const { return alpha_; }
  bool is_unit() const { return std::abs(alpha_ - 1.0) < 1e-8; }

 private:
  double alpha_;
};

}  // namespace icdiag
