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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "icdiag/bounds.hpp"
#include "icdiag/distribution.hpp"
#include "icdiag/entropy.hpp"
#include "oracles.hpp"

using icdiag::Distribution;
using icdiag::EntropyOrder;
namespace bounds = icdiag::bounds;

namespace {

const std::vector<double> kAlphaGrid = {0.0,  0.25, 0.5,  0.75, 1.0,
                                        1.25, 1.5,  1.75, 2.0};

}  // namespace

TEST_CASE("chord coefficients frozen values") {
  for (int k : {1, 2, 5, 10}) {
    const auto c = bounds::coefficients(2.0, k);
    CHECK(oracle::close_abs(c.a, 1.0, 1e-14));
    CHECK(oracle::close_abs(c.b, 1.0, 1e-14));
  }
  const auto c0 = bounds::coefficients(0.0, 4);
  CHECK(oracle::close_abs(c0.a, 8.0, 1e-13));
  CHECK(oracle::close_abs(c0.b, 20.0, 1e-13));
  const auto c1 = bounds::coefficients(1.0, 1);
  CHECK(oracle::close_abs(c1.a, 2.0 * std::log(2.0), 1e-15));
  CHECK(oracle::close_abs(c1.b, 2.0 * std::log(2.0), 1e-15));
  REQUIRE_THROWS_AS(bounds::coefficients(1.0, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(bounds::coefficients(2.5, 1), std::domain_error);
}

TEST_CASE("polygonal bound frozen value and domain") {
  const auto bv = bounds::polygonal_tsallis_bound(0.7, 1.0, 5);
  CHECK(oracle::close_abs(bv.value, 0.41588830833596718, 1e-15));
  CHECK(bv.achieving_k == 1);
  REQUIRE_THROWS_AS(bounds::polygonal_tsallis_bound(0.1, 1.0, 5),
                    std::domain_error);
  REQUIRE_THROWS_AS(bounds::polygonal_tsallis_bound(1.1, 1.0, 5),
                    std::domain_error);
  REQUIRE_THROWS_AS(bounds::PolygonalEvaluator(1.0, 1), std::invalid_argument);
  // Values a hair outside the interval are treated as the endpoint.
  CHECK(bounds::polygonal_tsallis_bound(1.0 + 1e-10, 1.0, 5).value == 0.0);
}

TEST_CASE("polygonal bound matches the brute-force reference") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int n : {2, 3, 5, 8, 17}) {
    for (double a : kAlphaGrid) {
      const bounds::PolygonalEvaluator eval(a, n);
      for (int rep = 0; rep < 40; ++rep) {
        const double x = 1.0 / n + uni(rng) * (1.0 - 1.0 / n);
        CAPTURE(n, a, x);
        const auto got = eval(x);
        const auto want = oracle::polygonal_ref(x, a, n);
        CHECK(oracle::close_abs(got.value, static_cast<double>(want.value),
                                1e-12 * (1.0 + std::abs(got.value))));
      }
    }
  }
}

TEST_CASE("breakpoints reproduce uniform entropies and pick the larger segment") {
  for (int n : {3, 6, 11}) {
    for (double a : kAlphaGrid) {
      const bounds::PolygonalEvaluator eval(a, n);
      for (int k = 1; k < n; ++k) {
        CAPTURE(n, a, k);
        const auto bv = eval(1.0 / k);
        CHECK(oracle::close_abs(
            bv.value, icdiag::tsallis(Distribution::uniform(k), a), 1e-12));
        // At order two every chord lies on the same line, so the tie-break
        // reports the largest segment; elsewhere the anchor's own segment
        // wins the tie with its left neighbour.
        CHECK(bv.achieving_k == (a == 2.0 ? n - 1 : k));
      }
      CHECK(oracle::close_abs(
          eval(1.0 / n).value,
          icdiag::tsallis(Distribution::uniform(n), a), 1e-12));
    }
  }
}

TEST_CASE("segment lookup agrees with the max form") {
  CHECK(bounds::segment_for(0.6, 5) == 1);
  CHECK(bounds::segment_for(0.3, 5) == 3);
  CHECK(bounds::segment_for(1.0, 5) == 1);
  CHECK(bounds::segment_for(0.21, 5) == 4);
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int n : {2, 4, 9}) {
    for (double a : kAlphaGrid) {
      const bounds::PolygonalEvaluator eval(a, n);
      for (int rep = 0; rep < 60; ++rep) {
        const double x = 1.0 / n + uni(rng) * (1.0 - 1.0 / n);
        CAPTURE(n, a, x);
        CHECK(oracle::close_abs(eval(x).value,
                                bounds::polygonal_tsallis_segment(x, a, n),
                                1e-13));
      }
    }
  }
}

TEST_CASE("renyi transform of the polygonal bound") {
  // At order one the two bound kinds coincide.
  const auto t = bounds::polygonal_tsallis_bound(0.4, 1.0, 5);
  const auto r = bounds::polygonal_renyi_bound(0.4, 1.0, 5);
  CHECK(r.value == t.value);
  for (double a : {0.0, 0.5, 1.5, 2.0}) {
    for (double x : {0.25, 0.4, 0.8}) {
      CAPTURE(a, x);
      const auto tb = bounds::polygonal_tsallis_bound(x, a, 5);
      const auto rb = bounds::polygonal_renyi_bound(x, a, 5);
      const double u = 1.0 - a;
      CHECK(oracle::close_abs(std::exp(u * rb.value), 1.0 + u * tb.value,
                              1e-13));
      CHECK(rb.achieving_k == tb.achieving_k);
    }
  }
}

TEST_CASE("the polygon improves on the smooth curve") {
  for (int n : {2, 5, 9}) {
    for (double a : kAlphaGrid) {
      const bounds::PolygonalEvaluator eval(a, n);
      for (int i = 0; i < 500; ++i) {
        const double x = 1.0 / n + (1.0 - 1.0 / n) * i / 499.0;
        CAPTURE(n, a, x);
        CHECK(eval(x).value >= bounds::smooth_bound(x, a) - 1e-12);
      }
    }
  }
  REQUIRE_THROWS_AS(bounds::smooth_bound(0.0, 1.0), std::domain_error);
  REQUIRE_THROWS_AS(bounds::smooth_bound(0.5, 2.5), std::domain_error);
}

TEST_CASE("max probability envelopes frozen values") {
  CHECK(oracle::close_abs(bounds::maxp_lower(0.6), 0.7236067977499789,
                          1e-15));
  CHECK(oracle::close_abs(bounds::maxp_upper(0.38, 5), 0.5794733192202055,
                          1e-15));
  CHECK(bounds::maxp_lower(1.0) == 1.0);
  CHECK(bounds::maxp_upper(1.0, 4) == 1.0);
  for (int k : {2, 3, 7}) {
    CAPTURE(k);
    CHECK(oracle::close_abs(bounds::maxp_lower(1.0 / k), 1.0 / k, 1e-15));
  }
  CHECK(oracle::close_abs(bounds::maxp_upper(0.25, 4), 0.25, 1e-15));
  REQUIRE_THROWS_AS(bounds::maxp_lower(0.0), std::domain_error);
  REQUIRE_THROWS_AS(bounds::maxp_upper(0.1, 5), std::domain_error);
}

TEST_CASE("max probability envelopes match the brute-force reference") {
  std::mt19937_64 rng(410);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int rep = 0; rep < 300; ++rep) {
    const double x = 1e-3 + uni(rng) * (1.0 - 1e-3);
    CAPTURE(x);
    CHECK(oracle::close_abs(bounds::maxp_lower(x),
                            static_cast<double>(oracle::maxp_lower_ref(x)),
                            1e-13));
  }
  for (int n : {2, 5, 8}) {
    for (int rep = 0; rep < 100; ++rep) {
      const double x = 1.0 / n + uni(rng) * (1.0 - 1.0 / n);
      CAPTURE(n, x);
      CHECK(oracle::close_abs(
          bounds::maxp_upper(x, n),
          static_cast<double>(oracle::maxp_upper_ref(x, n)), 1e-13));
    }
  }
}

TEST_CASE("two-outcome envelopes collapse to one curve") {
  for (int i = 0; i < 200; ++i) {
    const double x = 0.5 + 0.5 * i / 199.0;
    CAPTURE(x);
    CHECK(oracle::close_abs(bounds::maxp_lower(x), bounds::maxp_upper(x, 2),
                            1e-14));
  }
}

TEST_CASE("chord distance functional frozen value") {
  // Equal mixture of the uniform pair for k = 2 at order zero.
  const Distribution p({5.0 / 12, 5.0 / 12, 1.0 / 6});
  CHECK(oracle::close_abs(bounds::F_functional(p, 0.0, 2), 0.25, 1e-13));
  // The functional vanishes at both uniform endpoints.
  for (double a : {0.5, 1.0, 1.7}) {
    for (int k : {1, 2, 4}) {
      CAPTURE(a, k);
      CHECK(oracle::close_abs(
          bounds::F_functional(Distribution::uniform(k), a, k), 0.0, 1e-13));
      CHECK(oracle::close_abs(
          bounds::F_functional(Distribution::uniform(k + 1), a, k), 0.0,
          1e-13));
    }
  }
}

TEST_CASE("mixture chord distance and its derivatives") {
  for (double a : {0.3, 0.8, 1.0, 1.3, 1.9}) {
    for (int k : {1, 2, 5, 12}) {
      CAPTURE(a, k);
      CHECK(oracle::close_abs(bounds::phi(0.0, a, k), 0.0, 1e-13));
      CHECK(oracle::close_abs(bounds::phi(1.0, a, k), 0.0, 1e-13));
      CHECK(bounds::phi_double_prime(0.0, a, k) > 0.0);
      CHECK(bounds::phi_prime(1.0, a, k) < 0.0);
    }
  }
  // Below order one the right-end derivative diverges to minus infinity.
  CHECK(std::isinf(bounds::phi_prime(1.0, 0.5, 3)));
  REQUIRE_THROWS_AS(bounds::phi(0.5, 2.0, 3), std::domain_error);
  REQUIRE_THROWS_AS(bounds::phi(1.5, 1.0, 3), std::domain_error);
}

TEST_CASE("finite difference check of the mixture derivatives") {
  const double h = 1e-6;
  for (double a : {0.6, 1.0, 1.4}) {
    for (int k : {1, 3, 7}) {
      for (double x : {0.2, 0.5, 0.8}) {
        CAPTURE(a, k, x);
        const double num =
            (bounds::phi(x + h, a, k) - bounds::phi(x - h, a, k)) / (2.0 * h);
        CHECK(oracle::close_abs(num, bounds::phi_prime(x, a, k), 1e-6));
        const double num2 = (bounds::phi_prime(x + h, a, k) -
                             bounds::phi_prime(x - h, a, k)) /
                            (2.0 * h);
        CHECK(oracle::close_abs(num2, bounds::phi_double_prime(x, a, k),
                                1e-5));
      }
    }
  }
}

TEST_CASE("inflection point bracket at order one") {
  for (int k = 1; k <= 30; ++k) {
    CAPTURE(k);
    const double xi = bounds::inflection_xi(1.0, k);
    CHECK(xi > 1.0 / (2.0 * (k + 1)));
    CHECK(xi < 1.0 / (2.0 * k));
  }
  REQUIRE_THROWS_AS(bounds::inflection_xi(2.0, 3), std::domain_error);
}

TEST_CASE("chord ordering certificate g") {
  CHECK(oracle::close_abs(bounds::lemma_g(1.5, 1), 0.16421356237309515,
                          1e-15));
  for (int k : {1, 2, 10, 50}) {
    CAPTURE(k);
    CHECK(oracle::close_abs(bounds::lemma_g(2.0, k), 0.0, 1e-14));
    for (double a : {1.05, 1.3, 1.6, 1.95}) {
      CAPTURE(a);
      CHECK(bounds::lemma_g(a, k) > 0.0);
    }
  }
  REQUIRE_THROWS_AS(bounds::lemma_g(0.9, 3), std::domain_error);
  REQUIRE_THROWS_AS(bounds::lemma_g(2.1, 3), std::domain_error);
}

TEST_CASE("random distributions respect both diagram bounds") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uni(0.01, 1.0);
  for (int n : {2, 4, 7}) {
    const std::vector<double> orders = kAlphaGrid;
    std::vector<bounds::PolygonalEvaluator> evals;
    for (double a : orders) evals.emplace_back(EntropyOrder(a), n);
    for (int rep = 0; rep < 200; ++rep) {
      std::vector<double> raw(static_cast<std::size_t>(n));
      double total = 0.0;
      for (double& v : raw) {
        v = uni(rng);
        total += v;
      }
      for (double& v : raw) v /= total;
      const Distribution p(raw);
      const double ic = icdiag::coincidence(p);
      const double mp = icdiag::max_probability(p);
      CHECK(mp >= bounds::maxp_lower(ic) - 1e-12);
      CHECK(mp <= bounds::maxp_upper(ic, n) + 1e-12);
      for (std::size_t ai = 0; ai < orders.size(); ++ai) {
        CAPTURE(n, rep, orders[ai]);
        CHECK(icdiag::tsallis(p, orders[ai]) >=
              evals[ai](ic).value - 1e-12);
      }
    }
  }
}
