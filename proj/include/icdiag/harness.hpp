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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "icdiag/bounds.hpp"
#include "icdiag/distribution.hpp"
#include "icdiag/entropy.hpp"
#include "icdiag/quantum.hpp"
#include "icdiag/relations.hpp"

namespace icdiag::harness {

// Sweep worker count, re-read from ICDIAG_THREADS on every call. Results
// never depend on it: work is cut into a fixed number of chunks with
// per-chunk generators, and partial results merge in chunk order.
inline int thread_budget() {
  if (const char* env = std::getenv("ICDIAG_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) {
      return static_cast<int>(v);
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct SweepConfig {
  int n = 5;
  std::vector<double> alphas = {0.0,  0.25, 0.5,  0.75, 1.0,
                                1.25, 1.5,  1.75, 2.0};
  long samples = 20000;
  std::uint64_t seed = 12345;
  int grid = 256;
  double tolerance = 1e-10;
};

// Slack statistics for one (order, coincidence-decile) bucket.
struct GapStat {
  double alpha = 0.0;
  int decile = 0;
  long count = 0;
  double min_slack = 0.0;
  double mean_slack = 0.0;
};

// Check/failure tally for one named family of checks within a sweep.
struct CategoryStat {
  std::string name;
  long checks = 0;
  long failures = 0;
};

struct SweepVerdict {
  std::string kind;
  bool pass = true;
  int n = 0;
  long samples = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  long checks = 0;
  long failure_count = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  double worst_alpha = 0.0;
  std::vector<double> worst_probs;
  std::string worst_case;
  std::vector<GapStat> gap_stats;
  std::vector<CategoryStat> categories;
  std::vector<std::string> failures;  // first few messages only
};

// Uniform sample from the probability simplex (normalized exponentials).
inline Distribution sample_simplex(int n, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("simplex sample needs n >= 1");
  std::vector<double> p(static_cast<std::size_t>(n));
  double total = 0.0;
  for (double& v : p) {
    // u in (0, 1]: log stays finite.
    const double u = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    v = -std::log(u);
    total += v;
  }
  if (total <= 0.0) return Distribution::uniform(n);
  for (double& v : p) v /= total;
  return Distribution(p);
}

// x U_k + (1-x) U_{k+1}, padded with zeros to pad_to outcomes. These
// mixtures trace the lower boundary of the entropy diagram.
inline Distribution mixture_uk(int k, double x, int pad_to = 0) {
  if (k < 1) throw std::invalid_argument("mixture needs k >= 1");
  if (!(x >= 0.0) || x > 1.0) {
    throw std::domain_error("mixture weight must lie in [0, 1]");
  }
  const int dim = std::max(k + 1, pad_to);
  std::vector<double> p(static_cast<std::size_t>(dim), 0.0);
  const double u = (k + x) / (static_cast<double>(k) * (k + 1));
  const double v = (1.0 - x) / (k + 1.0);
  for (int j = 0; j < k; ++j) p[static_cast<std::size_t>(j)] = u;
  p[static_cast<std::size_t>(k)] = v;
  return Distribution(p);
}

// Cluster extremal: k-1 copies of p1 plus the remainder, zeros to n
// outcomes. For p1 in [1/k, 1/(k-1)] this saturates the max-probability
// lower envelope exactly.
inline Distribution extremal_maxp(int k, double p1, int n) {
  if (k < 2 || n < k) throw std::invalid_argument("cluster needs 2 <= k <= n");
  if (!(p1 >= 1.0 / k) || p1 > 1.0 / (k - 1.0) + 1e-12) {
    throw std::domain_error("cluster head must lie in [1/k, 1/(k-1)]");
  }
  std::vector<double> p(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j + 1 < k; ++j) p[static_cast<std::size_t>(j)] = p1;
  p[static_cast<std::size_t>(k - 1)] = std::max(0.0, 1.0 - (k - 1.0) * p1);
  return Distribution(p);
}

// One-big extremal: p1 plus n-1 equal entries. Saturates the upper
// envelope exactly for p1 in [1/n, 1].
inline Distribution extremal_maxp_upper(double p1, int n) {
  if (n < 2) throw std::invalid_argument("extremal needs n >= 2");
  if (!(p1 >= 1.0 / n) || p1 > 1.0 + 1e-12) {
    throw std::domain_error("head probability must lie in [1/n, 1]");
  }
  std::vector<double> p(static_cast<std::size_t>(n),
                        (1.0 - std::min(p1, 1.0)) / (n - 1.0));
  p[0] = std::min(p1, 1.0);
  return Distribution(p);
}

namespace detail {

// Chunk count is fixed so verdicts are identical for every thread budget.
inline constexpr int kChunks = 16;
inline constexpr std::uint64_t kSeedStride = 0x9e3779b97f4a7c15ULL;
inline constexpr std::size_t kMaxFailureMessages = 16;

// Category slots of the quantum sweep verdict.
inline constexpr std::size_t kQcConstruction = 0;
inline constexpr std::size_t kQcIdentity = 1;
inline constexpr std::size_t kQcCap = 2;
inline constexpr std::size_t kQcCertification = 3;
inline constexpr std::size_t kQcSandwich = 4;
inline constexpr std::size_t kQcCollapse = 5;

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class Partial, class Work>
std::vector<Partial> run_chunks(int chunks, Work&& work) {
  std::vector<Partial> out(static_cast<std::size_t>(chunks));
  const int threads = std::min(chunks, thread_budget());
  if (threads <= 1) {
    for (int c = 0; c < chunks; ++c) out[static_cast<std::size_t>(c)] = work(c);
    return out;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
        out[static_cast<std::size_t>(c)] = work(c);
      }
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

struct GapCell {
  long count = 0;
  double min = std::numeric_limits<double>::infinity();
  double sum = 0.0;
};

struct Accum {
  long checks = 0;
  long failure_count = 0;
  std::vector<std::string> failures;
  double min_slack = std::numeric_limits<double>::infinity();
  double worst_alpha = 0.0;
  std::vector<double> worst_probs;
  std::string worst_case;
  std::vector<GapCell> gaps;
  std::vector<CategoryStat> categories;

  explicit Accum(std::size_t gap_cells = 0) : gaps(gap_cells) {}

  void init_categories(std::initializer_list<const char*> names) {
    categories.clear();
    for (const char* name : names) categories.push_back({name, 0, 0});
  }

  // Tallies one check, both globally and under the named category.
  void check(std::size_t cat, bool ok) {
    ++checks;
    if (cat < categories.size()) {
      ++categories[cat].checks;
      if (!ok) ++categories[cat].failures;
    }
  }

  void fail(std::string msg) {
    ++failure_count;
    if (failures.size() < kMaxFailureMessages) {
      failures.push_back(std::move(msg));
    }
  }

  void record_worst(double slack, double alpha, std::vector<double> probs,
                    std::string what) {
    if (slack < min_slack) {
      min_slack = slack;
      worst_alpha = alpha;
      worst_probs = std::move(probs);
      worst_case = std::move(what);
    }
  }

  void bucket(std::size_t cell, double slack) {
    if (cell < gaps.size()) {
      ++gaps[cell].count;
      gaps[cell].min = std::min(gaps[cell].min, slack);
      gaps[cell].sum += slack;
    }
  }

  void merge(const Accum& o) {
    checks += o.checks;
    failure_count += o.failure_count;
    for (const auto& f : o.failures) {
      if (failures.size() >= kMaxFailureMessages) break;
      failures.push_back(f);
    }
    if (o.min_slack < min_slack) {
      min_slack = o.min_slack;
      worst_alpha = o.worst_alpha;
      worst_probs = o.worst_probs;
      worst_case = o.worst_case;
    }
    if (gaps.size() == o.gaps.size()) {
      for (std::size_t i = 0; i < gaps.size(); ++i) {
        gaps[i].count += o.gaps[i].count;
        gaps[i].min = std::min(gaps[i].min, o.gaps[i].min);
        gaps[i].sum += o.gaps[i].sum;
      }
    }
    if (categories.size() == o.categories.size()) {
      for (std::size_t i = 0; i < categories.size(); ++i) {
        categories[i].checks += o.categories[i].checks;
        categories[i].failures += o.categories[i].failures;
      }
    }
  }
};

// Decile of a value within [lo, 1].
inline int span_decile(double v, double lo) {
  const double span = 1.0 - lo;
  if (!(span > 0.0)) return 0;
  const double t = (v - lo) / span;
  const int dec = static_cast<int>(t * 10.0);
  return std::clamp(dec, 0, 9);
}

inline SweepVerdict finish_verdict(Accum&& acc, const SweepConfig& cfg,
                                   std::string kind, long samples, int n) {
  SweepVerdict v;
  v.kind = std::move(kind);
  v.n = n;
  v.samples = samples;
  v.seed = cfg.seed;
  v.tolerance = cfg.tolerance;
  v.checks = acc.checks;
  v.failure_count = acc.failure_count;
  v.pass = acc.failure_count == 0;
  v.min_slack = acc.min_slack;
  v.worst_alpha = acc.worst_alpha;
  v.worst_probs = std::move(acc.worst_probs);
  v.worst_case = std::move(acc.worst_case);
  v.categories = std::move(acc.categories);
  v.failures = std::move(acc.failures);
  for (std::size_t ai = 0; ai * 10 < acc.gaps.size(); ++ai) {
    for (int dec = 0; dec < 10; ++dec) {
      const GapCell& cell = acc.gaps[ai * 10 + static_cast<std::size_t>(dec)];
      if (cell.count == 0) continue;
      GapStat g;
      g.alpha = cfg.alphas[ai];
      g.decile = dec;
      g.count = cell.count;
      g.min_slack = cell.min;
      g.mean_slack = cell.sum / static_cast<double>(cell.count);
      v.gap_stats.push_back(g);
    }
  }
  return v;
}

}  // namespace detail

// Worst-case error of the polygonal boundary at the uniform corners:
// the bound evaluated at 1/k must reproduce the entropy of U_k.
struct BreakpointReport {
  double max_error = 0.0;
  int worst_k = 1;
  double worst_alpha = 0.0;
};

inline BreakpointReport breakpoint_exactness(const std::vector<double>& alphas,
                                             int kmax) {
  if (kmax < 1) throw std::invalid_argument("breakpoint scan needs kmax >= 1");
  BreakpointReport rep;
  for (double a : alphas) {
    const EntropyOrder alpha(a);
    const bounds::PolygonalEvaluator eval(alpha, kmax + 1);
    for (int k = 1; k <= kmax; ++k) {
      const double h = tsallis(Distribution::uniform(k), alpha);
      const double err = std::abs(h - eval(1.0 / k).value);
      if (err > rep.max_error) {
        rep.max_error = err;
        rep.worst_k = k;
        rep.worst_alpha = a;
      }
    }
  }
  return rep;
}

// Grid scan of the two dominance facts for the entropy boundary: the
// polygonal bound never dips below the smooth curve it interpolates (that is
// the improvement over the plain Jensen estimate), and the max-of-segments
// form agrees with the direct segment lookup.
struct DominanceReport {
  double max_violation = 0.0;
  double max_segment_mismatch = 0.0;
  double worst_x = 0.0;
  double worst_alpha = 0.0;
};

inline DominanceReport dominance_scan(const std::vector<double>& alphas, int n,
                                      int grid_points) {
  if (n < 2 || grid_points < 2) {
    throw std::invalid_argument("dominance scan needs n >= 2, grid >= 2");
  }
  DominanceReport rep;
  for (double a : alphas) {
    const EntropyOrder alpha(a);
    const bounds::PolygonalEvaluator eval(alpha, n);
    for (int i = 0; i < grid_points; ++i) {
      const double t = static_cast<double>(i) / (grid_points - 1);
      const double x = 1.0 / n + t * (1.0 - 1.0 / n);
      const double poly = eval(x).value;
      const double smooth = bounds::smooth_bound(x, alpha);
      if (smooth - poly > rep.max_violation) {
        rep.max_violation = smooth - poly;
        rep.worst_x = x;
        rep.worst_alpha = a;
      }
      const double seg = bounds::polygonal_tsallis_segment(x, alpha, n);
      rep.max_segment_mismatch =
          std::max(rep.max_segment_mismatch, std::abs(poly - seg));
    }
  }
  return rep;
}

// Grid scan showing the piecewise closed forms equal their brute-force
// definitions: max over segments for the entropy boundary, max over valid
// branches for the max-probability envelope.
struct EnvelopeReport {
  double max_polygon_mismatch = 0.0;
  double max_lambda_mismatch = 0.0;
};

inline EnvelopeReport envelope_equivalence(const std::vector<double>& alphas,
                                           int n, int grid_points) {
  if (n < 2 || grid_points < 2) {
    throw std::invalid_argument("envelope scan needs n >= 2, grid >= 2");
  }
  EnvelopeReport rep;
  std::vector<bounds::PolygonalEvaluator> evals;
  evals.reserve(alphas.size());
  for (double a : alphas) evals.emplace_back(EntropyOrder(a), n);
  for (int i = 0; i < grid_points; ++i) {
    const double t = static_cast<double>(i) / (grid_points - 1);
    const double x = 1.0 / n + t * (1.0 - 1.0 / n);
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
      const double brute = evals[ai](x).value;
      const double seg =
          bounds::polygonal_tsallis_segment(x, EntropyOrder(alphas[ai]), n);
      rep.max_polygon_mismatch =
          std::max(rep.max_polygon_mismatch, std::abs(brute - seg));
    }
    double brute_lambda = 0.0;
    for (int k = 2; k <= n + 1; ++k) {
      // Same exactly rounded radicand as the envelope itself; the square
      // root would amplify a plain rounding of kx - 1 near the cell edges.
      const double r = std::fma(static_cast<double>(k), x, -1.0);
      if (r < 0.0) continue;  // branch not admissible at this coincidence
      brute_lambda =
          std::max(brute_lambda, (1.0 + std::sqrt(r / (k - 1.0))) / k);
    }
    rep.max_lambda_mismatch = std::max(
        rep.max_lambda_mismatch, std::abs(bounds::maxp_lower(x) - brute_lambda));
  }
  return rep;
}

namespace detail {

inline void check_entropy_bound(Accum& acc, const SweepConfig& cfg,
                                const std::vector<bounds::PolygonalEvaluator>& evals,
                                const Distribution& P, const char* what) {
  const double ic = coincidence(P);
  const int dec = span_decile(ic, 1.0 / cfg.n);
  for (std::size_t ai = 0; ai < cfg.alphas.size(); ++ai) {
    const double h = tsallis(P, EntropyOrder(cfg.alphas[ai]));
    const double slack = h - evals[ai](ic).value;
    ++acc.checks;
    acc.bucket(ai * 10 + static_cast<std::size_t>(dec), slack);
    acc.record_worst(slack, cfg.alphas[ai], P.probs(), what);
    if (slack < -cfg.tolerance) {
      acc.fail(std::string("entropy bound violated (") + what +
               "): alpha=" + fmt(cfg.alphas[ai]) + " ic=" + fmt(ic) +
               " slack=" + fmt(slack));
    }
  }
}

}  // namespace detail

// Randomized plus structured certification of the polygonal entropy bound
// for n-outcome distributions: samples, boundary mixtures, near-breakpoint
// mixtures, breakpoint exactness, and smooth-curve dominance.
inline SweepVerdict run_polygonal_sweep(const SweepConfig& cfg) {
  if (cfg.n < 2) throw std::invalid_argument("sweep needs n >= 2");
  if (cfg.alphas.empty()) throw std::invalid_argument("sweep needs orders");
  const std::size_t cells = cfg.alphas.size() * 10;
  const long base = cfg.samples / detail::kChunks;
  const long rem = cfg.samples % detail::kChunks;

  auto worker = [&](int c) {
    detail::Accum acc(cells);
    try {
      std::mt19937_64 rng(cfg.seed +
                          static_cast<std::uint64_t>(c) * detail::kSeedStride);
      std::vector<bounds::PolygonalEvaluator> evals;
      evals.reserve(cfg.alphas.size());
      for (double a : cfg.alphas) evals.emplace_back(EntropyOrder(a), cfg.n);
      const long count = base + (c < rem ? 1 : 0);
      for (long i = 0; i < count; ++i) {
        detail::check_entropy_bound(acc, cfg, evals,
                                    sample_simplex(cfg.n, rng), "sample");
      }
    } catch (const std::exception& e) {
      acc.fail(std::string("sweep chunk error: ") + e.what());
    }
    return acc;
  };
  auto parts = detail::run_chunks<detail::Accum>(detail::kChunks, worker);
  detail::Accum acc(cells);
  for (const auto& p : parts) acc.merge(p);

  try {
    std::vector<bounds::PolygonalEvaluator> evals;
    evals.reserve(cfg.alphas.size());
    for (double a : cfg.alphas) evals.emplace_back(EntropyOrder(a), cfg.n);

    const double near[] = {1e-12, 1e-9, 1e-6, 1.0 - 1e-6, 1.0 - 1e-9,
                           1.0 - 1e-12};
    for (int k = 1; k + 1 <= cfg.n; ++k) {
      for (int i = 0; i < cfg.grid; ++i) {
        const double t = static_cast<double>(i) / (cfg.grid - 1);
        detail::check_entropy_bound(acc, cfg, evals, mixture_uk(k, t, cfg.n),
                                    "boundary mixture");
      }
      for (double t : near) {
        detail::check_entropy_bound(acc, cfg, evals, mixture_uk(k, t, cfg.n),
                                    "near-breakpoint mixture");
      }
    }

    for (int k = 1; k <= cfg.n; ++k) {
      const Distribution u = Distribution::uniform(k);
      for (std::size_t ai = 0; ai < cfg.alphas.size(); ++ai) {
        const double h = tsallis(u, EntropyOrder(cfg.alphas[ai]));
        const double err = std::abs(h - evals[ai](1.0 / k).value);
        ++acc.checks;
        if (err > 1e-12) {
          acc.fail("breakpoint exactness failed: k=" + std::to_string(k) +
                   " alpha=" + detail::fmt(cfg.alphas[ai]) +
                   " err=" + detail::fmt(err));
        }
      }
    }

    const DominanceReport dom = dominance_scan(cfg.alphas, cfg.n, cfg.grid);
    acc.checks += 2L * cfg.grid * static_cast<long>(cfg.alphas.size());
    if (dom.max_violation > 1e-12) {
      acc.fail("polygon dips below the smooth curve: x=" +
               detail::fmt(dom.worst_x) + " alpha=" +
               detail::fmt(dom.worst_alpha) + " gap=" +
               detail::fmt(dom.max_violation));
    }
    if (dom.max_segment_mismatch > 1e-12) {
      acc.fail("segment lookup disagrees with max form: mismatch=" +
               detail::fmt(dom.max_segment_mismatch));
    }
  } catch (const std::exception& e) {
    acc.fail(std::string("sweep injection error: ") + e.what());
  }

  return detail::finish_verdict(std::move(acc), cfg, "polygonal", cfg.samples,
                                cfg.n);
}

// Randomized plus structured certification of the max-probability envelope:
// the sandwich on samples, exact saturation on both extremal families,
// envelope ordering, and the two-outcome collapse.
inline SweepVerdict run_thm1_sweep(const SweepConfig& cfg) {
  if (cfg.n < 2) throw std::invalid_argument("sweep needs n >= 2");
  const long base = cfg.samples / detail::kChunks;
  const long rem = cfg.samples % detail::kChunks;

  auto worker = [&](int c) {
    detail::Accum acc(0);
    try {
      std::mt19937_64 rng(cfg.seed +
                          static_cast<std::uint64_t>(c) * detail::kSeedStride);
      const long count = base + (c < rem ? 1 : 0);
      for (long i = 0; i < count; ++i) {
        const Distribution P = sample_simplex(cfg.n, rng);
        const double ic = coincidence(P);
        const double mp = max_probability(P);
        const double lo = bounds::maxp_lower(ic);
        const double hi = bounds::maxp_upper(ic, cfg.n);
        acc.checks += 2;
        acc.record_worst(std::min(mp - lo, hi - mp), 0.0, P.probs(),
                         "sample");
        if (mp - lo < -cfg.tolerance) {
          acc.fail("max-probability lower envelope violated: ic=" +
                   detail::fmt(ic) + " slack=" + detail::fmt(mp - lo));
        }
        if (hi - mp < -cfg.tolerance) {
          acc.fail("max-probability upper envelope violated: ic=" +
                   detail::fmt(ic) + " slack=" + detail::fmt(hi - mp));
        }
      }
    } catch (const std::exception& e) {
      acc.fail(std::string("sweep chunk error: ") + e.what());
    }
    return acc;
  };
  auto parts = detail::run_chunks<detail::Accum>(detail::kChunks, worker);
  detail::Accum acc(0);
  for (const auto& p : parts) acc.merge(p);

  try {
    // Cluster extremals saturate the lower envelope. The head grid stays
    // away from the interval ends, where the square root amplifies the
    // last-digit noise of the coincidence.
    for (int k = 2; k <= cfg.n; ++k) {
      for (int i = 1; i <= 19; ++i) {
        const double f = 0.05 * i;
        const double p1 = (1.0 - f) / k + f / (k - 1.0);
        const Distribution P = extremal_maxp(k, p1, cfg.n);
        const double lo = bounds::maxp_lower(coincidence(P));
        const double err = std::abs(lo - max_probability(P));
        ++acc.checks;
        if (err > 1e-12) {
          acc.fail("cluster saturation failed: k=" + std::to_string(k) +
                   " p1=" + detail::fmt(p1) + " err=" + detail::fmt(err));
        }
      }
    }
    // One-big extremals saturate the upper envelope.
    for (int i = 0; i < cfg.grid; ++i) {
      const double f =
          0.05 + 0.95 * static_cast<double>(i) / (cfg.grid - 1);
      const double p1 = 1.0 / cfg.n + f * (1.0 - 1.0 / cfg.n);
      const Distribution P = extremal_maxp_upper(p1, cfg.n);
      const double hi = bounds::maxp_upper(coincidence(P), cfg.n);
      const double err = std::abs(hi - max_probability(P));
      ++acc.checks;
      if (err > 1e-12) {
        acc.fail("one-big saturation failed: p1=" + detail::fmt(p1) +
                 " err=" + detail::fmt(err));
      }
    }
    // The envelopes are ordered, and coincide for two outcomes.
    for (int i = 0; i < cfg.grid; ++i) {
      const double t = static_cast<double>(i) / (cfg.grid - 1);
      const double x = 1.0 / cfg.n + t * (1.0 - 1.0 / cfg.n);
      const double lo = bounds::maxp_lower(x);
      const double hi = bounds::maxp_upper(x, cfg.n);
      ++acc.checks;
      if (lo - hi > 1e-12) {
        acc.fail("envelopes out of order: x=" + detail::fmt(x));
      }
      if (cfg.n == 2) {
        ++acc.checks;
        if (std::abs(lo - hi) > 1e-12) {
          acc.fail("two-outcome collapse failed: x=" + detail::fmt(x) +
                   " gap=" + detail::fmt(std::abs(lo - hi)));
        }
      }
    }
  } catch (const std::exception& e) {
    acc.fail(std::string("sweep injection error: ") + e.what());
  }

  return detail::finish_verdict(std::move(acc), cfg, "thm1", cfg.samples,
                                cfg.n);
}

// Exactly constructible measurement catalogue for one dimension: all
// unbiased-basis subsets, smoothed sets over a sharpness grid (complete and
// a two-measurement subset), frame measurements, and the symmetric family
// over a purity-parameter grid.
struct QuantumCatalogue {
  int d = 0;
  std::vector<quantum::MeasurementSet> mub_sets;
  std::vector<quantum::MeasurementSet> mum_sets;
  std::vector<quantum::Povm> povms;
};

inline QuantumCatalogue build_catalogue(int d) {
  QuantumCatalogue cat;
  cat.d = d;
  for (int M = 1; M <= d + 1; ++M) cat.mub_sets.push_back(quantum::mub_set(d, M));
  const double kmax = quantum::mum_kappa_max(d);
  for (double f : {0.3, 0.7, 1.0}) {
    const double kappa = 1.0 / d + f * (kmax - 1.0 / d);
    quantum::MeasurementSet set = quantum::mum_set(d, kappa);
    quantum::MeasurementSet sub = set;
    sub.measurements.resize(2);
    cat.mum_sets.push_back(std::move(sub));
    cat.mum_sets.push_back(std::move(set));
  }
  cat.povms.push_back(quantum::etf_simplex(d));
  {
    std::vector<quantum::ComplexVector> basis;
    for (int j = 0; j < d; ++j) {
      quantum::ComplexVector e = quantum::ComplexVector::Zero(d);
      e(j) = 1.0;
      basis.push_back(std::move(e));
    }
    cat.povms.push_back(quantum::etf_povm(basis));
  }
  if (d == 2) cat.povms.push_back(quantum::etf_povm(quantum::sic_vectors(2)));
  cat.povms.push_back(quantum::sic_povm(d));
  const double d2 = static_cast<double>(d) * d;
  const double d3 = d2 * d;
  for (double f : {0.25, 0.6, 1.0}) {
    cat.povms.push_back(
        quantum::general_sic(d, 1.0 / d3 + f * (1.0 / d2 - 1.0 / d3)));
  }
  return cat;
}

namespace detail {

inline void init_quantum_categories(Accum& acc) {
  acc.init_categories({"construction", "coincidence-identity",
                       "coincidence-cap", "certification",
                       "min-entropy-sandwich", "endpoint-collapse"});
}

inline void povm_checks(Accum& acc, const quantum::Povm& m) {
  const double idev = quantum::identity_deviation(m);
  acc.check(kQcConstruction, idev <= quantum::kIdentityTol);
  if (idev > quantum::kIdentityTol) {
    acc.fail(std::string("resolution of identity violated: family=") +
             quantum::family_name(m.family) + " dev=" + fmt(idev));
  }
  const double lam = quantum::min_element_eigenvalue(m);
  acc.check(kQcConstruction, lam >= -quantum::kPsdTol);
  if (lam < -quantum::kPsdTol) {
    acc.fail(std::string("measurement element not positive: family=") +
             quantum::family_name(m.family) + " min=" + fmt(lam));
  }
}

inline void quantum_construction_checks(Accum& acc,
                                        const QuantumCatalogue& cat) {
  for (const auto& set : cat.mub_sets) {
    const double dev = quantum::mub_overlap_deviation(set);
    acc.check(kQcConstruction, dev <= 1e-10);
    if (dev > 1e-10) {
      acc.fail("unbiasedness violated: d=" + std::to_string(cat.d) +
               " M=" + std::to_string(set.count()) + " dev=" + fmt(dev));
    }
    for (const auto& m : set.measurements) povm_checks(acc, m);
  }
  for (const auto& set : cat.mum_sets) {
    const double dev = quantum::mum_gram_deviation(set);
    acc.check(kQcConstruction, dev <= 1e-9);
    if (dev > 1e-9) {
      acc.fail("smoothed-measurement overlap structure violated: d=" +
               std::to_string(cat.d) + " dev=" + fmt(dev));
    }
    for (const auto& m : set.measurements) povm_checks(acc, m);
  }
  for (const auto& povm : cat.povms) {
    povm_checks(acc, povm);
    if (povm.family == quantum::Family::Gsic) {
      const double dev = quantum::gsic_gram_deviation(povm);
      acc.check(kQcConstruction, dev <= 1e-10);
      if (dev > 1e-10) {
        acc.fail("symmetric overlap structure violated: d=" +
                 std::to_string(cat.d) + " dev=" + fmt(dev));
      }
    }
  }
  const bool simplex_ok =
      quantum::etf_validate(quantum::etf_simplex_vectors(cat.d)).valid(1e-9);
  acc.check(kQcConstruction, simplex_ok);
  if (!simplex_ok) {
    acc.fail("simplex frame failed validation: d=" + std::to_string(cat.d));
  }
  const double sdev =
      quantum::sic_overlap_deviation(quantum::sic_vectors(cat.d));
  acc.check(kQcConstruction, sdev <= 1e-10);
  if (sdev > 1e-10) {
    acc.fail("symmetric frame overlaps off: d=" + std::to_string(cat.d) +
             " dev=" + fmt(sdev));
  }
}

inline void fold_report(Accum& acc, const relations::BoundReport& rep,
                        const std::vector<double>& alphas, int decile) {
  if (!rep.slack) return;
  acc.check(kQcCertification, *rep.slack >= -1e-9);
  std::size_t ai = 0;
  while (ai < alphas.size() && alphas[ai] != rep.alpha) ++ai;
  if (ai < alphas.size()) {
    acc.bucket(ai * 10 + static_cast<std::size_t>(decile), *rep.slack);
  }
  const std::string label = std::string(quantum::family_name(rep.family)) +
                            " " + relations::kind_name(rep.kind) +
                            " d=" + std::to_string(rep.d) +
                            " alpha=" + fmt(rep.alpha);
  acc.record_worst(*rep.slack, rep.alpha, {}, label);
  if (*rep.slack < -1e-9) {
    acc.fail("uncertainty bound violated: " + label +
             " slack=" + fmt(*rep.slack));
  }
}

inline void quantum_state_checks(Accum& acc, const QuantumCatalogue& cat,
                                 const quantum::DensityMatrix& rho,
                                 const SweepConfig& cfg) {
  const int d = cat.d;
  const double u = quantum::purity(rho);
  const int dec = span_decile(u, 1.0 / d);
  const std::vector<quantum::DensityMatrix> states{rho};

  for (const auto& set : cat.mub_sets) {
    double sum = 0.0;
    for (const auto& m : set.measurements) {
      sum += coincidence(quantum::born_probabilities(m, rho));
    }
    const int M = set.count();
    const double cap = u + (M - 1.0) / d;
    acc.check(kQcCap, sum - cap <= cfg.tolerance);
    if (sum - cap > cfg.tolerance) {
      acc.fail("basis coincidence sum exceeds cap: d=" + std::to_string(d) +
               " M=" + std::to_string(M) + " excess=" + fmt(sum - cap));
    }
    if (M == d + 1) {
      const double err = std::abs(sum - (u + 1.0));
      acc.check(kQcCap, err <= cfg.tolerance);
      if (err > cfg.tolerance) {
        acc.fail("complete-set coincidence identity failed: d=" +
                 std::to_string(d) + " err=" + fmt(err));
      }
    }
    for (const auto& rep : relations::certify(set, states, cfg.alphas)) {
      fold_report(acc, rep, cfg.alphas, dec);
    }
  }

  for (const auto& set : cat.mum_sets) {
    double sum = 0.0;
    for (const auto& m : set.measurements) {
      sum += coincidence(quantum::born_probabilities(m, rho));
    }
    const int M = set.count();
    const double cap =
        M * relations::mum_abscissa(d, M, set.kappa.value_or(1.0), u);
    acc.check(kQcCap, sum - cap <= cfg.tolerance);
    if (sum - cap > cfg.tolerance) {
      acc.fail("smoothed coincidence sum exceeds cap: d=" + std::to_string(d) +
               " M=" + std::to_string(M) + " excess=" + fmt(sum - cap));
    }
    if (M == d + 1) {
      const double err = std::abs(sum - cap);
      acc.check(kQcCap, err <= cfg.tolerance);
      if (err > cfg.tolerance) {
        acc.fail("complete smoothed-set identity failed: d=" +
                 std::to_string(d) + " err=" + fmt(err));
      }
    }
    for (const auto& rep : relations::certify(set, states, cfg.alphas)) {
      fold_report(acc, rep, cfg.alphas, dec);
    }
  }

  for (const auto& povm : cat.povms) {
    const Distribution born = quantum::born_probabilities(povm, rho);
    const double ic = coincidence(born);
    switch (povm.family) {
      case quantum::Family::Sic: {
        const double err = std::abs(ic - relations::sic_abscissa(d, u));
        acc.check(kQcIdentity, err <= 1e-11);
        if (err > 1e-11) {
          acc.fail("symmetric coincidence identity failed: d=" +
                   std::to_string(d) + " err=" + fmt(err));
        }
        break;
      }
      case quantum::Family::Gsic: {
        const double err = std::abs(
            ic - relations::gsic_abscissa(d, povm.theta.value_or(0.0), u));
        acc.check(kQcIdentity, err <= 1e-11);
        if (err > 1e-11) {
          acc.fail("generalized symmetric coincidence identity failed: d=" +
                   std::to_string(d) + " err=" + fmt(err));
        }
        break;
      }
      default: {
        const double cap =
            relations::etf_abscissa(d, povm.outcomes(), u, povm.c, povm.S);
        if (povm.outcomes() == d * d) {
          // A maximal equiangular frame is a 2-design: equality holds.
          const double err = std::abs(ic - cap);
          acc.check(kQcIdentity, err <= 1e-11);
          if (err > 1e-11) {
            acc.fail("maximal frame coincidence identity failed: d=" +
                     std::to_string(d) + " err=" + fmt(err));
          }
        } else {
          acc.check(kQcCap, ic - cap <= cfg.tolerance);
          if (ic - cap > cfg.tolerance) {
            acc.fail("frame coincidence exceeds cap: d=" + std::to_string(d) +
                     " n=" + std::to_string(povm.outcomes()) +
                     " excess=" + fmt(ic - cap));
          }
        }
        break;
      }
    }
    for (const auto& rep : relations::certify(povm, states, cfg.alphas)) {
      fold_report(acc, rep, cfg.alphas, dec);
    }
    if (povm.family == quantum::Family::Sic ||
        povm.family == quantum::Family::Gsic) {
      relations::ScenarioParams p;
      p.family = povm.family;
      p.d = d;
      p.n = povm.outcomes();
      p.theta = povm.theta;
      p.purity = u;
      const auto [lo, hi] = relations::min_entropy_sandwich(p);
      const double rinf = min_entropy(born);
      acc.check(kQcSandwich, rinf - lo >= -cfg.tolerance);
      if (rinf - lo < -cfg.tolerance) {
        acc.fail("min-entropy lower estimate violated: d=" +
                 std::to_string(d) + " slack=" + fmt(rinf - lo));
      }
      acc.check(kQcSandwich, hi - rinf >= -cfg.tolerance);
      if (hi - rinf < -cfg.tolerance) {
        acc.fail("min-entropy upper estimate violated: d=" +
                 std::to_string(d) + " slack=" + fmt(hi - rinf));
      }
    }
  }
}

inline void quantum_deterministic_checks(Accum& acc,
                                         const QuantumCatalogue& cat,
                                         const SweepConfig& cfg) {
  const int d = cat.d;
  // Parameter-endpoint collapses between families.
  for (double f : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const double u = 1.0 / d + f * (1.0 - 1.0 / d);
    for (int M = 1; M <= d + 1; ++M) {
      const double err = std::abs(relations::mum_abscissa(d, M, 1.0, u) -
                                  relations::mub_abscissa(d, M, u));
      acc.check(kQcCollapse, err <= 1e-12);
      if (err > 1e-12) {
        acc.fail("sharp smoothed measurement does not collapse to bases: d=" +
                 std::to_string(d) + " M=" + std::to_string(M) +
                 " err=" + fmt(err));
      }
    }
    const double sic = relations::sic_abscissa(d, u);
    const double gerr = std::abs(
        relations::gsic_abscissa(d, 1.0 / (static_cast<double>(d) * d), u) -
        sic);
    acc.check(kQcCollapse, gerr <= 1e-12);
    if (gerr > 1e-12) {
      acc.fail("purity-endpoint generalized measurement does not collapse: " +
               std::string("d=") + std::to_string(d) + " err=" + fmt(gerr));
    }
    const double eerr = std::abs(relations::etf_abscissa(d, d * d, u) - sic);
    acc.check(kQcCollapse, eerr <= 1e-12);
    if (eerr > 1e-12) {
      acc.fail("maximal frame does not collapse to symmetric family: d=" +
               std::to_string(d) + " err=" + fmt(eerr));
    }
  }

  // Maximally mixed state: both min-entropy estimates collapse to 2 ln d.
  const auto mixed = quantum::DensityMatrix::maximally_mixed(d);
  const double mixed_purity = quantum::purity(mixed);
  const double target = 2.0 * std::log(static_cast<double>(d));
  for (const auto& povm : cat.povms) {
    if (povm.family != quantum::Family::Sic &&
        povm.family != quantum::Family::Gsic) {
      continue;
    }
    relations::ScenarioParams p;
    p.family = povm.family;
    p.d = d;
    p.n = povm.outcomes();
    p.theta = povm.theta;
    p.purity = mixed_purity;
    const auto [lo, hi] = relations::min_entropy_sandwich(p);
    acc.check(kQcSandwich, std::abs(lo - target) <= 1e-12);
    if (std::abs(lo - target) > 1e-12) {
      acc.fail("mixed-state lower estimate off 2 ln d: d=" +
               std::to_string(d) + " err=" + fmt(std::abs(lo - target)));
    }
    acc.check(kQcSandwich, std::abs(hi - target) <= 1e-12);
    if (std::abs(hi - target) > 1e-12) {
      acc.fail("mixed-state upper estimate off 2 ln d: d=" +
               std::to_string(d) + " err=" + fmt(std::abs(hi - target)));
    }
    const Distribution born = quantum::born_probabilities(povm, mixed);
    const double err =
        std::abs(coincidence(born) - 1.0 / (static_cast<double>(d) * d));
    acc.check(kQcIdentity, err <= 1e-12);
    if (err > 1e-12) {
      acc.fail("mixed-state coincidence off 1/d^2: d=" + std::to_string(d) +
               " err=" + fmt(err));
    }
  }

  // Corner states exercise the equality cases of the coincidence caps.
  quantum_state_checks(acc, cat, mixed, cfg);
  quantum::ComplexVector e0 = quantum::ComplexVector::Zero(d);
  e0(0) = 1.0;
  quantum_state_checks(acc, cat, quantum::DensityMatrix::pure(e0), cfg);
}

}  // namespace detail

// Certification of the measurement catalogue in dimensions 2 and 3:
// construction self-checks, coincidence identities and caps, every
// uncertainty bound, the min-entropy sandwich, endpoint collapses, and the
// maximally mixed corner. cfg.samples random states are drawn per
// dimension, alternating pure and mixed.
inline SweepVerdict run_quantum_sweep(const SweepConfig& cfg) {
  if (cfg.alphas.empty()) throw std::invalid_argument("sweep needs orders");
  const std::size_t cells = cfg.alphas.size() * 10;
  detail::Accum acc(cells);
  detail::init_quantum_categories(acc);
  long total_states = 0;
  for (int d : {2, 3}) {
    QuantumCatalogue cat;
    try {
      cat = build_catalogue(d);
    } catch (const std::exception& e) {
      acc.fail("catalogue construction failed: d=" + std::to_string(d) +
               " error=" + e.what());
      continue;
    }
    try {
      detail::quantum_construction_checks(acc, cat);
      detail::quantum_deterministic_checks(acc, cat, cfg);
    } catch (const std::exception& e) {
      acc.fail("deterministic quantum checks failed: d=" + std::to_string(d) +
               " error=" + e.what());
    }
    const long base = cfg.samples / detail::kChunks;
    const long rem = cfg.samples % detail::kChunks;
    auto worker = [&, d](int c) {
      detail::Accum part(cells);
      detail::init_quantum_categories(part);
      try {
        const long first = c * base + std::min<long>(c, rem);
        const long count = base + (c < rem ? 1 : 0);
        for (long i = 0; i < count; ++i) {
          const long idx = first + i;
          const auto kind = idx % 2 == 0 ? quantum::StateKind::Pure
                                         : quantum::StateKind::Mixed;
          const std::uint64_t state_seed =
              cfg.seed + detail::kSeedStride *
                             static_cast<std::uint64_t>(
                                 (d - 2) * cfg.samples + idx + 1);
          detail::quantum_state_checks(
              part, cat, quantum::random_state(d, kind, state_seed), cfg);
        }
      } catch (const std::exception& e) {
        part.fail(std::string("quantum sweep chunk error: ") + e.what());
      }
      return part;
    };
    auto parts = detail::run_chunks<detail::Accum>(detail::kChunks, worker);
    for (const auto& p : parts) acc.merge(p);
    total_states += cfg.samples;
  }
  return detail::finish_verdict(std::move(acc), cfg, "quantum", total_states,
                                0);
}

// Row data for the entropy information diagram: each row carries the
// coincidence, the entropy, and both lower-boundary curves at that
// coincidence.
struct EntropyRow {
  double ic = 0.0;
  double entropy = 0.0;
  double alpha = 1.0;
  double smooth_bound = 0.0;
  double polygonal_bound = 0.0;
  std::string tag;
};

inline std::vector<EntropyRow> diagram_entropy_rows(double alpha_in, int n,
                                                    long samples,
                                                    std::uint64_t seed,
                                                    int grid = 128) {
  if (n < 2) throw std::invalid_argument("diagram needs n >= 2");
  if (samples < 0 || grid < 2) {
    throw std::invalid_argument("diagram needs samples >= 0, grid >= 2");
  }
  const EntropyOrder alpha(alpha_in);
  const bounds::PolygonalEvaluator eval(alpha, n);
  std::vector<EntropyRow> rows;
  rows.reserve(static_cast<std::size_t>(samples) +
               static_cast<std::size_t>(grid) * (n - 1) + n);
  auto push = [&](const Distribution& P, const char* tag) {
    EntropyRow r;
    r.ic = coincidence(P);
    r.entropy = tsallis(P, alpha);
    r.alpha = alpha_in;
    r.smooth_bound = bounds::smooth_bound(r.ic, alpha);
    r.polygonal_bound = eval(r.ic).value;
    r.tag = tag;
    rows.push_back(std::move(r));
  };
  std::mt19937_64 rng(seed);
  for (long i = 0; i < samples; ++i) push(sample_simplex(n, rng), "sample");
  for (int k = 1; k + 1 <= n; ++k) {
    for (int i = 0; i < grid; ++i) {
      const double t = static_cast<double>(i) / (grid - 1);
      push(mixture_uk(k, t, n), "boundary-lower");
    }
  }
  for (int k = 1; k <= n; ++k) push(Distribution::uniform(k, n), "breakpoint");
  return rows;
}

// Row data for the max-probability diagram: both envelopes at each row's
// coincidence, traced by the extremal families plus optional samples.
struct MaxpRow {
  double ic = 0.0;
  double maxp = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::string tag;
};

inline std::vector<MaxpRow> diagram_maxp_rows(int n, long samples = 0,
                                              std::uint64_t seed = 0,
                                              int grid = 128) {
  if (n < 2) throw std::invalid_argument("diagram needs n >= 2");
  if (samples < 0 || grid < 2) {
    throw std::invalid_argument("diagram needs samples >= 0, grid >= 2");
  }
  std::vector<MaxpRow> rows;
  rows.reserve(static_cast<std::size_t>(samples) +
               static_cast<std::size_t>(grid) * n + n);
  auto push = [&](const Distribution& P, const char* tag) {
    MaxpRow r;
    r.ic = coincidence(P);
    r.maxp = max_probability(P);
    r.lower = bounds::maxp_lower(r.ic);
    r.upper = bounds::maxp_upper(r.ic, n);
    r.tag = tag;
    rows.push_back(std::move(r));
  };
  std::mt19937_64 rng(seed);
  for (long i = 0; i < samples; ++i) push(sample_simplex(n, rng), "sample");
  for (int k = 2; k <= n; ++k) {
    for (int i = 0; i < grid; ++i) {
      const double f = static_cast<double>(i) / (grid - 1);
      const double p1 = (1.0 - f) / k + f / (k - 1.0);
      push(extremal_maxp(k, p1, n), "boundary-lower");
    }
  }
  for (int i = 0; i < grid; ++i) {
    const double f = static_cast<double>(i) / (grid - 1);
    const double p1 = 1.0 / n + f * (1.0 - 1.0 / n);
    push(extremal_maxp_upper(p1, n), "boundary-upper");
  }
  for (int k = 1; k <= n; ++k) push(Distribution::uniform(k, n), "breakpoint");
  return rows;
}

}  // namespace icdiag::harness
