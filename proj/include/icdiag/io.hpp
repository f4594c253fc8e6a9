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
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "icdiag/distribution.hpp"
#include "icdiag/harness.hpp"
#include "icdiag/quantum.hpp"
#include "icdiag/relations.hpp"

namespace icdiag::io {

// Numbers cross the JSON boundary at 12 significant digits. Values are
// re-read before serialization so the emitted shortest representation never
// exceeds that, keeping output byte-stable across platforms and runs.
inline std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// CSV datasets round-trip exactly: the envelope columns are square roots
// with unbounded slope at their branch points, so re-evaluating them at a
// coarsened abscissa would drift by far more than the columns' own accuracy.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(fmt12(v).c_str(), nullptr);
}

inline nlohmann::ordered_json jnum(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round12(v);
}

inline nlohmann::ordered_json jopt(const std::optional<double>& v) {
  return v ? jnum(*v) : nlohmann::ordered_json(nullptr);
}

inline double parse_number(const std::string& s) {
  errno = 0;
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  while (end != nullptr && (*end == ' ' || *end == '\t')) ++end;
  if (end == begin || end == nullptr || *end != '\0') {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  if (!std::isfinite(v)) {
    throw std::invalid_argument("number not finite: '" + s + "'");
  }
  return v;
}

inline std::vector<double> parse_number_list(const std::string& s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::size_t stop = comma == std::string::npos ? s.size() : comma;
    out.push_back(parse_number(s.substr(start, stop - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

inline Distribution parse_distribution(const std::string& s) {
  return Distribution(parse_number_list(s));
}

inline std::optional<quantum::Family> family_from_name(
    const std::string& name) {
  using quantum::Family;
  if (name == "basis") return Family::Basis;
  if (name == "mub") return Family::Mub;
  if (name == "mum") return Family::Mum;
  if (name == "etf") return Family::Etf;
  if (name == "sic") return Family::Sic;
  if (name == "gsic") return Family::Gsic;
  if (name == "custom") return Family::Custom;
  return std::nullopt;
}

inline nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return nlohmann::json::parse(in);
}

namespace detail {

inline quantum::ComplexMatrix read_matrix(const nlohmann::json& re,
                                          const nlohmann::json* im, int rows,
                                          int cols, const std::string& who) {
  if (!re.is_array() || static_cast<int>(re.size()) != rows) {
    throw std::runtime_error(who + ": 're' must be a " +
                             std::to_string(rows) + "-row array");
  }
  if (im != nullptr && (!im->is_array() ||
                        static_cast<int>(im->size()) != rows)) {
    throw std::runtime_error(who + ": 'im' must match 're' in shape");
  }
  quantum::ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const auto& rrow = re.at(static_cast<std::size_t>(r));
    if (!rrow.is_array() || static_cast<int>(rrow.size()) != cols) {
      throw std::runtime_error(who + ": 're' row " + std::to_string(r) +
                               " must have " + std::to_string(cols) +
                               " entries");
    }
    const nlohmann::json* irow =
        im == nullptr ? nullptr : &im->at(static_cast<std::size_t>(r));
    if (irow != nullptr &&
        (!irow->is_array() || static_cast<int>(irow->size()) != cols)) {
      throw std::runtime_error(who + ": 'im' row " + std::to_string(r) +
                               " must have " + std::to_string(cols) +
                               " entries");
    }
    for (int c = 0; c < cols; ++c) {
      const double rv = rrow.at(static_cast<std::size_t>(c)).get<double>();
      const double iv =
          irow == nullptr
              ? 0.0
              : irow->at(static_cast<std::size_t>(c)).get<double>();
      m(r, c) = quantum::Complex(rv, iv);
    }
  }
  return m;
}

inline int read_dimension(const nlohmann::json& j, const std::string& who) {
  if (!j.contains("d")) throw std::runtime_error(who + ": missing 'd'");
  const int d = j.at("d").get<int>();
  if (d < 2 || d > 256) {
    throw std::runtime_error(who + ": dimension must lie in [2, 256]");
  }
  return d;
}

}  // namespace detail

// State file: {"d": 2, "re": [[...], ...], "im": [[...], ...]} with 'im'
// optional. The matrix is validated as a density matrix on construction.
inline quantum::DensityMatrix load_state(const std::string& path) {
  const nlohmann::json j = load_json(path);
  const int d = detail::read_dimension(j, "state file");
  if (!j.contains("re")) throw std::runtime_error("state file: missing 're'");
  const nlohmann::json* im = j.contains("im") ? &j.at("im") : nullptr;
  return quantum::DensityMatrix(
      detail::read_matrix(j.at("re"), im, d, d, "state file"));
}

// Frame file: {"d": 2, "vectors": [{"re": [...], "im": [...]}, ...]} with
// per-vector 'im' optional.
inline std::vector<quantum::ComplexVector> load_frame_vectors(
    const std::string& path) {
  const nlohmann::json j = load_json(path);
  const int d = detail::read_dimension(j, "frame file");
  if (!j.contains("vectors") || !j.at("vectors").is_array() ||
      j.at("vectors").empty()) {
    throw std::runtime_error("frame file: missing 'vectors' array");
  }
  std::vector<quantum::ComplexVector> out;
  for (const auto& jv : j.at("vectors")) {
    if (!jv.contains("re")) {
      throw std::runtime_error("frame file: vector missing 're'");
    }
    const nlohmann::json* im = jv.contains("im") ? &jv.at("im") : nullptr;
    // A length-d vector reads as a d x 1 matrix.
    nlohmann::json re_rows = nlohmann::json::array();
    for (const auto& x : jv.at("re")) re_rows.push_back({x});
    nlohmann::json im_rows = nlohmann::json::array();
    if (im != nullptr) {
      for (const auto& x : *im) im_rows.push_back({x});
    }
    out.push_back(detail::read_matrix(re_rows, im ? &im_rows : nullptr,
                                      static_cast<int>(jv.at("re").size()),
                                      1, "frame file")
                      .col(0));
    if (out.back().size() != d) {
      throw std::runtime_error("frame file: vector length does not match d");
    }
  }
  return out;
}

// Measurement file: {"d": 2, "elements": [{"re": [[...]], "im": [[...]]},
// ...]}. Loaded as a custom measurement; callers validate it.
inline quantum::Povm load_povm(const std::string& path) {
  const nlohmann::json j = load_json(path);
  quantum::Povm povm;
  povm.d = detail::read_dimension(j, "measurement file");
  povm.family = quantum::Family::Custom;
  if (!j.contains("elements") || !j.at("elements").is_array() ||
      j.at("elements").empty()) {
    throw std::runtime_error("measurement file: missing 'elements' array");
  }
  for (const auto& je : j.at("elements")) {
    if (!je.contains("re")) {
      throw std::runtime_error("measurement file: element missing 're'");
    }
    const nlohmann::json* im = je.contains("im") ? &je.at("im") : nullptr;
    povm.elements.push_back(
        detail::read_matrix(je.at("re"), im, povm.d, povm.d,
                            "measurement file"));
  }
  return povm;
}

inline void write_entropy_csv(const std::string& path,
                              const std::vector<harness::EntropyRow>& rows) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  os << "ic,entropy,alpha,smooth_bound,polygonal_bound,tag\n";
  for (const auto& r : rows) {
    os << fmt17(r.ic) << ',' << fmt17(r.entropy) << ',' << fmt17(r.alpha)
       << ',' << fmt17(r.smooth_bound) << ',' << fmt17(r.polygonal_bound)
       << ',' << r.tag << '\n';
  }
  os.flush();
  if (!os.good()) throw std::runtime_error("write failed: " + path);
}

inline void write_maxp_csv(const std::string& path,
                           const std::vector<harness::MaxpRow>& rows) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  os << "ic,maxp,lower,upper,tag\n";
  for (const auto& r : rows) {
    os << fmt17(r.ic) << ',' << fmt17(r.maxp) << ',' << fmt17(r.lower) << ','
       << fmt17(r.upper) << ',' << r.tag << '\n';
  }
  os.flush();
  if (!os.good()) throw std::runtime_error("write failed: " + path);
}

inline nlohmann::ordered_json report_json(const relations::BoundReport& r) {
  nlohmann::ordered_json j;
  j["family"] = quantum::family_name(r.family);
  j["d"] = r.d;
  j["M"] = r.M;
  j["n"] = r.n;
  j["kappa"] = jopt(r.kappa);
  j["theta"] = jopt(r.theta);
  j["alpha"] = jnum(r.alpha);
  j["kind"] = relations::kind_name(r.kind);
  j["purity"] = jnum(r.purity);
  j["bound"] = jnum(r.bound);
  j["achieving_k"] = r.achieving_k;
  j["measured"] = jopt(r.measured);
  j["slack"] = jopt(r.slack);
  j["note"] = r.note.empty() ? nlohmann::ordered_json(nullptr)
                             : nlohmann::ordered_json(r.note);
  return j;
}

inline nlohmann::ordered_json verdict_json(const harness::SweepVerdict& v) {
  nlohmann::ordered_json j;
  j["kind"] = v.kind;
  j["pass"] = v.pass;
  j["n"] = v.n;
  j["samples"] = v.samples;
  j["seed"] = v.seed;
  j["tolerance"] = jnum(v.tolerance);
  j["checks"] = v.checks;
  j["failure_count"] = v.failure_count;
  j["min_slack"] = jnum(v.min_slack);
  j["worst_alpha"] = jnum(v.worst_alpha);
  j["worst_case"] = v.worst_case;
  auto probs = nlohmann::ordered_json::array();
  for (double p : v.worst_probs) probs.push_back(jnum(p));
  j["worst_probs"] = std::move(probs);
  auto gaps = nlohmann::ordered_json::array();
  for (const auto& g : v.gap_stats) {
    nlohmann::ordered_json jg;
    jg["alpha"] = jnum(g.alpha);
    jg["decile"] = g.decile;
    jg["count"] = g.count;
    jg["min_slack"] = jnum(g.min_slack);
    jg["mean_slack"] = jnum(g.mean_slack);
    gaps.push_back(std::move(jg));
  }
  j["gap_stats"] = std::move(gaps);
  auto cats = nlohmann::ordered_json::array();
  for (const auto& c : v.categories) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["checks"] = c.checks;
    jc["failures"] = c.failures;
    cats.push_back(std::move(jc));
  }
  j["categories"] = std::move(cats);
  j["failures"] = v.failures;
  return j;
}

inline nlohmann::ordered_json etf_report_json(const quantum::EtfReport& r) {
  nlohmann::ordered_json j;
  j["d"] = r.d;
  j["n"] = r.n;
  j["S"] = jnum(r.S);
  j["S_expected"] = jnum(r.S_expected);
  j["c"] = jnum(r.c);
  j["c_expected"] = jnum(r.c_expected);
  j["norm_deviation"] = jnum(r.norm_deviation);
  j["tight_deviation"] = jnum(r.tight_deviation);
  j["equiangular_deviation"] = jnum(r.equiangular_deviation);
  j["n_within_bound"] = r.n_within_bound;
  j["tight"] = r.tight();
  j["equiangular"] = r.equiangular();
  j["valid"] = r.valid();
  auto pairs = nlohmann::ordered_json::array();
  for (const auto& t : r.worst_pairs) {
    nlohmann::ordered_json jp;
    jp["i"] = std::get<0>(t);
    jp["j"] = std::get<1>(t);
    jp["overlap_sq"] = jnum(std::get<2>(t));
    pairs.push_back(std::move(jp));
  }
  j["worst_pairs"] = std::move(pairs);
  j["note"] = r.note.empty() ? nlohmann::ordered_json(nullptr)
                             : nlohmann::ordered_json(r.note);
  return j;
}

}  // namespace icdiag::io
