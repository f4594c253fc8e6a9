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

#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "icdiag/bounds.hpp"
#include "icdiag/distribution.hpp"
#include "icdiag/entropy.hpp"
#include "icdiag/harness.hpp"
#include "icdiag/io.hpp"
#include "icdiag/quantum.hpp"
#include "icdiag/relations.hpp"

namespace {

using icdiag::Distribution;
using icdiag::EntropyOrder;
namespace bounds = icdiag::bounds;
namespace harness = icdiag::harness;
namespace io = icdiag::io;
namespace quantum = icdiag::quantum;
namespace relations = icdiag::relations;

void print_json(const nlohmann::ordered_json& j) {
  std::cout << j.dump(2) << "\n";
}

void require_orders_in_range(const std::vector<double>& alphas) {
  if (alphas.empty()) throw std::domain_error("need at least one order");
  for (double a : alphas) {
    if (!(a >= 0.0) || a > 2.0) {
      throw std::domain_error("entropy orders must lie in [0, 2]");
    }
  }
}

int cmd_entropy(const std::string& dist, double alpha,
                const std::string& kind) {
  const Distribution p = io::parse_distribution(dist);
  nlohmann::ordered_json j;
  j["kind"] = kind;
  if (kind == "min") {
    j["alpha"] = nullptr;
    j["n"] = p.size();
    j["value"] = io::jnum(icdiag::min_entropy(p));
  } else {
    const EntropyOrder a(alpha);
    j["alpha"] = io::jnum(alpha);
    j["n"] = p.size();
    j["value"] =
        io::jnum(kind == "renyi" ? icdiag::renyi(p, a) : icdiag::tsallis(p, a));
  }
  j["ic"] = io::jnum(icdiag::coincidence(p));
  j["max_probability"] = io::jnum(icdiag::max_probability(p));
  print_json(j);
  return 0;
}

int cmd_bound_polygonal(double ic, double alpha, int n) {
  const EntropyOrder a(alpha);
  const bounds::BoundValue tb = bounds::polygonal_tsallis_bound(ic, a, n);
  const bounds::BoundValue rb = bounds::polygonal_renyi_bound(ic, a, n);
  nlohmann::ordered_json j;
  j["ic"] = io::jnum(ic);
  j["alpha"] = io::jnum(alpha);
  j["n"] = n;
  j["bound"] = io::jnum(tb.value);
  j["achieving_k"] = tb.achieving_k;
  j["renyi_bound"] = io::jnum(rb.value);
  j["smooth_bound"] = io::jnum(bounds::smooth_bound(ic, a));
  print_json(j);
  return 0;
}

int cmd_bound_maxp(double ic, int n) {
  // The upper envelope enforces the [1/n, 1] domain; the lower one is
  // evaluated at the same point.
  const double upper = bounds::maxp_upper(ic, n);
  const double lower = bounds::maxp_lower(ic);
  nlohmann::ordered_json j;
  j["lower"] = io::jnum(lower);
  j["upper"] = io::jnum(upper);
  print_json(j);
  return 0;
}

int cmd_diagram_entropy(double alpha, int n, long samples, std::uint64_t seed,
                        int grid, const std::string& out) {
  const auto rows = harness::diagram_entropy_rows(alpha, n, samples, seed,
                                                  grid);
  io::write_entropy_csv(out, rows);
  nlohmann::ordered_json j;
  j["diagram"] = "entropy";
  j["out"] = out;
  j["rows"] = rows.size();
  j["alpha"] = io::jnum(alpha);
  j["n"] = n;
  j["samples"] = samples;
  j["seed"] = seed;
  j["grid"] = grid;
  print_json(j);
  return 0;
}

int cmd_diagram_maxp(int n, long samples, std::uint64_t seed, int grid,
                     const std::string& out) {
  const auto rows = harness::diagram_maxp_rows(n, samples, seed, grid);
  io::write_maxp_csv(out, rows);
  nlohmann::ordered_json j;
  j["diagram"] = "maxp";
  j["out"] = out;
  j["rows"] = rows.size();
  j["n"] = n;
  j["samples"] = samples;
  j["seed"] = seed;
  j["grid"] = grid;
  print_json(j);
  return 0;
}

int cmd_verify(const std::string& which, const harness::SweepConfig& cfg) {
  require_orders_in_range(cfg.alphas);
  harness::SweepVerdict verdict;
  if (which == "polygonal") {
    verdict = harness::run_polygonal_sweep(cfg);
  } else if (which == "thm1") {
    verdict = harness::run_thm1_sweep(cfg);
  } else {
    verdict = harness::run_quantum_sweep(cfg);
  }
  print_json(io::verdict_json(verdict));
  return verdict.pass ? 0 : 1;
}

struct QuantumBoundArgs {
  std::string family = "sic";
  int d = 2;
  int m = 0;  // measurements; 0 picks the family default
  int n = 0;  // frame size; 0 picks the family default
  double theta = 0.0;
  bool has_theta = false;
  double kappa = 0.0;
  bool has_kappa = false;
  double purity = 1.0;
  std::string state_file;
  std::string povm_file;
  double alpha = 1.0;
  std::string kind = "tsallis";
};

double average_set_entropy(const quantum::MeasurementSet& set,
                           const quantum::DensityMatrix& rho,
                           EntropyOrder alpha, bool renyi_kind) {
  double total = 0.0;
  for (const auto& m : set.measurements) {
    const Distribution p = quantum::born_probabilities(m, rho);
    total += renyi_kind ? icdiag::renyi(p, alpha) : icdiag::tsallis(p, alpha);
  }
  return total / set.count();
}

// Builds the canonical single measurement for a family, when one exists at
// these parameters.
quantum::Povm build_single_measurement(quantum::Family fam, int d, int n,
                                       double theta) {
  switch (fam) {
    case quantum::Family::Sic:
      return quantum::sic_povm(d);
    case quantum::Family::Gsic:
      return quantum::general_sic(d, theta);
    case quantum::Family::Basis: {
      std::vector<quantum::ComplexVector> basis;
      for (int j = 0; j < d; ++j) {
        quantum::ComplexVector e = quantum::ComplexVector::Zero(d);
        e(j) = 1.0;
        basis.push_back(std::move(e));
      }
      return quantum::etf_povm(basis);
    }
    case quantum::Family::Etf: {
      if (n == d + 1) return quantum::etf_simplex(d);
      if (n == d * d) return quantum::etf_povm(quantum::sic_vectors(d));
      if (n == d) return build_single_measurement(quantum::Family::Basis, d,
                                                  d, 0.0);
      throw std::invalid_argument(
          "no built-in equiangular frame with this vector count");
    }
    default:
      throw std::invalid_argument("family has no single built-in measurement");
  }
}

int cmd_quantum_bound(const QuantumBoundArgs& args) {
  const auto famOpt = io::family_from_name(args.family);
  if (!famOpt) throw std::domain_error("unknown family: " + args.family);
  const quantum::Family fam = *famOpt;

  std::optional<quantum::DensityMatrix> rho;
  if (!args.state_file.empty()) rho = io::load_state(args.state_file);

  // Custom measurements are certified directly against the generic bound at
  // the measured coincidence.
  if (fam == quantum::Family::Custom) {
    if (args.povm_file.empty() || !rho) {
      throw std::domain_error(
          "custom family needs --povm-file and --state-file");
    }
    if (args.kind == "min") {
      throw std::domain_error(
          "the min-entropy sandwich applies to the symmetric families");
    }
    quantum::Povm povm = io::load_povm(args.povm_file);
    if (povm.d != rho->dim()) {
      throw std::domain_error("state and measurement dimensions differ");
    }
    quantum::validate_povm(povm);
    const auto reports =
        relations::certify(povm, {*rho}, std::vector<double>{args.alpha});
    const auto want = args.kind == "renyi" ? relations::EntropyKind::Renyi
                                           : relations::EntropyKind::Tsallis;
    for (const auto& rep : reports) {
      if (rep.kind == want) {
        print_json(io::report_json(rep));
        return 0;
      }
    }
    throw std::runtime_error("no certified report produced");
  }

  relations::ScenarioParams p;
  p.family = fam;
  p.d = args.d;
  p.purity = rho ? quantum::purity(*rho) : args.purity;
  const bool multi =
      fam == quantum::Family::Mub || fam == quantum::Family::Mum;
  p.M = args.m > 0 ? args.m : (multi ? args.d + 1 : 1);
  if (fam == quantum::Family::Etf) {
    p.n = args.n > 0 ? args.n : args.d + 1;
  } else if (fam == quantum::Family::Basis) {
    p.n = args.d;
  } else {
    p.n = args.d * args.d;
  }
  if (fam == quantum::Family::Mum) {
    if (!args.has_kappa) throw std::domain_error("mum family needs --kappa");
    p.kappa = args.kappa;
  }
  if (fam == quantum::Family::Gsic) {
    if (!args.has_theta) throw std::domain_error("gsic family needs --theta");
    p.theta = args.theta;
  }

  const EntropyOrder alpha(args.alpha);
  relations::BoundReport rep;
  std::optional<double> min_upper;

  if (args.kind == "min") {
    if (fam != quantum::Family::Sic && fam != quantum::Family::Gsic) {
      throw std::domain_error(
          "the min-entropy sandwich applies to the symmetric families");
    }
    const auto [lo, hi] = relations::min_entropy_sandwich(p);
    rep.family = fam;
    rep.d = p.d;
    rep.M = 1;
    rep.n = p.n;
    rep.theta = p.theta;
    rep.alpha = std::numeric_limits<double>::infinity();
    rep.kind = relations::EntropyKind::MinEntropy;
    rep.purity = p.purity;
    rep.bound = lo;
    min_upper = hi;
    const double theta =
        p.theta ? *p.theta : 1.0 / (static_cast<double>(p.d) * p.d);
    const double absc = relations::gsic_abscissa(p.d, theta, p.purity);
    rep.achieving_k =
        std::max(2, static_cast<int>(std::ceil(1.0 / absc - 1e-12)));
  } else if (args.kind == "renyi") {
    switch (fam) {
      case quantum::Family::Mub: {
        relations::ScenarioParams q = p;
        q.kappa = 1.0;  // unbiased bases are the sharp smoothed case
        rep = relations::mum_renyi_bound(q, alpha);
        rep.family = quantum::Family::Mub;
        rep.kappa.reset();
        break;
      }
      case quantum::Family::Mum:
        rep = relations::mum_renyi_bound(p, alpha);
        break;
      case quantum::Family::Sic:
        rep = *relations::sic_bounds(p, alpha).renyi;
        break;
      case quantum::Family::Gsic:
        rep = *relations::gsic_bounds(p, alpha).renyi;
        break;
      default:
        rep = *relations::etf_bounds(p, alpha).renyi;
        break;
    }
  } else {
    switch (fam) {
      case quantum::Family::Mub:
        rep = relations::mub_avg_bound(p, alpha);
        break;
      case quantum::Family::Mum:
        rep = relations::mum_tsallis_bound(p, alpha);
        break;
      case quantum::Family::Sic:
        rep = relations::sic_bounds(p, alpha).tsallis;
        break;
      case quantum::Family::Gsic:
        rep = relations::gsic_bounds(p, alpha).tsallis;
        break;
      default:
        rep = relations::etf_bounds(p, alpha).tsallis;
        break;
    }
  }

  if (rho) {
    try {
      double measured = 0.0;
      if (multi) {
        quantum::MeasurementSet set =
            fam == quantum::Family::Mub ? quantum::mub_set(p.d, p.M)
                                        : quantum::mum_set(p.d, *p.kappa);
        if (p.M < set.count()) {
          set.measurements.resize(static_cast<std::size_t>(p.M));
        }
        measured = average_set_entropy(set, *rho, alpha, args.kind == "renyi");
      } else {
        const quantum::Povm povm = build_single_measurement(
            fam, p.d, p.n, p.theta.value_or(0.0));
        const Distribution born = quantum::born_probabilities(povm, *rho);
        measured = args.kind == "min"
                       ? icdiag::min_entropy(born)
                       : (args.kind == "renyi" ? icdiag::renyi(born, alpha)
                                               : icdiag::tsallis(born, alpha));
      }
      rep.measured = measured;
      rep.slack = measured - rep.bound;
    } catch (const std::exception&) {
      rep.note =
          "no built-in measurement at these parameters; bound uses state "
          "purity only";
    }
  }

  nlohmann::ordered_json j = io::report_json(rep);
  if (min_upper) j["upper"] = io::jnum(*min_upper);
  print_json(j);
  return 0;
}

int cmd_frames_validate(const std::string& file) {
  const auto kets = io::load_frame_vectors(file);
  const auto report = quantum::etf_validate(kets);
  print_json(io::etf_report_json(report));
  return report.valid() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "icdiag: generalized entropies, information-diagram bounds, and "
      "quantum measurement uncertainty certification"};
  app.require_subcommand(1);

  // entropy
  std::string ent_dist;
  double ent_alpha = 1.0;
  std::string ent_kind = "tsallis";
  auto* entropy_cmd =
      app.add_subcommand("entropy", "Entropy and coincidence of a distribution");
  entropy_cmd->add_option("--dist", ent_dist,
                          "comma-separated probabilities")->required();
  entropy_cmd->add_option("--alpha", ent_alpha, "entropy order")
      ->capture_default_str();
  entropy_cmd->add_option("--kind", ent_kind, "entropy kind")
      ->check(CLI::IsMember({"tsallis", "renyi", "min"}))
      ->capture_default_str();

  // bound polygonal | bound maxp
  auto* bound_cmd = app.add_subcommand("bound", "Information-diagram bounds");
  bound_cmd->require_subcommand(1);
  double bp_ic = 0.0, bp_alpha = 1.0;
  int bp_n = 2;
  auto* bound_poly = bound_cmd->add_subcommand(
      "polygonal", "Polygonal entropy lower bound at a coincidence");
  bound_poly->add_option("--ic", bp_ic, "index of coincidence")->required();
  bound_poly->add_option("--alpha", bp_alpha, "entropy order")
      ->capture_default_str();
  bound_poly->add_option("--n", bp_n, "number of outcomes")->required();
  double bm_ic = 0.0;
  int bm_n = 2;
  auto* bound_maxp = bound_cmd->add_subcommand(
      "maxp", "Max-probability envelope at a coincidence");
  bound_maxp->add_option("--ic", bm_ic, "index of coincidence")->required();
  bound_maxp->add_option("--n", bm_n, "number of outcomes")->required();

  // diagram entropy | diagram maxp
  auto* diagram_cmd =
      app.add_subcommand("diagram", "Emit information-diagram CSV datasets");
  diagram_cmd->require_subcommand(1);
  double de_alpha = 1.0;
  int de_n = 5, de_grid = 128;
  long de_samples = 2000;
  std::uint64_t de_seed = 42;
  std::string de_out;
  auto* diagram_entropy =
      diagram_cmd->add_subcommand("entropy", "Entropy vs coincidence rows");
  diagram_entropy->add_option("--alpha", de_alpha, "entropy order")
      ->required();
  diagram_entropy->add_option("--n", de_n, "number of outcomes")->required();
  diagram_entropy->add_option("--samples", de_samples, "random samples")
      ->capture_default_str();
  diagram_entropy->add_option("--seed", de_seed, "sampler seed")
      ->capture_default_str();
  diagram_entropy->add_option("--grid", de_grid, "boundary grid points")
      ->capture_default_str();
  diagram_entropy->add_option("--out", de_out, "CSV output path")->required();
  int dm_n = 5, dm_grid = 128;
  long dm_samples = 0;
  std::uint64_t dm_seed = 42;
  std::string dm_out;
  auto* diagram_maxp = diagram_cmd->add_subcommand(
      "maxp", "Max probability vs coincidence rows");
  diagram_maxp->add_option("--n", dm_n, "number of outcomes")->required();
  diagram_maxp->add_option("--samples", dm_samples, "random samples")
      ->capture_default_str();
  diagram_maxp->add_option("--seed", dm_seed, "sampler seed")
      ->capture_default_str();
  diagram_maxp->add_option("--grid", dm_grid, "boundary grid points")
      ->capture_default_str();
  diagram_maxp->add_option("--out", dm_out, "CSV output path")->required();

  // verify polygonal | thm1 | quantum
  auto* verify_cmd =
      app.add_subcommand("verify", "Run a certification sweep; exit 1 on FAIL");
  verify_cmd->require_subcommand(1);
  struct VerifyArgs {
    int n = 5;
    long samples = 20000;
    std::uint64_t seed = 12345;
    std::string alphas = "0,0.25,0.5,0.75,1,1.25,1.5,1.75,2";
    int grid = 256;
    double tolerance = 1e-10;
  };
  VerifyArgs va_poly, va_thm1, va_quantum;
  va_quantum.samples = 200;
  auto add_verify_options = [](CLI::App* sub, VerifyArgs& va, bool uses_n) {
    if (uses_n) {
      sub->add_option("--n", va.n, "number of outcomes")
          ->capture_default_str();
    }
    sub->add_option("--samples", va.samples, "random samples")
        ->capture_default_str();
    sub->add_option("--seed", va.seed, "sweep seed")->capture_default_str();
    sub->add_option("--alphas", va.alphas, "comma-separated entropy orders")
        ->capture_default_str();
    sub->add_option("--grid", va.grid, "structured grid points")
        ->capture_default_str();
    sub->add_option("--tolerance", va.tolerance, "slack tolerance")
        ->capture_default_str();
  };
  auto* verify_poly = verify_cmd->add_subcommand(
      "polygonal", "Certify the polygonal entropy bound");
  add_verify_options(verify_poly, va_poly, true);
  auto* verify_thm1 = verify_cmd->add_subcommand(
      "thm1", "Certify the max-probability envelope");
  add_verify_options(verify_thm1, va_thm1, true);
  auto* verify_quantum = verify_cmd->add_subcommand(
      "quantum", "Certify the measurement catalogue (d = 2, 3)");
  add_verify_options(verify_quantum, va_quantum, false);

  // quantum bound
  auto* quantum_cmd =
      app.add_subcommand("quantum", "Quantum measurement bounds");
  quantum_cmd->require_subcommand(1);
  QuantumBoundArgs qa;
  auto* quantum_bound = quantum_cmd->add_subcommand(
      "bound", "Uncertainty bound for a measurement family");
  quantum_bound->add_option("--family", qa.family, "measurement family")
      ->check(CLI::IsMember({"basis", "mub", "mum", "etf", "sic", "gsic",
                             "custom"}))
      ->capture_default_str();
  quantum_bound->add_option("--d", qa.d, "Hilbert space dimension")
      ->capture_default_str();
  quantum_bound->add_option("--M", qa.m, "number of measurements (mub/mum)");
  quantum_bound->add_option("--n", qa.n, "frame vector count (etf)");
  auto* theta_opt =
      quantum_bound->add_option("--theta", qa.theta, "purity parameter (gsic)");
  auto* kappa_opt = quantum_bound->add_option("--kappa", qa.kappa,
                                              "sharpness parameter (mum)");
  quantum_bound->add_option("--purity", qa.purity, "state purity")
      ->capture_default_str();
  quantum_bound->add_option("--state-file", qa.state_file,
                            "density matrix JSON file");
  quantum_bound->add_option("--povm-file", qa.povm_file,
                            "measurement JSON file (custom family)");
  quantum_bound->add_option("--alpha", qa.alpha, "entropy order")
      ->capture_default_str();
  quantum_bound->add_option("--kind", qa.kind, "entropy kind")
      ->check(CLI::IsMember({"tsallis", "renyi", "min"}))
      ->capture_default_str();

  // frames validate
  auto* frames_cmd = app.add_subcommand("frames", "Frame utilities");
  frames_cmd->require_subcommand(1);
  std::string fv_file;
  auto* frames_validate = frames_cmd->add_subcommand(
      "validate", "Validate an equiangular tight frame file");
  frames_validate->add_option("--file", fv_file, "frame JSON file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*entropy_cmd) return cmd_entropy(ent_dist, ent_alpha, ent_kind);
    if (*bound_poly) return cmd_bound_polygonal(bp_ic, bp_alpha, bp_n);
    if (*bound_maxp) return cmd_bound_maxp(bm_ic, bm_n);
    if (*diagram_entropy) {
      return cmd_diagram_entropy(de_alpha, de_n, de_samples, de_seed, de_grid,
                                 de_out);
    }
    if (*diagram_maxp) {
      return cmd_diagram_maxp(dm_n, dm_samples, dm_seed, dm_grid, dm_out);
    }
    auto make_config = [](const VerifyArgs& va) {
      harness::SweepConfig cfg;
      cfg.n = va.n;
      cfg.samples = va.samples;
      cfg.seed = va.seed;
      cfg.alphas = io::parse_number_list(va.alphas);
      cfg.grid = va.grid;
      cfg.tolerance = va.tolerance;
      return cfg;
    };
    if (*verify_poly) return cmd_verify("polygonal", make_config(va_poly));
    if (*verify_thm1) return cmd_verify("thm1", make_config(va_thm1));
    if (*verify_quantum) return cmd_verify("quantum", make_config(va_quantum));
    if (*quantum_bound) {
      qa.has_theta = theta_opt->count() > 0;
      qa.has_kappa = kappa_opt->count() > 0;
      return cmd_quantum_bound(qa);
    }
    if (*frames_validate) return cmd_frames_validate(fv_file);
    std::cerr << "error: no command selected\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
