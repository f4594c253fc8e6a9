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
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "icdiag/bounds.hpp"
#include "icdiag/entropy.hpp"
#include "icdiag/harness.hpp"
#include "icdiag/io.hpp"
#include "icdiag/quantum.hpp"
#include "icdiag/relations.hpp"
#include "oracles.hpp"

namespace io = icdiag::io;
namespace bounds = icdiag::bounds;
namespace harness = icdiag::harness;
namespace quantum = icdiag::quantum;
namespace relations = icdiag::relations;
using icdiag::EntropyOrder;
using nlohmann::json;

namespace {

std::string tmp_path(const std::string& name) {
  return "/tmp/icdiag_test_" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_out(const oracle::CliResult& res) {
  REQUIRE(res.status == 0);
  return json::parse(res.out);
}

const char* kTrineFrame = R"({
  "d": 2,
  "vectors": [
    {"re": [1.0, 0.0]},
    {"re": [-0.5, 0.8660254037844386]},
    {"re": [-0.5, -0.8660254037844386]}
  ]
})";

const char* kNotTightFrame = R"({
  "d": 2,
  "vectors": [
    {"re": [1.0, 0.0]},
    {"re": [0.0, 1.0]},
    {"re": [0.7071067811865476, 0.7071067811865476]}
  ]
})";

const char* kMixedStateD2 = R"({"d": 2, "re": [[0.5, 0.0], [0.0, 0.5]]})";

const char* kPlusStateD2 = R"({"d": 2, "re": [[0.5, 0.5], [0.5, 0.5]]})";

const char* kBasisPovmD2 = R"({
  "d": 2,
  "elements": [
    {"re": [[1.0, 0.0], [0.0, 0.0]]},
    {"re": [[0.0, 0.0], [0.0, 1.0]]}
  ]
})";

}  // namespace

TEST_CASE("number and list parsing") {
  CHECK(io::parse_number("1.5") == 1.5);
  CHECK(io::parse_number("-2e-3") == -2e-3);
  CHECK(io::parse_number("0.25 ") == 0.25);
  REQUIRE_THROWS_AS(io::parse_number("abc"), std::invalid_argument);
  REQUIRE_THROWS_AS(io::parse_number(""), std::invalid_argument);
  REQUIRE_THROWS_AS(io::parse_number("1.5x"), std::invalid_argument);
  REQUIRE_THROWS_AS(io::parse_number("1e999"), std::invalid_argument);
  REQUIRE_THROWS_AS(io::parse_number("inf"), std::invalid_argument);

  const auto xs = io::parse_number_list("0,0.25,0.5");
  REQUIRE(xs.size() == 3);
  CHECK(xs[1] == 0.25);
  REQUIRE_THROWS_AS(io::parse_number_list("1,,2"), std::invalid_argument);
  REQUIRE_THROWS_AS(io::parse_number_list(""), std::invalid_argument);

  const auto p = io::parse_distribution("0.5,0.3,0.2");
  CHECK(p.size() == 3);
  REQUIRE_THROWS_AS(io::parse_distribution("0.5,0.6"), std::invalid_argument);
}

TEST_CASE("family names round-trip") {
  for (auto f : {quantum::Family::Basis, quantum::Family::Mub,
                 quantum::Family::Mum, quantum::Family::Etf,
                 quantum::Family::Sic, quantum::Family::Gsic,
                 quantum::Family::Custom}) {
    const auto back = io::family_from_name(quantum::family_name(f));
    REQUIRE(back.has_value());
    CHECK(*back == f);
  }
  CHECK_FALSE(io::family_from_name("povm").has_value());
}

TEST_CASE("numeric formatting for JSON and CSV") {
  // 12-digit JSON numbers are a fixed point of the rounding.
  const double r = io::round12(M_PI);
  CHECK(io::round12(r) == r);
  CHECK(oracle::close_abs(r, M_PI, 1e-11));
  CHECK(io::fmt12(0.62) == "0.62");
  // 17 significant digits reproduce the exact double.
  for (double v : {1.0 / 3.0, 0.1, std::sqrt(2.0), 0.41588830833596718}) {
    CHECK(std::strtod(io::fmt17(v).c_str(), nullptr) == v);
  }
  CHECK(io::jnum(std::numeric_limits<double>::infinity()).is_null());
  CHECK(io::jnum(std::nan("")).is_null());
  CHECK(io::jnum(0.25).get<double>() == 0.25);
  CHECK(io::jopt(std::nullopt).is_null());
  CHECK(io::jopt(0.5).get<double>() == 0.5);
}

TEST_CASE("state, frame, and measurement files") {
  const std::string state_path = tmp_path("state.json");
  oracle::write_text(state_path, kPlusStateD2);
  const auto rho = io::load_state(state_path);
  CHECK(rho.dim() == 2);
  CHECK(oracle::close_abs(quantum::purity(rho), 1.0, 1e-12));

  // A complex state exercises the optional imaginary part.
  oracle::write_text(state_path,
                     R"({"d": 2, "re": [[0.5, 0.0], [0.0, 0.5]],)"
                     R"( "im": [[0.0, -0.5], [0.5, 0.0]]})");
  CHECK(oracle::close_abs(quantum::purity(io::load_state(state_path)), 1.0,
                          1e-12));

  oracle::write_text(state_path, R"({"re": [[1.0]]})");
  REQUIRE_THROWS(io::load_state(state_path));
  oracle::write_text(state_path, R"({"d": 2, "re": [[1.0, 0.0]]})");
  REQUIRE_THROWS(io::load_state(state_path));
  oracle::write_text(state_path, R"({"d": 2})");
  REQUIRE_THROWS(io::load_state(state_path));
  oracle::write_text(state_path,
                     R"({"d": 2, "re": [[2.0, 0.0], [0.0, 0.0]]})");
  REQUIRE_THROWS(io::load_state(state_path));
  REQUIRE_THROWS(io::load_state(tmp_path("missing.json")));

  const std::string frame_path = tmp_path("frame.json");
  oracle::write_text(frame_path, kTrineFrame);
  const auto kets = io::load_frame_vectors(frame_path);
  REQUIRE(kets.size() == 3);
  const auto report = quantum::etf_validate(kets);
  CHECK(report.valid(1e-12));
  CHECK(oracle::close_abs(report.c, 0.25, 1e-12));
  oracle::write_text(frame_path,
                     R"({"d": 3, "vectors": [{"re": [1.0, 0.0]}]})");
  REQUIRE_THROWS(io::load_frame_vectors(frame_path));
  oracle::write_text(frame_path, R"({"d": 2, "vectors": []})");
  REQUIRE_THROWS(io::load_frame_vectors(frame_path));

  const std::string povm_path = tmp_path("povm.json");
  oracle::write_text(povm_path, kBasisPovmD2);
  const auto povm = io::load_povm(povm_path);
  CHECK(povm.family == quantum::Family::Custom);
  REQUIRE_NOTHROW(quantum::validate_povm(povm));
  oracle::write_text(povm_path, R"({"d": 2, "elements": [{}]})");
  REQUIRE_THROWS(io::load_povm(povm_path));
}

TEST_CASE("CSV writers round-trip their rows") {
  const auto erows = harness::diagram_entropy_rows(0.8, 4, 20, 5, 16);
  const std::string epath = tmp_path("entropy.csv");
  io::write_entropy_csv(epath, erows);
  const auto etab = oracle::parse_csv(epath);
  REQUIRE(etab.header == std::vector<std::string>{"ic", "entropy", "alpha",
                                                  "smooth_bound",
                                                  "polygonal_bound", "tag"});
  REQUIRE(etab.rows.size() == erows.size());
  for (std::size_t i = 0; i < erows.size(); ++i) {
    CHECK(std::strtod(etab.rows[i][0].c_str(), nullptr) == erows[i].ic);
    CHECK(std::strtod(etab.rows[i][4].c_str(), nullptr) ==
          erows[i].polygonal_bound);
    CHECK(etab.rows[i][5] == erows[i].tag);
  }

  const auto mrows = harness::diagram_maxp_rows(4, 10, 5, 16);
  const std::string mpath = tmp_path("maxp.csv");
  io::write_maxp_csv(mpath, mrows);
  const auto mtab = oracle::parse_csv(mpath);
  REQUIRE(mtab.header ==
          std::vector<std::string>{"ic", "maxp", "lower", "upper", "tag"});
  REQUIRE(mtab.rows.size() == mrows.size());
  for (std::size_t i = 0; i < mrows.size(); ++i) {
    CHECK(std::strtod(mtab.rows[i][2].c_str(), nullptr) == mrows[i].lower);
    CHECK(std::strtod(mtab.rows[i][3].c_str(), nullptr) == mrows[i].upper);
  }

  REQUIRE_THROWS(io::write_entropy_csv("/nonexistent-dir/x.csv", erows));
}

TEST_CASE("report and verdict serialization") {
  relations::ScenarioParams p;
  p.family = quantum::Family::Sic;
  p.d = 2;
  p.purity = 1.0;
  auto rep = relations::sic_bounds(p, EntropyOrder(1.0)).tsallis;
  rep.measured = rep.bound + 0.1;
  rep.slack = 0.1;
  const auto j = io::report_json(rep);
  for (const char* key : {"family", "d", "M", "n", "kappa", "theta", "alpha",
                          "kind", "purity", "bound", "achieving_k", "measured",
                          "slack", "note"}) {
    CAPTURE(key);
    REQUIRE(j.contains(key));
  }
  CHECK(j["family"] == "sic");
  CHECK(j["kind"] == "tsallis");
  CHECK(j["kappa"].is_null());
  CHECK(j["note"].is_null());
  CHECK(j["achieving_k"] == 3);

  harness::SweepConfig cfg;
  cfg.n = 3;
  cfg.samples = 200;
  cfg.grid = 16;
  const auto v = harness::run_polygonal_sweep(cfg);
  const auto jv = io::verdict_json(v);
  for (const char* key :
       {"kind", "pass", "n", "samples", "seed", "tolerance", "checks",
        "failure_count", "min_slack", "worst_alpha", "worst_case",
        "worst_probs", "gap_stats", "categories", "failures"}) {
    CAPTURE(key);
    REQUIRE(jv.contains(key));
  }
  CHECK(jv["kind"] == "polygonal");
  CHECK(jv["pass"].get<bool>());
  CHECK(jv["failures"].is_array());

  const auto jr =
      io::etf_report_json(quantum::etf_validate(quantum::etf_simplex_vectors(2)));
  for (const char* key :
       {"d", "n", "S", "S_expected", "c", "c_expected", "norm_deviation",
        "tight_deviation", "equiangular_deviation", "n_within_bound", "tight",
        "equiangular", "valid", "worst_pairs", "note"}) {
    CAPTURE(key);
    REQUIRE(jr.contains(key));
  }
  CHECK(jr["valid"].get<bool>());
}

TEST_CASE("cli entropy") {
  const auto res =
      oracle::run_cli("entropy --dist 0.5,0.3,0.2 --alpha 2 --kind tsallis");
  const json j = parse_out(res);
  CHECK(j["kind"] == "tsallis");
  CHECK(j["alpha"].get<double>() == 2.0);
  CHECK(j["n"] == 3);
  CHECK(oracle::close_abs(j["value"].get<double>(), 0.62, 1e-11));
  CHECK(oracle::close_abs(j["ic"].get<double>(), 0.38, 1e-11));
  CHECK(oracle::close_abs(j["max_probability"].get<double>(), 0.5, 1e-11));

  const auto min_res = oracle::run_cli("entropy --dist 0.5,0.5 --kind min");
  const json jm = parse_out(min_res);
  CHECK(jm["alpha"].is_null());
  CHECK(oracle::close_abs(jm["value"].get<double>(), std::log(2.0), 1e-11));

  const auto renyi_res =
      oracle::run_cli("entropy --dist 0.25,0.25,0.25,0.25 --alpha 0.5 "
                      "--kind renyi");
  CHECK(oracle::close_abs(parse_out(renyi_res)["value"].get<double>(),
                          std::log(4.0), 1e-11));

  // Identical invocations produce identical bytes.
  const auto again =
      oracle::run_cli("entropy --dist 0.5,0.3,0.2 --alpha 2 --kind tsallis");
  CHECK(again.out == res.out);

  CHECK(oracle::run_cli("entropy --dist 0.5,0.6").status == 2);
  CHECK(oracle::run_cli("entropy --dist 0.5,0.5 --kind bogus").status == 2);
  CHECK(oracle::run_cli("entropy --dist 0.5,0.5 --alpha -1").status == 2);
}

TEST_CASE("cli bound") {
  const json jp = parse_out(
      oracle::run_cli("bound polygonal --ic 0.7 --alpha 1 --n 5"));
  CHECK(oracle::close_abs(jp["bound"].get<double>(), 0.41588830833596718,
                          1e-11));
  CHECK(jp["achieving_k"] == 1);
  CHECK(jp["renyi_bound"].get<double>() > 0.0);
  CHECK(jp["smooth_bound"].get<double>() <= jp["bound"].get<double>() + 1e-11);

  const json jm = parse_out(oracle::run_cli("bound maxp --ic 1.0 --n 4"));
  REQUIRE(jm.size() == 2);
  CHECK(jm["lower"].get<double>() == 1.0);
  CHECK(jm["upper"].get<double>() == 1.0);

  const json jm2 = parse_out(oracle::run_cli("bound maxp --ic 0.38 --n 5"));
  CHECK(oracle::close_abs(jm2["lower"].get<double>(),
                          bounds::maxp_lower(0.38), 1e-11));
  CHECK(oracle::close_abs(jm2["upper"].get<double>(),
                          bounds::maxp_upper(0.38, 5), 1e-11));
  CHECK(jm2["lower"].get<double>() <= jm2["upper"].get<double>() + 1e-11);

  CHECK(oracle::run_cli("bound maxp --ic 0.1 --n 5").status == 2);
  CHECK(oracle::run_cli("bound polygonal --ic 0.5 --alpha 2.5 --n 4").status ==
        2);
  CHECK(oracle::run_cli("bound polygonal --ic 0.5 --alpha 1").status == 2);
}

TEST_CASE("cli quantum bound") {
  const json sic = parse_out(
      oracle::run_cli("quantum bound --family sic --d 2 --alpha 1"));
  CHECK(sic["family"] == "sic");
  CHECK(oracle::close_abs(sic["bound"].get<double>(), std::log(3.0), 1e-11));
  CHECK(sic["achieving_k"] == 3);
  CHECK(sic["purity"].get<double>() == 1.0);
  CHECK(sic["measured"].is_null());
  CHECK(sic["slack"].is_null());
  CHECK(sic["theta"].is_null());
  CHECK(sic["note"].is_null());

  const json mub = parse_out(
      oracle::run_cli("quantum bound --family mub --d 2 --M 3 --alpha 1"));
  CHECK(mub["family"] == "mub");
  CHECK(mub["kappa"].is_null());
  CHECK(mub["achieving_k"] == 1);
  CHECK(oracle::close_abs(mub["bound"].get<double>(),
                          2.0 * std::log(2.0) / 3.0, 1e-11));

  const json gsic = parse_out(oracle::run_cli(
      "quantum bound --family gsic --d 2 --theta 0.2 --alpha 2"));
  CHECK(oracle::close_abs(gsic["bound"].get<double>(), 0.7, 1e-11));
  CHECK(gsic["achieving_k"] == 3);
  CHECK(gsic["theta"].get<double>() == 0.2);

  const json minb = parse_out(
      oracle::run_cli("quantum bound --family sic --d 2 --kind min"));
  CHECK(minb["alpha"].is_null());
  CHECK(minb["kind"] == "min");
  CHECK(oracle::close_abs(minb["bound"].get<double>(), std::log(2.0), 1e-11));
  CHECK(oracle::close_abs(minb["upper"].get<double>(), std::log(3.0), 1e-11));
  CHECK(minb["achieving_k"] == 3);

  const json renyi = parse_out(oracle::run_cli(
      "quantum bound --family mum --d 2 --M 3 --kappa 0.7 --alpha 1.5 "
      "--kind renyi"));
  CHECK(renyi["kind"] == "renyi");
  CHECK(renyi["kappa"].get<double>() == 0.7);
  CHECK(renyi["bound"].get<double>() > 0.0);

  const json etf = parse_out(oracle::run_cli(
      "quantum bound --family etf --d 2 --n 3 --alpha 1 --purity 1.0"));
  // Trine coincidence ceiling 1/2: the bound is the two-outcome chord there.
  CHECK(oracle::close_abs(etf["bound"].get<double>(),
                          bounds::polygonal_tsallis_bound(0.5,
                                                          EntropyOrder(1.0), 3)
                              .value,
                          1e-11));

  CHECK(oracle::run_cli("quantum bound --family mum --d 2 --M 3 --kappa 0.7 "
                        "--alpha 0.5 --kind renyi")
            .status == 2);
  CHECK(oracle::run_cli("quantum bound --family mum --d 2 --alpha 1").status ==
        2);
  CHECK(oracle::run_cli("quantum bound --family gsic --d 2 --alpha 1")
            .status == 2);
  CHECK(oracle::run_cli("quantum bound --family etf --d 2 --kind min")
            .status == 2);
  CHECK(oracle::run_cli("quantum bound --family bogus").status == 2);
}

TEST_CASE("cli quantum bound with state and measurement files") {
  const std::string mixed = tmp_path("mixed_state.json");
  oracle::write_text(mixed, kMixedStateD2);
  const json j = parse_out(oracle::run_cli(
      "quantum bound --family sic --d 2 --kind min --state-file " + mixed));
  CHECK(oracle::close_abs(j["purity"].get<double>(), 0.5, 1e-11));
  CHECK(oracle::close_abs(j["bound"].get<double>(), 2.0 * std::log(2.0),
                          1e-11));
  CHECK(oracle::close_abs(j["upper"].get<double>(), 2.0 * std::log(2.0),
                          1e-11));
  CHECK(j["achieving_k"] == 4);
  REQUIRE_FALSE(j["measured"].is_null());
  CHECK(oracle::close_abs(j["measured"].get<double>(), std::log(4.0), 1e-11));
  CHECK(j["slack"].get<double>() >= -1e-9);

  const std::string plus = tmp_path("plus_state.json");
  oracle::write_text(plus, kPlusStateD2);
  const std::string povm = tmp_path("basis_povm.json");
  oracle::write_text(povm, kBasisPovmD2);
  const json jc = parse_out(oracle::run_cli(
      "quantum bound --family custom --alpha 1 --kind tsallis --povm-file " +
      povm + " --state-file " + plus));
  CHECK(jc["family"] == "custom");
  CHECK(jc["note"] == "generic bound at measured coincidence");
  CHECK(oracle::close_abs(jc["measured"].get<double>(), std::log(2.0), 1e-11));
  CHECK(oracle::close_abs(jc["bound"].get<double>(), std::log(2.0), 1e-11));
  CHECK(jc["slack"].get<double>() >= -1e-9);

  // Averaged bound certified against a state: three unbiased qubit bases at
  // a pure state measure (2/3) ln 2 on average, exactly the bound.
  const json ja = parse_out(oracle::run_cli(
      "quantum bound --family mub --d 2 --M 3 --alpha 1 --state-file " +
      plus));
  REQUIRE_FALSE(ja["measured"].is_null());
  CHECK(oracle::close_abs(ja["measured"].get<double>(),
                          2.0 * std::log(2.0) / 3.0, 1e-11));
  CHECK(ja["slack"].get<double>() >= -1e-9);

  CHECK(oracle::run_cli("quantum bound --family custom --alpha 1 "
                        "--povm-file " + povm)
            .status == 2);
  CHECK(oracle::run_cli("quantum bound --family custom --alpha 1 "
                        "--kind min --povm-file " + povm +
                        " --state-file " + plus)
            .status == 2);
  CHECK(oracle::run_cli("quantum bound --family sic --d 2 --state-file " +
                        tmp_path("missing.json"))
            .status == 2);
}

TEST_CASE("cli verify") {
  const auto poly = oracle::run_cli(
      "verify polygonal --n 4 --samples 400 --grid 32 --seed 7");
  const json jp = parse_out(poly);
  CHECK(jp["kind"] == "polygonal");
  CHECK(jp["pass"].get<bool>());
  CHECK(jp["failure_count"] == 0);

  // Byte-stable across runs and across worker counts.
  const auto again = oracle::run_cli(
      "verify polygonal --n 4 --samples 400 --grid 32 --seed 7");
  CHECK(again.out == poly.out);
  const auto one = oracle::run_cli(
      "verify polygonal --n 4 --samples 400 --grid 32 --seed 7",
      "ICDIAG_THREADS=1");
  const auto seven = oracle::run_cli(
      "verify polygonal --n 4 --samples 400 --grid 32 --seed 7",
      "ICDIAG_THREADS=7");
  CHECK(one.status == 0);
  CHECK(one.out == poly.out);
  CHECK(seven.out == poly.out);

  const auto thm1 = oracle::run_cli(
      "verify thm1 --n 2 --samples 400 --grid 32 --seed 9");
  const json jt = parse_out(thm1);
  CHECK(jt["kind"] == "thm1");
  CHECK(jt["pass"].get<bool>());

  const auto quantum_res = oracle::run_cli(
      "verify quantum --samples 4 --alphas 0,1,2 --grid 16");
  const json jq = parse_out(quantum_res);
  CHECK(jq["kind"] == "quantum");
  CHECK(jq["pass"].get<bool>());
  REQUIRE(jq["categories"].size() == 6);
  for (const auto& c : jq["categories"]) {
    CHECK(c["checks"].get<long>() > 0);
    CHECK(c["failures"].get<long>() == 0);
  }

  CHECK(oracle::run_cli("verify polygonal --alphas 0,3 --samples 10").status ==
        2);
  CHECK(oracle::run_cli("verify polygonal --n 1 --samples 10").status == 2);
}

TEST_CASE("cli diagram") {
  const std::string epath = tmp_path("cli_entropy.csv");
  const auto eres = oracle::run_cli(
      "diagram entropy --alpha 0.8 --n 5 --samples 40 --seed 3 --grid 16 "
      "--out " + epath);
  const json je = parse_out(eres);
  CHECK(je["diagram"] == "entropy");
  CHECK(je["rows"] == 40 + 16 * 4 + 5);
  const auto etab = oracle::parse_csv(epath);
  REQUIRE(etab.rows.size() == 40u + 16 * 4 + 5);
  REQUIRE(etab.header.size() == 6);
  const int ic_col = etab.column("ic");
  const int poly_col = etab.column("polygonal_bound");
  const int smooth_col = etab.column("smooth_bound");
  const bounds::PolygonalEvaluator eval(EntropyOrder(0.8), 5);
  for (std::size_t i = 0; i < etab.rows.size(); i += 7) {
    const double ic = std::strtod(etab.rows[i][ic_col].c_str(), nullptr);
    const double poly = std::strtod(etab.rows[i][poly_col].c_str(), nullptr);
    const double smooth =
        std::strtod(etab.rows[i][smooth_col].c_str(), nullptr);
    CHECK(oracle::close_abs(eval(ic).value, poly, 1e-10));
    CHECK(oracle::close_abs(bounds::smooth_bound(ic, EntropyOrder(0.8)),
                            smooth, 1e-10));
  }
  // Same seed, same bytes.
  oracle::run_cli(
      "diagram entropy --alpha 0.8 --n 5 --samples 40 --seed 3 --grid 16 "
      "--out " + epath + ".again");
  CHECK(read_file(epath) == read_file(epath + ".again"));

  const std::string mpath = tmp_path("cli_maxp.csv");
  const auto mres = oracle::run_cli(
      "diagram maxp --n 4 --samples 10 --seed 3 --grid 16 --out " + mpath);
  const json jm = parse_out(mres);
  CHECK(jm["diagram"] == "maxp");
  CHECK(jm["rows"] == 10 + 16 * 3 + 16 + 4);
  const auto mtab = oracle::parse_csv(mpath);
  REQUIRE(mtab.rows.size() == 10u + 16 * 3 + 16 + 4);
  const int mic = mtab.column("ic");
  const int mlow = mtab.column("lower");
  const int mup = mtab.column("upper");
  for (std::size_t i = 0; i < mtab.rows.size(); i += 5) {
    const double ic = std::strtod(mtab.rows[i][mic].c_str(), nullptr);
    CHECK(oracle::close_abs(bounds::maxp_lower(ic),
                            std::strtod(mtab.rows[i][mlow].c_str(), nullptr),
                            1e-12));
    CHECK(oracle::close_abs(bounds::maxp_upper(ic, 4),
                            std::strtod(mtab.rows[i][mup].c_str(), nullptr),
                            1e-12));
  }

  CHECK(oracle::run_cli("diagram entropy --alpha 0.8 --n 5 --out /no-dir/x.csv")
            .status == 2);
  CHECK(oracle::run_cli("diagram maxp --n 1 --out " + mpath).status == 2);
}

TEST_CASE("cli frames validate") {
  const std::string good = tmp_path("trine.json");
  oracle::write_text(good, kTrineFrame);
  const auto res = oracle::run_cli("frames validate --file " + good);
  const json j = parse_out(res);
  CHECK(j["valid"].get<bool>());
  CHECK(j["n_within_bound"].get<bool>());
  CHECK(oracle::close_abs(j["S"].get<double>(), 1.5, 1e-11));
  CHECK(oracle::close_abs(j["c"].get<double>(), 0.25, 1e-11));
  REQUIRE(j["note"].is_string());
  CHECK(j["note"].get<std::string>().find("complement") != std::string::npos);

  const std::string bad = tmp_path("not_tight.json");
  oracle::write_text(bad, kNotTightFrame);
  const auto bres = oracle::run_cli("frames validate --file " + bad);
  CHECK(bres.status == 1);
  const json jb = json::parse(bres.out);
  CHECK_FALSE(jb["valid"].get<bool>());
  CHECK(jb["worst_pairs"].size() > 0);

  CHECK(oracle::run_cli("frames validate --file " + tmp_path("missing.json"))
            .status == 2);
}

TEST_CASE("cli argument failures") {
  CHECK(oracle::run_cli("").status == 2);
  CHECK(oracle::run_cli("entropy --dist 0.5,0.5 --bogus 1").status == 2);
  CHECK(oracle::run_cli("bound").status == 2);
  CHECK(oracle::run_cli("nonsense").status == 2);
  const auto help = oracle::run_cli("--help");
  CHECK(help.status == 0);
  CHECK(help.out.find("icdiag") != std::string::npos);
}
