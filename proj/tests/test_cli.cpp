#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hessian/config.hpp"
#include "hessian/errors.hpp"
#include "hessian/operators.hpp"

using namespace hess;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

ordered_json minimal_config() {
  return ordered_json::parse(R"({
    "problem": {
      "operator": {"kind": "det_root", "dim": 2},
      "shape": {"kind": "ball", "center": [0.0, 0.0], "radius": 1.0},
      "f": 1.0,
      "phi": 0.0
    },
    "grid": {"h": 0.125}
  })");
}

#ifdef HESSIAN_CLI_PATH
int run_cli(const std::string& args) {
  std::string cmd = std::string(HESSIAN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path config_dir() { return fs::path(HESSIAN_CONFIG_DIR); }
#endif

}  // namespace

TEST_CASE("config parsing: operators, shapes, fields, and defaults") {
  ExperimentConfig cfg = parse_config_json(minimal_config());
  CHECK(cfg.op.kind == HessianOperator::Kind::normalized_root);
  CHECK(cfg.op.dim == 2);
  CHECK_FALSE(cfg.complex_realm);
  CHECK(cfg.dom.dim == 2);
  CHECK(cfg.ladder.size() == 1);
  CHECK(cfg.ladder[0] == doctest::Approx(0.125));
  CHECK(cfg.controls.n_rays == 64);  // default spec
  CHECK(cfg.solve.tol == doctest::Approx(1e-10));
  CHECK_FALSE(cfg.exact_solution.has_value());
  CHECK(cfg.hash != 0);
  CHECK(cfg.verify_controls.n_rays == cfg.controls.n_rays);

  // inline numbers parse as constant fields
  CHECK(field_eval(cfg.f, {0.3, 0.4}) == doctest::Approx(1.0));

  ordered_json j = minimal_config();
  j["problem"]["operator"] = {{"kind", "sigma_root"}, {"order", 2}, {"dim", 3}};
  j["problem"]["shape"] = {{"kind", "ellipsoid"},
                           {"center", {0.0, 0.0, 0.0}},
                           {"semi_axes", {1.0, 2.0, 1.5}}};
  j["problem"]["phi"] = {{"kind", "radial"}, {"center", {0.0, 0.0, 0.0}}, {"coeffs", {0.0, 0.5}}};
  j["grid"] = {{"ladder", {0.25, 0.125}}};
  j["verify"] = {{"n_pairs", 7}, {"tol", 0.01}, {"n_rays", 500}};
  ExperimentConfig c2 = parse_config_json(j);
  CHECK(c2.op.kind == HessianOperator::Kind::normalized_root);
  CHECK(c2.op.parts[0].order == 2);
  CHECK(c2.dom.shape.kind == Shape::Kind::ellipsoid);
  CHECK(field_eval(c2.phi, {1.0, 0.0, 0.0}) == doctest::Approx(0.5));
  CHECK(c2.ladder.size() == 2);
  CHECK(c2.verify_pairs == 7);
  CHECK(c2.verify_controls.n_rays == 500);
  CHECK(c2.verify_controls.seed == c2.controls.seed);

  // complex realm doubles the ambient dimension
  ordered_json jc = minimal_config();
  jc["problem"]["operator"] = {{"kind", "det_root"}, {"dim", 2}, {"realm", "complex"}};
  jc["problem"]["shape"] = {{"kind", "ball"}, {"center", {0.0, 0.0, 0.0, 0.0}}, {"radius", 1.0}};
  ExperimentConfig c3 = parse_config_json(jc);
  CHECK(c3.complex_realm);
  CHECK(c3.dom.dim == 4);
  CHECK(c3.dom.realm == Realm::complex_case);
}

TEST_CASE("config parsing rejects malformed input") {
  ordered_json j = minimal_config();
  j["problem"].erase("operator");
  CHECK_THROWS_AS(parse_config_json(j), config_error);

  j = minimal_config();
  j["problem"]["operator"]["kind"] = "frobnicate";
  CHECK_THROWS_AS(parse_config_json(j), config_error);

  j = minimal_config();
  j["grid"] = {{"h", -0.1}};
  CHECK_THROWS_AS(parse_config_json(j), config_error);

  j = minimal_config();
  j["mc"] = {{"n_paths", 10}};
  CHECK_THROWS_AS(parse_config_json(j), config_error);

  j = minimal_config();
  j["problem"]["shape"]["center"] = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(parse_config_json(j), config_error);

  j = minimal_config();
  j["problem"]["f"] = {{"kind", "mystery"}};
  CHECK_THROWS_AS(parse_config_json(j), config_error);
}

TEST_CASE("FNV-1a hash matches the published test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
  CHECK(hash_hex(0xcbf29ce484222325ULL) == "cbf29ce484222325");
  CHECK(hash_hex(0x1ULL) == "0000000000000001");
  // the hash is over the canonical serialization, so whitespace differences
  // in the source file do not matter but value changes do
  ExperimentConfig a = parse_config_json(minimal_config());
  ordered_json j = minimal_config();
  j["grid"]["h"] = 0.25;
  CHECK(a.hash != parse_config_json(j).hash);
  CHECK(a.hash == parse_config_json(minimal_config()).hash);
}

TEST_CASE("deterministic double formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-11, 0.0, 1e300, 0.03125}) {
    std::string s = format_double(v);
    CHECK(std::stod(s) == v);
    CHECK(format_double(v) == s);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("CSV tables carry units and the config hash, RFC-4180 quoting") {
  CsvTable t({"h [length]", "note [text]"}, 0xabcULL);
  t.add_row({"0.5", "plain"});
  t.add_row({"0.25", "has,comma"});
  t.add_row({"0.125", "has \"quote\""});
  std::string s = t.str();
  CHECK(s.find("h [length],note [text],config_hash\r\n") == 0);
  CHECK(s.find("0.5,plain,0000000000000abc\r\n") != std::string::npos);
  CHECK(s.find("\"has,comma\"") != std::string::npos);
  CHECK(s.find("\"has \"\"quote\"\"\"") != std::string::npos);
  CHECK_THROWS_AS(t.add_row({"only-one"}), std::invalid_argument);
}

#ifdef HESSIAN_CLI_PATH

TEST_CASE("command line: certification, exit codes, deterministic outputs") {
  fs::path work = fs::temp_directory_path() / "hessian_cli_test";
  fs::remove_all(work);
  fs::create_directories(work / "a");
  fs::create_directories(work / "b");
  std::string quad = (config_dir() / "quadratic_det_disk.json").string();
  std::string box = (config_dir() / "smoothed_box_det.json").string();

  // usage errors
  CHECK(run_cli("") == 1);
  CHECK(run_cli("solve --config /nonexistent.json") == 1);

  // certification pass and failure
  CHECK(run_cli("check-domain --config " + quad + " --out " + (work / "a").string()) == 0);
  ordered_json cert = ordered_json::parse(slurp(work / "a" / "certificate.json"));
  CHECK(cert["certified"] == true);
  CHECK(cert["boundary_convexity"]["sigma_shortcut_agrees"] == true);
  CHECK(cert["barrier"]["worst_residual"].get<double>() <= -1.0);

  CHECK(run_cli("check-domain --config " + box + " --out " + (work / "a").string()) == 2);
  CHECK(ordered_json::parse(slurp(work / "a" / "certificate.json"))["certified"] == false);

  // solving without certification fails on the bad domain, --force skips it
  CHECK(run_cli("solve --config " + box + " --out " + (work / "a").string()) == 2);
  CHECK(run_cli("solve --config " + box + " --force --out " + (work / "a").string()) == 0);

  // identical configs and seeds give byte-identical outputs
  CHECK(run_cli("solve --config " + quad + " --out " + (work / "a").string()) == 0);
  CHECK(run_cli("solve --config " + quad + " --out " + (work / "b").string()) == 0);
  CHECK(slurp(work / "a" / "solution.csv") == slurp(work / "b" / "solution.csv"));
  CHECK(slurp(work / "a" / "summary.json") == slurp(work / "b" / "summary.json"));
  ordered_json sum = ordered_json::parse(slurp(work / "a" / "summary.json"));
  CHECK(sum["converged"] == true);
  CHECK(sum["max_error_vs_exact"].get<double>() <= 1e-6);

  // the complex-realm config runs through the lift
  std::string cplx = (config_dir() / "complex_det_ball.json").string();
  CHECK(run_cli("solve --config " + cplx + " --out " + (work / "a").string()) == 0);
  CHECK(ordered_json::parse(slurp(work / "a" / "summary.json"))["max_error_vs_exact"]
            .get<double>() <= 1e-6);

  fs::remove_all(work);
}

#endif
