#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hessian/bellman.hpp"
#include "hessian/fields.hpp"
#include "hessian/geometry.hpp"
#include "hessian/operators.hpp"
#include "hessian/solver.hpp"

#include <json.hpp>

namespace hess {

/// Thrown for malformed or incomplete experiment configs (maps to the
/// usage/parse exit code in the command-line tool).
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

struct McConfig {
  int n_paths = 10000;
  double dt = 1e-3;
  uint64_t seed = 1;
  std::vector<std::vector<double>> points;  // evaluation points
  std::vector<int> control_indices;         // constant policies to simulate
  bool use_grid_policy = false;             // also simulate the argmin policy
};

/// One experiment: a Dirichlet problem plus the numerical knobs of every
/// subcommand. `op` is the complex operator itself when realm is complex;
/// solving then goes through the realification.
struct ExperimentConfig {
  HessianOperator op;
  bool complex_realm = false;
  DomainGeometry dom;
  Field f;
  Field phi;
  std::optional<Field> exact_solution;

  ControlGridSpec controls;
  std::vector<double> ladder;  // grid spacings, finest last; single-h = size 1
  SolveOptions solve;
  McConfig mc;

  int convexity_samples = 256;  // boundary samples for the domain check
  int verify_pairs = 100;       // equivalence checks: random (gamma, c) draws
  double verify_tol = 2e-3;     // |control-infimum + t1| acceptance threshold
  // the equivalence gap shrinks with control density, so verification may use
  // a denser control set than the solver
  ControlGridSpec verify_controls;

  std::string canonical;    // stable re-serialization of the parsed config
  uint64_t hash = 0;        // FNV-1a of `canonical`
};

ExperimentConfig parse_config_json(const nlohmann::ordered_json& j);
ExperimentConfig parse_config_file(const std::string& path);

/// FNV-1a 64-bit hash of a byte string.
uint64_t fnv1a64(const std::string& bytes);
std::string hash_hex(uint64_t h);

/// Shortest round-trip decimal form of a double (deterministic output).
std::string format_double(double v);

/// RFC-4180 style CSV accumulator. The header names carry units in square
/// brackets and every row ends with the experiment's config hash.
class CsvTable {
 public:
  CsvTable(std::vector<std::string> header_with_units, uint64_t config_hash);
  void add_row(const std::vector<std::string>& cells);
  std::string str() const;
  void write(const std::string& path) const;

 private:
  size_t width_;
  uint64_t hash_;
  std::string body_;
};

/// Serialize with 2-space indent and a trailing newline; ordered_json keeps
/// insertion order, so output bytes are stable.
void write_json(const std::string& path, const nlohmann::ordered_json& j);

// Building blocks reused by the tests.
HessianOperator parse_operator(const nlohmann::ordered_json& j);
Field parse_field(const nlohmann::ordered_json& j);
DomainGeometry parse_shape(const nlohmann::ordered_json& j, int dim, Realm realm);

}  // namespace hess
