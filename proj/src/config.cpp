#include "hessian/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace hess {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw config_error("config: " + msg); }

const ordered_json& need(const ordered_json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing key '") + key + "'");
  return *it;
}

double need_positive(const ordered_json& j, const char* key) {
  double v = need(j, key).get<double>();
  if (!(v > 0.0)) fail(std::string("'") + key + "' must be positive");
  return v;
}

std::vector<double> as_vector(const ordered_json& j) { return j.get<std::vector<double>>(); }

Realm parse_realm(const std::string& s) {
  if (s == "real") return Realm::real_case;
  if (s == "complex") return Realm::complex_case;
  fail("unknown realm '" + s + "'");
}

}  // namespace

HessianOperator parse_operator(const ordered_json& j) {
  std::string kind = need(j, "kind").get<std::string>();
  int dim = need(j, "dim").get<int>();
  if (dim < 1) fail("operator dim must be >= 1");
  Realm realm = parse_realm(j.value("realm", "real"));
  if (kind == "det_root") return normalized_root(det_operator(dim, realm));
  if (kind == "sigma_root")
    return normalized_root(sigma_operator(need(j, "order").get<int>(), dim, realm));
  if (kind == "mu_root")
    return normalized_root(mu_operator(need(j, "order").get<int>(), dim, realm));
  if (kind == "quotient")
    return quotient_operator(sigma_operator(need(j, "order").get<int>(), dim, realm),
                             need(j, "param").get<int>());
  if (kind == "min_eigenvalue")
    return min_eigenvalue_operator(sigma_operator(need(j, "order").get<int>(), dim, realm));
  fail("unknown operator kind '" + kind + "'");
}

Field parse_field(const ordered_json& j) {
  if (j.is_number()) return constant_field(j.get<double>());
  std::string kind = need(j, "kind").get<std::string>();
  if (kind == "constant") return constant_field(need(j, "value").get<double>());
  if (kind == "polynomial") {
    std::vector<Field::Term> terms;
    for (const auto& t : need(j, "terms")) {
      Field::Term term;
      term.coeff = need(t, "coeff").get<double>();
      term.expo = need(t, "expo").get<std::vector<int>>();
      terms.push_back(std::move(term));
    }
    return polynomial_field(std::move(terms));
  }
  if (kind == "radial") return radial_field(as_vector(need(j, "center")), as_vector(need(j, "coeffs")));
  if (kind == "max_comp") {
    std::vector<Field> comps;
    for (const auto& c : need(j, "components")) comps.push_back(parse_field(c));
    return max_comp_field(std::move(comps), need(j, "power").get<double>());
  }
  fail("unknown field kind '" + kind + "'");
}

DomainGeometry parse_shape(const ordered_json& j, int dim, Realm realm) {
  std::string kind = need(j, "kind").get<std::string>();
  if (kind == "ball") {
    std::vector<double> center = j.contains("center")
                                     ? as_vector(need(j, "center"))
                                     : std::vector<double>(dim, 0.0);
    if (static_cast<int>(center.size()) != dim) fail("ball center has the wrong dimension");
    return make_ball(center, need_positive(j, "radius"), realm);
  }
  if (kind == "ellipsoid") {
    if (realm == Realm::complex_case) fail("ellipsoid domains are real-realm only");
    std::vector<double> center = as_vector(need(j, "center"));
    std::vector<double> axes = as_vector(need(j, "semi_axes"));
    if (static_cast<int>(center.size()) != dim || static_cast<int>(axes.size()) != dim)
      fail("ellipsoid data has the wrong dimension");
    return make_ellipsoid(center, axes);
  }
  if (kind == "poly_level") {
    std::vector<Shape::Term> terms;
    for (const auto& t : need(j, "terms")) {
      Shape::Term term;
      term.coeff = need(t, "coeff").get<double>();
      term.expo = need(t, "expo").get<std::vector<int>>();
      if (static_cast<int>(term.expo.size()) != dim) fail("poly_level exponent dimension mismatch");
      terms.push_back(std::move(term));
    }
    return make_poly_domain(dim, terms, as_vector(need(j, "box_lo")), as_vector(need(j, "box_hi")),
                            realm);
  }
  fail("unknown shape kind '" + kind + "'");
}

ExperimentConfig parse_config_json(const ordered_json& j) {
  try {
    ExperimentConfig cfg;
    const ordered_json& prob = need(j, "problem");
    cfg.op = parse_operator(need(prob, "operator"));
    cfg.complex_realm = cfg.op.realm == Realm::complex_case;
    int ambient = cfg.complex_realm ? 2 * cfg.op.dim : cfg.op.dim;
    cfg.dom = parse_shape(need(prob, "shape"), ambient,
                          cfg.complex_realm ? Realm::complex_case : Realm::real_case);
    cfg.f = parse_field(need(prob, "f"));
    cfg.phi = parse_field(need(prob, "phi"));
    if (prob.contains("exact_solution")) cfg.exact_solution = parse_field(prob["exact_solution"]);

    if (j.contains("controls")) {
      const ordered_json& c = j["controls"];
      cfg.controls.n_rays = c.value("n_rays", cfg.controls.n_rays);
      cfg.controls.n_orthogonal = c.value("n_orthogonal", cfg.controls.n_orthogonal);
      cfg.controls.margin = c.value("margin", cfg.controls.margin);
      cfg.controls.lambda_floor = c.value("lambda_floor", cfg.controls.lambda_floor);
      cfg.controls.include_identity = c.value("include_identity", true);
      cfg.controls.seed = c.value("seed", cfg.controls.seed);
      if (cfg.controls.n_rays < 0 || cfg.controls.n_orthogonal < 0)
        fail("control counts must be nonnegative");
    }

    const ordered_json& grid = need(j, "grid");
    if (grid.contains("ladder")) {
      cfg.ladder = as_vector(grid["ladder"]);
      if (cfg.ladder.empty()) fail("empty grid ladder");
    } else {
      cfg.ladder = {need_positive(grid, "h")};
    }
    for (double h : cfg.ladder)
      if (!(h > 0.0)) fail("grid spacings must be positive");

    if (j.contains("solver")) {
      const ordered_json& s = j["solver"];
      cfg.solve.tol = s.value("tol", cfg.solve.tol);
      cfg.solve.max_outer = s.value("max_outer", cfg.solve.max_outer);
      cfg.solve.max_inner_sweeps = s.value("max_inner_sweeps", cfg.solve.max_inner_sweeps);
      if (!(cfg.solve.tol > 0.0)) fail("solver tol must be positive");
    }

    if (j.contains("mc")) {
      const ordered_json& m = j["mc"];
      cfg.mc.n_paths = m.value("n_paths", cfg.mc.n_paths);
      cfg.mc.dt = m.value("dt", cfg.mc.dt);
      cfg.mc.seed = m.value("seed", cfg.mc.seed);
      cfg.mc.use_grid_policy = m.value("use_grid_policy", false);
      if (m.contains("points"))
        for (const auto& p : m["points"]) cfg.mc.points.push_back(as_vector(p));
      if (m.contains("control_indices"))
        cfg.mc.control_indices = m["control_indices"].get<std::vector<int>>();
      if (cfg.mc.n_paths < 100) fail("mc n_paths must be >= 100");
      if (!(cfg.mc.dt > 0.0)) fail("mc dt must be positive");
      for (const auto& p : cfg.mc.points)
        if (static_cast<int>(p.size()) != ambient) fail("mc point dimension mismatch");
    }

    cfg.convexity_samples = j.value("convexity_samples", 256);
    if (cfg.convexity_samples < 1) fail("convexity_samples must be positive");

    cfg.verify_controls = cfg.controls;
    if (j.contains("verify")) {
      const ordered_json& v = j["verify"];
      cfg.verify_pairs = v.value("n_pairs", cfg.verify_pairs);
      cfg.verify_tol = v.value("tol", cfg.verify_tol);
      cfg.verify_controls.n_rays = v.value("n_rays", cfg.verify_controls.n_rays);
      cfg.verify_controls.n_orthogonal = v.value("n_orthogonal", cfg.verify_controls.n_orthogonal);
      if (cfg.verify_pairs < 1) fail("verify n_pairs must be positive");
      if (!(cfg.verify_tol > 0.0)) fail("verify tol must be positive");
    }

    cfg.canonical = j.dump();
    cfg.hash = fnv1a64(cfg.canonical);
    return cfg;
  } catch (const config_error&) {
    throw;
  } catch (const std::exception& e) {
    fail(e.what());
  }
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(std::string("parse failure in '") + path + "': " + e.what());
  }
  return parse_config_json(j);
}

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[h & 0xf];
    h >>= 4;
  }
  return s;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

CsvTable::CsvTable(std::vector<std::string> header_with_units, uint64_t config_hash)
    : width_(header_with_units.size()), hash_(config_hash) {
  for (const std::string& h : header_with_units) {
    body_ += csv_escape(h);
    body_ += ',';
  }
  body_ += "config_hash\r\n";
}

void CsvTable::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::invalid_argument("CsvTable: row width mismatch");
  for (const std::string& c : cells) {
    body_ += csv_escape(c);
    body_ += ',';
  }
  body_ += hash_hex(hash_);
  body_ += "\r\n";
}

std::string CsvTable::str() const { return body_; }

void CsvTable::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("CsvTable: cannot write '" + path + "'");
  out << body_;
}

void write_json(const std::string& path, const ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_json: cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace hess
