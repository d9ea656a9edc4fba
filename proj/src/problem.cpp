#include "putinar/problem.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace putinar {

using nlohmann::json;

int Problem::max_constraint_degree() const {
  int d = 1;
  for (const auto& gi : g) d = std::max(d, gi.degree());
  return d;
}

MultiPoly scale_variables(const MultiPoly& p, double s) {
  MultiPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    double f = c;
    for (int i = 0; i < p.nvars(); ++i)
      for (int j = 0; j < e[i]; ++j) f *= s;
    out.add_term(e, f);
  }
  return out;
}

std::optional<double> detect_ball_constraint(const MultiPoly& g) {
  const int n = g.nvars();
  if (g.degree() != 2) return std::nullopt;
  double c0 = 0.0, a = 0.0;
  int squares = 0;
  for (const auto& [e, c] : g.terms()) {
    int td = total_degree(e);
    if (td == 0) {
      c0 = c;
    } else if (td == 2) {
      // must be a pure square X_i^2
      bool pure = false;
      for (int i = 0; i < n; ++i)
        if (e[i] == 2) pure = true;
      if (!pure) return std::nullopt;
      if (squares == 0)
        a = c;
      else if (std::abs(c - a) > 1e-12 * std::abs(a))
        return std::nullopt;
      ++squares;
    } else {
      return std::nullopt;
    }
  }
  if (squares != n || a >= 0.0 || c0 <= 0.0) return std::nullopt;
  return std::sqrt(c0 / (-a));
}

Problem normalize(const Problem& raw, std::optional<double> r_ball, int norm_resolution) {
  require(!raw.g.empty(), ErrorKind::InvalidConstraint, "constraint tuple is empty");
  for (const auto& gi : raw.g)
    require(!gi.is_zero(), ErrorKind::InvalidConstraint, "zero polynomial among constraints");

  double r = 1.0;
  if (!r_ball && raw.declared_r_ball) r_ball = raw.declared_r_ball;
  if (r_ball) {
    require(*r_ball > 0.0, ErrorKind::InvalidParameter, "r_ball must be positive");
    r = *r_ball;
  } else {
    std::optional<double> detected;
    for (const auto& gi : raw.g)
      if (auto rho = detect_ball_constraint(gi)) {
        detected = rho;
        break;
      }
    require(detected.has_value(), ErrorKind::NonArchimedeanDeclared,
            "no r_ball given and no ball constraint found among g");
    r = *detected;
  }

  const int res = norm_resolution > 0 ? norm_resolution : default_resolution(raw.nvars);
  Problem out;
  out.nvars = raw.nvars;
  out.f = scale_variables(raw.f, r);
  out.normalized = true;
  out.scale_r = raw.scale_r * r;
  out.ball_certificate_level = raw.ball_certificate_level;
  for (const auto& gi : raw.g) {
    MultiPoly scaled = scale_variables(gi, r);
    double upper = max_norm_box(scaled, res).upper;
    require(std::isfinite(upper) && upper > 0.0, ErrorKind::NumericalFailure,
            "could not certify constraint norm");
    out.g.push_back(scaled * (1.0 / (2.0 * upper)));
    out.divisors.push_back(2.0 * upper);
  }
  return out;
}

// ---- JSON ----

static json poly_json(const MultiPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exp", e}, {"coef", c}});
  return json{{"nvars", p.nvars()}, {"terms", terms}};
}

static MultiPoly poly_parse(const json& j) {
  require(j.contains("nvars") && j.contains("terms"), ErrorKind::IoError,
          "polynomial JSON needs nvars and terms");
  MultiPoly p(j.at("nvars").get<int>());
  for (const auto& t : j.at("terms")) {
    Exponents e = t.at("exp").get<Exponents>();
    p.add_term(e, t.at("coef").get<double>());
  }
  return p;
}

std::string poly_to_json(const MultiPoly& p) { return poly_json(p).dump(2); }

MultiPoly poly_from_json(const std::string& text) {
  try {
    return poly_parse(json::parse(text));
  } catch (const json::exception& ex) {
    fail(ErrorKind::IoError, std::string("bad polynomial JSON: ") + ex.what());
  }
}

std::string problem_to_json(const Problem& prob) {
  json j;
  j["f"] = poly_json(prob.f);
  j["g"] = json::array();
  for (const auto& gi : prob.g) j["g"].push_back(poly_json(gi));
  if (prob.declared_r_ball) j["r_ball"] = *prob.declared_r_ball;
  if (prob.normalized) {
    j["normalized"] = true;
    j["scale_r"] = prob.scale_r;
    j["divisors"] = prob.divisors;
  }
  if (prob.ball_certificate_level) j["ball_certificate_level"] = *prob.ball_certificate_level;
  return j.dump(2);
}

Problem problem_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    fail(ErrorKind::IoError, std::string("bad problem JSON: ") + ex.what());
  }
  require(j.contains("f") && j.contains("g"), ErrorKind::IoError, "problem JSON needs f and g");
  Problem p;
  p.f = poly_parse(j.at("f"));
  p.nvars = p.f.nvars();
  for (const auto& gj : j.at("g")) {
    p.g.push_back(poly_parse(gj));
    require(p.g.back().nvars() == p.nvars, ErrorKind::DimensionMismatch,
            "constraint nvars differs from objective");
  }
  if (j.contains("r_ball")) p.declared_r_ball = j.at("r_ball").get<double>();
  if (j.contains("normalized")) p.normalized = j.at("normalized").get<bool>();
  if (j.contains("scale_r")) p.scale_r = j.at("scale_r").get<double>();
  if (j.contains("divisors")) p.divisors = j.at("divisors").get<std::vector<double>>();
  if (j.contains("ball_certificate_level"))
    p.ball_certificate_level = j.at("ball_certificate_level").get<int>();
  return p;
}

Problem load_problem(const std::string& path) { return problem_from_json(read_file(path)); }

void save_problem(const Problem& prob, const std::string& path) {
  write_file(path, problem_to_json(prob));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::IoError, "cannot write " + path);
  out << content;
}

}  // namespace putinar
