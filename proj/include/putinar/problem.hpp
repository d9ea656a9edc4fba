#pragma once

#include <optional>
#include <string>
#include <vector>

#include "putinar/boxgrid.hpp"
#include "putinar/multipoly.hpp"

namespace putinar {

// Objective + constraint tuple with normalization bookkeeping.
// After normalize(): variables scaled into the unit ball (X -> r_ball X) and
// every g_i divided by twice its certified upper norm, so ||g_i|| <= 1/2.
struct Problem {
  MultiPoly f;
  std::vector<MultiPoly> g;
  int nvars = 0;

  std::optional<double> declared_r_ball;  // from the problem file, consumed by normalize()

  bool normalized = false;
  double scale_r = 1.0;                  // variable scale applied
  std::vector<double> divisors;          // per-constraint divisor 2*||g_i||
  std::optional<int> ball_certificate_level;  // level at which 1-||X||^2 in Q(g) was certified

  int max_constraint_degree() const;
};

// Substitute X_i -> s * X_i.
MultiPoly scale_variables(const MultiPoly& p, double s);

// Recognize c * (rho^2 - ||X||_2^2) with c > 0; returns rho if matched.
std::optional<double> detect_ball_constraint(const MultiPoly& g);

Problem normalize(const Problem& raw, std::optional<double> r_ball = std::nullopt,
                  int norm_resolution = 0);

// ---- JSON round-trip (schemas shared by all CLI commands) ----

std::string poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const std::string& text);

std::string problem_to_json(const Problem& prob);
Problem problem_from_json(const std::string& text);

Problem load_problem(const std::string& path);
void save_problem(const Problem& prob, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace putinar
