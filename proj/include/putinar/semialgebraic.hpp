#pragma once

#include "putinar/problem.hpp"
#include "putinar/sampling.hpp"

namespace putinar {

struct SampleBudget {
  int halton = 20000;        // dense box samples
  int shell_anchors = 12;    // feasible anchors used for near-S shells
  int shell_radii = 10;      // log-spaced radii in [1e-3, 1e-1]
  int descent_starts = 24;
  int descent_iters = 200;
  std::uint64_t seed = 20240901;
  double feas_tol = 1e-9;    // absolute tolerance on min_i g_i for projected points
};

// G(x) = |min{g_1(x), ..., g_r(x), 0}|
double algebraic_distance(const Problem& prob, std::span<const double> x);

// Points of S found by strict-feasibility filtering plus penalized projection.
// Throws EmptySetSuspected if nothing is found within budget.
std::vector<std::vector<double>> feasible_points(const Problem& prob, const SampleBudget& budget);

struct DistanceEstimate {
  double value = 0.0;
  bool refined = false;  // true when descent improved on the sample scan
};

DistanceEstimate euclidean_distance(const Problem& prob, std::span<const double> x,
                                    const SampleBudget& budget);

struct LojaEstimate {
  double c_hat = 1.0;
  double L_hat = 1.0;
  int sample_count = 0;
  double fit_residual = 0.0;   // rms residual of the log-log fit
  double raw_exponent = 1.0;   // unclamped fitted slope, may be < 1
  double max_violation = 0.0;  // worst D^L / (c G) - 1 on the fresh verification set
};

LojaEstimate estimate_lojasiewicz(const Problem& prob, int sample_count,
                                  const SampleBudget& budget = {});

struct CqcReport {
  bool holds = false;
  std::vector<double> witness;  // failing point when !holds
  double min_sigma = 0.0;       // smallest active-gradient singular value seen
  int points_checked = 0;
};

CqcReport check_cqc(const Problem& prob, double active_tol = 1e-6, double rank_tol_scale = 1e-8,
                    const SampleBudget& budget = {});

struct FStarReport {
  double f_star = 0.0;
  double norm_f = 0.0;
  double epsilon_f = 0.0;
  bool nonpositive = false;  // f_star <= 0 flag, not fatal
  std::vector<double> argmin;
};

FStarReport f_star_and_epsilon(const Problem& prob, const SampleBudget& budget = {});

struct SublevelDelta {
  double delta_emp = 0.0;   // +inf sentinel when A is empty
  double delta_loja = 0.0;  // (1/c)(eps/(8 d^2))^L
  bool a_empty = false;
  LojaEstimate loja;
};

SublevelDelta sublevel_delta(const Problem& prob, const SampleBudget& budget = {});

struct DistanceBoundReport {
  double hdist_emp = 0.0;  // sampled separation inf_{a in A} dist(a, S)
  double bound = 0.0;      // eps(f) / (8 d^2)
  bool holds = false;
  bool vacuous = false;    // A empty
};

DistanceBoundReport distance_bound_check(const Problem& prob, const SampleBudget& budget = {});

}  // namespace putinar
