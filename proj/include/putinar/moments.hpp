#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "putinar/problem.hpp"

namespace putinar {

std::vector<Exponents> monomials_up_to(int nvars, int maxdeg);  // graded-lex order

// Truncated linear functional on R[X]_t, stored as the coefficient list L_alpha
// over the graded-lex monomial index.
struct PseudoMomentSeq {
  int nvars = 0;
  int degree = 0;
  std::vector<Exponents> index;
  std::vector<double> values;

  static PseudoMomentSeq zeros(int nvars, int t);

  double mass() const { return values.empty() ? 0.0 : values[0]; }
  double value(const Exponents& alpha) const;
  double two_norm() const;
  double pairing(const MultiPoly& f) const;  // <L, f>, deg f <= t required
  PseudoMomentSeq truncate(int t2) const;
};

PseudoMomentSeq dirac_moments(std::span<const double> x, int t);

// Hankel-structured matrix (L_{alpha+beta}) over monomials of degree <= k.
struct MomentMatrix {
  int order = 0;
  std::vector<Exponents> basis;
  Eigen::MatrixXd H;
};

MomentMatrix moment_matrix(const PseudoMomentSeq& L, int k);

struct TraceBoundReport {
  double trace = 0.0;
  double trace_bound = 0.0;  // sum_{k<=t} r^{2k}
  double norm2 = 0.0;        // ||L^{[2t]}||_2
  double norm_bound = 0.0;   // sqrt(C(n+t,t)) * sum r^{2k}
  bool holds = false;
};

TraceBoundReport trace_bound_check(const PseudoMomentSeq& L, int t, double r_ball);

struct GenSectionReport {
  bool holds = false;
  bool vacuous = false;  // mass not near zero, nothing to check
  double mass = 0.0;
  double trunc_norm = 0.0;
  double full_norm = 0.0;
};

GenSectionReport generating_section_check(const PseudoMomentSeq& L, int ell);

struct NormComparisonReport {
  double max_norm_lower = 0.0;
  double bound = 0.0;  // sqrt(C(n+t,t)) ||f||_2
  bool holds = false;
};

NormComparisonReport norm_comparison_check(const MultiPoly& f, int t);

// min ||V w - target||_2 over w >= 0, optionally with sum w = 1 (projection
// onto the convex hull of the columns). Active-set, deterministic.
struct NnlsResult {
  Eigen::VectorXd w;
  double residual = 0.0;
  int iterations = 0;
};

NnlsResult nnls_project(const Eigen::MatrixXd& V, const Eigen::VectorXd& target, bool simplex,
                        int max_iter = 500);

struct HausdorffOptions {
  int t = 1;
  std::vector<int> levels;       // quadratic-module levels (even)
  int s_samples = 2001;          // Dirac hull resolution
  int objectives = 12;           // random outer directions per level
  std::uint64_t seed = 20240901;
  bool normalized = true;        // mass-1 hull; false allows nonnegative scaling
};

struct HausdorffPoint {
  int level = 0;
  double dist_lower = 0.0;   // sampled lower bound on hdist
  double bound_shape = 0.0;  // constant-free theorem shape at this level
};

std::vector<HausdorffPoint> hausdorff_estimate(const Problem& prob, const HausdorffOptions& opts);

struct TubeReport {
  bool holds = false;
  double min_pairing = 0.0;  // min over the sampled family of <L, q>
  int family_size = 0;
};

// Checks <L, q> >= -epsilon over a sampled family of unit-2-norm polynomials
// nonnegative on S (squares, squares times generators, and SoS-certified
// shifts of random polynomials).
TubeReport tube_membership(const Problem& prob, const PseudoMomentSeq& L, int t, double epsilon,
                           int family_size = 60, std::uint64_t seed = 7);

}  // namespace putinar
