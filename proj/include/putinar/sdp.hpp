#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "putinar/errors.hpp"

namespace putinar {

// Entry of a symmetric data matrix: value applies to (i,j) and (j,i).
struct SdpEntry {
  int block = 0;
  int i = 0;
  int j = 0;
  double value = 0.0;
};

struct SdpConstraint {
  std::vector<SdpEntry> entries;
  double rhs = 0.0;
};

// Block-diagonal standard form:
//   min <C,X>  s.t.  <A_k, X> = b_k (k = 1..m),  X >= 0 (PSD blocks).
struct SdpProblem {
  std::vector<int> block_dims;
  std::vector<SdpEntry> objective;
  std::vector<SdpConstraint> constraints;

  int total_dim() const;
};

enum class SdpStatus { Optimal, Infeasible, Unbounded, SlowProgress };

const char* to_string(SdpStatus s);

struct SdpOptions {
  double tol = 1e-8;       // relative duality gap
  double feas_tol = 1e-8;  // relative primal/dual infeasibility
  int max_iter = 120;
  int psd_dim_cap = 400;  // total PSD dimension guard
  // membership solves only need a feasible point: the duality gap can be
  // accepted loosely since the objective value carries no meaning there
  bool feasibility_objective = false;
  bool verbose = false;
};

struct SdpResult {
  SdpStatus status = SdpStatus::SlowProgress;
  std::vector<Eigen::MatrixXd> X;  // primal blocks, strictly PSD iterates
  std::vector<Eigen::MatrixXd> Z;  // dual slack blocks
  Eigen::VectorXd y;
  double pobj = 0.0;
  double dobj = 0.0;
  double gap = 0.0;       // <X, Z>
  double rel_gap = 0.0;
  double primal_infeas = 0.0;  // ||b - A(X)|| / (1 + ||b||)
  double dual_infeas = 0.0;    // ||C - A*(y) - Z||_F / (1 + ||C||_F)
  int iterations = 0;
  std::string detail;
};

// Primal-dual interior point method with Nesterov-Todd scaling and a
// Mehrotra predictor-corrector step. Deterministic: identical inputs give
// identical iterates.
SdpResult solve_sdp(const SdpProblem& prob, const SdpOptions& opts = {});

}  // namespace putinar
