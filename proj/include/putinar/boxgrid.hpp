#pragma once

#include <span>
#include <vector>

#include "putinar/multipoly.hpp"

namespace putinar {

// Flattened term list for tight evaluation loops.
struct CompiledPoly {
  int nvars = 0;
  int degree = 0;
  std::vector<double> coefs;
  std::vector<int> exps;  // coefs.size() * nvars, row-major

  static CompiledPoly from(const MultiPoly& p);
};

// Tensor grid of Chebyshev-Lobatto nodes per axis (endpoints included),
// nodes in descending order cos(j*pi/(res-1)).
struct ChebGrid {
  int nvars = 0;
  int res = 0;
  std::vector<double> nodes;

  static ChebGrid make(int nvars, int res);
  long long point_count() const;
  // max Euclidean covering radius of the grid inside the box
  double covering_radius() const;
  void point(long long flat, std::span<double> out) const;
};

namespace kernels {

// Serial reference implementations (kept as the ground truth for the
// OpenMP variants; tests compare the two bitwise).
void eval_points_serial(const CompiledPoly& p, std::span<const double> xs, std::span<double> out);
double grid_max_abs_serial(const CompiledPoly& p, const ChebGrid& grid, long long* argmax);

// OpenMP-parallel variants; identical results for any thread count.
void eval_points_parallel(const CompiledPoly& p, std::span<const double> xs, std::span<double> out);
double grid_max_abs_parallel(const CompiledPoly& p, const ChebGrid& grid, long long* argmax);

// Dispatchers used by the rest of the library.
void eval_points(const CompiledPoly& p, std::span<const double> xs, std::span<double> out);
double grid_max_abs(const CompiledPoly& p, const ChebGrid& grid, long long* argmax = nullptr);

}  // namespace kernels

// Certified bracket for max |p| on [-1,1]^n.
// lower is the grid maximum; upper adds Markov-inequality slack, so
// lower <= true norm <= upper whenever upper is finite.
struct BoxNormEstimate {
  double lower = 0.0;
  double upper = 0.0;  // +inf when the grid is too coarse for the Markov bound
  int grid_resolution = 0;
};

// Evaluation budget guard: nvars * res^nvars points.
inline constexpr long long kGridBudgetCap = 40'000'000;

BoxNormEstimate max_norm_box(const MultiPoly& p, int resolution);

// Sensible default grid resolution per dimension count.
int default_resolution(int nvars);

struct MarkovReport {
  double lhs = 0.0;   // estimated max of ||grad p||_2 on the box
  double rhs = 0.0;   // (2d^2 - d) * estimated ||p||
  bool holds = false;
};

MarkovReport markov_gradient_check(const MultiPoly& p, int resolution = 0);

}  // namespace putinar
