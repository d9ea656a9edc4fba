#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace putinar {

// Deterministic RNG: splitmix64 stream + Box-Muller. Avoids
// std::normal_distribution, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64();
  double uniform();                      // [0, 1)
  double uniform(double a, double b);
  double gaussian();
  std::vector<double> unit_vector(int n);

 private:
  std::uint64_t state_;
};

// Halton low-discrepancy points in [-1,1]^nvars, flattened row-major.
std::vector<double> halton_box(int nvars, int count, int skip = 0);

// Projected gradient descent with backtracking on
//   base(x) + rho * sum_i max(0, -g_i(x))^2
// over the box [-1,1]^n. base/base_grad may be null for pure feasibility.
struct DescentProblem {
  int nvars = 0;
  std::function<double(std::span<const double>)> base;
  std::function<void(std::span<const double>, std::span<double>)> base_grad;
  std::function<double(std::span<const double>, int)> constraint;        // g_i(x)
  std::function<void(std::span<const double>, int, std::span<double>)> constraint_grad;
  int nconstraints = 0;
};

struct DescentResult {
  std::vector<double> x;
  double base_value = 0.0;
  double penalty = 0.0;
};

DescentResult penalized_descent(const DescentProblem& dp, std::span<const double> x0, double rho,
                                int max_iters);

// Damped Gauss-Newton on the violation residuals r_i = max(0, -g_i(x)),
// clamped to the box. Converges geometrically even where the gradients
// vanish on S (e.g. g = -X^2), which plain penalty descent cannot do.
std::vector<double> gn_project(const DescentProblem& dp, std::span<const double> x0,
                               int max_iters);

}  // namespace putinar
