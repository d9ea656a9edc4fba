#include "putinar/sampling.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace putinar {

std::uint64_t Rng::next_u64() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::gaussian() {
  double u1 = uniform(), u2 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::acos(-1.0) * u2);
}

std::vector<double> Rng::unit_vector(int n) {
  std::vector<double> v(n);
  double nrm = 0.0;
  do {
    nrm = 0.0;
    for (int i = 0; i < n; ++i) {
      v[i] = gaussian();
      nrm += v[i] * v[i];
    }
  } while (nrm < 1e-12);
  nrm = std::sqrt(nrm);
  for (double& x : v) x /= nrm;
  return v;
}

static double halton_1d(long long index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

std::vector<double> halton_box(int nvars, int count, int skip) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  std::vector<double> out(static_cast<std::size_t>(nvars) * count);
  for (int i = 0; i < count; ++i)
    for (int d = 0; d < nvars; ++d)
      out[static_cast<std::size_t>(i) * nvars + d] =
          2.0 * halton_1d(i + 1 + skip, primes[d % 16]) - 1.0;
  return out;
}

namespace {

double total_value(const DescentProblem& dp, std::span<const double> x, double rho, double* base_out,
                   double* pen_out) {
  double base = dp.base ? dp.base(x) : 0.0;
  double pen = 0.0;
  for (int i = 0; i < dp.nconstraints; ++i) {
    double gi = dp.constraint(x, i);
    if (gi < 0.0) pen += gi * gi;
  }
  if (base_out) *base_out = base;
  if (pen_out) *pen_out = pen;
  return base + rho * pen;
}

void total_grad(const DescentProblem& dp, std::span<const double> x, double rho,
                std::span<double> grad) {
  std::fill(grad.begin(), grad.end(), 0.0);
  if (dp.base_grad) dp.base_grad(x, grad);
  std::vector<double> gg(dp.nvars);
  for (int i = 0; i < dp.nconstraints; ++i) {
    double gi = dp.constraint(x, i);
    if (gi < 0.0) {
      dp.constraint_grad(x, i, gg);
      for (int d = 0; d < dp.nvars; ++d) grad[d] += rho * 2.0 * gi * gg[d];
    }
  }
}

}  // namespace

std::vector<double> gn_project(const DescentProblem& dp, std::span<const double> x0,
                               int max_iters) {
  const int n = dp.nvars;
  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> gg(n), trial(n);
  Eigen::MatrixXd J;
  Eigen::VectorXd r;
  for (int it = 0; it < max_iters; ++it) {
    std::vector<int> active;
    double viol2 = 0.0;
    for (int i = 0; i < dp.nconstraints; ++i) {
      double gi = dp.constraint(x, i);
      if (gi < 0.0) {
        active.push_back(i);
        viol2 += gi * gi;
      }
    }
    if (active.empty()) break;
    J.resize(active.size(), n);
    r.resize(active.size());
    for (std::size_t a = 0; a < active.size(); ++a) {
      r(a) = -dp.constraint(x, active[a]);  // positive violation
      dp.constraint_grad(x, active[a], gg);
      for (int d = 0; d < n; ++d) J(a, d) = -gg[d];  // gradient of the violation
    }
    Eigen::VectorXd step =
        (J.transpose() * J + 1e-14 * Eigen::MatrixXd::Identity(n, n))
            .ldlt()
            .solve(J.transpose() * r);
    double alpha = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 30; ++ls) {
      for (int d = 0; d < n; ++d) trial[d] = std::clamp(x[d] - alpha * step(d), -1.0, 1.0);
      double v2 = 0.0;
      for (int i = 0; i < dp.nconstraints; ++i) {
        double gi = dp.constraint(trial, i);
        if (gi < 0.0) v2 += gi * gi;
      }
      if (v2 < viol2 * (1.0 - 1e-12)) {
        x = trial;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) break;
  }
  return x;
}

DescentResult penalized_descent(const DescentProblem& dp, std::span<const double> x0, double rho,
                                int max_iters) {
  const int n = dp.nvars;
  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> grad(n), trial(n);
  double fx = total_value(dp, x, rho, nullptr, nullptr);
  double step = 0.1;
  for (int it = 0; it < max_iters; ++it) {
    total_grad(dp, x, rho, grad);
    double gnorm2 = 0.0;
    for (double g : grad) gnorm2 += g * g;
    if (gnorm2 < 1e-24) break;
    bool moved = false;
    for (int ls = 0; ls < 40; ++ls) {
      for (int d = 0; d < n; ++d)
        trial[d] = std::clamp(x[d] - step * grad[d], -1.0, 1.0);
      double ft = total_value(dp, trial, rho, nullptr, nullptr);
      double decr = 0.0;
      for (int d = 0; d < n; ++d) decr += (x[d] - trial[d]) * grad[d];
      if (ft <= fx - 1e-4 * decr) {
        x = trial;
        fx = ft;
        step *= 1.5;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  DescentResult res;
  res.x = std::move(x);
  total_value(dp, res.x, rho, &res.base_value, &res.penalty);
  return res;
}

}  // namespace putinar
