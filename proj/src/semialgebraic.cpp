#include "putinar/semialgebraic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace putinar {

namespace {

double min_constraint(const Problem& prob, std::span<const double> x) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& gi : prob.g) m = std::min(m, gi.eval(x));
  return m;
}

// Shared state for the sampled-geometry routines: constraint gradients and a
// feasible-point cache, so distance queries do not rescan the box.
struct GeoContext {
  const Problem& prob;
  const SampleBudget& budget;
  std::vector<std::vector<MultiPoly>> g_grads;
  std::vector<std::vector<double>> feas;

  GeoContext(const Problem& p, const SampleBudget& b) : prob(p), budget(b) {
    for (const auto& gi : prob.g) g_grads.push_back(gi.gradient());
  }

  DescentProblem descent_base() const {
    DescentProblem dp;
    dp.nvars = prob.nvars;
    dp.nconstraints = static_cast<int>(prob.g.size());
    dp.constraint = [this](std::span<const double> x, int i) { return prob.g[i].eval(x); };
    dp.constraint_grad = [this](std::span<const double> x, int i, std::span<double> out) {
      for (std::size_t d = 0; d < out.size(); ++d) out[d] = g_grads[i][d].eval(x);
    };
    return dp;
  }

  void find_feasible() {
    const int n = prob.nvars;
    auto xs = halton_box(n, budget.halton);
    for (int i = 0; i < budget.halton; ++i) {
      std::span<const double> x(xs.data() + static_cast<std::size_t>(i) * n, n);
      if (min_constraint(prob, x) >= 0.0) feas.emplace_back(x.begin(), x.end());
    }
    DescentProblem dp = descent_base();
    auto starts = halton_box(n, budget.descent_starts, 7919);
    for (int i = 0; i < budget.descent_starts; ++i) {
      std::span<const double> x0(starts.data() + static_cast<std::size_t>(i) * n, n);
      std::vector<double> y = gn_project(dp, x0, budget.descent_iters);
      if (min_constraint(prob, y) >= -budget.feas_tol) feas.push_back(std::move(y));
    }
    require(!feas.empty(), ErrorKind::EmptySetSuspected, "no feasible point found within budget");
  }

  DistanceEstimate distance(std::span<const double> x) const {
    const int n = prob.nvars;
    if (algebraic_distance(prob, x) == 0.0) return {0.0, false};
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : feas) {
      double d2 = 0.0;
      for (int i = 0; i < n; ++i) d2 += (p[i] - x[i]) * (p[i] - x[i]);
      best = std::min(best, std::sqrt(d2));
    }
    DescentProblem dp = descent_base();
    dp.base = [&x, n](std::span<const double> y) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += (y[i] - x[i]) * (y[i] - x[i]);
      return s;
    };
    dp.base_grad = [&x, n](std::span<const double> y, std::span<double> out) {
      for (int i = 0; i < n; ++i) out[i] = 2.0 * (y[i] - x[i]);
    };
    bool refined = false;
    std::vector<double> y(x.begin(), x.end());
    for (double rho : {1e2, 1e4, 1e6, 1e8}) {
      y = penalized_descent(dp, y, rho, budget.descent_iters).x;
      // polish onto S; the penalty stage has already pulled y toward x
      std::vector<double> z = gn_project(dp, y, budget.descent_iters);
      if (min_constraint(prob, z) >= -budget.feas_tol) {
        double d2 = 0.0;
        for (int i = 0; i < n; ++i) d2 += (z[i] - x[i]) * (z[i] - x[i]);
        double d = std::sqrt(d2);
        if (d < best) {
          best = d;
          refined = true;
        }
      }
    }
    return {best, refined};
  }
};

std::vector<std::vector<double>> sublevel_samples(const Problem& prob, double threshold,
                                                  const SampleBudget& budget) {
  const int n = prob.nvars;
  std::vector<std::vector<double>> out;
  auto xs = halton_box(n, budget.halton);
  for (int i = 0; i < budget.halton; ++i) {
    std::span<const double> x(xs.data() + static_cast<std::size_t>(i) * n, n);
    if (prob.f.eval(x) <= threshold) out.emplace_back(x.begin(), x.end());
  }
  // box corners often realize the sublevel set; include them for small n
  if (n <= 6) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<double> x(n);
      for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1 ? 1.0 : -1.0;
      if (prob.f.eval(x) <= threshold) out.push_back(std::move(x));
    }
  }
  return out;
}

}  // namespace

double algebraic_distance(const Problem& prob, std::span<const double> x) {
  require(static_cast<int>(x.size()) == prob.nvars, ErrorKind::DimensionMismatch,
          "point dimension != problem nvars");
  double m = std::min(0.0, min_constraint(prob, x));
  return std::abs(m);
}

std::vector<std::vector<double>> feasible_points(const Problem& prob, const SampleBudget& budget) {
  GeoContext ctx(prob, budget);
  ctx.find_feasible();
  return ctx.feas;
}

DistanceEstimate euclidean_distance(const Problem& prob, std::span<const double> x,
                                    const SampleBudget& budget) {
  GeoContext ctx(prob, budget);
  ctx.find_feasible();
  return ctx.distance(x);
}

LojaEstimate estimate_lojasiewicz(const Problem& prob, int sample_count,
                                  const SampleBudget& budget) {
  require(sample_count >= 100, ErrorKind::InvalidParameter, "need sample_count >= 100");
  const int n = prob.nvars;
  GeoContext ctx(prob, budget);
  ctx.find_feasible();

  Rng rng(budget.seed);
  std::vector<std::vector<double>> samples;
  auto xs = halton_box(n, sample_count);
  for (int i = 0; i < sample_count; ++i)
    samples.emplace_back(xs.begin() + static_cast<std::size_t>(i) * n,
                         xs.begin() + static_cast<std::size_t>(i + 1) * n);
  // the exponent is a near-S phenomenon: add shells around feasible anchors
  int na = std::min<int>(budget.shell_anchors, static_cast<int>(ctx.feas.size()));
  for (int a = 0; a < na; ++a) {
    for (int rI = 0; rI < budget.shell_radii; ++rI) {
      double radius = std::pow(10.0, -3.0 + 2.0 * rI / std::max(1, budget.shell_radii - 1));
      auto u = rng.unit_vector(n);
      std::vector<double> x(n);
      for (int i = 0; i < n; ++i) x[i] = std::clamp(ctx.feas[a][i] + radius * u[i], -1.0, 1.0);
      samples.push_back(std::move(x));
    }
  }

  struct PairDG {
    double d, g;
  };
  std::vector<PairDG> pairs;
  for (const auto& x : samples) {
    double G = algebraic_distance(prob, x);
    if (G <= 0.0) continue;
    double D = ctx.distance(x).value;
    if (D <= 1e-14) continue;
    pairs.push_back({D, G});
  }
  if (pairs.empty()) {
    // S covers the box: D = G = 0 everywhere sampled, the inequality is vacuous
    LojaEstimate est;
    est.sample_count = 0;
    return est;
  }

  // slope of ln G against ln D on the near-S regime
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& p : pairs) {
    if (p.d > 0.3) continue;
    double lx = std::log(p.d), ly = std::log(p.g);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  double slope = 1.0, resid = 0.0;
  if (m >= 2 && std::abs(m * sxx - sx * sx) > 1e-12) {
    slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    double icept = (sy - slope * sx) / m;
    double ss = 0.0;
    for (const auto& p : pairs) {
      if (p.d > 0.3) continue;
      double e = std::log(p.g) - icept - slope * std::log(p.d);
      ss += e * e;
    }
    resid = std::sqrt(ss / m);
  }

  LojaEstimate est;
  est.raw_exponent = slope;
  est.L_hat = std::max(1.0, slope);
  est.sample_count = static_cast<int>(pairs.size());
  est.fit_residual = resid;

  double need_c = 1.0;
  for (const auto& p : pairs) need_c = std::max(need_c, std::pow(p.d, est.L_hat) / p.g);
  est.c_hat = 1.05 * need_c;

  // re-verify on a fresh set; widen c_hat if anything slips through
  auto xs2 = halton_box(n, std::max(50, sample_count / 2), 104729);
  double worst = 0.0;
  for (int i = 0; i < std::max(50, sample_count / 2); ++i) {
    std::span<const double> x(xs2.data() + static_cast<std::size_t>(i) * n, n);
    double G = algebraic_distance(prob, x);
    if (G <= 0.0) continue;
    double D = ctx.distance(x).value;
    double v = std::pow(D, est.L_hat) / (est.c_hat * G) - 1.0;
    worst = std::max(worst, v);
  }
  if (worst > 0.0) est.c_hat *= (1.0 + worst) * 1.05;
  est.max_violation = worst;
  return est;
}

CqcReport check_cqc(const Problem& prob, double active_tol, double rank_tol_scale,
                    const SampleBudget& budget) {
  const int n = prob.nvars;
  GeoContext ctx(prob, budget);
  ctx.find_feasible();
  std::vector<std::vector<MultiPoly>>& grads = ctx.g_grads;

  CqcReport rep;
  rep.holds = true;
  rep.min_sigma = std::numeric_limits<double>::infinity();
  for (const auto& z : ctx.feas) {
    std::vector<int> active;
    for (std::size_t i = 0; i < prob.g.size(); ++i)
      if (std::abs(prob.g[i].eval(z)) <= active_tol) active.push_back(static_cast<int>(i));
    ++rep.points_checked;
    if (active.empty()) continue;
    Eigen::MatrixXd J(active.size(), n);
    double max_grad = 0.0;
    for (std::size_t r = 0; r < active.size(); ++r) {
      for (int c = 0; c < n; ++c) J(r, c) = grads[active[r]][c].eval(z);
      max_grad = std::max(max_grad, J.row(r).norm());
    }
    double sigma_min = 0.0;
    if (static_cast<int>(active.size()) <= n) {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
      sigma_min = svd.singularValues().tail(1)(0);
    }
    rep.min_sigma = std::min(rep.min_sigma, sigma_min);
    if (sigma_min <= rank_tol_scale * std::max(1.0, max_grad)) {
      rep.holds = false;
      rep.witness = z;
      return rep;
    }
  }
  return rep;
}

FStarReport f_star_and_epsilon(const Problem& prob, const SampleBudget& budget) {
  const int n = prob.nvars;
  GeoContext ctx(prob, budget);
  ctx.find_feasible();
  auto pts = ctx.feas;

  std::sort(pts.begin(), pts.end(),
            [&](const auto& a, const auto& b) { return prob.f.eval(a) < prob.f.eval(b); });
  std::vector<MultiPoly> fgrad = prob.f.gradient();
  DescentProblem dp = ctx.descent_base();
  dp.base = [&prob](std::span<const double> x) { return prob.f.eval(x); };
  dp.base_grad = [&fgrad](std::span<const double> x, std::span<double> out) {
    for (std::size_t d = 0; d < out.size(); ++d) out[d] = fgrad[d].eval(x);
  };

  double best = prob.f.eval(pts.front());
  std::vector<double> argmin = pts.front();
  int refine = static_cast<int>(std::min<std::size_t>(6, pts.size()));
  for (int i = 0; i < refine; ++i) {
    std::vector<double> y = pts[i];
    for (double rho : {1e4, 1e6, 1e8, 1e10})
      y = penalized_descent(dp, y, rho, budget.descent_iters).x;
    y = gn_project(ctx.descent_base(), y, budget.descent_iters);
    if (min_constraint(prob, y) >= -budget.feas_tol) {
      double v = prob.f.eval(y);
      if (v < best) {
        best = v;
        argmin = y;
      }
    }
  }

  FStarReport rep;
  rep.f_star = best;
  rep.argmin = argmin;
  rep.norm_f = max_norm_box(prob.f, default_resolution(n)).upper;
  rep.epsilon_f = rep.norm_f > 0.0 ? rep.f_star / rep.norm_f : 0.0;
  rep.nonpositive = !(rep.f_star > 0.0);
  return rep;
}

SublevelDelta sublevel_delta(const Problem& prob, const SampleBudget& budget) {
  FStarReport fs = f_star_and_epsilon(prob, budget);
  require(fs.f_star > 0.0, ErrorKind::NonPositiveMinimum, "sublevel_delta needs f* > 0");

  SublevelDelta out;
  out.loja = estimate_lojasiewicz(prob, 200, budget);
  const int d = std::max(1, prob.f.degree());
  out.delta_loja =
      (1.0 / out.loja.c_hat) * std::pow(fs.epsilon_f / (8.0 * d * d), out.loja.L_hat);

  auto A = sublevel_samples(prob, 0.75 * fs.f_star, budget);
  if (A.empty()) {
    out.a_empty = true;
    out.delta_emp = std::numeric_limits<double>::infinity();
    return out;
  }
  double dmin = std::numeric_limits<double>::infinity();
  for (const auto& a : A) dmin = std::min(dmin, algebraic_distance(prob, a));
  out.delta_emp = dmin;
  return out;
}

DistanceBoundReport distance_bound_check(const Problem& prob, const SampleBudget& budget) {
  FStarReport fs = f_star_and_epsilon(prob, budget);
  require(fs.f_star > 0.0, ErrorKind::NonPositiveMinimum, "distance_bound_check needs f* > 0");
  const int d = std::max(1, prob.f.degree());

  DistanceBoundReport rep;
  rep.bound = fs.epsilon_f / (8.0 * d * d);
  auto A = sublevel_samples(prob, 0.75 * fs.f_star, budget);
  if (A.empty()) {
    rep.vacuous = true;
    rep.holds = true;
    return rep;
  }
  GeoContext ctx(prob, budget);
  ctx.find_feasible();
  // cheap pairwise scan over all of A, then descent-refine the closest few
  const int n = prob.nvars;
  auto pair_dist = [&](const std::vector<double>& a) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : ctx.feas) {
      double d2 = 0.0;
      for (int i = 0; i < n; ++i) d2 += (a[i] - s[i]) * (a[i] - s[i]);
      best = std::min(best, d2);
    }
    return std::sqrt(best);
  };
  std::vector<std::pair<double, std::size_t>> keyed(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) keyed[i] = {pair_dist(A[i]), i};
  std::sort(keyed.begin(), keyed.end());
  double sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i < 10)
      sep = std::min(sep, ctx.distance(A[keyed[i].second]).value);
    else
      sep = std::min(sep, keyed[i].first);
  }
  rep.hdist_emp = sep;
  rep.holds = sep >= rep.bound * (1.0 - 1e-6);
  return rep;
}

}  // namespace putinar
