#include "putinar/boxgrid.hpp"

#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace putinar {

CompiledPoly CompiledPoly::from(const MultiPoly& p) {
  CompiledPoly out;
  out.nvars = p.nvars();
  out.degree = p.degree();
  out.coefs.reserve(p.term_count());
  out.exps.reserve(p.term_count() * p.nvars());
  for (const auto& [e, c] : p.terms()) {
    out.coefs.push_back(c);
    out.exps.insert(out.exps.end(), e.begin(), e.end());
  }
  return out;
}

ChebGrid ChebGrid::make(int nvars, int res) {
  require(nvars >= 1 && nvars <= 16, ErrorKind::InvalidParameter, "grid needs 1 <= nvars <= 16");
  require(res >= 2, ErrorKind::InvalidParameter, "grid resolution must be >= 2");
  ChebGrid g;
  g.nvars = nvars;
  g.res = res;
  g.nodes.resize(res);
  const double pi = std::acos(-1.0);
  for (int j = 0; j < res; ++j) g.nodes[j] = std::cos(j * pi / (res - 1));
  g.nodes.front() = 1.0;
  g.nodes.back() = -1.0;
  return g;
}

long long ChebGrid::point_count() const {
  long long n = 1;
  for (int i = 0; i < nvars; ++i) n *= res;
  return n;
}

double ChebGrid::covering_radius() const {
  double gap = 0.0;
  for (int j = 0; j + 1 < res; ++j) gap = std::max(gap, nodes[j] - nodes[j + 1]);
  return 0.5 * gap * std::sqrt(static_cast<double>(nvars));
}

void ChebGrid::point(long long flat, std::span<double> out) const {
  for (int i = nvars - 1; i >= 0; --i) {
    out[i] = nodes[flat % res];
    flat /= res;
  }
}

namespace {

// Per-axis power tables: pows[axis * res * (deg+1) + node * (deg+1) + e].
std::vector<double> power_table(const ChebGrid& grid, int degree) {
  const int stride = degree + 1;
  std::vector<double> pows(static_cast<std::size_t>(grid.nvars) * grid.res * stride);
  for (int a = 0; a < grid.nvars; ++a) {
    for (int j = 0; j < grid.res; ++j) {
      double* row = pows.data() + (static_cast<std::size_t>(a) * grid.res + j) * stride;
      row[0] = 1.0;
      for (int e = 1; e <= degree; ++e) row[e] = row[e - 1] * grid.nodes[j];
    }
  }
  return pows;
}

inline double eval_grid_point(const CompiledPoly& p, const ChebGrid& grid,
                              const std::vector<double>& pows, long long flat) {
  const int stride = p.degree + 1;
  // decode the multi-index once
  double acc = 0.0;
  int idx[16];
  long long f = flat;
  for (int i = p.nvars - 1; i >= 0; --i) {
    idx[i] = static_cast<int>(f % grid.res);
    f /= grid.res;
  }
  const std::size_t nterms = p.coefs.size();
  for (std::size_t t = 0; t < nterms; ++t) {
    double v = p.coefs[t];
    const int* e = p.exps.data() + t * p.nvars;
    for (int i = 0; i < p.nvars; ++i)
      v *= pows[(static_cast<std::size_t>(i) * grid.res + idx[i]) * stride + e[i]];
    acc += v;
  }
  return acc;
}

inline double eval_point(const CompiledPoly& p, const double* x) {
  const std::size_t nterms = p.coefs.size();
  double acc = 0.0;
  for (std::size_t t = 0; t < nterms; ++t) {
    double v = p.coefs[t];
    const int* e = p.exps.data() + t * p.nvars;
    for (int i = 0; i < p.nvars; ++i) {
      int k = e[i];
      double pw = 1.0, base = x[i];
      while (k > 0) {
        if (k & 1) pw *= base;
        base *= base;
        k >>= 1;
      }
      v *= pw;
    }
    acc += v;
  }
  return acc;
}

}  // namespace

namespace kernels {

void eval_points_serial(const CompiledPoly& p, std::span<const double> xs, std::span<double> out) {
  const long long npts = static_cast<long long>(xs.size()) / std::max(1, p.nvars);
  for (long long i = 0; i < npts; ++i) out[i] = eval_point(p, xs.data() + i * p.nvars);
}

void eval_points_parallel(const CompiledPoly& p, std::span<const double> xs,
                          std::span<double> out) {
  const long long npts = static_cast<long long>(xs.size()) / std::max(1, p.nvars);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < npts; ++i) out[i] = eval_point(p, xs.data() + i * p.nvars);
}

double grid_max_abs_serial(const CompiledPoly& p, const ChebGrid& grid, long long* argmax) {
  const auto pows = power_table(grid, p.degree);
  const long long npts = grid.point_count();
  double best = -1.0;
  long long best_i = 0;
  for (long long i = 0; i < npts; ++i) {
    double v = std::abs(eval_grid_point(p, grid, pows, i));
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  if (argmax) *argmax = best_i;
  return best < 0.0 ? 0.0 : best;
}

double grid_max_abs_parallel(const CompiledPoly& p, const ChebGrid& grid, long long* argmax) {
  const auto pows = power_table(grid, p.degree);
  const long long npts = grid.point_count();
  double best = -1.0;
  long long best_i = 0;
#pragma omp parallel
  {
    double loc = -1.0;
    long long loc_i = 0;
#pragma omp for schedule(static) nowait
    for (long long i = 0; i < npts; ++i) {
      double v = std::abs(eval_grid_point(p, grid, pows, i));
      if (v > loc || (v == loc && i < loc_i)) {
        loc = v;
        loc_i = i;
      }
    }
#pragma omp critical
    {
      // max with lowest-index tie break: independent of combine order
      if (loc > best || (loc == best && loc_i < best_i)) {
        best = loc;
        best_i = loc_i;
      }
    }
  }
  if (argmax) *argmax = best_i;
  return best < 0.0 ? 0.0 : best;
}

void eval_points(const CompiledPoly& p, std::span<const double> xs, std::span<double> out) {
#ifdef _OPENMP
  if (xs.size() >= 4096) {
    eval_points_parallel(p, xs, out);
    return;
  }
#endif
  eval_points_serial(p, xs, out);
}

double grid_max_abs(const CompiledPoly& p, const ChebGrid& grid, long long* argmax) {
#ifdef _OPENMP
  if (grid.point_count() >= 4096) return grid_max_abs_parallel(p, grid, argmax);
#endif
  return grid_max_abs_serial(p, grid, argmax);
}

}  // namespace kernels

int default_resolution(int nvars) {
  switch (nvars) {
    case 1: return 512;
    case 2: return 96;
    case 3: return 32;
    default: return 12;
  }
}

BoxNormEstimate max_norm_box(const MultiPoly& p, int resolution) {
  require(resolution >= 2, ErrorKind::InvalidParameter, "resolution must be >= 2");
  const int n = p.nvars();
  require(n >= 1, ErrorKind::DimensionMismatch, "max_norm_box needs nvars >= 1");
  const int d = p.degree();
  const int res = std::max(resolution, d + 1);

  double budget = static_cast<double>(n);
  for (int i = 0; i < n; ++i) budget *= res;
  require(budget <= static_cast<double>(kGridBudgetCap), ErrorKind::DegreeOverflow,
          "grid evaluation budget exceeds cap");

  ChebGrid grid = ChebGrid::make(n, res);
  CompiledPoly cp = CompiledPoly::from(p);
  BoxNormEstimate est;
  est.grid_resolution = res;
  est.lower = kernels::grid_max_abs(cp, grid);
  if (d == 0) {
    est.upper = est.lower;
    return est;
  }
  // self-consistent Markov slack: ||p|| <= lower + L_p * h with
  // L_p <= (2d^2-d) ||p||, solved for the upper bound
  double factor = (2.0 * d * d - d) * grid.covering_radius();
  est.upper = factor < 1.0 ? est.lower / (1.0 - factor) : std::numeric_limits<double>::infinity();
  return est;
}

MarkovReport markov_gradient_check(const MultiPoly& p, int resolution) {
  const int d = p.degree();
  require(d >= 1, ErrorKind::InvalidParameter, "markov_gradient_check needs deg p >= 1");
  const int n = p.nvars();
  const int res = resolution > 0 ? resolution : default_resolution(n);

  ChebGrid grid = ChebGrid::make(n, std::max(res, d + 1));
  std::vector<CompiledPoly> grads;
  for (const MultiPoly& gi : p.gradient()) grads.push_back(CompiledPoly::from(gi));

  const long long npts = grid.point_count();
  std::vector<double> xs(static_cast<std::size_t>(npts) * n);
  for (long long i = 0; i < npts; ++i) grid.point(i, std::span<double>(xs.data() + i * n, n));
  std::vector<double> comp(npts), sq(npts, 0.0);
  for (const CompiledPoly& g : grads) {
    kernels::eval_points(g, xs, comp);
    for (long long i = 0; i < npts; ++i) sq[i] += comp[i] * comp[i];
  }
  double lhs2 = 0.0;
  for (long long i = 0; i < npts; ++i) lhs2 = std::max(lhs2, sq[i]);

  MarkovReport rep;
  rep.lhs = std::sqrt(lhs2);
  rep.rhs = (2.0 * d * d - d) * max_norm_box(p, std::max(res, d + 1)).lower;
  rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-9);
  return rep;
}

}  // namespace putinar
