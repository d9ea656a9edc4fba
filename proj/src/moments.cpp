#include "putinar/moments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "putinar/bounds.hpp"
#include "putinar/relax.hpp"
#include "putinar/sampling.hpp"
#include "putinar/semialgebraic.hpp"

namespace putinar {

std::vector<Exponents> monomials_up_to(int nvars, int maxdeg) {
  std::vector<Exponents> out;
  Exponents cur(nvars, 0);
  // enumerate by total degree, lexicographic within a degree
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == nvars - 1) {
      cur[pos] = remaining;
      out.push_back(cur);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      cur[pos] = e;
      rec(pos + 1, remaining - e);
    }
  };
  for (int d = 0; d <= maxdeg; ++d) rec(0, d);
  // normalize to graded-lex
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

PseudoMomentSeq PseudoMomentSeq::zeros(int nvars, int t) {
  PseudoMomentSeq L;
  L.nvars = nvars;
  L.degree = t;
  L.index = monomials_up_to(nvars, t);
  L.values.assign(L.index.size(), 0.0);
  return L;
}

double PseudoMomentSeq::value(const Exponents& alpha) const {
  auto it = std::lower_bound(index.begin(), index.end(), alpha, GradedLexLess{});
  require(it != index.end() && *it == alpha, ErrorKind::InvalidParameter,
          "moment index out of range");
  return values[it - index.begin()];
}

double PseudoMomentSeq::two_norm() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return std::sqrt(s);
}

double PseudoMomentSeq::pairing(const MultiPoly& f) const {
  require(f.degree() <= degree, ErrorKind::InvalidParameter, "pairing beyond truncation degree");
  double s = 0.0;
  for (const auto& [alpha, c] : f.terms()) s += c * value(alpha);
  return s;
}

PseudoMomentSeq PseudoMomentSeq::truncate(int t2) const {
  require(t2 <= degree, ErrorKind::InvalidParameter, "truncate target exceeds degree");
  PseudoMomentSeq out = zeros(nvars, t2);
  for (std::size_t i = 0; i < out.index.size(); ++i) out.values[i] = values[i];
  return out;
}

PseudoMomentSeq dirac_moments(std::span<const double> x, int t) {
  PseudoMomentSeq L = PseudoMomentSeq::zeros(static_cast<int>(x.size()), t);
  for (std::size_t i = 0; i < L.index.size(); ++i) {
    double v = 1.0;
    for (std::size_t d = 0; d < x.size(); ++d)
      for (int e = 0; e < L.index[i][d]; ++e) v *= x[d];
    L.values[i] = v;
  }
  return L;
}

MomentMatrix moment_matrix(const PseudoMomentSeq& L, int k) {
  require(2 * k <= L.degree, ErrorKind::InvalidParameter, "moment matrix needs 2k <= t");
  MomentMatrix M;
  M.order = k;
  M.basis = monomials_up_to(L.nvars, k);
  const int sz = static_cast<int>(M.basis.size());
  M.H.resize(sz, sz);
  Exponents alpha(L.nvars);
  for (int a = 0; a < sz; ++a)
    for (int b = 0; b < sz; ++b) {
      for (int i = 0; i < L.nvars; ++i) alpha[i] = M.basis[a][i] + M.basis[b][i];
      M.H(a, b) = L.value(alpha);
    }
  return M;
}

TraceBoundReport trace_bound_check(const PseudoMomentSeq& L, int t, double r_ball) {
  require(2 * t <= L.degree, ErrorKind::InvalidParameter, "trace bound needs 2t <= deg L");
  TraceBoundReport rep;
  MomentMatrix H = moment_matrix(L, t);
  rep.trace = H.H.trace();
  double geom = 0.0, p = 1.0;
  for (int k = 0; k <= t; ++k) {
    geom += p;
    p *= r_ball * r_ball;
  }
  rep.trace_bound = geom;
  rep.norm2 = L.truncate(2 * t).two_norm();
  rep.norm_bound = std::sqrt(binomial(L.nvars + t, t)) * geom;
  rep.holds = rep.trace <= rep.trace_bound * (1.0 + 1e-9) + 1e-9 &&
              rep.norm2 <= rep.norm_bound * (1.0 + 1e-9) + 1e-9;
  return rep;
}

GenSectionReport generating_section_check(const PseudoMomentSeq& L, int ell) {
  GenSectionReport rep;
  rep.mass = L.mass();
  rep.full_norm = L.two_norm();
  rep.trunc_norm = L.truncate(std::min(L.degree, ell / 2)).two_norm();
  if (rep.full_norm <= 1e-12) {  // zero functional
    rep.holds = true;
    return rep;
  }
  if (std::abs(rep.mass) > 1e-9 * rep.full_norm) {
    rep.vacuous = true;
    rep.holds = true;
    return rep;
  }
  rep.holds = rep.trunc_norm <= 1e-6 * rep.full_norm;
  return rep;
}

NormComparisonReport norm_comparison_check(const MultiPoly& f, int t) {
  require(f.degree() <= t, ErrorKind::InvalidParameter, "norm comparison needs deg f <= t");
  NormComparisonReport rep;
  rep.max_norm_lower = max_norm_box(f, default_resolution(f.nvars())).lower;
  rep.bound = std::sqrt(binomial(f.nvars() + t, t)) * f.coeff_two_norm();
  rep.holds = rep.max_norm_lower <= rep.bound * (1.0 + 1e-9);
  return rep;
}

NnlsResult nnls_project(const Eigen::MatrixXd& V, const Eigen::VectorXd& target, bool simplex,
                        int max_iter) {
  const int npts = static_cast<int>(V.cols());
  require(npts >= 1, ErrorKind::InvalidParameter, "nnls needs at least one column");
  std::vector<char> passive(npts, 0);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(npts);

  // start from the single closest column (feasible for the simplex case)
  int best0 = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (int j = 0; j < npts; ++j) {
    double d = (V.col(j) - target).squaredNorm();
    if (d < bd) {
      bd = d;
      best0 = j;
    }
  }
  passive[best0] = 1;
  if (simplex) w(best0) = 1.0;

  auto solve_passive = [&](Eigen::VectorXd& wp, std::vector<int>& idx) {
    idx.clear();
    for (int j = 0; j < npts; ++j)
      if (passive[j]) idx.push_back(j);
    const int k = static_cast<int>(idx.size());
    Eigen::MatrixXd Vp(V.rows(), k);
    for (int j = 0; j < k; ++j) Vp.col(j) = V.col(idx[j]);
    if (!simplex) {
      wp = (Vp.transpose() * Vp + 1e-12 * Eigen::MatrixXd::Identity(k, k))
               .ldlt()
               .solve(Vp.transpose() * target);
      return;
    }
    Eigen::MatrixXd K(k + 1, k + 1);
    K.topLeftCorner(k, k) = Vp.transpose() * Vp;
    K.topLeftCorner(k, k).diagonal().array() += 1e-12;
    K.topRightCorner(k, 1).setOnes();
    K.bottomLeftCorner(1, k).setOnes();
    K(k, k) = 0.0;
    Eigen::VectorXd rhs(k + 1);
    rhs.head(k) = Vp.transpose() * target;
    rhs(k) = 1.0;
    Eigen::VectorXd sol = K.fullPivLu().solve(rhs);
    wp = sol.head(k);
  };

  std::vector<int> idx;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd wp;
    solve_passive(wp, idx);
    // inner loop: clip negative weights back onto the boundary
    int guard = 0;
    while (wp.size() && wp.minCoeff() < -1e-12 && guard++ < npts) {
      double alpha = 1.0;
      int drop = -1;
      for (int j = 0; j < wp.size(); ++j) {
        if (wp(j) < -1e-12) {
          double cur = w(idx[j]) / (w(idx[j]) - wp(j));
          if (cur < alpha) {
            alpha = cur;
            drop = j;
          }
        }
      }
      for (int j = 0; j < wp.size(); ++j) {
        double nw = w(idx[j]) + alpha * (wp(j) - w(idx[j]));
        w(idx[j]) = std::max(0.0, nw);
      }
      if (drop >= 0) {
        w(idx[drop]) = 0.0;
        passive[idx[drop]] = 0;
      }
      solve_passive(wp, idx);
    }
    for (int j = 0; j < static_cast<int>(idx.size()); ++j) w(idx[j]) = std::max(0.0, wp(j));

    // optimality: gradient of 0.5||Vw - target||^2
    Eigen::VectorXd resid = V * w - target;
    Eigen::VectorXd grad = V.transpose() * resid;
    double nu = 0.0;
    if (simplex) {
      // multiplier of the mass constraint: average over the passive set
      int k = 0;
      for (int j = 0; j < npts; ++j)
        if (passive[j]) {
          nu += grad(j);
          ++k;
        }
      if (k) nu /= k;
    }
    int enter = -1;
    // the entering slack shrinks with the residual; a fixed cutoff would
    // strand the projection far from optimality on near-curve targets
    double most = -(1e-13 + 1e-8 * resid.norm());
    for (int j = 0; j < npts; ++j) {
      if (passive[j]) continue;
      double slack = grad(j) - nu;
      if (slack < most) {
        most = slack;
        enter = j;
      }
    }
    NnlsResult out;
    out.iterations = it + 1;
    if (enter < 0) {
      out.w = w;
      out.residual = resid.norm();
      return out;
    }
    passive[enter] = 1;
  }
  NnlsResult out;
  out.w = w;
  out.residual = (V * w - target).norm();
  out.iterations = max_iter;
  return out;
}

std::vector<HausdorffPoint> hausdorff_estimate(const Problem& prob, const HausdorffOptions& opts) {
  require(!opts.levels.empty(), ErrorKind::InvalidParameter, "no levels given");
  for (int ell : opts.levels)
    require(ell >= 2 * opts.t, ErrorKind::InvalidParameter, "need ell >= 2t");
  const int n = prob.nvars;
  const int t2 = 2 * opts.t;

  // inner approximation: Dirac moment vectors over dense S samples
  SampleBudget budget;
  budget.halton = std::max(opts.s_samples * 3, 4000);
  budget.seed = opts.seed;
  auto pts = feasible_points(prob, budget);
  require(!pts.empty(), ErrorKind::EmptySetSuspected, "no S samples for the Dirac hull");
  // low-discrepancy points never reach the box corners, which carry the
  // extreme Dirac vectors of interval-like sets
  if (n <= 10) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<double> x(n);
      for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1 ? 1.0 : -1.0;
      bool ok = true;
      for (const auto& gi : prob.g) ok = ok && gi.eval(x) >= 0.0;
      if (ok) pts.push_back(std::move(x));
    }
  }

  const auto index = monomials_up_to(n, t2);
  const int dim = static_cast<int>(index.size());
  Eigen::MatrixXd V(dim, pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    PseudoMomentSeq dm = dirac_moments(pts[j], t2);
    for (int i = 0; i < dim; ++i) V(i, j) = dm.values[i];
  }

  // shared random objectives across levels so the containment
  // L_{l'} subset L_l shows up as a nonincreasing distance
  Rng rng(opts.seed);
  std::vector<MultiPoly> objectives;
  std::vector<Eigen::VectorXd> dirs;
  for (int o = 0; o < opts.objectives; ++o) {
    Eigen::VectorXd c(dim);
    for (int i = 0; i < dim; ++i) c(i) = rng.gaussian();
    c.normalize();
    MultiPoly cp(n);
    for (int i = 0; i < dim; ++i)
      if (c(i) != 0.0) cp.add_term(index[i], -c(i));  // minimize -<c, L> = maximize <c, L>
    objectives.push_back(std::move(cp));
    dirs.push_back(c);
  }

  BoundInputs bi;
  bi.n = std::max(2, n);
  bi.r = static_cast<int>(prob.g.size());
  bi.d_g = prob.max_constraint_degree();
  bi.t = opts.t;

  std::vector<HausdorffPoint> out;
  for (int ell : opts.levels) {
    double worst = 0.0;
    for (int o = 0; o < opts.objectives; ++o) {
      MomSolveOptions mo;
      MomSolve sol = mom_optimize(objectives[o], prob.g, ell, mo);
      if (sol.status != SdpStatus::Optimal) continue;
      Eigen::VectorXd p(dim);
      for (int i = 0; i < dim; ++i) p(i) = sol.L.values[i];
      NnlsResult proj = nnls_project(V, p, opts.normalized);
      worst = std::max(worst, proj.residual);
    }
    HausdorffPoint hp;
    hp.level = ell;
    hp.dist_lower = worst;  // suffix max applied below: higher-level points
                            // remain valid witnesses for lower levels
    // invert the moment-side level formula for the accuracy it guarantees
    double gamma = gamma_prefactor(bi);
    double base = gamma * std::pow(6.0, 2.5 * bi.n) * std::pow(std::max(1, bi.t), 6.0 * bi.n) *
                  std::pow(binomial(bi.n + bi.t, bi.t), 2.5 * bi.n);
    hp.bound_shape = std::pow(base / ell, 1.0 / (2.5 * bi.n));
    out.push_back(hp);
  }
  // L_{l'} subset L_l for l' >= l: any outer witness found at a higher level
  // is also in the lower-level set, so the lower bound can only grow
  for (int i = static_cast<int>(out.size()) - 2; i >= 0; --i)
    out[i].dist_lower = std::max(out[i].dist_lower, out[i + 1].dist_lower);
  return out;
}

TubeReport tube_membership(const Problem& prob, const PseudoMomentSeq& L, int t, double epsilon,
                           int family_size, std::uint64_t seed) {
  require(t <= L.degree, ErrorKind::InvalidParameter, "tube check beyond truncation");
  const int n = prob.nvars;
  Rng rng(seed);
  const auto idx_half = monomials_up_to(n, t / 2);
  const auto idx_full = monomials_up_to(n, t);

  auto random_poly = [&](const std::vector<Exponents>& idx) {
    MultiPoly p(n);
    for (const auto& e : idx) p.add_term(e, rng.uniform(-1.0, 1.0));
    return p;
  };

  std::vector<MultiPoly> family;
  while (static_cast<int>(family.size()) < family_size) {
    int mode = static_cast<int>(family.size()) % 3;
    if (mode == 0) {
      MultiPoly q = random_poly(idx_half);
      family.push_back(q.mul(q));
    } else if (mode == 1) {
      // squares times a generator, degree permitting
      bool placed = false;
      for (const auto& g : prob.g) {
        int room = (t - g.degree()) / 2;
        if (room < 0) continue;
        MultiPoly q = random_poly(monomials_up_to(n, room));
        family.push_back(q.mul(q).mul(g));
        placed = true;
        break;
      }
      if (!placed) family.push_back(MultiPoly::constant(n, 1.0));
    } else {
      // certified shift: p - f*_{SoS} >= 0 on S exactly
      MultiPoly p = random_poly(idx_full);
      Problem sub;
      sub.f = p;
      sub.g = prob.g;
      sub.nvars = n;
      int lvl = std::max((t + 1) / 2, (prob.max_constraint_degree() + 1) / 2) + 1;
      try {
        LasserreSos s = lasserre_sos(sub, lvl);
        if (s.status == SdpStatus::Optimal)
          family.push_back(p - MultiPoly::constant(n, s.value));
        else
          family.push_back(MultiPoly::constant(n, 1.0));
      } catch (const Error&) {
        family.push_back(MultiPoly::constant(n, 1.0));
      }
    }
  }

  TubeReport rep;
  rep.family_size = static_cast<int>(family.size());
  rep.min_pairing = std::numeric_limits<double>::infinity();
  for (auto& q : family) {
    double nrm = q.coeff_two_norm();
    if (nrm <= 1e-14) continue;
    MultiPoly qn = q * (1.0 / nrm);
    rep.min_pairing = std::min(rep.min_pairing, L.pairing(qn));
  }
  rep.holds = rep.min_pairing >= -epsilon * (1.0 + 1e-9) - 1e-12;
  return rep;
}

}  // namespace putinar
