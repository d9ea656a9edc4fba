#include "putinar/sdp.hpp"

#include <cmath>
#include <limits>

namespace putinar {

using Eigen::MatrixXd;
using Eigen::VectorXd;

const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "Optimal";
    case SdpStatus::Infeasible: return "Infeasible";
    case SdpStatus::Unbounded: return "Unbounded";
    case SdpStatus::SlowProgress: return "SlowProgress";
  }
  return "Unknown";
}

int SdpProblem::total_dim() const {
  int d = 0;
  for (int b : block_dims) d += b;
  return d;
}

namespace {

using Blocks = std::vector<MatrixXd>;

Blocks zero_blocks(const std::vector<int>& dims) {
  Blocks out;
  out.reserve(dims.size());
  for (int d : dims) out.push_back(MatrixXd::Zero(d, d));
  return out;
}

void add_entries(Blocks& M, const std::vector<SdpEntry>& entries, double scale) {
  for (const SdpEntry& e : entries) {
    M[e.block](e.i, e.j) += scale * e.value;
    if (e.i != e.j) M[e.block](e.j, e.i) += scale * e.value;
  }
}

double dot_entries(const std::vector<SdpEntry>& entries, const Blocks& X) {
  double s = 0.0;
  for (const SdpEntry& e : entries)
    s += e.value * (e.i == e.j ? X[e.block](e.i, e.i) : 2.0 * X[e.block](e.i, e.j));
  return s;
}

double inner(const Blocks& A, const Blocks& B) {
  double s = 0.0;
  for (std::size_t b = 0; b < A.size(); ++b) s += (A[b].array() * B[b].array()).sum();
  return s;
}

double fro_norm(const Blocks& A) { return std::sqrt(std::max(0.0, inner(A, A))); }

// Cholesky with escalating a diagonal shift on failure.
bool robust_llt(const MatrixXd& M, MatrixXd& L) {
  MatrixXd W = M;
  double shift = 0.0;
  double base = std::max(1e-300, M.diagonal().cwiseAbs().maxCoeff());
  for (int attempt = 0; attempt < 6; ++attempt) {
    Eigen::LLT<MatrixXd> llt(W);
    if (llt.info() == Eigen::Success) {
      L = llt.matrixL();
      return true;
    }
    shift = (shift == 0.0) ? 1e-14 * base : shift * 100.0;
    W = M + shift * MatrixXd::Identity(M.rows(), M.cols());
  }
  return false;
}

// max alpha in (0, 1] with M + alpha*dM staying PD, via eigmin(L^-1 dM L^-T)
double max_step(const MatrixXd& L, const MatrixXd& dM, double frac) {
  MatrixXd S = L.triangularView<Eigen::Lower>().solve(dM);
  S = L.triangularView<Eigen::Lower>().solve(S.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (S + S.transpose()),
                                             Eigen::EigenvaluesOnly);
  double lmin = es.eigenvalues().minCoeff();
  if (lmin >= 0.0) return 1.0;
  return std::min(1.0, -frac / lmin);
}

struct Scaling {
  Blocks R, Rti;           // W = R R', R^{-T} = Rti
  std::vector<VectorXd> d;  // NT eigenvalues per block
};

}  // namespace

SdpResult solve_sdp(const SdpProblem& prob, const SdpOptions& opts) {
  const std::size_t nb = prob.block_dims.size();
  const int m = static_cast<int>(prob.constraints.size());
  require(prob.total_dim() <= opts.psd_dim_cap, ErrorKind::InvalidParameter,
          "total PSD dimension exceeds cap");
  for (int d : prob.block_dims)
    require(d >= 1, ErrorKind::InvalidParameter, "empty SDP block");

  SdpResult res;
  res.X = zero_blocks(prob.block_dims);
  res.Z = zero_blocks(prob.block_dims);
  res.y = VectorXd::Zero(m);

  Blocks C = zero_blocks(prob.block_dims);
  add_entries(C, prob.objective, 1.0);
  VectorXd b(m);
  for (int k = 0; k < m; ++k) b(k) = prob.constraints[k].rhs;

  // presolve: all-zero constraint rows are either vacuous or infeasible
  for (int k = 0; k < m; ++k) {
    bool zero = true;
    for (const SdpEntry& e : prob.constraints[k].entries)
      if (e.value != 0.0) zero = false;
    if (zero && std::abs(b(k)) > 0.0) {
      res.status = SdpStatus::Infeasible;
      res.detail = "constraint with empty lhs and nonzero rhs";
      return res;
    }
  }

  int ndim = prob.total_dim();
  double normC = fro_norm(C);
  double normb = b.size() ? b.cwiseAbs().maxCoeff() : 0.0;
  double maxA = 1.0;
  for (const auto& con : prob.constraints) {
    double f = 0.0;
    for (const SdpEntry& e : con.entries) f += e.value * e.value * (e.i == e.j ? 1.0 : 2.0);
    maxA = std::max(maxA, std::sqrt(f));
  }
  double sx = std::max({10.0, std::sqrt(static_cast<double>(ndim)), normb / maxA * ndim});
  double sz = std::max({10.0, std::sqrt(static_cast<double>(ndim)), normC, maxA});
  for (std::size_t bI = 0; bI < nb; ++bI) {
    res.X[bI] = sx * MatrixXd::Identity(prob.block_dims[bI], prob.block_dims[bI]);
    res.Z[bI] = sz * MatrixXd::Identity(prob.block_dims[bI], prob.block_dims[bI]);
  }

  const double farkas_tol = 1e-9;
  Blocks Rd = zero_blocks(prob.block_dims);
  VectorXd rp(m);
  std::vector<std::vector<MatrixXd>> P(m);  // R' A_k R per block
  double prev_mu = std::numeric_limits<double>::infinity();
  int stall = 0;

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    res.iterations = iter;
    // residuals
    for (int k = 0; k < m; ++k) rp(k) = b(k) - dot_entries(prob.constraints[k].entries, res.X);
    for (std::size_t bI = 0; bI < nb; ++bI) Rd[bI] = C[bI] - res.Z[bI];
    for (int k = 0; k < m; ++k)
      add_entries(Rd, prob.constraints[k].entries, -res.y(k));

    res.pobj = inner(C, res.X);
    res.dobj = b.dot(res.y);
    res.gap = inner(res.X, res.Z);
    res.rel_gap = res.gap / (1.0 + std::abs(res.pobj) + std::abs(res.dobj));
    res.primal_infeas = (m ? rp.norm() : 0.0) / (1.0 + b.norm());
    res.dual_infeas = fro_norm(Rd) / (1.0 + normC);

    if (opts.verbose) {
      std::fprintf(stderr, "it %2d pobj %+.8e dobj %+.8e gap %.2e pinf %.2e dinf %.2e\n", iter,
                   res.pobj, res.dobj, res.rel_gap, res.primal_infeas, res.dual_infeas);
    }

    double gap_tol = opts.feasibility_objective ? std::max(opts.tol, 1e-5) : opts.tol;
    if (res.rel_gap <= gap_tol && res.primal_infeas <= opts.feas_tol &&
        res.dual_infeas <= opts.feas_tol) {
      res.status = SdpStatus::Optimal;
      return res;
    }

    // Farkas-style certificate of primal infeasibility: y with A*(y) <= 0, b'y > 0
    double ynorm = res.y.norm();
    if (ynorm > 1e4) {
      Blocks Ay = zero_blocks(prob.block_dims);
      for (int k = 0; k < m; ++k)
        add_entries(Ay, prob.constraints[k].entries, res.y(k) / ynorm);
      double lmax = -std::numeric_limits<double>::infinity();
      for (const auto& blk : Ay) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(blk, Eigen::EigenvaluesOnly);
        lmax = std::max(lmax, es.eigenvalues().maxCoeff());
      }
      double by = b.dot(res.y) / ynorm;
      if (lmax <= farkas_tol && by > farkas_tol) {
        res.status = SdpStatus::Infeasible;
        res.detail = "Farkas certificate: A*(y) <= 0, b'y > 0";
        return res;
      }
    }
    if (res.pobj < -1e12 * (1.0 + normC) && res.primal_infeas <= 1e-6) {
      res.status = SdpStatus::Unbounded;
      res.detail = "primal objective diverging";
      return res;
    }

    double mu = res.gap / ndim;
    if (mu > 0.9 * prev_mu) {
      if (++stall > 15) {
        res.status = SdpStatus::SlowProgress;
        res.detail = "complementarity stalled";
        return res;
      }
    } else {
      stall = 0;
    }
    prev_mu = mu;

    // NT scaling
    Scaling sc;
    sc.R.resize(nb);
    sc.Rti.resize(nb);
    sc.d.resize(nb);
    Blocks Lx(nb), Lz(nb);
    bool ok = true;
    for (std::size_t bI = 0; bI < nb && ok; ++bI) {
      ok = robust_llt(res.X[bI], Lx[bI]) && robust_llt(res.Z[bI], Lz[bI]);
      if (!ok) break;
      Eigen::JacobiSVD<MatrixXd> svd(Lz[bI].transpose() * Lx[bI],
                                     Eigen::ComputeFullU | Eigen::ComputeFullV);
      VectorXd sv = svd.singularValues();
      for (int i = 0; i < sv.size(); ++i) sv(i) = std::max(sv(i), 1e-150);
      VectorXd is = sv.cwiseSqrt().cwiseInverse();
      sc.R[bI] = Lx[bI] * svd.matrixV() * is.asDiagonal();
      sc.Rti[bI] = Lz[bI] * svd.matrixU() * is.asDiagonal();
      sc.d[bI] = sv;
    }
    if (!ok) {
      res.status = SdpStatus::SlowProgress;
      res.detail = "factorization failed";
      return res;
    }

    // P_k = R' A_k R, Schur S = sum_b <P_j, P_k>
    for (int k = 0; k < m; ++k) {
      P[k].assign(nb, MatrixXd());
      for (std::size_t bI = 0; bI < nb; ++bI)
        P[k][bI] = MatrixXd::Zero(prob.block_dims[bI], prob.block_dims[bI]);
      for (const SdpEntry& e : prob.constraints[k].entries) {
        const MatrixXd& R = sc.R[e.block];
        if (e.i == e.j) {
          P[k][e.block].noalias() += e.value * (R.row(e.i).transpose() * R.row(e.i));
        } else {
          P[k][e.block].noalias() += e.value * (R.row(e.i).transpose() * R.row(e.j));
          P[k][e.block].noalias() += e.value * (R.row(e.j).transpose() * R.row(e.i));
        }
      }
    }
    MatrixXd S(m, m);
    for (int j = 0; j < m; ++j)
      for (int k = j; k < m; ++k) {
        double s = 0.0;
        for (std::size_t bI = 0; bI < nb; ++bI)
          s += (P[j][bI].array() * P[k][bI].array()).sum();
        S(j, k) = S(k, j) = s;
      }
    // factor a ridged copy for stability, but refine against the true S so
    // the regularization does not cap the attainable residual
    MatrixXd S_true = S;
    double ridge = 1e-14 * (m ? S.diagonal().cwiseAbs().maxCoeff() : 0.0);
    S.diagonal().array() += std::max(ridge, 1e-300);
    Eigen::LDLT<MatrixXd> Sf(S);

    Blocks Nd(nb);
    for (std::size_t bI = 0; bI < nb; ++bI)
      Nd[bI] = sc.R[bI].transpose() * Rd[bI] * sc.R[bI];

    auto solve_direction = [&](const Blocks& Gamma, VectorXd& dy, Blocks& dX, Blocks& dZ) {
      VectorXd rhs(m);
      for (int k = 0; k < m; ++k) {
        double s = rp(k);
        for (std::size_t bI = 0; bI < nb; ++bI)
          s += ((Nd[bI] - Gamma[bI]).array() * P[k][bI].array()).sum();
        rhs(k) = s;
      }
      dy = Sf.solve(rhs);
      VectorXd best_dy = dy;
      double best_res = (rhs - S_true * dy).norm();
      for (int ref = 0; ref < 4; ++ref) {  // refinement against Schur ill-conditioning
        VectorXd resid = rhs - S_true * dy;
        if (resid.norm() <= 1e-16 * rhs.norm()) break;
        dy += Sf.solve(resid);
        double r2 = (rhs - S_true * dy).norm();
        if (r2 < best_res) {
          best_res = r2;
          best_dy = dy;
        }
      }
      dy = best_dy;
      dZ = Rd;
      for (int k = 0; k < m; ++k)
        add_entries(dZ, prob.constraints[k].entries, -dy(k));
      dX.resize(nb);
      for (std::size_t bI = 0; bI < nb; ++bI) {
        MatrixXd hz = sc.R[bI].transpose() * dZ[bI] * sc.R[bI];
        dX[bI] = sc.R[bI] * (Gamma[bI] - hz) * sc.R[bI].transpose();
        dX[bI] = 0.5 * (dX[bI] + dX[bI].transpose()).eval();
      }
    };

    // predictor
    Blocks Gamma(nb);
    for (std::size_t bI = 0; bI < nb; ++bI)
      Gamma[bI] = (-sc.d[bI]).asDiagonal();
    VectorXd dy_aff;
    Blocks dX_aff, dZ_aff;
    solve_direction(Gamma, dy_aff, dX_aff, dZ_aff);

    double ap = 1.0, ad = 1.0;
    for (std::size_t bI = 0; bI < nb; ++bI) {
      ap = std::min(ap, max_step(Lx[bI], dX_aff[bI], 0.98));
      ad = std::min(ad, max_step(Lz[bI], dZ_aff[bI], 0.98));
    }
    double mu_aff = 0.0;
    for (std::size_t bI = 0; bI < nb; ++bI)
      mu_aff += ((res.X[bI] + ap * dX_aff[bI]).array() * (res.Z[bI] + ad * dZ_aff[bI]).array())
                    .sum();
    mu_aff = std::max(mu_aff / ndim, 0.0);
    double sigma = std::clamp(std::pow(mu_aff / std::max(mu, 1e-300), 3.0), 1e-8, 1.0);
    // keep the path balanced: complementarity must not undercut the residual
    // scale, or the Schur system degrades before feasibility is restored
    double feas = std::max(res.primal_infeas, res.dual_infeas);
    if (res.rel_gap < 0.5 * feas)
      sigma = std::clamp(0.5 * feas / std::max(res.rel_gap, 1e-300), sigma, 1.0);

    // corrector
    for (std::size_t bI = 0; bI < nb; ++bI) {
      const MatrixXd hx = sc.Rti[bI].transpose() * dX_aff[bI] * sc.Rti[bI];
      const MatrixXd hz = sc.R[bI].transpose() * dZ_aff[bI] * sc.R[bI];
      MatrixXd K = -0.5 * (hx * hz + hz * hx);
      K.diagonal().array() += sigma * mu;
      K.diagonal().array() -= sc.d[bI].array().square();
      const VectorXd& d = sc.d[bI];
      MatrixXd G(K.rows(), K.cols());
      for (int i = 0; i < K.rows(); ++i)
        for (int j = 0; j < K.cols(); ++j) G(i, j) = 2.0 * K(i, j) / (d(i) + d(j));
      Gamma[bI] = 0.5 * (G + G.transpose());
    }
    VectorXd dy;
    Blocks dX, dZ;
    solve_direction(Gamma, dy, dX, dZ);

    ap = 1.0;
    ad = 1.0;
    for (std::size_t bI = 0; bI < nb; ++bI) {
      ap = std::min(ap, max_step(Lx[bI], dX[bI], 0.98));
      ad = std::min(ad, max_step(Lz[bI], dZ[bI], 0.98));
    }
    // the eigenvalue-based step bound can overshoot in ill-conditioned late
    // iterations; back off until the updated block is PSD up to roundoff
    auto nearly_psd = [](const Blocks& M, const Blocks& dM, double alpha) {
      for (std::size_t bI = 0; bI < M.size(); ++bI) {
        MatrixXd W = M[bI] + alpha * dM[bI];
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(W, Eigen::EigenvaluesOnly);
        double scale = std::max(1.0, W.diagonal().cwiseAbs().maxCoeff());
        if (es.eigenvalues().minCoeff() < -1e-13 * scale) return false;
      }
      return true;
    };
    for (int back = 0; back < 30 && !nearly_psd(res.X, dX, ap); ++back) ap *= 0.8;
    for (int back = 0; back < 30 && !nearly_psd(res.Z, dZ, ad); ++back) ad *= 0.8;
    for (std::size_t bI = 0; bI < nb; ++bI) {
      res.X[bI] += ap * dX[bI];
      res.Z[bI] += ad * dZ[bI];
    }
    res.y += ad * dy;
  }

  res.status = SdpStatus::SlowProgress;
  res.detail = "iteration limit";
  return res;
}

}  // namespace putinar
