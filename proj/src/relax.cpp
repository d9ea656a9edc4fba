#include "putinar/relax.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace putinar {

namespace {

GramBasis monomial_basis(int nvars, int maxdeg) {
  GramBasis b;
  b.monos = monomials_up_to(nvars, maxdeg);
  return b;
}

GramBasis cheb_basis(int maxdeg) {
  GramBasis b;
  b.chebyshev = true;
  b.cheb_degree = maxdeg;
  return b;
}

// coefficient rows of the truncated-quadratic-module identity, one per
// monomial (or Chebyshev degree) up to ell
struct RowBuilder {
  bool chebyshev;
  int nvars;
  int ell;
  std::vector<Exponents> row_index;                   // monomial mode
  std::map<Exponents, int, GradedLexLess> row_of;     // monomial mode
  std::vector<std::map<std::pair<int, int>, double>> row_entries_per_block;  // temp per row
  std::vector<std::vector<SdpConstraint>> dummy;

  std::vector<std::map<long long, double>> rows;  // row -> key(block,a,b) -> value

  int nrows() const {
    return chebyshev ? ell + 1 : static_cast<int>(row_index.size());
  }
};

long long entry_key(int block, int a, int b) {
  return (static_cast<long long>(block) << 40) | (static_cast<long long>(a) << 20) | b;
}

void unpack_key(long long key, int& block, int& a, int& b) {
  block = static_cast<int>(key >> 40);
  a = static_cast<int>((key >> 20) & 0xfffff);
  b = static_cast<int>(key & 0xfffff);
}

// accumulate the coefficients of basis_a * basis_b * gen into the rows
void accumulate_pair_mono(RowBuilder& rb, int block, int a, int b, const Exponents& ba,
                          const Exponents& bb, const MultiPoly& gen) {
  Exponents alpha(rb.nvars);
  for (const auto& [mu, gcoef] : gen.terms()) {
    for (int i = 0; i < rb.nvars; ++i) alpha[i] = ba[i] + bb[i] + mu[i];
    auto it = rb.row_of.find(alpha);
    require(it != rb.row_of.end(), ErrorKind::InvalidParameter,
            "basis degree exceeds module level");
    rb.rows[it->second][entry_key(block, a, b)] += gcoef;
  }
}

void accumulate_pair_cheb(RowBuilder& rb, int block, int a, int b,
                          const std::vector<double>& gen_cheb) {
  // T_a T_b T_mu = 1/4 (T_{a+b+mu} + T_{|a+b-mu|} + T_{|a-b|+mu} + T_{||a-b|-mu|})
  const int s1 = a + b, s2 = std::abs(a - b);
  for (int mu = 0; mu < static_cast<int>(gen_cheb.size()); ++mu) {
    double g = gen_cheb[mu];
    if (g == 0.0) continue;
    int idx[4] = {s1 + mu, std::abs(s1 - mu), s2 + mu, std::abs(s2 - mu)};
    for (int t = 0; t < 4; ++t) {
      require(idx[t] <= rb.ell, ErrorKind::InvalidParameter,
              "chebyshev basis degree exceeds module level");
      rb.rows[idx[t]][entry_key(block, a, b)] += 0.25 * g;
    }
  }
}

struct QmStructure {
  SdpProblem sdp;              // without objective/rhs specialization
  std::vector<GramBasis> bases;
  RowBuilder rb;
  std::vector<std::vector<SdpEntry>> row_entries;  // materialized rows
};

// generators in one of the two basis conventions
struct QmGens {
  bool chebyshev = false;
  int nvars = 1;
  const std::vector<MultiPoly>* mono = nullptr;
  std::vector<std::vector<double>> cheb;  // coefficients per generator
  std::vector<int> degrees;

  std::size_t count() const { return chebyshev ? cheb.size() : mono->size(); }
};

QmStructure build_qm_rows(const QmGens& gens, int ell) {
  QmStructure qs;
  qs.rb.chebyshev = gens.chebyshev;
  qs.rb.nvars = gens.nvars;
  qs.rb.ell = ell;
  if (!gens.chebyshev) {
    qs.rb.row_index = monomials_up_to(gens.nvars, ell);
    for (int i = 0; i < static_cast<int>(qs.rb.row_index.size()); ++i)
      qs.rb.row_of[qs.rb.row_index[i]] = i;
  }
  qs.rb.rows.assign(qs.rb.nrows(), {});

  // block 0: sigma_0 with deg <= ell; block i: sigma_i with deg sigma_i g_i <= ell
  std::vector<int> half_degs;
  half_degs.push_back(ell / 2);
  for (std::size_t k = 0; k < gens.count(); ++k) {
    int d = gens.degrees[k];
    require(d <= ell, ErrorKind::InvalidParameter, "generator degree exceeds level");
    half_degs.push_back((ell - d) / 2);
  }

  const MultiPoly one = MultiPoly::constant(gens.nvars, 1.0);
  const std::vector<double> one_cheb = {1.0};
  for (std::size_t blk = 0; blk <= gens.count(); ++blk) {
    GramBasis basis =
        gens.chebyshev ? cheb_basis(half_degs[blk]) : monomial_basis(gens.nvars, half_degs[blk]);
    const int sz = basis.size();
    require(sz >= 1, ErrorKind::InvalidParameter, "empty Gram basis at this level");
    if (gens.chebyshev) {
      const auto& gc = blk == 0 ? one_cheb : gens.cheb[blk - 1];
      for (int a = 0; a < sz; ++a)
        for (int b = a; b < sz; ++b) accumulate_pair_cheb(qs.rb, static_cast<int>(blk), a, b, gc);
    } else {
      const MultiPoly& gen = blk == 0 ? one : (*gens.mono)[blk - 1];
      for (int a = 0; a < sz; ++a)
        for (int b = a; b < sz; ++b)
          accumulate_pair_mono(qs.rb, static_cast<int>(blk), a, b, basis.monos[a], basis.monos[b],
                               gen);
    }
    qs.bases.push_back(std::move(basis));
    qs.sdp.block_dims.push_back(sz);
  }

  qs.row_entries.resize(qs.rb.nrows());
  for (int r = 0; r < qs.rb.nrows(); ++r) {
    for (const auto& [key, v] : qs.rb.rows[r]) {
      if (v == 0.0) continue;
      int block, a, b;
      unpack_key(key, block, a, b);
      qs.row_entries[r].push_back({block, a, b, v});
    }
  }
  return qs;
}

// Optimization mode runs the lambda-maximization form: target - lambda in
// Q_ell(gens) with lambda eliminated through the constant coefficient.
//
// Membership mode (feasibility) instead minimizes the total Gram trace
// subject to <E_0, X> + u = t_0 with a scalar slack u >= 0, i.e. it asks for
// any representation of target - u with u >= 0 and folds u back into
// sigma_0 as a constant square. That problem is attained and coercive even
// when the lambda supremum is not, which is exactly where the plain
// lambda-max form diverges. Single-boundary-point memberships (no interior,
// u forced to 0) fall back to the lambda-max form, which has interior there.
SosSolve run_qm_once(const QmStructure& qs, const std::vector<double>& target_rows, int ell,
                     const QmOptions& opts, bool feasibility, bool trace_form) {
  const int nrows = qs.rb.nrows();
  auto rhs_of = [&](int r) {
    return r < static_cast<int>(target_rows.size()) ? target_rows[r] : 0.0;
  };
  const double t0 = rhs_of(0);

  SdpProblem sdp;
  sdp.block_dims = qs.sdp.block_dims;
  int slack_block = -1;
  if (trace_form) {
    slack_block = static_cast<int>(sdp.block_dims.size());
    sdp.block_dims.push_back(1);
    for (std::size_t blk = 0; blk < qs.sdp.block_dims.size(); ++blk)
      for (int i = 0; i < qs.sdp.block_dims[blk]; ++i)
        sdp.objective.push_back({static_cast<int>(blk), i, i, 1.0});
    SdpConstraint con0;
    con0.entries = qs.row_entries[0];
    con0.entries.push_back({slack_block, 0, 0, 1.0});
    con0.rhs = t0;
    sdp.constraints.push_back(std::move(con0));
  } else {
    sdp.objective = qs.row_entries[0];
  }
  for (int r = 1; r < nrows; ++r) {
    SdpConstraint con;
    con.entries = qs.row_entries[r];
    con.rhs = rhs_of(r);
    sdp.constraints.push_back(std::move(con));
  }

  SdpOptions sopts;
  sopts.tol = opts.tol;
  sopts.max_iter = opts.max_iter;
  sopts.verbose = opts.verbose;
  sopts.feasibility_objective = trace_form;
  SdpResult sres = solve_sdp(sdp, sopts);

  SosSolve out;
  out.status = sres.status;
  out.iterations = sres.iterations;
  out.detail = sres.detail;
  if (sres.status != SdpStatus::Optimal) return out;

  auto assembled_row = [&](int r) {
    double s = 0.0;
    for (const SdpEntry& e : qs.row_entries[r])
      s += e.value * (e.i == e.j ? sres.X[e.block](e.i, e.i) : 2.0 * sres.X[e.block](e.i, e.j));
    return s;
  };
  double lambda = trace_form ? sres.X[slack_block](0, 0) : t0 - assembled_row(0);
  out.value = lambda;

  double scale = 1.0;
  for (int r = 0; r < nrows; ++r) scale = std::max(scale, std::abs(rhs_of(r)));
  if (feasibility) {
    double accept = std::max(1e-7, 100.0 * opts.tol) * scale;
    if (lambda < -accept) {
      out.status = SdpStatus::Infeasible;
      out.detail = "not found at level " + std::to_string(ell) + " (best constant slack " +
                   std::to_string(lambda) + ")";
      return out;
    }
    if (lambda > 0.0) sres.X[0](0, 0) += lambda;  // constant square, keeps PSD
  }

  // row 0 is evaluated after the fold, so it reflects the true identity
  double max_res = 0.0;
  for (int r = feasibility ? 0 : 1; r < nrows; ++r)
    max_res = std::max(max_res, std::abs(assembled_row(r) - rhs_of(r)));
  out.max_residual = max_res;

  for (std::size_t blk = 0; blk < qs.bases.size(); ++blk) {
    GramCertificatePart part;
    part.basis = qs.bases[blk];
    part.gram = sres.X[blk];
    part.generator_index = static_cast<int>(blk);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(part.gram, Eigen::EigenvaluesOnly);
    part.min_eigenvalue = es.eigenvalues().minCoeff();
    part.identity_residual = max_res;
    out.parts.push_back(std::move(part));
  }
  return out;
}

SosSolve run_qm(const QmGens& gens, const std::vector<double>& target_rows, int ell,
                const QmOptions& opts, bool feasibility) {
  QmStructure qs = build_qm_rows(gens, ell);
  if (!feasibility) return run_qm_once(qs, target_rows, ell, opts, false, false);
  SosSolve first = run_qm_once(qs, target_rows, ell, opts, true, true);
  if (first.status != SdpStatus::SlowProgress) return first;
  return run_qm_once(qs, target_rows, ell, opts, true, false);
}

QmGens gens_from_mono(const std::vector<MultiPoly>& gens, int nvars, bool chebyshev) {
  QmGens qg;
  qg.nvars = nvars;
  qg.chebyshev = chebyshev;
  qg.mono = &gens;
  for (const auto& g : gens) {
    require(g.nvars() == nvars, ErrorKind::DimensionMismatch, "generator nvars mismatch");
    qg.degrees.push_back(g.degree());
    if (chebyshev)
      qg.cheb.push_back(UniPoly::from_multipoly(g, UniPoly::Basis::Chebyshev).coeffs());
  }
  return qg;
}

std::vector<double> rows_from_mono(const MultiPoly& target, int ell, bool chebyshev) {
  if (chebyshev) return UniPoly::from_multipoly(target, UniPoly::Basis::Chebyshev).coeffs();
  auto index = monomials_up_to(target.nvars(), ell);
  std::vector<double> rows(index.size(), 0.0);
  for (std::size_t i = 0; i < index.size(); ++i) rows[i] = target.coeff(index[i]);
  return rows;
}

SosSolve run_qm_mono(const MultiPoly& target, const std::vector<MultiPoly>& gens, int ell,
                     const QmOptions& opts, bool feasibility) {
  const int nvars = target.nvars();
  require(ell >= target.degree(), ErrorKind::InvalidParameter, "level below target degree");
  if (opts.chebyshev)
    require(nvars == 1, ErrorKind::InvalidParameter, "chebyshev bases need nvars == 1");
  QmGens qg = gens_from_mono(gens, nvars, opts.chebyshev);
  return run_qm(qg, rows_from_mono(target, ell, opts.chebyshev), ell, opts, feasibility);
}

SosSolve run_qm_cheb(const UniPoly& target, const std::vector<UniPoly>& gens, int ell,
                     const QmOptions& opts, bool feasibility) {
  require(target.basis() == UniPoly::Basis::Chebyshev, ErrorKind::InvalidParameter,
          "target must be in the Chebyshev basis");
  require(ell >= target.degree(), ErrorKind::InvalidParameter, "level below target degree");
  QmGens qg;
  qg.nvars = 1;
  qg.chebyshev = true;
  for (const auto& g : gens) {
    require(g.basis() == UniPoly::Basis::Chebyshev, ErrorKind::InvalidParameter,
            "generators must be in the Chebyshev basis");
    qg.cheb.push_back(g.coeffs());
    qg.degrees.push_back(g.degree());
  }
  QmOptions o = opts;
  o.chebyshev = true;
  return run_qm(qg, target.coeffs(), ell, o, feasibility);
}

}  // namespace

MultiPoly expand_gram(const GramCertificatePart& part, int nvars) {
  require(!part.basis.chebyshev, ErrorKind::InvalidParameter, "monomial expansion requested");
  MultiPoly out(nvars);
  const auto& monos = part.basis.monos;
  Exponents alpha(nvars);
  for (std::size_t a = 0; a < monos.size(); ++a) {
    for (std::size_t b = 0; b < monos.size(); ++b) {
      double v = part.gram(a, b);
      if (v == 0.0) continue;
      for (int i = 0; i < nvars; ++i) alpha[i] = monos[a][i] + monos[b][i];
      out.add_term(alpha, v);
    }
  }
  return out;
}

UniPoly expand_gram_cheb(const GramCertificatePart& part) {
  require(part.basis.chebyshev, ErrorKind::InvalidParameter, "chebyshev expansion requested");
  const int sz = part.basis.size();
  std::vector<double> c(2 * part.basis.cheb_degree + 1, 0.0);
  for (int a = 0; a < sz; ++a) {
    for (int b = 0; b < sz; ++b) {
      double v = part.gram(a, b);
      if (v == 0.0) continue;
      c[a + b] += 0.5 * v;
      c[std::abs(a - b)] += 0.5 * v;
    }
  }
  return UniPoly(UniPoly::Basis::Chebyshev, std::move(c));
}

SosSolve qm_optimize(const MultiPoly& target, const std::vector<MultiPoly>& gens, int ell,
                     const QmOptions& opts) {
  return run_qm_mono(target, gens, ell, opts, false);
}

SosSolve qm_feasibility(const MultiPoly& target, const std::vector<MultiPoly>& gens, int ell,
                        const QmOptions& opts) {
  return run_qm_mono(target, gens, ell, opts, true);
}

SosSolve qm_optimize_cheb(const UniPoly& target, const std::vector<UniPoly>& gens, int ell,
                          const QmOptions& opts) {
  return run_qm_cheb(target, gens, ell, opts, false);
}

SosSolve qm_feasibility_cheb(const UniPoly& target, const std::vector<UniPoly>& gens, int ell,
                             const QmOptions& opts) {
  return run_qm_cheb(target, gens, ell, opts, true);
}

LasserreSos lasserre_sos(const Problem& prob, int ell, const QmOptions& opts) {
  require(2 * ell >= prob.f.degree(), ErrorKind::InvalidParameter,
          "lasserre level below ceil(deg f / 2)");
  for (const auto& g : prob.g)
    require(2 * ell >= g.degree(), ErrorKind::InvalidParameter, "lasserre level below deg g_i");
  SosSolve s = qm_optimize(prob.f, prob.g, 2 * ell, opts);
  LasserreSos out;
  out.status = s.status;
  out.value = s.value;
  out.parts = std::move(s.parts);
  out.max_residual = s.max_residual;
  if (s.status == SdpStatus::Unbounded)
    fail(ErrorKind::InfeasibleAtLevel,
         "lambda unbounded below: missing ball constraint (non-Archimedean input?)");
  return out;
}

// ---- moment-side formulation ----

namespace {

struct MomStructure {
  SdpProblem sdp;
  std::vector<Exponents> moment_index;           // all alpha, |alpha| <= ell
  std::vector<std::vector<SdpEntry>> rep_entry;  // entries reading L_alpha from X
  std::vector<GramBasis> bases;
};

MomStructure build_mom_form(const std::vector<MultiPoly>& gens, int ell, int nvars) {
  require(ell % 2 == 0 && ell >= 2, ErrorKind::InvalidParameter,
          "moment-side level must be even and >= 2");
  MomStructure ms;
  ms.moment_index = monomials_up_to(nvars, ell);
  std::map<Exponents, int, GradedLexLess> idx_of;
  for (int i = 0; i < static_cast<int>(ms.moment_index.size()); ++i)
    idx_of[ms.moment_index[i]] = i;

  auto b0 = monomials_up_to(nvars, ell / 2);
  ms.sdp.block_dims.push_back(static_cast<int>(b0.size()));
  {
    GramBasis gb;
    gb.monos = b0;
    ms.bases.push_back(gb);
  }

  // representative entry in the moment matrix per alpha
  ms.rep_entry.assign(ms.moment_index.size(), {});
  std::vector<std::pair<int, int>> rep_pos(ms.moment_index.size(), {-1, -1});
  Exponents alpha(nvars);
  for (std::size_t a = 0; a < b0.size(); ++a) {
    for (std::size_t b = a; b < b0.size(); ++b) {
      for (int i = 0; i < nvars; ++i) alpha[i] = b0[a][i] + b0[b][i];
      int r = idx_of.at(alpha);
      if (rep_pos[r].first < 0) {
        rep_pos[r] = {static_cast<int>(a), static_cast<int>(b)};
        double w = a == b ? 1.0 : 0.5;
        ms.rep_entry[r].push_back({0, static_cast<int>(a), static_cast<int>(b), w});
      } else {
        // Hankel consistency: this entry equals the representative
        SdpConstraint con;
        double w = a == b ? 1.0 : 0.5;
        con.entries.push_back({0, static_cast<int>(a), static_cast<int>(b), w});
        auto [ra, rb2] = rep_pos[r];
        con.entries.push_back({0, ra, rb2, ra == rb2 ? -1.0 : -0.5});
        con.rhs = 0.0;
        ms.sdp.constraints.push_back(std::move(con));
      }
    }
  }
  for (std::size_t r = 0; r < ms.moment_index.size(); ++r)
    require(rep_pos[r].first >= 0, ErrorKind::InvalidParameter,
            "moment index not covered by the moment matrix");

  // localizing blocks: entry (a,b) = sum_mu g_mu L_{beta_a+beta_b+mu}
  for (std::size_t k = 0; k < gens.size(); ++k) {
    int dk = gens[k].degree();
    require(dk <= ell, ErrorKind::InvalidParameter, "generator degree exceeds level");
    auto bk = monomials_up_to(nvars, (ell - dk) / 2);
    int blk = static_cast<int>(ms.sdp.block_dims.size());
    ms.sdp.block_dims.push_back(static_cast<int>(bk.size()));
    GramBasis gb;
    gb.monos = bk;
    ms.bases.push_back(gb);
    for (std::size_t a = 0; a < bk.size(); ++a) {
      for (std::size_t b = a; b < bk.size(); ++b) {
        SdpConstraint con;
        con.entries.push_back(
            {blk, static_cast<int>(a), static_cast<int>(b), a == b ? 1.0 : 0.5});
        for (const auto& [mu, gc] : gens[k].terms()) {
          for (int i = 0; i < nvars; ++i) alpha[i] = bk[a][i] + bk[b][i] + mu[i];
          int r = idx_of.at(alpha);
          for (const SdpEntry& e : ms.rep_entry[r])
            con.entries.push_back({e.block, e.i, e.j, -gc * e.value});
        }
        con.rhs = 0.0;
        ms.sdp.constraints.push_back(std::move(con));
      }
    }
  }
  return ms;
}

}  // namespace

MomSolve mom_optimize(const MultiPoly& objective, const std::vector<MultiPoly>& gens, int ell,
                      const MomSolveOptions& opts) {
  const int nvars = objective.nvars();
  MomStructure ms = build_mom_form(gens, ell, nvars);
  std::map<Exponents, int, GradedLexLess> idx_of;
  for (int i = 0; i < static_cast<int>(ms.moment_index.size()); ++i)
    idx_of[ms.moment_index[i]] = i;

  require(objective.degree() <= ell, ErrorKind::InvalidParameter,
          "objective degree exceeds moment level");
  for (const auto& [alpha, c] : objective.terms()) {
    int r = idx_of.at(alpha);
    for (const SdpEntry& e : ms.rep_entry[r])
      ms.sdp.objective.push_back({e.block, e.i, e.j, c * e.value});
  }

  if (opts.mass >= 0.0) {
    SdpConstraint con;
    con.entries = ms.rep_entry[0];
    con.rhs = opts.mass;
    ms.sdp.constraints.push_back(std::move(con));
  }
  if (opts.trace_one) {
    SdpConstraint con;
    for (int i = 0; i < ms.sdp.block_dims[0]; ++i) con.entries.push_back({0, i, i, 1.0});
    con.rhs = 1.0;
    ms.sdp.constraints.push_back(std::move(con));
  }

  SdpOptions sopts;
  sopts.tol = opts.tol;
  sopts.max_iter = opts.max_iter;
  SdpResult sres = solve_sdp(ms.sdp, sopts);

  MomSolve out;
  out.status = sres.status;
  if (sres.status != SdpStatus::Optimal) return out;
  out.L.nvars = nvars;
  out.L.degree = ell;
  out.L.index = ms.moment_index;
  out.L.values.resize(ms.moment_index.size());
  for (std::size_t r = 0; r < ms.moment_index.size(); ++r) {
    double v = 0.0;
    for (const SdpEntry& e : ms.rep_entry[r])
      v += e.value * (e.i == e.j ? sres.X[e.block](e.i, e.i) : 2.0 * sres.X[e.block](e.i, e.j));
    out.L.values[r] = v;
  }
  out.value = out.L.pairing(objective);
  return out;
}

LasserreMom lasserre_mom(const Problem& prob, int ell, const QmOptions& opts) {
  require(2 * ell >= prob.f.degree(), ErrorKind::InvalidParameter,
          "lasserre level below ceil(deg f / 2)");
  MomSolveOptions mo;
  mo.tol = opts.tol;
  mo.max_iter = opts.max_iter;
  MomSolve ms = mom_optimize(prob.f, prob.g, 2 * ell, mo);
  LasserreMom out;
  out.status = ms.status;
  if (ms.status != SdpStatus::Optimal) {
    require(ms.status != SdpStatus::SlowProgress, ErrorKind::NumericalFailure,
            "moment relaxation made no progress");
    return out;
  }
  out.value = ms.value;
  out.L = std::move(ms.L);
  out.min_moment_eig = 0.0;  // primal iterates are strictly PSD by construction
  return out;
}

SosDecomposition gram_to_sos(const GramCertificatePart& part, int nvars, double psd_tol_scale) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(part.gram);
  const auto& vals = es.eigenvalues();
  double scale = std::max(1.0, part.gram.cwiseAbs().maxCoeff());
  require(vals.minCoeff() >= -psd_tol_scale * scale, ErrorKind::NotPsd,
          "gram matrix indefinite beyond tolerance");
  SosDecomposition out;
  double clipped = 0.0;
  const int sz = static_cast<int>(vals.size());
  for (int k = 0; k < sz; ++k) {
    double lam = vals(k);
    if (lam <= 0.0) {
      clipped += std::abs(lam);
      continue;
    }
    double s = std::sqrt(lam);
    if (part.basis.chebyshev) {
      std::vector<double> c(sz, 0.0);
      for (int j = 0; j < sz; ++j) c[j] = s * es.eigenvectors()(j, k);
      out.cheb_squares.emplace_back(UniPoly::Basis::Chebyshev, std::move(c));
    } else {
      MultiPoly q(nvars);
      for (int j = 0; j < sz; ++j)
        if (es.eigenvectors()(j, k) != 0.0)
          q.add_term(part.basis.monos[j], s * es.eigenvectors()(j, k));
      out.squares.push_back(std::move(q));
    }
  }
  out.clipped_mass = clipped;

  // reconstruction residual against the gram expansion
  if (part.basis.chebyshev) {
    UniPoly recon(UniPoly::Basis::Chebyshev, {});
    for (const auto& q : out.cheb_squares) recon += q.mul(q);
    UniPoly ref = expand_gram_cheb(part);
    recon -= ref;
    out.reconstruction_residual = recon.coeff_inf_norm();
  } else {
    MultiPoly recon(nvars);
    for (const auto& q : out.squares) recon += q.mul(q);
    recon -= expand_gram(part, nvars);
    out.reconstruction_residual = recon.coeff_inf_norm();
  }
  return out;
}

Ell0Witness find_ell0_witness(const std::vector<MultiPoly>& gens, int max_level,
                              const QmOptions& opts) {
  int start = 2;
  for (const auto& g : gens) start = std::max(start, g.degree());
  if (start % 2) ++start;
  const int nvars = gens.front().nvars();
  for (int ell = start; ell <= max_level; ell += 2) {
    Ell0Witness w;
    w.level = ell;
    bool all = true;
    for (const auto& g : gens) {
      MultiPoly target = MultiPoly::constant(nvars, 1.0) - g;
      SosSolve s = qm_feasibility(target, gens, ell, opts);
      if (s.status != SdpStatus::Optimal) {
        all = false;
        break;
      }
      w.certs.push_back(std::move(s));
    }
    if (all) return w;
  }
  fail(ErrorKind::InfeasibleAtLevel,
       "1 - g_i not found in Q_ell(g) up to level " + std::to_string(max_level));
}

}  // namespace putinar
