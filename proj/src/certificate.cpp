#include "putinar/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace putinar {

using nlohmann::json;

bool CertPart::chebyshev() const {
  if (kind == Kind::Gram) return basis.chebyshev;
  return !cheb_squares.empty() && squares.empty();
}

static int squares_degree(const CertPart& p) {
  int d = 0;
  for (const auto& q : p.squares) d = std::max(d, q.degree());
  for (const auto& q : p.cheb_squares) d = std::max(d, q.degree());
  return 2 * d;
}

int CertPart::degree_bound(const std::vector<MultiPoly>& gens) const {
  int sigma_deg = 0;
  if (kind == Kind::Gram) {
    if (basis.chebyshev) {
      sigma_deg = 2 * basis.cheb_degree;
    } else {
      int d = 0;
      for (const auto& m : basis.monos) d = std::max(d, total_degree(m));
      sigma_deg = 2 * d;
    }
  } else {
    sigma_deg = squares_degree(*this);
  }
  int gd = generator_index > 0 ? gens[generator_index - 1].degree() : 0;
  return sigma_deg + gd;
}

bool PerturbationParams::valid(double norm_f, double f_star, int r) const {
  if (!(delta > 0.0 && s > 0.0 && k > 1.0 && m >= 1)) return false;
  if (!(s > 6.0 * norm_f / delta)) return false;
  if (!(k > (2.0 * r - 2.0) / delta + 1.0)) return false;
  if (!(k > 4.0 * r * s / f_star)) return false;
  return m >= echelon_degree(delta, k);
}

PerturbationParams perturbation_params(double norm_f, double f_star, int r, double delta,
                                       double margin) {
  require(delta > 0.0, ErrorKind::InvalidParameter, "delta must be positive");
  require(f_star > 0.0, ErrorKind::InvalidParameter, "f* must be positive");
  require(norm_f > 0.0, ErrorKind::InvalidParameter, "||f|| must be positive");
  require(margin > 0.0, ErrorKind::InvalidParameter,
          "margin must be positive to satisfy the strict inequalities");
  PerturbationParams p;
  p.delta = std::min(delta, 1.0);
  p.margin = margin;
  p.s = (1.0 + margin) * 6.0 * norm_f / p.delta;
  p.k = (1.0 + margin) * std::max((2.0 * r - 2.0) / p.delta + 1.0, 4.0 * r * p.s / f_star);
  p.m = echelon_degree(p.delta, p.k);
  return p;
}

PerturbationBuild build_perturbation(const Problem& prob, const PerturbationParams& params,
                                     double f_star) {
  const int n = prob.nvars;
  PerturbationBuild out;
  out.echelon = build_echelon(params.delta, params.k);

  if (n == 1) {
    UniPoly p = UniPoly::from_multipoly(prob.f, UniPoly::Basis::Chebyshev);
    for (const auto& gi : prob.g) {
      UniPoly gc = UniPoly::from_multipoly(gi, UniPoly::Basis::Chebyshev);
      UniPoly hg = cheb_compose(out.echelon.h, gc);
      UniPoly term = hg.mul(gc);
      term *= -params.s;
      p += term;
    }
    out.p_cheb = p;
    const int npts = std::max(50'000, 8 * p.degree());
    const double pi = std::acos(-1.0);
    double mn = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= npts; ++j) mn = std::min(mn, p.eval(std::cos(j * pi / npts)));
    out.min_check = mn;
  } else {
    require(out.echelon.m <= 40, ErrorKind::NumericalFailure,
            "echelon degree too large for the multivariate monomial pipeline");
    UniPoly h_mono = out.echelon.h.to_monomial();
    MultiPoly p = prob.f;
    for (const auto& gi : prob.g) {
      MultiPoly hg = compose_monomial_coeffs(h_mono.coeffs(), gi);
      p -= hg.mul(gi) * params.s;
    }
    out.p = p.pruned(0.0);
    ChebGrid grid = ChebGrid::make(n, default_resolution(n));
    CompiledPoly cp = CompiledPoly::from(out.p);
    const long long npts = grid.point_count();
    std::vector<double> xs(static_cast<std::size_t>(npts) * n), vals(npts);
    for (long long i = 0; i < npts; ++i) grid.point(i, std::span<double>(xs.data() + i * n, n));
    kernels::eval_points(cp, xs, vals);
    out.min_check = *std::min_element(vals.begin(), vals.end());
  }

  require(out.min_check >= 0.5 * f_star * (1.0 - 1e-6), ErrorKind::MinCheckFailed,
          "perturbed polynomial dips below f*/2 on the box");
  return out;
}

FeketeLukacs fekete_lukacs(const UniPoly& h_in, const QmOptions& opts) {
  UniPoly h = h_in.basis() == UniPoly::Basis::Chebyshev ? h_in : h_in.to_chebyshev();
  const int d = h.degree();

  double mx = 0.0, mn = std::numeric_limits<double>::infinity();
  const int samples = std::max(4096, 8 * d);
  for (int j = 0; j <= samples; ++j) {
    double v = h.eval(-1.0 + 2.0 * j / samples);
    mx = std::max(mx, std::abs(v));
    mn = std::min(mn, v);
  }
  require(mn >= -1e-10 * std::max(1.0, mx), ErrorKind::NotNonnegative,
          "input is negative on [-1,1]");

  std::vector<UniPoly> gens = {UniPoly(UniPoly::Basis::Chebyshev, {1.0, -1.0}),   // 1 - T
                               UniPoly(UniPoly::Basis::Chebyshev, {1.0, 1.0})};   // 1 + T
  SosSolve sol = qm_feasibility_cheb(h, gens, d + 1, opts);
  require(sol.status == SdpStatus::Optimal, ErrorKind::NumericalFailure,
          "Fekete-Lukacs SDP did not converge: " + std::string(to_string(sol.status)));

  FeketeLukacs out;
  for (const auto& part : sol.parts) {
    SosDecomposition dec = gram_to_sos(part, 1);
    auto& dst = part.generator_index == 0 ? out.s0 : (part.generator_index == 1 ? out.s1 : out.s2);
    for (auto& q : dec.cheb_squares) dst.push_back(std::move(q));
  }

  UniPoly recon(UniPoly::Basis::Chebyshev, {});
  for (const auto& q : out.s0) recon += q.mul(q);
  for (const auto& q : out.s1) recon += q.mul(q).mul(gens[0]);
  for (const auto& q : out.s2) recon += q.mul(q).mul(gens[1]);
  recon -= h;
  out.residual = recon.coeff_inf_norm();
  require(out.residual <= 1e-8 * (1.0 + h.coeff_inf_norm()), ErrorKind::NumericalFailure,
          "Fekete-Lukacs reconstruction residual too large");
  return out;
}

// ---- box to ball ----

namespace {

// SoS pair (A, B) standing for A + B * (1 - ||X||^2), each a list of squares
struct QbPair {
  std::vector<MultiPoly> a, b;
};

QbPair qb_mul(const QbPair& x, const QbPair& y, const MultiPoly& ball) {
  QbPair out;
  for (const auto& q : x.a)
    for (const auto& r : y.a) out.a.push_back(q.mul(r));
  for (const auto& q : x.b)
    for (const auto& r : y.b) out.a.push_back(q.mul(r).mul(ball));  // b^2 is a square
  for (const auto& q : x.a)
    for (const auto& r : y.b) out.b.push_back(q.mul(r));
  for (const auto& q : x.b)
    for (const auto& r : y.a) out.b.push_back(q.mul(r));
  return out;
}

}  // namespace

BallCertificate box_to_ball(const std::vector<BoxTerm>& terms, int nvars) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  MultiPoly ball = MultiPoly::constant(nvars, 1.0);
  for (int i = 0; i < nvars; ++i) {
    Exponents e(nvars, 0);
    e[i] = 2;
    ball.add_term(e, -1.0);
  }

  BallCertificate out;
  for (const BoxTerm& term : terms) {
    for (int s : term.gen_signs)
      require(s != 0 && std::abs(s) <= nvars, ErrorKind::UnsupportedGeneratorForm,
              "generator ids must be +-1..n");
    // pair complementary factors (1-X_i)(1+X_i) = sum_{j != i} X_j^2 + ball
    std::vector<int> remaining;
    std::vector<QbPair> factors;
    std::vector<int> signs = term.gen_signs;
    std::sort(signs.begin(), signs.end());
    std::vector<char> used(signs.size(), 0);
    for (std::size_t u = 0; u < signs.size(); ++u) {
      if (used[u]) continue;
      bool paired = false;
      for (std::size_t v = u + 1; v < signs.size(); ++v) {
        if (!used[v] && signs[v] == -signs[u]) {
          int i = std::abs(signs[u]) - 1;
          QbPair f;
          for (int j = 0; j < nvars; ++j)
            if (j != i) f.a.push_back(MultiPoly::variable(nvars, j));
          f.b.push_back(MultiPoly::constant(nvars, 1.0));
          factors.push_back(std::move(f));
          used[u] = used[v] = 1;
          paired = true;
          break;
        }
      }
      if (!paired) remaining.push_back(signs[u]);
    }
    // single factors: 1 +- X_i = (sum_{j != i} X_j^2 + (1 +- X_i)^2 + ball) / 2
    for (int s : remaining) {
      int i = std::abs(s) - 1;
      QbPair f;
      for (int j = 0; j < nvars; ++j)
        if (j != i) f.a.push_back(MultiPoly::variable(nvars, j, inv_sqrt2));
      MultiPoly lin = MultiPoly::constant(nvars, inv_sqrt2);
      lin += MultiPoly::variable(nvars, i, s > 0 ? inv_sqrt2 : -inv_sqrt2);
      f.a.push_back(std::move(lin));
      f.b.push_back(MultiPoly::constant(nvars, inv_sqrt2));
      factors.push_back(std::move(f));
    }

    QbPair acc;
    acc.a = term.squares;
    if (acc.a.empty()) acc.a.push_back(MultiPoly::constant(nvars, 1.0));
    for (const QbPair& f : factors) acc = qb_mul(acc, f, ball);

    for (auto& q : acc.a)
      if (!q.is_zero()) out.sigma0_squares.push_back(std::move(q));
    for (auto& q : acc.b)
      if (!q.is_zero()) out.sigma_ball_squares.push_back(std::move(q));
  }
  return out;
}

// ---- echelon-term lifting ----

namespace {

UniPoly cheb_one_minus(const UniPoly& g) {
  UniPoly out = g;
  out *= -1.0;
  return out + UniPoly::constant(1.0, UniPoly::Basis::Chebyshev);
}

void push_cheb_part(Certificate& cert, int gen_index, const char* provenance,
                    std::vector<UniPoly> squares) {
  if (squares.empty()) return;
  CertPart part;
  part.kind = CertPart::Kind::Squares;
  part.generator_index = gen_index;
  part.provenance = provenance;
  part.cheb_squares = std::move(squares);
  cert.parts.push_back(std::move(part));
}

}  // namespace

Certificate lift_echelon_term(const EchelonPoly& h, const Problem& prob, int gen_index,
                              const Ell0Witness& ell0, const QmOptions& opts) {
  require(gen_index >= 1 && gen_index <= static_cast<int>(prob.g.size()),
          ErrorKind::InvalidParameter, "generator index out of range");
  const MultiPoly& g = prob.g[gen_index - 1];
  const int n = prob.nvars;
  require(n == 1, ErrorKind::InvalidParameter,
          "echelon lifting is implemented for the univariate pipeline");

  FeketeLukacs fl = fekete_lukacs(h.h, opts);
  UniPoly gc = UniPoly::from_multipoly(g, UniPoly::Basis::Chebyshev);
  UniPoly one_minus_g = cheb_one_minus(gc);

  Certificate cert;
  cert.nvars = n;

  // h(g) g = s0(g) g + s1(g)(1-g) g + s2(g)(1+g) g with
  //   s1(g)(1-g)g = s1(g)(1-g)^2 g + s1(g) g^2 (1-g)
  //   s2(g)(1+g)g = s2(g) g + s2(g) g^2
  std::vector<UniPoly> gen_part;  // sigma_{gen_index}
  for (const auto& q : fl.s0) gen_part.push_back(cheb_compose(q, gc));
  for (const auto& q : fl.s2) gen_part.push_back(cheb_compose(q, gc));
  for (const auto& q : fl.s1) gen_part.push_back(cheb_compose(q, gc).mul(one_minus_g));

  std::vector<UniPoly> sos_part;  // sigma_0: s2(g) g^2 squares
  for (const auto& q : fl.s2) sos_part.push_back(cheb_compose(q, gc).mul(gc));

  push_cheb_part(cert, gen_index, "perturbation-lift", std::move(gen_part));
  push_cheb_part(cert, 0, "perturbation-lift", std::move(sos_part));

  // s1(g) g^2 (1-g): substitute the certificate of 1 - g in Q_{ell0}(g)
  const SosSolve& wit = ell0.certs.at(gen_index - 1);
  for (const auto& wpart : wit.parts) {
    SosDecomposition dec = gram_to_sos(wpart, n);
    std::vector<UniPoly> tau;
    if (wpart.basis.chebyshev) {
      tau = dec.cheb_squares;
    } else {
      for (const auto& q : dec.squares)
        tau.push_back(UniPoly::from_multipoly(q, UniPoly::Basis::Chebyshev));
    }
    std::vector<UniPoly> combined;
    for (const auto& q : fl.s1)
      for (const auto& w : tau) combined.push_back(cheb_compose(q, gc).mul(gc).mul(w));
    push_cheb_part(cert, wpart.generator_index, "perturbation-lift", std::move(combined));
  }

  const int dgi = g.degree();
  int actual = 0;
  for (const auto& part : cert.parts) actual = std::max(actual, part.degree_bound(prob.g));
  cert.level = std::max(dgi * h.m + ell0.level + 2, actual);
  return cert;
}

// ---- certify / verify ----

namespace {

MultiPoly expand_part_mono(const CertPart& part, const std::vector<MultiPoly>& gens, int nvars) {
  MultiPoly sigma(nvars);
  if (part.kind == CertPart::Kind::Gram) {
    GramCertificatePart gp;
    gp.basis = part.basis;
    gp.gram = part.gram;
    sigma = expand_gram(gp, nvars);
  } else {
    for (const auto& q : part.squares) sigma += q.mul(q);
  }
  if (part.generator_index > 0) sigma = sigma.mul(gens[part.generator_index - 1]);
  return sigma;
}

UniPoly expand_part_cheb(const CertPart& part, const std::vector<UniPoly>& gens_cheb) {
  UniPoly sigma(UniPoly::Basis::Chebyshev, {});
  if (part.kind == CertPart::Kind::Gram) {
    GramCertificatePart gp;
    gp.basis = part.basis;
    gp.gram = part.gram;
    sigma = expand_gram_cheb(gp);
  } else {
    for (const auto& q : part.cheb_squares) sigma += q.mul(q);
  }
  if (part.generator_index > 0) sigma = sigma.mul(gens_cheb[part.generator_index - 1]);
  return sigma;
}

void append_gram_parts(Certificate& cert, const std::vector<GramCertificatePart>& parts,
                       const char* provenance) {
  for (const auto& gp : parts) {
    if (gp.gram.cwiseAbs().maxCoeff() < 1e-14) continue;  // empty block
    CertPart part;
    part.kind = CertPart::Kind::Gram;
    part.generator_index = gp.generator_index;
    part.provenance = provenance;
    part.basis = gp.basis;
    part.gram = gp.gram;
    cert.parts.push_back(std::move(part));
  }
}

Certificate certify_direct(const Problem& prob, const CertifyOptions& opts) {
  const int d = prob.f.degree();
  int base = 2 * ((d + 1) / 2);
  if (base < 2) base = 2;
  QmOptions qm = opts.qm;
  qm.chebyshev = prob.nvars == 1;
  for (int ell = base; ell <= opts.level_cap; ell += 2) {
    SosSolve sol = qm_feasibility(prob.f, prob.g, ell, qm);
    if (sol.status == SdpStatus::Optimal) {
      Certificate cert;
      cert.nvars = prob.nvars;
      cert.level = ell;
      cert.residual = sol.max_residual;
      append_gram_parts(cert, sol.parts, "direct-sdp");
      return cert;
    }
  }
  fail(ErrorKind::InfeasibleAtLevel,
       "no representation found up to level " + std::to_string(opts.level_cap));
}

// representation of the (positive on the box) polynomial p in Q_ell(g) by
// direct search, univariate chebyshev pipeline
Certificate represent_cheb(const UniPoly& p_cheb, const Problem& prob, int level_cap,
                           const QmOptions& opts_in) {
  QmOptions opts = opts_in;
  opts.chebyshev = true;
  std::vector<UniPoly> gens_cheb;
  for (const auto& g : prob.g)
    gens_cheb.push_back(UniPoly::from_multipoly(g, UniPoly::Basis::Chebyshev));
  int base = p_cheb.degree();
  if (base % 2) ++base;
  if (base < 2) base = 2;
  for (int ell = base; ell <= std::max(level_cap, base + 8); ell += 2) {
    SosSolve sol = qm_feasibility_cheb(p_cheb, gens_cheb, ell, opts);
    if (sol.status == SdpStatus::Optimal) {
      Certificate cert;
      cert.nvars = 1;
      cert.level = ell;
      cert.residual = sol.max_residual;
      append_gram_parts(cert, sol.parts, "direct-sdp");
      return cert;
    }
  }
  fail(ErrorKind::InfeasibleAtLevel, "perturbed polynomial not represented within level cap");
}

Certificate certify_perturbation(const Problem& prob, const CertifyOptions& opts, double f_star,
                                 double norm_f) {
  require(prob.nvars == 1, ErrorKind::InvalidParameter,
          "perturbation strategy is implemented for the univariate pipeline");
  SublevelDelta sd = sublevel_delta(prob, opts.budget);
  if (sd.a_empty) return certify_direct(prob, opts);  // A empty: p = f works directly

  const int r = static_cast<int>(prob.g.size());
  double delta = std::min(0.95 * sd.delta_emp, 1.0);
  PerturbationParams params;
  PerturbationBuild pb;
  bool built = false;
  for (int attempt = 0; attempt < 3 && !built; ++attempt) {
    params = perturbation_params(norm_f, f_star, r, delta, opts.margin);
    try {
      pb = build_perturbation(prob, params, f_star);
      built = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::MinCheckFailed) throw;
      delta *= 0.5;
    }
  }
  require(built, ErrorKind::MinCheckFailed, "min check kept failing while shrinking delta");

  QmOptions qm = opts.qm;
  qm.chebyshev = true;
  Ell0Witness ell0 = find_ell0_witness(prob.g, 12, qm);

  Certificate cert;
  cert.nvars = 1;

  // f - p = s * sum h(g_i) g_i, lifted term by term
  double sqrt_s = std::sqrt(params.s);
  for (int i = 1; i <= r; ++i) {
    Certificate lifted = lift_echelon_term(pb.echelon, prob, i, ell0, qm);
    for (CertPart& part : lifted.parts) {
      for (auto& q : part.cheb_squares) q *= sqrt_s;
      cert.parts.push_back(std::move(part));
    }
    cert.level = std::max(cert.level, lifted.level);
  }

  Certificate prep = represent_cheb(pb.p_cheb, prob, std::max(opts.level_cap, pb.p_cheb.degree()),
                                    qm);
  for (CertPart& part : prep.parts) cert.parts.push_back(std::move(part));
  cert.level = std::max(cert.level, prep.level);
  return cert;
}

Certificate certify_boxchain(const Problem& prob, const CertifyOptions& opts) {
  const int n = prob.nvars;
  require(n <= 3, ErrorKind::InvalidParameter, "boxchain preordering capped at n <= 3");

  // locate the ball generator c * (1 - ||X||^2)
  int ball_index = -1;
  double ball_scale = 1.0;
  for (std::size_t i = 0; i < prob.g.size(); ++i) {
    auto rho = detect_ball_constraint(prob.g[i]);
    if (rho && std::abs(*rho - 1.0) <= 1e-9) {
      ball_index = static_cast<int>(i) + 1;
      ball_scale = prob.g[i].coeff(Exponents(n, 0));
      break;
    }
  }
  require(ball_index > 0, ErrorKind::UnsupportedGeneratorForm,
          "boxchain needs a generator of the form c (1 - ||X||^2)");

  double fmin_box = max_norm_box(prob.f, default_resolution(n)).lower;  // placeholder scale
  // sampled minimum of f on the box
  {
    ChebGrid grid = ChebGrid::make(n, default_resolution(n));
    CompiledPoly cp = CompiledPoly::from(prob.f);
    const long long npts = grid.point_count();
    std::vector<double> xs(static_cast<std::size_t>(npts) * n), vals(npts);
    for (long long i = 0; i < npts; ++i) grid.point(i, std::span<double>(xs.data() + i * n, n));
    kernels::eval_points(cp, xs, vals);
    fmin_box = *std::min_element(vals.begin(), vals.end());
  }
  require(fmin_box > 0.0, ErrorKind::InvalidParameter,
          "boxchain needs f > 0 on the box; use the perturbation strategy first");

  // box preordering generators: products of distinct subsets of {1 +- X_i}
  std::vector<MultiPoly> pre_gens;
  std::vector<std::vector<int>> pre_signs;
  std::vector<MultiPoly> lin;  // 2n linear factors, ids +-(i+1)
  std::vector<int> lin_ids;
  for (int i = 0; i < n; ++i) {
    MultiPoly plus = MultiPoly::constant(n, 1.0) + MultiPoly::variable(n, i);
    MultiPoly minus = MultiPoly::constant(n, 1.0) - MultiPoly::variable(n, i);
    lin.push_back(plus);
    lin_ids.push_back(i + 1);
    lin.push_back(minus);
    lin_ids.push_back(-(i + 1));
  }
  const int nf = 2 * n;
  for (int mask = 1; mask < (1 << nf); ++mask) {
    MultiPoly prod = MultiPoly::constant(n, 1.0);
    std::vector<int> ids;
    for (int b = 0; b < nf; ++b)
      if (mask & (1 << b)) {
        prod = prod.mul(lin[b]);
        ids.push_back(lin_ids[b]);
      }
    pre_gens.push_back(std::move(prod));
    pre_signs.push_back(std::move(ids));
  }

  int base = 2 * ((prob.f.degree() + 1) / 2);
  if (base < 2) base = 2;
  SosSolve sol;
  std::vector<std::vector<int>> level_signs;
  bool found = false;
  int found_level = 0;
  for (int ell = base; ell <= opts.level_cap && !found; ell += 2) {
    // only the products that fit inside Q_ell can carry a multiplier
    std::vector<MultiPoly> gens_here;
    level_signs.clear();
    for (std::size_t i = 0; i < pre_gens.size(); ++i) {
      if (pre_gens[i].degree() > ell) continue;
      gens_here.push_back(pre_gens[i]);
      level_signs.push_back(pre_signs[i]);
    }
    sol = qm_feasibility(prob.f, gens_here, ell, opts.qm);
    if (sol.status == SdpStatus::Optimal) {
      found = true;
      found_level = ell;
    }
  }
  require(found, ErrorKind::InfeasibleAtLevel, "no box representation within level cap");

  // convert preordering parts to box terms, then rewrite into Q(1-||X||^2)
  std::vector<BoxTerm> terms;
  Certificate cert;
  cert.nvars = n;
  for (const auto& gp : sol.parts) {
    if (gp.gram.cwiseAbs().maxCoeff() < 1e-13) continue;
    SosDecomposition dec = gram_to_sos(gp, n);
    BoxTerm term;
    term.squares = std::move(dec.squares);
    if (gp.generator_index > 0) term.gen_signs = level_signs[gp.generator_index - 1];
    terms.push_back(std::move(term));
  }
  BallCertificate ball = box_to_ball(terms, n);

  CertPart s0;
  s0.kind = CertPart::Kind::Squares;
  s0.generator_index = 0;
  s0.provenance = "box-representation";
  s0.squares = std::move(ball.sigma0_squares);
  cert.parts.push_back(std::move(s0));

  CertPart sball;
  sball.kind = CertPart::Kind::Squares;
  sball.generator_index = ball_index;
  sball.provenance = "ball-embedding";
  double rescale = 1.0 / std::sqrt(ball_scale);
  for (auto& q : ball.sigma_ball_squares) q *= rescale;
  sball.squares = std::move(ball.sigma_ball_squares);
  cert.parts.push_back(std::move(sball));

  cert.level = found_level + n;
  for (const auto& part : cert.parts)
    cert.level = std::max(cert.level, part.degree_bound(prob.g));
  return cert;
}

}  // namespace

Certificate certify(const Problem& prob_in, const CertifyOptions& opts) {
  Problem prob = prob_in.normalized ? prob_in : normalize(prob_in);
  FStarReport fs = f_star_and_epsilon(prob, opts.budget);
  require(!fs.nonpositive, ErrorKind::NonPositiveMinimum,
          "certify needs f* > 0 on the feasible set");

  // constant objective: sigma_0 alone
  if (prob.f.degree() == 0) {
    double c = prob.f.coeff(Exponents(prob.nvars, 0));
    Certificate cert;
    cert.nvars = prob.nvars;
    cert.level = 0;
    CertPart part;
    part.kind = CertPart::Kind::Squares;
    part.generator_index = 0;
    part.provenance = "direct-sdp";
    if (prob.nvars == 1)
      part.cheb_squares.push_back(UniPoly::constant(std::sqrt(c), UniPoly::Basis::Chebyshev));
    else
      part.squares.push_back(MultiPoly::constant(prob.nvars, std::sqrt(c)));
    cert.parts.push_back(std::move(part));
    cert.residual = 0.0;
    return cert;
  }

  Certificate cert;
  switch (opts.strategy) {
    case CertifyStrategy::Direct:
      cert = certify_direct(prob, opts);
      break;
    case CertifyStrategy::Perturbation:
      cert = certify_perturbation(prob, opts, fs.f_star, fs.norm_f);
      break;
    case CertifyStrategy::BoxChain:
      cert = certify_boxchain(prob, opts);
      break;
  }
  VerifyReport rep = verify_certificate(cert, prob.f, prob.g);
  cert.residual = rep.residual;
  return cert;
}

VerifyReport verify_certificate(const Certificate& cert, const MultiPoly& f,
                                const std::vector<MultiPoly>& g, double res_tol_scale) {
  VerifyReport rep;
  bool any_cheb = false;
  for (const auto& part : cert.parts) any_cheb = any_cheb || part.chebyshev();

  double gram_scale = 1.0;
  rep.min_eigenvalue = 0.0;
  for (const auto& part : cert.parts) {
    if (part.kind != CertPart::Kind::Gram) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(part.gram, Eigen::EigenvaluesOnly);
    rep.min_eigenvalue = std::min(rep.min_eigenvalue, es.eigenvalues().minCoeff());
    gram_scale = std::max(gram_scale, part.gram.cwiseAbs().maxCoeff());
  }

  for (const auto& part : cert.parts)
    if (part.degree_bound(g) > cert.level) rep.degrees_ok = false;

  double fnorm;
  if (any_cheb) {
    require(f.nvars() == 1, ErrorKind::InvalidParameter,
            "chebyshev certificate parts need a univariate problem");
    std::vector<UniPoly> gens_cheb;
    for (const auto& gi : g)
      gens_cheb.push_back(UniPoly::from_multipoly(gi, UniPoly::Basis::Chebyshev));
    UniPoly acc(UniPoly::Basis::Chebyshev, {});
    for (const auto& part : cert.parts) acc += expand_part_cheb(part, gens_cheb);
    UniPoly fc = UniPoly::from_multipoly(f, UniPoly::Basis::Chebyshev);
    acc -= fc;
    rep.residual = acc.coeff_inf_norm();
    fnorm = fc.coeff_inf_norm();
  } else {
    MultiPoly acc(f.nvars());
    for (const auto& part : cert.parts) acc += expand_part_mono(part, g, f.nvars());
    acc -= f;
    rep.residual = acc.coeff_inf_norm();
    fnorm = f.coeff_inf_norm();
  }

  bool psd_ok = rep.min_eigenvalue >= -1e-8 * gram_scale;
  bool res_ok = rep.residual <= res_tol_scale * (1.0 + fnorm);
  rep.verdict = psd_ok && res_ok && rep.degrees_ok;
  if (!rep.verdict) {
    rep.detail = std::string(!res_ok ? "residual too large; " : "") +
                 (!psd_ok ? "gram part indefinite; " : "") +
                 (!rep.degrees_ok ? "degree bound violated; " : "");
  }
  return rep;
}

// ---- JSON ----

static json poly_terms_json(const MultiPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exp", e}, {"coef", c}});
  return json{{"nvars", p.nvars()}, {"terms", terms}};
}

static MultiPoly poly_terms_parse(const json& j) {
  MultiPoly p(j.at("nvars").get<int>());
  for (const auto& t : j.at("terms"))
    p.add_term(t.at("exp").get<Exponents>(), t.at("coef").get<double>());
  return p;
}

std::string certificate_to_json(const Certificate& cert) {
  json j;
  j["level"] = cert.level;
  j["nvars"] = cert.nvars;
  j["residual"] = cert.residual;
  j["parts"] = json::array();
  for (const auto& part : cert.parts) {
    json pj;
    pj["kind"] = part.kind == CertPart::Kind::Gram ? "gram" : "squares";
    pj["generator_index"] = part.generator_index;
    pj["provenance"] = part.provenance;
    if (part.kind == CertPart::Kind::Gram) {
      if (part.basis.chebyshev) {
        pj["basis"] = {{"type", "chebyshev"}, {"degree", part.basis.cheb_degree}};
      } else {
        json elems = json::array();
        for (const auto& m : part.basis.monos) elems.push_back(m);
        pj["basis"] = {{"type", "monomial"}, {"elements", elems}};
      }
      json rows = json::array();
      for (int i = 0; i < part.gram.rows(); ++i) {
        json row = json::array();
        for (int c = 0; c < part.gram.cols(); ++c) row.push_back(part.gram(i, c));
        rows.push_back(row);
      }
      pj["gram"] = rows;
    } else if (!part.cheb_squares.empty()) {
      pj["basis"] = {{"type", "chebyshev"}};
      json sq = json::array();
      for (const auto& q : part.cheb_squares) sq.push_back(q.coeffs());
      pj["squares"] = sq;
    } else {
      pj["basis"] = {{"type", "monomial"}};
      json sq = json::array();
      for (const auto& q : part.squares) sq.push_back(poly_terms_json(q));
      pj["squares"] = sq;
    }
    j["parts"].push_back(std::move(pj));
  }
  return j.dump(2);
}

Certificate certificate_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    fail(ErrorKind::IoError, std::string("bad certificate JSON: ") + ex.what());
  }
  Certificate cert;
  cert.level = j.at("level").get<int>();
  cert.nvars = j.at("nvars").get<int>();
  cert.residual = j.value("residual", 0.0);
  for (const auto& pj : j.at("parts")) {
    CertPart part;
    part.generator_index = pj.at("generator_index").get<int>();
    part.provenance = pj.value("provenance", "");
    bool cheb = pj.at("basis").at("type").get<std::string>() == "chebyshev";
    if (pj.at("kind").get<std::string>() == "gram") {
      part.kind = CertPart::Kind::Gram;
      part.basis.chebyshev = cheb;
      if (cheb) {
        part.basis.cheb_degree = pj.at("basis").at("degree").get<int>();
      } else {
        for (const auto& m : pj.at("basis").at("elements"))
          part.basis.monos.push_back(m.get<Exponents>());
      }
      const auto& rows = pj.at("gram");
      const int nr = static_cast<int>(rows.size());
      part.gram.resize(nr, nr);
      for (int i = 0; i < nr; ++i)
        for (int c = 0; c < nr; ++c) part.gram(i, c) = rows[i][c].get<double>();
    } else {
      part.kind = CertPart::Kind::Squares;
      for (const auto& sq : pj.at("squares")) {
        if (cheb)
          part.cheb_squares.emplace_back(UniPoly::Basis::Chebyshev,
                                         sq.get<std::vector<double>>());
        else
          part.squares.push_back(poly_terms_parse(sq));
      }
    }
    cert.parts.push_back(std::move(part));
  }
  return cert;
}

}  // namespace putinar
