#include <cmath>

#include "doctest.h"
#include "putinar/certificate.hpp"

using namespace putinar;

namespace {

Problem interval_problem(MultiPoly f) {
  Problem p;
  p.nvars = 1;
  p.f = std::move(f);
  MultiPoly g(1);
  g.add_term({0}, 1.0);
  g.add_term({2}, -1.0);
  p.g = {g};
  return p;
}

MultiPoly x_plus(double c) {
  MultiPoly f(1);
  f.add_term({1}, 1.0);
  f.add_term({0}, c);
  return f;
}

// g1 = X, g2 = 1 - X^2: S = [0, 1] after normalization
Problem halfline_problem(MultiPoly f) {
  Problem p;
  p.nvars = 1;
  p.f = std::move(f);
  MultiPoly g1(1);
  g1.add_term({1}, 1.0);
  MultiPoly g2(1);
  g2.add_term({0}, 1.0);
  g2.add_term({2}, -1.0);
  p.g = {g1, g2};
  return p;
}

}  // namespace

TEST_CASE("perturbation parameter formulas") {
  // delta=0.1, ||f||=1, f*=0.5, r=2, tiny margin: s -> 60, k -> 960
  PerturbationParams p = perturbation_params(1.0, 0.5, 2, 0.1, 1e-12);
  CHECK(p.s == doctest::Approx(60.0).epsilon(1e-9));
  CHECK(p.k == doctest::Approx(960.0).epsilon(1e-9));
  CHECK(p.m == echelon_degree(0.1, p.k));
  CHECK(p.valid(1.0, 0.5, 2));

  // r = 1 kills the (2r-2) branch
  PerturbationParams q = perturbation_params(1.0, 0.5, 1, 0.1, 1e-12);
  CHECK(q.k == doctest::Approx(4.0 * q.s / 0.5).epsilon(1e-9));

  // shrinking delta grows s and k monotonically
  PerturbationParams a = perturbation_params(1.0, 0.5, 2, 0.2);
  PerturbationParams b = perturbation_params(1.0, 0.5, 2, 0.1);
  CHECK(b.s > a.s);
  CHECK(b.k > a.k);

  CHECK_THROWS_AS((void)perturbation_params(1.0, -1.0, 1, 0.1), Error);
  CHECK_THROWS_AS((void)perturbation_params(1.0, 0.5, 1, 0.0), Error);
}

TEST_CASE("fekete-lukacs hand identities") {
  // 1 - T^2 reconstructs through the three-part split
  UniPoly h(UniPoly::Basis::Monomial, {1.0, 0.0, -1.0});
  FeketeLukacs fl = fekete_lukacs(h);
  CHECK(fl.residual <= 1e-8 * 2.0);

  // paper identity: 1 - T^2 = 1/2 ((1+T)^2 (1-T) + (1-T)^2 (1+T)) expands exactly
  UniPoly one_m(UniPoly::Basis::Chebyshev, {1.0, -1.0});
  UniPoly one_p(UniPoly::Basis::Chebyshev, {1.0, 1.0});
  UniPoly lhs = one_p.mul(one_p).mul(one_m) + one_m.mul(one_m).mul(one_p);
  lhs *= 0.5;
  UniPoly ref = UniPoly(UniPoly::Basis::Monomial, {1.0, 0.0, -1.0}).to_chebyshev();
  lhs -= ref;
  CHECK(lhs.coeff_inf_norm() <= 1e-14);

  // constants and perfect squares pass through
  FeketeLukacs c1 = fekete_lukacs(UniPoly(UniPoly::Basis::Monomial, {1.0}));
  CHECK(c1.residual <= 1e-9);
  FeketeLukacs c2 = fekete_lukacs(UniPoly(UniPoly::Basis::Monomial, {0.09, -0.6, 1.0}));
  CHECK(c2.residual <= 1e-8 * 1.2);

  // negative input rejected
  CHECK_THROWS_AS((void)fekete_lukacs(UniPoly(UniPoly::Basis::Monomial, {0.0, 1.0})), Error);
}

TEST_CASE("box_to_ball identities") {
  // n = 1: 1 - X = 1/2 (1 - X^2) + 1/2 (1 - X)^2 exactly
  BoxTerm term;
  term.gen_signs = {-1};
  BallCertificate bc = box_to_ball({term}, 1);
  MultiPoly acc(1);
  for (const auto& q : bc.sigma0_squares) acc += q.mul(q);
  MultiPoly ball(1);
  ball.add_term({0}, 1.0);
  ball.add_term({2}, -1.0);
  for (const auto& q : bc.sigma_ball_squares) acc += q.mul(q).mul(ball);
  MultiPoly want(1);
  want.add_term({0}, 1.0);
  want.add_term({1}, -1.0);
  acc -= want;
  CHECK(acc.coeff_inf_norm() <= 1e-12);

  // n = 2 variant of the lemma identity
  BoxTerm t2;
  t2.gen_signs = {-1};
  BallCertificate bc2 = box_to_ball({t2}, 2);
  MultiPoly acc2(2);
  for (const auto& q : bc2.sigma0_squares) acc2 += q.mul(q);
  MultiPoly ball2(2);
  ball2.add_term({0, 0}, 1.0);
  ball2.add_term({2, 0}, -1.0);
  ball2.add_term({0, 2}, -1.0);
  for (const auto& q : bc2.sigma_ball_squares) acc2 += q.mul(q).mul(ball2);
  MultiPoly want2(2);
  want2.add_term({0, 0}, 1.0);
  want2.add_term({1, 0}, -1.0);
  acc2 -= want2;
  CHECK(acc2.coeff_inf_norm() <= 1e-12);

  // pure SoS term passes through unchanged
  BoxTerm sos;
  sos.squares.push_back(MultiPoly::monomial({1, 0}, 2.0));
  BallCertificate bc3 = box_to_ball({sos}, 2);
  CHECK(bc3.sigma_ball_squares.empty());
  REQUIRE(bc3.sigma0_squares.size() == 1);
  CHECK(bc3.sigma0_squares[0].coeff({1, 0}) == doctest::Approx(2.0));

  // degree growth <= n for a full product term
  BoxTerm prod;
  prod.gen_signs = {1, -2};  // (1+X1)(1-X2), degree 2
  BallCertificate bc4 = box_to_ball({prod}, 2);
  int deg = 0;
  for (const auto& q : bc4.sigma0_squares) deg = std::max(deg, 2 * q.degree());
  for (const auto& q : bc4.sigma_ball_squares) deg = std::max(deg, 2 * q.degree() + 2);
  CHECK(deg <= 2 + 2);
  // and it expands back to the product
  MultiPoly acc4(2);
  for (const auto& q : bc4.sigma0_squares) acc4 += q.mul(q);
  for (const auto& q : bc4.sigma_ball_squares) acc4 += q.mul(q).mul(ball2);
  MultiPoly want4 = (MultiPoly::constant(2, 1.0) + MultiPoly::variable(2, 0))
                        .mul(MultiPoly::constant(2, 1.0) - MultiPoly::variable(2, 1));
  acc4 -= want4;
  CHECK(acc4.coeff_inf_norm() <= 1e-12);
}

TEST_CASE("g - g^2 lifting identity on random g") {
  Rng rng(2024);
  for (int rep = 0; rep < 20; ++rep) {
    int n = 1 + rep % 3;
    MultiPoly g(n);
    for (int t = 0; t < 4; ++t) {
      Exponents e(n, 0);
      e[t % n] = t % 3;
      g.add_term(e, rng.uniform(-1.0, 1.0));
    }
    MultiPoly one = MultiPoly::constant(n, 1.0);
    MultiPoly lhs = (one - g).mul(one - g).mul(g) + g.mul(g).mul(one - g);
    MultiPoly rhs = g - g.mul(g);
    lhs -= rhs;
    CHECK(lhs.coeff_inf_norm() <= 1e-12 * (1.0 + g.coeff_inf_norm() * g.coeff_inf_norm()));
  }
}

TEST_CASE("lift_echelon_term assembles h(g) g with the stated level") {
  // normalized halfline problem: g1 = X/2 (degree 1), g2 = (1 - X^2)/2
  Problem prob = normalize(halfline_problem(x_plus(4.0)));
  QmOptions qm;
  qm.chebyshev = true;
  Ell0Witness w = find_ell0_witness(prob.g, 10, qm);
  CHECK(w.level == 2);

  EchelonPoly h = build_echelon(0.5, 8.0);
  Certificate cert = lift_echelon_term(h, prob, 1, w, qm);
  CHECK(cert.level == 1 * h.m + w.level + 2);  // d(g_1) = 1: exact

  // the certificate must expand to h(g_1) g_1
  UniPoly g1 = UniPoly::from_multipoly(prob.g[1 - 1], UniPoly::Basis::Chebyshev);
  UniPoly target = cheb_compose(h.h, g1).mul(g1);
  std::vector<MultiPoly> gens = prob.g;
  VerifyReport rep = verify_certificate(cert, target.to_multipoly(), gens, 1e-6);
  CHECK(rep.residual <= 1e-7 * (1.0 + target.coeff_inf_norm()));
  CHECK(rep.degrees_ok);

  // trivial constant echelon: sigma_i = c
  EchelonPoly one;
  one.h = UniPoly::constant(1.0, UniPoly::Basis::Chebyshev);
  one.k = 8.0;
  one.m = 0;
  one.delta = 0.5;
  Certificate triv = lift_echelon_term(one, prob, 1, w, qm);
  UniPoly target1 = g1;
  VerifyReport rep1 = verify_certificate(triv, target1.to_multipoly(), gens, 1e-8);
  CHECK(rep1.verdict);
}

TEST_CASE("certify direct on the shifted interval problem") {
  Problem prob = normalize(interval_problem(x_plus(2.0)));
  CertifyOptions opts;
  Certificate cert = certify(prob, opts);
  CHECK(cert.level <= 2);
  VerifyReport rep = verify_certificate(cert, prob.f, prob.g);
  CHECK(rep.verdict);
  CHECK(rep.residual <= 1e-6 * (1.0 + prob.f.coeff_inf_norm()));
}

TEST_CASE("certify constant objective") {
  Problem prob = normalize(interval_problem(MultiPoly::constant(1, 1.0)));
  Certificate cert = certify(prob, CertifyOptions{});
  CHECK(cert.level == 0);
  VerifyReport rep = verify_certificate(cert, prob.f, prob.g);
  CHECK(rep.verdict);
}

TEST_CASE("certify rejects nonpositive minima") {
  Problem prob = interval_problem(x_plus(0.0));
  CHECK_THROWS_AS((void)certify(prob, CertifyOptions{}), Error);
}

TEST_CASE("certify perturbation end to end") {
  Problem prob = normalize(halfline_problem(x_plus(4.0)));
  CertifyOptions opts;
  opts.strategy = CertifyStrategy::Perturbation;
  Certificate cert = certify(prob, opts);
  VerifyReport rep = verify_certificate(cert, prob.f, prob.g);
  CHECK(rep.verdict);
  CHECK(rep.residual <= 1e-6 * (1.0 + prob.f.coeff_inf_norm()));
  bool has_lift = false;
  for (const auto& part : cert.parts) has_lift |= part.provenance == "perturbation-lift";
  CHECK(has_lift);
}

TEST_CASE("certify boxchain on ball problems") {
  Problem prob = normalize(interval_problem(x_plus(2.0)));
  CertifyOptions opts;
  opts.strategy = CertifyStrategy::BoxChain;
  Certificate cert = certify(prob, opts);
  VerifyReport rep = verify_certificate(cert, prob.f, prob.g);
  CHECK(rep.verdict);
  bool has_embed = false;
  for (const auto& part : cert.parts) has_embed |= part.provenance == "ball-embedding";
  CHECK(has_embed);

  // n = 2 ball
  MultiPoly f2(2);
  f2.add_term({1, 0}, 1.0);
  f2.add_term({0, 1}, 1.0);
  f2.add_term({0, 0}, 3.0);
  MultiPoly g2(2);
  g2.add_term({0, 0}, 1.0);
  g2.add_term({2, 0}, -1.0);
  g2.add_term({0, 2}, -1.0);
  Problem p2;
  p2.nvars = 2;
  p2.f = f2;
  p2.g = {g2};
  Problem np2 = normalize(p2);
  Certificate cert2 = certify(np2, opts);
  VerifyReport rep2 = verify_certificate(cert2, np2.f, np2.g);
  CHECK(rep2.verdict);
}

TEST_CASE("verify catches tampering and accepts the empty certificate for f = 0") {
  Problem prob = normalize(interval_problem(x_plus(2.0)));
  Certificate cert = certify(prob, CertifyOptions{});
  VerifyReport good = verify_certificate(cert, prob.f, prob.g);
  REQUIRE(good.verdict);

  Certificate tampered = cert;
  for (auto& part : tampered.parts) {
    if (part.kind == CertPart::Kind::Gram) {
      part.gram(0, 0) += 0.1;
      break;
    }
  }
  VerifyReport bad = verify_certificate(tampered, prob.f, prob.g);
  CHECK_FALSE(bad.verdict);
  CHECK(bad.residual >= 0.05);

  Certificate empty;
  empty.nvars = 1;
  VerifyReport z = verify_certificate(empty, MultiPoly(1), prob.g);
  CHECK(z.verdict);
}

TEST_CASE("certificate json round trip") {
  Problem prob = normalize(interval_problem(x_plus(2.0)));
  Certificate cert = certify(prob, CertifyOptions{});
  std::string text = certificate_to_json(cert);
  Certificate back = certificate_from_json(text);
  CHECK(back.level == cert.level);
  CHECK(back.parts.size() == cert.parts.size());
  VerifyReport rep = verify_certificate(back, prob.f, prob.g);
  CHECK(rep.verdict);
}
