#include <cmath>

#include "doctest.h"
#include "putinar/relax.hpp"

using namespace putinar;

namespace {

Problem ball1d(const MultiPoly& f) {
  Problem p;
  p.nvars = 1;
  p.f = f;
  MultiPoly g(1);
  g.add_term({0}, 1.0);
  g.add_term({2}, -1.0);
  p.g = {g};
  return p;
}

MultiPoly x1() {
  MultiPoly p(1);
  p.add_term({1}, 1.0);
  return p;
}

}  // namespace

TEST_CASE("lasserre sos: f = X on the interval") {
  Problem prob = ball1d(x1());
  LasserreSos s = lasserre_sos(prob, 1);
  REQUIRE(s.status == SdpStatus::Optimal);
  CHECK(s.value == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(s.max_residual <= 1e-7);
  for (const auto& part : s.parts) CHECK(part.min_eigenvalue >= -1e-9);
}

TEST_CASE("lasserre sos: f = X^2 and a constant objective") {
  MultiPoly x2(1);
  x2.add_term({2}, 1.0);
  Problem prob = ball1d(x2);
  LasserreSos s = lasserre_sos(prob, 1);
  REQUIRE(s.status == SdpStatus::Optimal);
  CHECK(s.value == doctest::Approx(0.0).epsilon(1e-6).scale(1.0));

  Problem pc = ball1d(MultiPoly::constant(1, 2.0));
  for (int ell : {1, 2, 3})
    CHECK(lasserre_sos(pc, ell).value == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("lasserre mom: f = X gives the dirac at -1") {
  Problem prob = ball1d(x1());
  LasserreMom m = lasserre_mom(prob, 1);
  REQUIRE(m.status == SdpStatus::Optimal);
  CHECK(m.value == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(m.L.mass() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(m.L.value({1}) == doctest::Approx(-1.0).epsilon(1e-5));
  CHECK(m.L.value({2}) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("lasserre mom: f = X^2 gives the dirac at 0") {
  MultiPoly x2(1);
  x2.add_term({2}, 1.0);
  Problem prob = ball1d(x2);
  LasserreMom m = lasserre_mom(prob, 1);
  REQUIRE(m.status == SdpStatus::Optimal);
  CHECK(m.value == doctest::Approx(0.0).epsilon(1e-6).scale(1.0));
  CHECK(m.L.value({1}) == doctest::Approx(0.0).epsilon(1e-4).scale(1.0));
}

TEST_CASE("hierarchy is nondecreasing and sandwiched") {
  // f = X + 2 on the interval: f* = 1 at x = -1
  MultiPoly f = x1() + MultiPoly::constant(1, 2.0);
  Problem prob = ball1d(f);
  double prev = -1e300;
  for (int ell : {1, 2, 3, 4}) {
    LasserreSos s = lasserre_sos(prob, ell);
    LasserreMom m = lasserre_mom(prob, ell);
    REQUIRE(s.status == SdpStatus::Optimal);
    REQUIRE(m.status == SdpStatus::Optimal);
    CHECK(s.value >= prev - 1e-8);
    CHECK(s.value <= m.value + 1e-7);
    CHECK(m.value <= 1.0 + 1e-6);
    prev = s.value;
  }
}

TEST_CASE("qm_feasibility named examples") {
  // 1 - X^2 over its own generator: sigma_1 = 1 works
  MultiPoly g(1);
  g.add_term({0}, 1.0);
  g.add_term({2}, -1.0);
  SosSolve s1 = qm_feasibility(g, {g}, 2);
  CHECK(s1.status == SdpStatus::Optimal);

  // 1 + X = 1/2 (1+X)^2 + 1/2 (1 - X^2)
  MultiPoly t(1);
  t.add_term({0}, 1.0);
  t.add_term({1}, 1.0);
  SosSolve s2 = qm_feasibility(t, {g}, 2);
  CHECK(s2.status == SdpStatus::Optimal);
  CHECK(s2.max_residual <= 1e-7 * (1.0 + t.coeff_inf_norm()));

  // -1 is negative on S: not found at any level
  SosSolve s3 = qm_feasibility(MultiPoly::constant(1, -1.0), {g}, 2);
  CHECK(s3.status != SdpStatus::Optimal);
}

TEST_CASE("chebyshev pipeline agrees with the monomial one") {
  MultiPoly f = x1() + MultiPoly::constant(1, 2.0);
  MultiPoly g(1);
  g.add_term({0}, 0.5);
  g.add_term({2}, -0.5);
  UniPoly fc = UniPoly::from_multipoly(f, UniPoly::Basis::Chebyshev);
  UniPoly gc = UniPoly::from_multipoly(g, UniPoly::Basis::Chebyshev);

  SosSolve mono = qm_optimize(f, {g}, 2);
  SosSolve cheb = qm_optimize_cheb(fc, {gc}, 2);
  REQUIRE(mono.status == SdpStatus::Optimal);
  REQUIRE(cheb.status == SdpStatus::Optimal);
  CHECK(mono.value == doctest::Approx(cheb.value).epsilon(1e-7));
  CHECK(mono.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("gram_to_sos on hand matrices") {
  GramCertificatePart part;
  part.basis.monos = {{0}, {1}};
  part.gram = Eigen::MatrixXd::Identity(2, 2);
  SosDecomposition d1 = gram_to_sos(part, 1);
  CHECK(d1.squares.size() == 2);
  CHECK(d1.reconstruction_residual <= 1e-12);

  part.gram.resize(2, 2);
  part.gram << 1.0, 1.0, 1.0, 1.0;
  SosDecomposition d2 = gram_to_sos(part, 1);
  REQUIRE(d2.squares.size() == 1);
  MultiPoly sq = d2.squares[0].mul(d2.squares[0]);  // (1 + T)^2
  CHECK(sq.coeff({0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sq.coeff({1}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sq.coeff({2}) == doctest::Approx(1.0).epsilon(1e-12));

  part.gram << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS((void)gram_to_sos(part, 1), Error);
}

TEST_CASE("2-variable known minimum is exact at level 2") {
  // f = (X1 - 0.3)^2 + (X2 + 0.2)^2 on the unit ball, f* = 0 inside
  MultiPoly f(2);
  f.add_term({2, 0}, 1.0);
  f.add_term({1, 0}, -0.6);
  f.add_term({0, 2}, 1.0);
  f.add_term({0, 1}, 0.4);
  f.add_term({0, 0}, 0.09 + 0.04);
  MultiPoly g(2);
  g.add_term({0, 0}, 1.0);
  g.add_term({2, 0}, -1.0);
  g.add_term({0, 2}, -1.0);
  Problem prob;
  prob.nvars = 2;
  prob.f = f;
  prob.g = {g};
  LasserreSos s = lasserre_sos(prob, 2);
  REQUIRE(s.status == SdpStatus::Optimal);
  CHECK(s.value == doctest::Approx(0.0).epsilon(1e-6).scale(1.0));
  LasserreMom m = lasserre_mom(prob, 2);
  REQUIRE(m.status == SdpStatus::Optimal);
  CHECK(m.value >= s.value - 1e-7);
  CHECK(m.L.value({1, 0}) == doctest::Approx(0.3).epsilon(1e-4));
  CHECK(m.L.value({0, 1}) == doctest::Approx(-0.2).epsilon(1e-4));
}

TEST_CASE("ell0 witness for the normalized interval pair") {
  // g1 = X/2, g2 = (1 - X^2)/2
  MultiPoly g1(1);
  g1.add_term({1}, 0.5);
  MultiPoly g2(1);
  g2.add_term({0}, 0.5);
  g2.add_term({2}, -0.5);
  Ell0Witness w = find_ell0_witness({g1, g2}, 8);
  CHECK(w.level == 2);
  CHECK(w.certs.size() == 2);
  for (const auto& c : w.certs) CHECK(c.max_residual <= 1e-7);
}
