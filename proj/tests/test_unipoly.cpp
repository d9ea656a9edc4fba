#include <cmath>

#include "doctest.h"
#include "putinar/sampling.hpp"
#include "putinar/unipoly.hpp"

using namespace putinar;

TEST_CASE("chebyshev evaluation matches cos(n arccos)") {
  for (int n : {0, 1, 2, 5, 17, 120}) {
    UniPoly t = UniPoly::cheb_T(n);
    for (double x : {-1.0, -0.3, 0.0, 0.5, 0.99, 1.0}) {
      double ref = std::cos(n * std::acos(x));
      CHECK(t.eval(x) == doctest::Approx(ref).epsilon(1e-11));
    }
  }
}

TEST_CASE("basis round trip: dense monomial coefficients") {
  // the basis change conditions like (1+sqrt(2))^deg, so dense random
  // coefficients only round-trip at 1e-12 up to moderate degree
  Rng rng(11);
  for (int deg : {5, 12, 24}) {
    std::vector<double> c(deg + 1);
    for (double& v : c) v = rng.uniform(-1.0, 1.0);
    UniPoly p(UniPoly::Basis::Monomial, c);
    UniPoly back = p.to_chebyshev().to_monomial();
    REQUIRE(back.degree() == deg);
    double scale = p.coeff_inf_norm();
    for (int i = 0; i <= deg; ++i)
      CHECK(back.coeffs()[i] == doctest::Approx(c[i]).epsilon(1e-12).scale(scale));
  }
}

TEST_CASE("conversion preserves values at degree 300") {
  Rng rng(19);
  std::vector<double> c(301);
  for (double& v : c) v = rng.uniform(-1.0, 1.0);
  UniPoly p(UniPoly::Basis::Monomial, c);
  UniPoly q = p.to_chebyshev();
  double scale = 0.0;
  for (int i = 0; i <= 600; ++i) scale = std::max(scale, std::abs(p.eval(-1.0 + i / 300.0)));
  for (int i = 0; i <= 600; ++i) {
    double x = -1.0 + i / 300.0;
    CHECK(q.eval(x) == doctest::Approx(p.eval(x)).epsilon(1e-12).scale(scale));
  }
}

TEST_CASE("basis round trip: chebyshev start with summable coefficients") {
  // coefficient decay inside the monomial-convergence disk keeps the
  // monomial detour representable in doubles
  Rng rng(13);
  for (int deg : {10, 80, 300}) {
    std::vector<double> c(deg + 1);
    double w = 1.0;
    for (int i = 0; i <= deg; ++i) {
      c[i] = w * rng.uniform(-1.0, 1.0);
      w *= 0.15;
    }
    UniPoly p(UniPoly::Basis::Chebyshev, c);
    UniPoly back = p.to_monomial().to_chebyshev();
    for (int i = 0; i <= std::min(deg, back.degree()); ++i)
      CHECK(back.coeffs()[i] == doctest::Approx(c[i]).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("chebyshev product rule") {
  // T_2 * T_3 = (T_5 + T_1) / 2
  UniPoly p = UniPoly::cheb_T(2).mul(UniPoly::cheb_T(3));
  CHECK(p.coeffs()[5] == doctest::Approx(0.5));
  CHECK(p.coeffs()[1] == doctest::Approx(0.5));
  for (double x : {-0.7, 0.1, 0.9})
    CHECK(p.eval(x) ==
          doctest::Approx(UniPoly::cheb_T(2).eval(x) * UniPoly::cheb_T(3).eval(x)).epsilon(1e-12));
}

TEST_CASE("chebyshev derivative") {
  // d/dx T_3 = 3 U_2 = 3 (4x^2 - 1)
  UniPoly d = UniPoly::cheb_T(3).derivative();
  for (double x : {-0.9, -0.2, 0.4, 1.0})
    CHECK(d.eval(x) == doctest::Approx(3.0 * (4.0 * x * x - 1.0)).epsilon(1e-12));
}

TEST_CASE("cheb_compose tracks pointwise composition") {
  Rng rng(23);
  for (int rep = 0; rep < 25; ++rep) {
    int dh = 2 + rep % 30;
    std::vector<double> hc(dh + 1);
    for (double& v : hc) v = rng.uniform(-1.0, 1.0);
    UniPoly h(UniPoly::Basis::Chebyshev, hc);
    // g maps [-1,1] into [-1/2, 1/2]
    UniPoly g(UniPoly::Basis::Chebyshev, {0.0, 0.25, 0.25});
    UniPoly comp = cheb_compose(h, g);
    for (double x : {-1.0, -0.31, 0.2, 0.77, 1.0})
      CHECK(comp.eval(x) == doctest::Approx(h.eval(g.eval(x))).epsilon(1e-10));
  }
}

TEST_CASE("roots via companion and colleague matrices") {
  UniPoly mono(UniPoly::Basis::Monomial, {-6.0, 11.0, -6.0, 1.0});  // (x-1)(x-2)(x-3)
  auto r1 = mono.roots();
  std::vector<double> got;
  for (auto z : r1) {
    CHECK(std::abs(z.imag()) < 1e-8);
    got.push_back(z.real());
  }
  std::sort(got.begin(), got.end());
  CHECK(got[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(got[1] == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(got[2] == doctest::Approx(3.0).epsilon(1e-8));

  // Chebyshev basis: T_4 has roots cos((2k+1)pi/8)
  auto r2 = UniPoly::cheb_T(4).roots();
  std::vector<double> got2;
  for (auto z : r2) got2.push_back(z.real());
  std::sort(got2.begin(), got2.end());
  const double pi = std::acos(-1.0);
  std::vector<double> want;
  for (int k = 3; k >= 0; --k) want.push_back(std::cos((2 * k + 1) * pi / 8));
  std::sort(want.begin(), want.end());
  for (int i = 0; i < 4; ++i) CHECK(got2[i] == doctest::Approx(want[i]).epsilon(1e-9));
}
