#include <cmath>

#include "doctest.h"
#include "putinar/bounds.hpp"
#include "putinar/sampling.hpp"

using namespace putinar;

namespace {

BoundInputs example_inputs() {
  BoundInputs in;
  in.n = 2;
  in.r = 1;
  in.c = 1.0;
  in.L = 1.0;
  in.d_g = 2;
  in.d_f = 2;
  in.epsilon_f = 1.0 / 3.0;
  return in;
}

BoundInputs random_inputs(Rng& rng) {
  BoundInputs in;
  in.n = 2 + static_cast<int>(rng.uniform(0.0, 2.999));
  in.r = 1 + static_cast<int>(rng.uniform(0.0, 3.999));
  in.d_g = 1 + static_cast<int>(rng.uniform(0.0, 3.999));
  in.d_f = 1 + static_cast<int>(rng.uniform(0.0, 5.999));
  in.epsilon_f = rng.uniform(0.02, 1.0);
  in.L = 1.0 + rng.uniform(0.0, 2.0);
  in.c = 1.0 + rng.uniform(0.0, 4.0);
  in.norm_f = rng.uniform(0.5, 10.0);
  in.t = 1 + static_cast<int>(rng.uniform(0.0, 3.999));
  in.epsilon = rng.uniform(0.05, 0.5);
  in.ell = rng.uniform(1.0, 1e6);
  return in;
}

}  // namespace

TEST_CASE("putinar simplified example value") {
  BoundInputs in = example_inputs();
  CHECK(putinar_bound_simplified(in) == doctest::Approx(1019215872.0).epsilon(1e-12));

  // epsilon = 1 removes the epsilon factor
  in.epsilon_f = 1.0;
  CHECK(putinar_bound_simplified(in) ==
        doctest::Approx(8.0 * 1024.0 * 4.0 * 128.0).epsilon(1e-12));

  // doubling d_f multiplies by 2^{3.5 n L}
  BoundInputs in2 = example_inputs();
  double base = putinar_bound_simplified(in2);
  in2.d_f *= 2;
  CHECK(putinar_bound_simplified(in2) ==
        doctest::Approx(base * std::pow(2.0, 3.5 * 2.0)).epsilon(1e-12));
}

TEST_CASE("putinar sharp example and dominance") {
  BoundInputs in = example_inputs();
  CHECK(putinar_bound_sharp(in) == doctest::Approx(154336512.46271384).epsilon(1e-10));
  CHECK(putinar_bound_sharp(in) <= putinar_bound_simplified(in));

  Rng rng(314);
  for (int rep = 0; rep < 100; ++rep) {
    BoundInputs r = random_inputs(rng);
    CHECK(putinar_bound_sharp(r) <= putinar_bound_simplified(r) * (1.0 + 1e-12));
  }
}

TEST_CASE("weierstrass bound consistency with the putinar shape") {
  Rng rng(217);
  for (int rep = 0; rep < 50; ++rep) {
    BoundInputs in = random_inputs(rng);
    // weierstrass(eps) equals putinar_simplified at eps_f = eps/(3||f||)
    BoundInputs put = in;
    put.epsilon_f = in.epsilon / (3.0 * in.norm_f);
    if (put.epsilon_f > 1.0) continue;
    CHECK(weierstrass_bound(in) ==
          doctest::Approx(putinar_bound_simplified(put)).epsilon(1e-9));
  }
  // boundary case eps = ||f||: the eps and norm factors cancel
  BoundInputs in = example_inputs();
  in.norm_f = 2.0;
  in.epsilon = 2.0;
  double expect = std::pow(3.0, 2.5 * 2.0) * gamma_prefactor(in) * std::pow(2.0, 3.5 * 2.0);
  CHECK(weierstrass_bound(in) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("lasserre gap bound shape") {
  BoundInputs in = example_inputs();
  in.norm_f = 1.0;
  in.ell = 1e6;
  double v1 = lasserre_gap_bound(in);
  in.ell = 1e8;
  double v2 = lasserre_gap_bound(in);
  CHECK(v2 < v1);  // gap -> 0 as ell -> infinity
  in.norm_f = 2.0;
  CHECK(lasserre_gap_bound(in) == doctest::Approx(2.0 * v2).epsilon(1e-12));
}

TEST_CASE("moment bound example and monotonicity") {
  BoundInputs in;
  in.n = 2;
  in.r = 1;
  in.L = 1.0;
  in.c = 1.0;
  in.d_g = 1;
  in.t = 1;
  in.epsilon = 0.5;
  MomentBound mb = moment_bound(in);
  double gamma = gamma_prefactor(in);
  CHECK(mb.ell == doctest::Approx(gamma * 60466176.0).epsilon(1e-12));
  CHECK(mb.side_condition == doctest::Approx(2.0));

  BoundInputs t2 = in;
  t2.t = 2;
  CHECK(moment_bound(t2).ell > mb.ell);
  BoundInputs e2 = in;
  e2.epsilon = 0.25;
  CHECK(moment_bound(e2).ell > mb.ell);
}

TEST_CASE("laurent-slot constant and bound") {
  const double pi = std::acos(-1.0);
  CHECK(laurent_slot_C(2, 3) == doctest::Approx(2.0 * pi * pi * 9.0 * 16.0 * 8.0).epsilon(1e-14));
  CHECK(laurent_slot_bound(1, 1, 1.0, 1.0) == doctest::Approx(pi * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(laurent_slot_bound(2, 3, 0.5, 4.0) ==
        doctest::Approx(std::sqrt(laurent_slot_C(2, 3) * 3.5 / 0.5)).epsilon(1e-14));
}

TEST_CASE("nie and schweighofer comparison shapes") {
  BoundInputs in = example_inputs();
  double ratio = 4.0 * std::pow(2.0, 2) / in.epsilon_f;  // d^2 n^d / eps
  CHECK(nie_bound(in) == doctest::Approx(std::exp(ratio)).epsilon(1e-12));
  CHECK(schweighofer_bound(in) == doctest::Approx(4.0 * (1.0 + ratio)).epsilon(1e-12));
  CHECK(nie_bound(in) >= schweighofer_bound(in));

  BoundInputs worse = in;
  worse.epsilon_f = in.epsilon_f / 2.0;  // larger ||f||_X / f*
  CHECK(nie_bound(worse) > nie_bound(in));
  CHECK(schweighofer_bound(worse) > schweighofer_bound(in));
}

TEST_CASE("loja worst case values") {
  CHECK(loja_worst_case(2, 1, 2) == doctest::Approx(162.0));
  CHECK(loja_worst_case(1, 1, 1) == doctest::Approx(3.0));
  CHECK(loja_worst_case(1, 1, 3) == doctest::Approx(45.0));
}

TEST_CASE("monotone directions by finite sampling") {
  Rng rng(555);
  for (int rep = 0; rep < 60; ++rep) {
    BoundInputs in = random_inputs(rng);
    BoundInputs worse = in;
    worse.epsilon_f = in.epsilon_f * 0.5;
    CHECK(putinar_bound_simplified(worse) >= putinar_bound_simplified(in));
    CHECK(putinar_bound_sharp(worse) >= putinar_bound_sharp(in));
    BoundInputs bigger_d = in;
    bigger_d.d_f = in.d_f + 1;
    CHECK(putinar_bound_simplified(bigger_d) >= putinar_bound_simplified(in));
    BoundInputs bigger_c = in;
    bigger_c.c = in.c + 1.0;
    CHECK(putinar_bound_simplified(bigger_c) >= putinar_bound_simplified(in));
    BoundInputs deeper = in;
    deeper.ell = in.ell * 10.0;
    CHECK(lasserre_gap_bound(deeper) <= lasserre_gap_bound(in));
  }
}

TEST_CASE("input validation") {
  BoundInputs bad = example_inputs();
  bad.epsilon_f = 0.0;
  CHECK_THROWS_AS((void)putinar_bound_simplified(bad), Error);
  bad = example_inputs();
  bad.L = 0.5;
  CHECK_THROWS_AS((void)putinar_bound_sharp(bad), Error);
  CHECK_THROWS_AS((void)evaluate_bound("no_such_formula", example_inputs()), Error);
}

TEST_CASE("weighted coefficient norm") {
  // f = X1^2: weight 2!/ (2!) = ... alpha!/(|alpha|!) = 2/2 = 1... weights:
  // |alpha|!/alpha! is the multinomial; the stored coefficient divides by it
  MultiPoly f(2);
  f.add_term({1, 1}, 4.0);  // multinomial 2!/1!1! = 2, coefficient in weighted basis = 2
  CHECK(weighted_coeff_norm(f) == doctest::Approx(2.0).epsilon(1e-14));
  f.add_term({3, 0}, 12.0);  // multinomial 1 -> 12
  CHECK(weighted_coeff_norm(f) == doctest::Approx(12.0).epsilon(1e-14));
}
