#include <cmath>

#include "doctest.h"
#include "putinar/bounds.hpp"
#include "putinar/moments.hpp"
#include "putinar/relax.hpp"
#include "putinar/sampling.hpp"

using namespace putinar;

namespace {

Problem interval_problem() {
  Problem p;
  p.nvars = 1;
  p.f = MultiPoly::constant(1, 1.0);
  MultiPoly g(1);
  g.add_term({0}, 1.0);
  g.add_term({2}, -1.0);
  p.g = {g};
  return p;
}

Problem disk_problem() {
  Problem p;
  p.nvars = 2;
  p.f = MultiPoly::constant(2, 1.0);
  MultiPoly g(2);
  g.add_term({0, 0}, 1.0);
  g.add_term({2, 0}, -1.0);
  g.add_term({0, 2}, -1.0);
  p.g = {g};
  return p;
}

}  // namespace

TEST_CASE("dirac moments and truncation") {
  double zero[] = {0.0};
  PseudoMomentSeq d0 = dirac_moments(zero, 4);
  CHECK(d0.mass() == 1.0);
  for (std::size_t i = 1; i < d0.values.size(); ++i) CHECK(d0.values[i] == 0.0);

  double minus1[] = {-1.0};
  PseudoMomentSeq dm = dirac_moments(minus1, 2);
  CHECK(dm.value({0}) == 1.0);
  CHECK(dm.value({1}) == -1.0);
  CHECK(dm.value({2}) == 1.0);

  PseudoMomentSeq t = d0.truncate(2);
  CHECK(t.degree == 2);
  CHECK(t.values.size() == 3);
  // truncate is idempotent: truncating twice equals truncating to the min
  PseudoMomentSeq t2 = d0.truncate(3).truncate(2);
  CHECK(t2.values == t.values);
  PseudoMomentSeq same = d0.truncate(4);
  CHECK(same.values == d0.values);
}

TEST_CASE("moment matrix structure") {
  double minus1[] = {-1.0};
  MomentMatrix M = moment_matrix(dirac_moments(minus1, 2), 1);
  CHECK(M.H(0, 0) == 1.0);
  CHECK(M.H(0, 1) == -1.0);
  CHECK(M.H(1, 0) == -1.0);
  CHECK(M.H(1, 1) == 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M.H);
  CHECK(es.eigenvalues().minCoeff() >= -1e-14);

  // uniform measure on [-1,1], k = 1: diag(1, 1/3)
  PseudoMomentSeq u = PseudoMomentSeq::zeros(1, 2);
  u.values[0] = 1.0;
  u.values[1] = 0.0;
  u.values[2] = 1.0 / 3.0;
  MomentMatrix Mu = moment_matrix(u, 1);
  CHECK(Mu.H(0, 0) == doctest::Approx(1.0));
  CHECK(Mu.H(1, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(Mu.H(0, 1) == doctest::Approx(0.0).scale(1.0));

  PseudoMomentSeq z = PseudoMomentSeq::zeros(1, 2);
  CHECK(moment_matrix(z, 1).H.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("trace and norm bounds on named functionals") {
  double zero[] = {0.0};
  PseudoMomentSeq d0 = dirac_moments(zero, 4);
  TraceBoundReport r = trace_bound_check(d0, 2, 1.0);
  CHECK(r.trace == doctest::Approx(1.0));
  CHECK(r.trace_bound == doctest::Approx(3.0));
  CHECK(r.norm2 == doctest::Approx(1.0));
  CHECK(r.norm_bound == doctest::Approx(std::sqrt(3.0) * 3.0));
  CHECK(r.holds);

  TraceBoundReport r0 = trace_bound_check(d0.truncate(0), 0, 1.0);
  CHECK(r0.trace == doctest::Approx(1.0));
  CHECK(r0.trace_bound == doctest::Approx(1.0));
  CHECK(r0.holds);
}

TEST_CASE("trace bound on solver-produced functionals") {
  Problem p = interval_problem();
  MultiPoly obj(1);
  obj.add_term({1}, 1.0);
  obj.add_term({2}, 0.3);
  MomSolve sol = mom_optimize(obj, p.g, 4);
  REQUIRE(sol.status == SdpStatus::Optimal);
  TraceBoundReport r = trace_bound_check(sol.L, 2, 1.0);
  CHECK(r.holds);
}

TEST_CASE("generating section checker") {
  PseudoMomentSeq z = PseudoMomentSeq::zeros(1, 4);
  CHECK(generating_section_check(z, 4).holds);  // zero functional

  double half[] = {0.5};
  PseudoMomentSeq d = dirac_moments(half, 4);
  GenSectionReport r = generating_section_check(d, 4);
  CHECK(r.vacuous);  // mass 1, nothing to check
  CHECK(r.holds);

  // mass pinned to zero on the solver side collapses the truncation
  Problem p = interval_problem();
  MultiPoly obj(1);
  obj.add_term({4}, -1.0);
  MomSolveOptions mo;
  mo.mass = 0.0;
  mo.trace_one = false;
  MomSolve sol = mom_optimize(obj, p.g, 4, mo);
  if (sol.status == SdpStatus::Optimal) {
    GenSectionReport g = generating_section_check(sol.L, 4);
    CHECK(g.holds);
  }
}

TEST_CASE("norm comparison lemma") {
  MultiPoly one = MultiPoly::constant(1, 1.0);
  NormComparisonReport r1 = norm_comparison_check(one, 2);
  CHECK(r1.holds);
  CHECK(r1.bound == doctest::Approx(std::sqrt(3.0)));

  // f = 1 + X + X^2: ||f|| = 3, sqrt(3) * sqrt(3) = 3, near-tight
  MultiPoly f(1);
  f.add_term({0}, 1.0);
  f.add_term({1}, 1.0);
  f.add_term({2}, 1.0);
  NormComparisonReport r2 = norm_comparison_check(f, 2);
  CHECK(r2.holds);
  CHECK(r2.max_norm_lower == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(r2.bound == doctest::Approx(3.0).epsilon(1e-12));

  Rng rng(31);
  for (int rep = 0; rep < 25; ++rep) {
    MultiPoly q(2);
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; a + b <= 2; ++b) q.add_term({a, b}, rng.uniform(-1.0, 1.0));
    CHECK(norm_comparison_check(q, 2).holds);
  }
}

TEST_CASE("nnls simplex projection") {
  // project onto the hull of three points in the plane
  Eigen::MatrixXd V(2, 3);
  V << 0.0, 1.0, 0.0, 0.0, 0.0, 1.0;
  Eigen::VectorXd inside(2);
  inside << 0.25, 0.25;
  NnlsResult rin = nnls_project(V, inside, true);
  CHECK(rin.residual <= 1e-10);

  Eigen::VectorXd outside(2);
  outside << 1.0, 1.0;  // distance to the segment x + y = 1 is sqrt(2)/2
  NnlsResult rout = nnls_project(V, outside, true);
  CHECK(rout.residual == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));

  // cone variant can scale up and reach the target
  NnlsResult rcone = nnls_project(V, outside, false);
  CHECK(rcone.residual <= 1e-10);
}

TEST_CASE("univariate hausdorff exactness at degree-2 truncation") {
  Problem p = interval_problem();
  HausdorffOptions opts;
  opts.t = 1;
  opts.levels = {2};
  opts.s_samples = 2001;
  auto pts = hausdorff_estimate(p, opts);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].dist_lower <= 1e-6);
}

TEST_CASE("hausdorff distance is nonincreasing in the level") {
  Problem p = disk_problem();
  HausdorffOptions opts;
  opts.t = 1;
  opts.levels = {2, 4, 6};
  opts.s_samples = 900;
  opts.objectives = 8;
  auto pts = hausdorff_estimate(p, opts);
  REQUIRE(pts.size() == 3);
  CHECK(pts[1].dist_lower <= pts[0].dist_lower + 1e-8);
  CHECK(pts[2].dist_lower <= pts[1].dist_lower + 1e-8);
  for (const auto& hp : pts) CHECK(hp.bound_shape > 0.0);
}

TEST_CASE("hull points satisfy the solver-side feasibility checks") {
  Problem p = interval_problem();
  Rng rng(5);
  for (int rep = 0; rep < 40; ++rep) {
    double x[] = {rng.uniform(-1.0, 1.0)};
    PseudoMomentSeq d = dirac_moments(x, 4);
    MomentMatrix M = moment_matrix(d, 2);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M.H);
    CHECK(es.eigenvalues().minCoeff() >= -1e-8);
    // localizing matrix for 1 - X^2 at order 1
    Eigen::MatrixXd L(2, 2);
    L(0, 0) = d.value({0}) - d.value({2});
    L(0, 1) = L(1, 0) = d.value({1}) - d.value({3});
    L(1, 1) = d.value({2}) - d.value({4});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> el(L);
    CHECK(el.eigenvalues().minCoeff() >= -1e-8);
  }
}

TEST_CASE("tube membership") {
  Problem p = interval_problem();
  double half[] = {0.5};
  PseudoMomentSeq measure = dirac_moments(half, 4);
  TubeReport r0 = tube_membership(p, measure, 4, 0.0);
  CHECK(r0.holds);  // a measure pairs nonnegatively with pos(S)

  MomSolve sol = mom_optimize(MultiPoly::constant(1, 1.0), p.g, 4);
  REQUIRE(sol.status == SdpStatus::Optimal);
  TubeReport r1 = tube_membership(p, sol.L, 4, 1e-6);
  CHECK(r1.holds);

  PseudoMomentSeq wild = PseudoMomentSeq::zeros(1, 2);
  wild.values = {1.0, -5.0, 4.0};  // not a measure truncation
  TubeReport r2 = tube_membership(p, wild, 2, 1e6);
  CHECK(r2.holds);  // huge epsilon makes the tube trivial
}
