#pragma once

#include <array>

#include "putinar/unipoly.hpp"

namespace putinar {

// C^2 cubic-spline step on [-1,1]: equals 1 on [-1,-delta], descends through
// three cubic pieces on [-delta, 0], equals 1/k on [0,1]. Non-increasing.
class SplineEchelon {
 public:
  SplineEchelon(double delta, double k);

  double delta() const { return delta_; }
  double k() const { return k_; }
  double eval(double t) const;
  double eval_d1(double t) const;
  double eval_d2(double t) const;

  // 216 (k-1) / (delta^3 k): total variation of the piecewise constant H'''
  double total_variation() const;

  // interior breakpoints: -delta, -2delta/3, -delta/3, 0
  std::array<double, 4> breakpoints() const;

 private:
  int piece(double t) const;
  double delta_;
  double k_;
  // cubic coefficients per piece, ascending powers
  std::array<std::array<double, 4>, 5> c_;
};

// Chebyshev approximation h_{k,m} of the spline, with the degree picked so the
// bounded-variation bound gives sup error <= 1/k.
struct EchelonPoly {
  UniPoly h;  // Chebyshev basis
  double k = 0.0;
  int m = 0;
  double delta = 0.0;
  double sup_error_estimate = 0.0;
};

// m = ceil( (6/delta) * cbrt(4(k-1)/(3 pi)) + 3 )
int echelon_degree(double delta, double k);

SplineEchelon build_spline(double delta, double k);

// Chebyshev projection of H at degree m via Clenshaw-Curtis style quadrature
// (8m nodes); the 1/k guarantee is validated a posteriori on a dense sample.
EchelonPoly build_echelon(double delta, double k);

}  // namespace putinar
