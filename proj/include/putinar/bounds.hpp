#pragma once

#include <string>

#include "putinar/multipoly.hpp"

namespace putinar {

// Inputs shared by the degree-bound calculators. All outputs are
// constant-free shapes: every O(.) constant is set to 1.
struct BoundInputs {
  int n = 2;          // variables
  int r = 1;          // constraints
  int d_g = 1;        // max deg g_i
  int d_f = 1;        // deg f
  double epsilon_f = 1.0;  // f*/||f||, in (0,1]
  double L = 1.0;     // Lojasiewicz exponent
  double c = 1.0;     // Lojasiewicz constant
  double norm_f = 1.0;
  int t = 1;          // moment truncation
  double epsilon = 0.5;    // target accuracy
  double ell = 1.0;   // hierarchy level

  void validate() const;
};

// constant-free prefactor gamma(n, g) = n^3 2^{5nL} r^n c^{2n} d_g^n
double gamma_prefactor(const BoundInputs& in);

double putinar_bound_simplified(const BoundInputs& in);
double putinar_bound_sharp(const BoundInputs& in);
double weierstrass_bound(const BoundInputs& in);
double lasserre_gap_bound(const BoundInputs& in);

struct MomentBound {
  double ell = 0.0;
  double side_condition = 0.0;  // 2t + ell0 lower bound, ell0 approximated by 0 here
};
MomentBound moment_bound(const BoundInputs& in, int ell0 = 0);

double laurent_slot_C(int n, int d);
double laurent_slot_bound(int n, int d, double p_min, double p_max);

double nie_bound(const BoundInputs& in, double c_free = 1.0);
double schweighofer_bound(const BoundInputs& in, double c_free = 1.0);

double loja_worst_case(int n, int r, int d_g);

// max norm of the coefficients in the weighted monomial basis
// { |alpha|!/(alpha_1! ... alpha_n!) X^alpha }, used by the comparison bounds
double weighted_coeff_norm(const MultiPoly& f);

double binomial(int n, int k);

// name -> calculator dispatch for the CLI; returns value and a shape string
struct BoundEval {
  double value = 0.0;
  std::string shape;
};
BoundEval evaluate_bound(const std::string& formula, const BoundInputs& in);

}  // namespace putinar
