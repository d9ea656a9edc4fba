#pragma once

#include <complex>
#include <span>
#include <vector>

#include "putinar/multipoly.hpp"

namespace putinar {

// Univariate polynomial in either the monomial or the Chebyshev (first kind) basis.
// The basis tag determines the evaluation rule; coefficients are dense, index = degree.
class UniPoly {
 public:
  enum class Basis { Monomial, Chebyshev };

  UniPoly() : basis_(Basis::Monomial) {}
  UniPoly(Basis basis, std::vector<double> coeffs) : basis_(basis), c_(std::move(coeffs)) {
    trim();
  }

  static UniPoly constant(double v, Basis basis = Basis::Monomial) { return UniPoly(basis, {v}); }
  static UniPoly cheb_T(int n);  // T_n in the Chebyshev basis

  Basis basis() const { return basis_; }
  int degree() const { return c_.empty() ? 0 : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<double>& coeffs() const { return c_; }

  double eval(double t) const;  // Horner or Clenshaw depending on basis

  UniPoly to_monomial() const;
  UniPoly to_chebyshev() const;

  UniPoly derivative() const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(double s);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, double s) { return a *= s; }
  friend UniPoly operator*(double s, UniPoly a) { return a *= s; }

  UniPoly mul(const UniPoly& o) const;

  double coeff_inf_norm() const;
  double coeff_one_norm() const;

  MultiPoly to_multipoly() const;  // as an nvars=1 polynomial (converts to monomial basis)
  static UniPoly from_multipoly(const MultiPoly& p, Basis target = Basis::Monomial);

  // Roots via the companion (monomial) or colleague (Chebyshev) matrix.
  std::vector<std::complex<double>> roots() const;

 private:
  void trim();
  Basis basis_;
  std::vector<double> c_;
};

// Composition h(g) where h is univariate in the Chebyshev basis and g is a
// univariate polynomial whose values on the evaluation domain lie in [-1,1].
// Runs Clenshaw's recurrence in Chebyshev-basis polynomial arithmetic, which
// keeps every intermediate bounded on [-1,1]; no monomial conversion happens.
UniPoly cheb_compose(const UniPoly& h_cheb, const UniPoly& g_cheb);

}  // namespace putinar
