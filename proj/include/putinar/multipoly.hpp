#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "putinar/errors.hpp"

namespace putinar {

using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

// Graded lexicographic: total degree first, ties broken lexicographically.
struct GradedLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

// Sparse multivariate polynomial over double coefficients.
// Terms map exponent vectors (all of length nvars) to nonzero coefficients.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, double, GradedLexLess>;

  MultiPoly() : nvars_(0) {}
  explicit MultiPoly(int nvars) : nvars_(nvars) {
    require(nvars >= 0, ErrorKind::InvalidParameter, "nvars must be >= 0");
  }

  static MultiPoly constant(int nvars, double c);
  static MultiPoly variable(int nvars, int index, double coef = 1.0);
  static MultiPoly monomial(Exponents exp, double coef);

  int nvars() const { return nvars_; }
  int degree() const;  // 0 for the zero polynomial
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  double coeff(const Exponents& e) const;
  void set_coeff(const Exponents& e, double c);
  void add_term(const Exponents& e, double c);

  double eval(std::span<const double> x) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(double s);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, double s) { return a *= s; }
  friend MultiPoly operator*(double s, MultiPoly a) { return a *= s; }
  friend MultiPoly operator-(MultiPoly a) { return a *= -1.0; }

  MultiPoly mul(const MultiPoly& o, std::size_t term_cap = kDefaultTermCap) const;
  MultiPoly derivative(int var) const;
  std::vector<MultiPoly> gradient() const;

  // Max |coefficient| and sum of |coefficients|.
  double coeff_inf_norm() const;
  double coeff_one_norm() const;
  double coeff_two_norm() const;

  // Drops terms with |c| <= tol (absolute).
  MultiPoly pruned(double tol = 0.0) const;

  std::string to_string() const;

  static constexpr std::size_t kDefaultTermCap = 10'000'000;

 private:
  int nvars_;
  TermMap terms_;
};

// h(g) for univariate h given by monomial coefficients, evaluated by Horner in g.
MultiPoly compose_monomial_coeffs(std::span<const double> h_coeffs, const MultiPoly& g,
                                  std::size_t term_cap = MultiPoly::kDefaultTermCap);

}  // namespace putinar
