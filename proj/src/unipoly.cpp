#include "putinar/unipoly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

namespace putinar {

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

UniPoly UniPoly::cheb_T(int n) {
  require(n >= 0, ErrorKind::InvalidParameter, "T_n needs n >= 0");
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  return UniPoly(Basis::Chebyshev, std::move(c));
}

double UniPoly::eval(double t) const {
  if (c_.empty()) return 0.0;
  if (basis_ == Basis::Monomial) {
    double acc = 0.0;
    for (std::size_t j = c_.size(); j-- > 0;) acc = acc * t + c_[j];
    return acc;
  }
  // Clenshaw
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t j = c_.size(); j-- > 1;) {
    double b = 2.0 * t * b1 - b2 + c_[j];
    b2 = b1;
    b1 = b;
  }
  return t * b1 - b2 + c_[0];
}

UniPoly UniPoly::to_monomial() const {
  if (basis_ == Basis::Monomial) return *this;
  if (c_.empty()) return UniPoly(Basis::Monomial, {});
  int d = degree();
  std::vector<double> out(d + 1, 0.0);
  // build T_j in monomial coefficients incrementally: T_j = 2 x T_{j-1} - T_{j-2}
  std::vector<double> tm2 = {1.0};       // T_0
  std::vector<double> tm1 = {0.0, 1.0};  // T_1
  out[0] += c_[0];
  if (d >= 1) {
    out[0] += 0.0;
    out[1] += c_[1];
  }
  for (int j = 2; j <= d; ++j) {
    std::vector<double> tj(j + 1, 0.0);
    for (int i = 0; i <= j - 1; ++i) tj[i + 1] += 2.0 * tm1[i];
    for (int i = 0; i < static_cast<int>(tm2.size()); ++i) tj[i] -= tm2[i];
    for (int i = 0; i <= j; ++i) out[i] += c_[j] * tj[i];
    tm2 = std::move(tm1);
    tm1 = std::move(tj);
  }
  return UniPoly(Basis::Monomial, std::move(out));
}

UniPoly UniPoly::to_chebyshev() const {
  if (basis_ == Basis::Chebyshev) return *this;
  if (c_.empty()) return UniPoly(Basis::Chebyshev, {});
  // Horner in Chebyshev arithmetic: acc = acc * x + a_j, where multiplication
  // by x in the T-basis is a stable index shift.
  std::vector<double> acc;  // chebyshev coefficients
  for (std::size_t j = c_.size(); j-- > 0;) {
    std::vector<double> nxt(acc.empty() ? 1 : acc.size() + 1, 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      double h = 0.5 * acc[i];
      if (i == 0) {
        nxt[1] += acc[0];
      } else {
        nxt[i + 1] += h;
        nxt[i - 1] += h;
      }
    }
    nxt[0] += c_[j];
    acc = std::move(nxt);
  }
  return UniPoly(Basis::Chebyshev, std::move(acc));
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly(basis_, {});
  int d = degree();
  if (basis_ == Basis::Monomial) {
    std::vector<double> out(d, 0.0);
    for (int j = 1; j <= d; ++j) out[j - 1] = j * c_[j];
    return UniPoly(Basis::Monomial, std::move(out));
  }
  // standard backwards recurrence for Chebyshev derivative coefficients
  std::vector<double> out(d, 0.0);
  std::vector<double> w(d + 2, 0.0);
  for (int j = d; j >= 1; --j) {
    double wj = w[j + 1] + 2.0 * j * c_[j];
    if (j - 1 >= 1)
      out[j - 1] = wj;
    else
      out[0] = 0.5 * wj;
    if (j - 1 >= 0) w[j - 1] = wj;
  }
  return UniPoly(Basis::Chebyshev, std::move(out));
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  require(basis_ == o.basis_ || o.c_.empty() || c_.empty(), ErrorKind::InvalidParameter,
          "basis mismatch in UniPoly +");
  if (c_.empty()) basis_ = o.basis_;
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  UniPoly neg = o;
  neg *= -1.0;
  return *this += neg;
}

UniPoly& UniPoly::operator*=(double s) {
  if (s == 0.0) {
    c_.clear();
    return *this;
  }
  for (double& x : c_) x *= s;
  return *this;
}

UniPoly UniPoly::mul(const UniPoly& o) const {
  if (c_.empty() || o.c_.empty()) return UniPoly(basis_, {});
  require(basis_ == o.basis_, ErrorKind::InvalidParameter, "basis mismatch in UniPoly *");
  if (basis_ == Basis::Monomial) {
    std::vector<double> out(c_.size() + o.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
    return UniPoly(Basis::Monomial, std::move(out));
  }
  // T_i T_j = (T_{i+j} + T_{|i-j|}) / 2
  std::vector<double> out(c_.size() + o.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      double h = 0.5 * c_[i] * o.c_[j];
      out[i + j] += h;
      out[i >= j ? i - j : j - i] += h;
    }
  }
  return UniPoly(Basis::Chebyshev, std::move(out));
}

double UniPoly::coeff_inf_norm() const {
  double m = 0.0;
  for (double x : c_) m = std::max(m, std::abs(x));
  return m;
}

double UniPoly::coeff_one_norm() const {
  double s = 0.0;
  for (double x : c_) s += std::abs(x);
  return s;
}

MultiPoly UniPoly::to_multipoly() const {
  UniPoly m = to_monomial();
  MultiPoly out(1);
  for (int j = 0; j < static_cast<int>(m.c_.size()); ++j)
    if (m.c_[j] != 0.0) out.add_term({j}, m.c_[j]);
  return out;
}

UniPoly UniPoly::from_multipoly(const MultiPoly& p, Basis target) {
  require(p.nvars() == 1, ErrorKind::DimensionMismatch, "from_multipoly needs nvars == 1");
  std::vector<double> c(p.degree() + 1, 0.0);
  for (const auto& [e, v] : p.terms()) c[e[0]] = v;
  UniPoly mono(Basis::Monomial, std::move(c));
  return target == Basis::Monomial ? mono : mono.to_chebyshev();
}

std::vector<std::complex<double>> UniPoly::roots() const {
  int d = degree();
  if (d == 0) return {};
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(d, d);
  if (basis_ == Basis::Monomial) {
    for (int i = 0; i < d; ++i) A(i, d - 1) = -c_[i] / c_[d];
    for (int i = 1; i < d; ++i) A(i, i - 1) = 1.0;
  } else if (d == 1) {
    A(0, 0) = -c_[0] / c_[1];
  } else {
    // colleague matrix (Chebyshev companion analog)
    A(0, 1) = 1.0;
    for (int i = 1; i < d; ++i) {
      A(i, i - 1) = 0.5;
      if (i + 1 < d) A(i, i + 1) = 0.5;
    }
    for (int j = 0; j < d; ++j) A(d - 1, j) -= c_[j] / (2.0 * c_[d]);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(A);
  std::vector<std::complex<double>> out(d);
  for (int i = 0; i < d; ++i) out[i] = es.eigenvalues()(i);
  return out;
}

UniPoly cheb_compose(const UniPoly& h_cheb, const UniPoly& g_cheb) {
  require(h_cheb.basis() == UniPoly::Basis::Chebyshev, ErrorKind::InvalidParameter,
          "cheb_compose: h must be in the Chebyshev basis");
  require(g_cheb.basis() == UniPoly::Basis::Chebyshev, ErrorKind::InvalidParameter,
          "cheb_compose: g must be in the Chebyshev basis");
  const auto& c = h_cheb.coeffs();
  if (c.empty()) return UniPoly(UniPoly::Basis::Chebyshev, {});
  UniPoly two_g = g_cheb;
  two_g *= 2.0;
  UniPoly b1(UniPoly::Basis::Chebyshev, {});
  UniPoly b2(UniPoly::Basis::Chebyshev, {});
  for (std::size_t j = c.size(); j-- > 1;) {
    UniPoly b = two_g.mul(b1);
    b -= b2;
    b += UniPoly::constant(c[j], UniPoly::Basis::Chebyshev);
    b2 = std::move(b1);
    b1 = std::move(b);
  }
  UniPoly out = g_cheb.mul(b1);
  out -= b2;
  out += UniPoly::constant(c[0], UniPoly::Basis::Chebyshev);
  return out;
}

}  // namespace putinar
