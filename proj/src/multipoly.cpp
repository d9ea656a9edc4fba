#include "putinar/multipoly.hpp"

#include <cmath>
#include <sstream>

namespace putinar {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::InvalidConstraint: return "InvalidConstraint";
    case ErrorKind::NonArchimedeanDeclared: return "NonArchimedeanDeclared";
    case ErrorKind::EmptySetSuspected: return "EmptySetSuspected";
    case ErrorKind::NonPositiveMinimum: return "NonPositiveMinimum";
    case ErrorKind::ApproximationFailure: return "ApproximationFailure";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::NotPsd: return "NotPsd";
    case ErrorKind::NotNonnegative: return "NotNonnegative";
    case ErrorKind::MinCheckFailed: return "MinCheckFailed";
    case ErrorKind::InfeasibleAtLevel: return "InfeasibleAtLevel";
    case ErrorKind::CertificateAssemblyMismatch: return "CertificateAssemblyMismatch";
    case ErrorKind::UnsupportedGeneratorForm: return "UnsupportedGeneratorForm";
    case ErrorKind::EmptyA: return "EmptyA";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "UnknownError";
}

MultiPoly MultiPoly::constant(int nvars, double c) {
  MultiPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int index, double coef) {
  require(index >= 0 && index < nvars, ErrorKind::InvalidParameter, "variable index out of range");
  MultiPoly p(nvars);
  Exponents e(nvars, 0);
  e[index] = 1;
  p.add_term(e, coef);
  return p;
}

MultiPoly MultiPoly::monomial(Exponents exp, double coef) {
  MultiPoly p(static_cast<int>(exp.size()));
  p.add_term(std::move(exp), coef);
  return p;
}

int MultiPoly::degree() const {
  if (terms_.empty()) return 0;
  // graded order: the last term has max total degree
  return total_degree(terms_.rbegin()->first);
}

double MultiPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0.0 : it->second;
}

void MultiPoly::set_coeff(const Exponents& e, double c) {
  require(static_cast<int>(e.size()) == nvars_, ErrorKind::DimensionMismatch,
          "exponent length != nvars");
  if (c == 0.0) {
    terms_.erase(e);
  } else {
    terms_[e] = c;
  }
}

void MultiPoly::add_term(const Exponents& e, double c) {
  require(static_cast<int>(e.size()) == nvars_, ErrorKind::DimensionMismatch,
          "exponent length != nvars");
  for (int x : e)
    require(x >= 0, ErrorKind::InvalidParameter, "negative exponent");
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) it->second += c;
  if (it->second == 0.0) terms_.erase(it);
}

double MultiPoly::eval(std::span<const double> x) const {
  require(static_cast<int>(x.size()) == nvars_, ErrorKind::DimensionMismatch,
          "point dimension != nvars");
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c;
    for (int i = 0; i < nvars_; ++i) {
      double xi = x[i];
      int k = e[i];
      // exponentiation by squaring; exponents are small so a loop is fine
      double pw = 1.0;
      double base = xi;
      while (k > 0) {
        if (k & 1) pw *= base;
        base *= base;
        k >>= 1;
      }
      t *= pw;
    }
    acc += t;
  }
  return acc;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  require(nvars_ == o.nvars_, ErrorKind::DimensionMismatch, "nvars mismatch in +");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  require(nvars_ == o.nvars_, ErrorKind::DimensionMismatch, "nvars mismatch in -");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

MultiPoly MultiPoly::mul(const MultiPoly& o, std::size_t term_cap) const {
  require(nvars_ == o.nvars_, ErrorKind::DimensionMismatch, "nvars mismatch in *");
  MultiPoly out(nvars_);
  Exponents e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
      if (out.terms_.size() > term_cap)
        fail(ErrorKind::DegreeOverflow, "product exceeds term cap " + std::to_string(term_cap));
    }
  }
  return out;
}

MultiPoly MultiPoly::derivative(int var) const {
  require(var >= 0 && var < nvars_, ErrorKind::InvalidParameter, "derivative variable out of range");
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    out.add_term(d, c * e[var]);
  }
  return out;
}

std::vector<MultiPoly> MultiPoly::gradient() const {
  std::vector<MultiPoly> g;
  g.reserve(nvars_);
  for (int i = 0; i < nvars_; ++i) g.push_back(derivative(i));
  return g;
}

double MultiPoly::coeff_inf_norm() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

double MultiPoly::coeff_one_norm() const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += std::abs(c);
  return s;
}

double MultiPoly::coeff_two_norm() const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += c * c;
  return std::sqrt(s);
}

MultiPoly MultiPoly::pruned(double tol) const {
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_)
    if (std::abs(c) > tol) out.terms_.emplace(e, c);
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << (c >= 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    os << std::abs(c);
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      os << "*X" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
    }
    first = false;
  }
  return os.str();
}

MultiPoly compose_monomial_coeffs(std::span<const double> h_coeffs, const MultiPoly& g,
                                  std::size_t term_cap) {
  MultiPoly acc(g.nvars());
  if (h_coeffs.empty()) return acc;
  for (std::size_t j = h_coeffs.size(); j-- > 0;) {
    acc = acc.mul(g, term_cap);
    if (h_coeffs[j] != 0.0) acc += MultiPoly::constant(g.nvars(), h_coeffs[j]);
  }
  return acc;
}

}  // namespace putinar
