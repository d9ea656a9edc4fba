#include "putinar/bounds.hpp"

#include <cmath>

namespace putinar {

void BoundInputs::validate() const {
  require(n >= 1, ErrorKind::InvalidParameter, "n >= 1");
  require(r >= 1, ErrorKind::InvalidParameter, "r >= 1");
  require(d_g >= 1, ErrorKind::InvalidParameter, "d_g >= 1");
  require(d_f >= 1, ErrorKind::InvalidParameter, "d_f >= 1");
  require(epsilon_f > 0.0 && epsilon_f <= 1.0, ErrorKind::InvalidParameter, "0 < epsilon_f <= 1");
  require(L >= 1.0, ErrorKind::InvalidParameter, "L >= 1");
  require(c >= 1.0, ErrorKind::InvalidParameter, "c >= 1");
  require(norm_f > 0.0, ErrorKind::InvalidParameter, "norm_f > 0");
  require(t >= 0, ErrorKind::InvalidParameter, "t >= 0");
  require(epsilon > 0.0, ErrorKind::InvalidParameter, "epsilon > 0");
  require(ell >= 1.0, ErrorKind::InvalidParameter, "ell >= 1");
}

double gamma_prefactor(const BoundInputs& in) {
  return std::pow(in.n, 3) * std::pow(2.0, 5.0 * in.n * in.L) * std::pow(in.r, in.n) *
         std::pow(in.c, 2.0 * in.n) * std::pow(in.d_g, in.n);
}

double putinar_bound_simplified(const BoundInputs& in) {
  in.validate();
  return gamma_prefactor(in) * std::pow(in.d_f, 3.5 * in.n * in.L) *
         std::pow(in.epsilon_f, -2.5 * in.n * in.L);
}

double putinar_bound_sharp(const BoundInputs& in) {
  in.validate();
  const double n = in.n, L = in.L;
  return std::pow(n, 2.5) * std::pow(2.0, (4.0 * n + 11.0) * L / 2.0) *
         std::pow(in.r, (n + 5.0) / 6.0) * std::pow(in.c, (4.0 * n + 11.0) / 6.0) *
         std::pow(in.d_g, (n + 2.0) / 2.0) * std::pow(in.d_f, (4.0 * n + 11.0) * L / 3.0) *
         std::pow(in.epsilon_f, -((4.0 * L + 1.0) * n + 11.0 * L + 5.0) / 6.0);
}

double weierstrass_bound(const BoundInputs& in) {
  in.validate();
  double gamma_p = std::pow(3.0, 2.5 * in.n * in.L) * gamma_prefactor(in);
  return gamma_p * std::pow(in.d_f, 3.5 * in.n * in.L) * std::pow(in.norm_f, 2.5 * in.n * in.L) *
         std::pow(in.epsilon, -2.5 * in.n * in.L);
}

double lasserre_gap_bound(const BoundInputs& in) {
  in.validate();
  double gamma_p = std::pow(3.0, 2.5 * in.n * in.L) * gamma_prefactor(in);
  double gamma_pp = std::pow(gamma_p, 1.0 / (2.5 * in.n * in.L));
  return gamma_pp * in.norm_f * std::pow(in.d_f, 1.4) * std::pow(in.ell, -1.0 / (2.5 * in.n * in.L));
}

MomentBound moment_bound(const BoundInputs& in, int ell0) {
  in.validate();
  MomentBound out;
  out.ell = gamma_prefactor(in) * std::pow(6.0, 2.5 * in.n * in.L) *
            std::pow(in.t, 6.0 * in.n * in.L) *
            std::pow(binomial(in.n + in.t, in.t), 2.5 * in.n * in.L) *
            std::pow(in.epsilon, -2.5 * in.n * in.L);
  out.side_condition = 2.0 * in.t + ell0;
  return out;
}

double laurent_slot_C(int n, int d) {
  require(n >= 1 && d >= 1, ErrorKind::InvalidParameter, "laurent_slot_C needs n, d >= 1");
  const double pi = std::acos(-1.0);
  return 2.0 * pi * pi * d * d * std::pow(d + 1.0, n) * std::pow(n, 3);
}

double laurent_slot_bound(int n, int d, double p_min, double p_max) {
  require(p_min > 0.0, ErrorKind::InvalidParameter, "laurent_slot_bound needs p_min > 0");
  require(p_max >= p_min, ErrorKind::InvalidParameter, "p_max >= p_min");
  const double pi = std::acos(-1.0);
  double first = pi * d * std::sqrt(2.0 * n);
  double second = std::sqrt(laurent_slot_C(n, d) * (p_max - p_min) / p_min);
  return std::max(first, second);
}

double nie_bound(const BoundInputs& in, double c_free) {
  in.validate();
  double ratio = std::pow(in.d_f, 2) * std::pow(in.n, in.d_f) / in.epsilon_f;
  return c_free * std::exp(std::pow(ratio, c_free));
}

double schweighofer_bound(const BoundInputs& in, double c_free) {
  in.validate();
  double ratio = std::pow(in.d_f, 2) * std::pow(in.n, in.d_f) / in.epsilon_f;
  return c_free * in.d_f * in.d_f * (1.0 + std::pow(ratio, c_free));
}

double loja_worst_case(int n, int r, int d_g) {
  require(n >= 1 && r >= 1 && d_g >= 1, ErrorKind::InvalidParameter, "loja_worst_case inputs >= 1");
  return d_g * std::pow(6.0 * d_g - 3.0, n + r - 1);
}

double weighted_coeff_norm(const MultiPoly& f) {
  double best = 0.0;
  for (const auto& [e, c] : f.terms()) {
    double w = 1.0;  // alpha! / |alpha|! applied to |c|
    int td = 0;
    for (int i = 0; i < f.nvars(); ++i) {
      for (int j = 1; j <= e[i]; ++j) {
        ++td;
        w *= static_cast<double>(j) / td;
      }
    }
    best = std::max(best, std::abs(c) * w);
  }
  return best;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

BoundEval evaluate_bound(const std::string& formula, const BoundInputs& in) {
  BoundEval out;
  if (formula == "putinar_simplified") {
    out.value = putinar_bound_simplified(in);
    out.shape = "n^3 2^{5nL} r^n c^{2n} d_g^n d_f^{3.5nL} eps_f^{-2.5nL} (constant-free)";
  } else if (formula == "putinar_sharp") {
    out.value = putinar_bound_sharp(in);
    out.shape =
        "n^{5/2} 2^{(4n+11)L/2} r^{(n+5)/6} c^{(4n+11)/6} d_g^{(n+2)/2} d_f^{(4n+11)L/3} "
        "eps_f^{-((4L+1)n+11L+5)/6} (constant-free)";
  } else if (formula == "weierstrass") {
    out.value = weierstrass_bound(in);
    out.shape = "3^{2.5nL} gamma(n,g) d_f^{3.5nL} ||f||^{2.5nL} eps^{-2.5nL} (constant-free)";
  } else if (formula == "lasserre_gap") {
    out.value = lasserre_gap_bound(in);
    out.shape = "gamma'' ||f|| d_f^{7/5} ell^{-1/(2.5nL)} (constant-free)";
  } else if (formula == "moment") {
    out.value = moment_bound(in).ell;
    out.shape = "gamma(n,g) 6^{2.5nL} t^{6nL} C(n+t,t)^{2.5nL} eps^{-2.5nL} (constant-free)";
  } else if (formula == "laurent_slot") {
    out.value = laurent_slot_bound(in.n, in.d_f, in.epsilon_f * in.norm_f, in.norm_f);
    out.shape = "max{pi d sqrt(2n), sqrt(C(n,d)(f_max-f_min)/f_min)}";
  } else if (formula == "nie") {
    out.value = nie_bound(in);
    out.shape = "c exp((d^2 n^d ||f||_X / f*)^c), c = 1";
  } else if (formula == "schweighofer") {
    out.value = schweighofer_bound(in);
    out.shape = "c d^2 (1 + (d^2 n^d ||f||_X / f*)^c), c = 1";
  } else if (formula == "loja_worst_case") {
    out.value = loja_worst_case(in.n, in.r, in.d_g);
    out.shape = "d_g (6 d_g - 3)^{n+r-1}";
  } else {
    fail(ErrorKind::ConfigError, "unknown bound formula: " + formula);
  }
  return out;
}

}  // namespace putinar
