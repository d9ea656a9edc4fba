#include "putinar/echelon.hpp"

#include <cmath>

namespace putinar {

SplineEchelon::SplineEchelon(double delta, double k) : delta_(delta), k_(k) {
  require(delta > 0.0 && delta <= 1.0, ErrorKind::InvalidParameter, "need 0 < delta <= 1");
  require(k > 1.0, ErrorKind::InvalidParameter, "need k > 1");
  const double d = delta, u = k - 1.0;
  // ascending powers (c0 + c1 t + c2 t^2 + c3 t^3), pieces left to right
  c_[0] = {1.0, 0.0, 0.0, 0.0};
  c_[1] = {-(7.0 * k - 9.0) / (2.0 * k), -27.0 * u / (2.0 * d * k), -27.0 * u / (2.0 * d * d * k),
           -9.0 * u / (2.0 * d * d * d * k)};
  c_[2] = {(k + 1.0) / (2.0 * k), 9.0 * u / (2.0 * d * k), 27.0 * u / (2.0 * d * d * k),
           9.0 * u / (d * d * d * k)};
  c_[3] = {1.0 / k, 0.0, 0.0, -9.0 * u / (2.0 * d * d * d * k)};
  c_[4] = {1.0 / k, 0.0, 0.0, 0.0};
}

std::array<double, 4> SplineEchelon::breakpoints() const {
  return {-delta_, -delta_ + delta_ / 3.0, -delta_ + 2.0 * delta_ / 3.0, 0.0};
}

int SplineEchelon::piece(double t) const {
  if (t <= -delta_) return 0;
  if (t <= -delta_ + delta_ / 3.0) return 1;
  if (t <= -delta_ + 2.0 * delta_ / 3.0) return 2;
  if (t <= 0.0) return 3;
  return 4;
}

double SplineEchelon::eval(double t) const {
  const auto& a = c_[piece(t)];
  return ((a[3] * t + a[2]) * t + a[1]) * t + a[0];
}

double SplineEchelon::eval_d1(double t) const {
  const auto& a = c_[piece(t)];
  return (3.0 * a[3] * t + 2.0 * a[2]) * t + a[1];
}

double SplineEchelon::eval_d2(double t) const {
  const auto& a = c_[piece(t)];
  return 6.0 * a[3] * t + 2.0 * a[2];
}

double SplineEchelon::total_variation() const {
  return 216.0 * (k_ - 1.0) / (delta_ * delta_ * delta_ * k_);
}

SplineEchelon build_spline(double delta, double k) { return SplineEchelon(delta, k); }

int echelon_degree(double delta, double k) {
  require(delta > 0.0 && delta <= 1.0, ErrorKind::InvalidParameter, "need 0 < delta <= 1");
  require(k > 1.0, ErrorKind::InvalidParameter, "need k > 1");
  const double pi = std::acos(-1.0);
  double m = 6.0 / delta * std::cbrt(4.0 * (k - 1.0) / (3.0 * pi)) + 3.0;
  return static_cast<int>(std::ceil(m));
}

EchelonPoly build_echelon(double delta, double k) {
  SplineEchelon H(delta, k);
  const int m = echelon_degree(delta, k);
  const double pi = std::acos(-1.0);

  // Chebyshev coefficients of the degree-N interpolant at Lobatto points,
  // truncated to degree m. N = 8m keeps the aliasing error negligible
  // next to the projection error the degree bound accounts for.
  const int N = std::max(8 * m, 64);
  std::vector<double> vals(N + 1);
  for (int j = 0; j <= N; ++j) vals[j] = H.eval(std::cos(j * pi / N));
  std::vector<double> c(m + 1, 0.0);
  for (int i = 0; i <= m; ++i) {
    double s = 0.5 * (vals[0] + (i % 2 == 0 ? vals[N] : -vals[N]));
    for (int j = 1; j < N; ++j) s += vals[j] * std::cos(i * j * pi / N);
    c[i] = 2.0 * s / N;
  }
  c[0] *= 0.5;

  EchelonPoly out;
  out.h = UniPoly(UniPoly::Basis::Chebyshev, std::move(c));
  out.k = k;
  out.m = m;
  out.delta = delta;

  // a posteriori validation on a dense uniform sample
  const int samples = 10'000;
  double sup_err = 0.0;
  for (int j = 0; j <= samples; ++j) {
    double t = -1.0 + 2.0 * j / samples;
    sup_err = std::max(sup_err, std::abs(H.eval(t) - out.h.eval(t)));
  }
  out.sup_error_estimate = sup_err;
  require(sup_err <= 1.0 / k, ErrorKind::ApproximationFailure,
          "sampled sup error exceeds 1/k; degree formula violated");
  return out;
}

}  // namespace putinar
