#pragma once

#include "putinar/echelon.hpp"
#include "putinar/relax.hpp"
#include "putinar/semialgebraic.hpp"

namespace putinar {

// One addendum sigma * g_i of a quadratic-module representation. The SoS
// factor is stored either as a PSD Gram matrix or as an explicit list of
// squared polynomials. Univariate pipelines keep everything in the Chebyshev
// basis so high-degree parts stay well conditioned.
struct CertPart {
  enum class Kind { Gram, Squares };
  Kind kind = Kind::Squares;
  int generator_index = 0;  // 0 = sigma_0
  std::string provenance;   // perturbation-lift | box-representation | ball-embedding | direct-sdp

  // Gram form
  GramBasis basis;
  Eigen::MatrixXd gram;

  // Squares form
  std::vector<MultiPoly> squares;     // monomial, multivariate
  std::vector<UniPoly> cheb_squares;  // chebyshev, univariate

  bool chebyshev() const;
  int degree_bound(const std::vector<MultiPoly>& gens) const;  // deg sigma * g_i
};

struct Certificate {
  int level = 0;
  int nvars = 0;
  std::vector<CertPart> parts;
  double residual = 0.0;  // recorded at assembly time
};

struct PerturbationParams {
  double delta = 0.0;
  double s = 0.0;
  double k = 0.0;
  int m = 0;
  double margin = 0.0;

  bool valid(double norm_f, double f_star, int r) const;
};

PerturbationParams perturbation_params(double norm_f, double f_star, int r, double delta,
                                       double margin = 0.01);

struct PerturbationBuild {
  MultiPoly p;          // f - s * sum h(g_i) g_i
  UniPoly p_cheb;       // populated for nvars == 1
  double min_check = 0.0;
  EchelonPoly echelon;
};

PerturbationBuild build_perturbation(const Problem& prob, const PerturbationParams& params,
                                     double f_star);

// Fekete-Lukacs three-part decomposition h = s0 + s1 (1 - T) + s2 (1 + T)
// for h >= 0 on [-1,1]; each addendum has degree <= deg h + 1.
struct FeketeLukacs {
  std::vector<UniPoly> s0, s1, s2;  // explicit squares, Chebyshev basis
  double residual = 0.0;
};

FeketeLukacs fekete_lukacs(const UniPoly& h, const QmOptions& opts = {});

// Rewrites a certificate over the box generators (1 +- X_i and products)
// into one over the single ball generator 1 - ||X||_2^2; degree grows by at
// most n.
struct BoxTerm {
  std::vector<MultiPoly> squares;  // SoS factor
  std::vector<int> gen_signs;      // +i for (1+X_i), -i for (1-X_i), 1-based ids
};

struct BallCertificate {
  std::vector<MultiPoly> sigma0_squares;
  std::vector<MultiPoly> sigma_ball_squares;  // multiplies 1 - ||X||^2
};

BallCertificate box_to_ball(const std::vector<BoxTerm>& terms, int nvars);

// h(g_i) * g_i in Q_{d(g_i) m + ell0 + 2}(g), assembled from the
// Fekete-Lukacs split and a certificate of 1 - g_i in Q_{ell0}(g).
Certificate lift_echelon_term(const EchelonPoly& h, const Problem& prob, int gen_index,
                              const Ell0Witness& ell0, const QmOptions& opts = {});

enum class CertifyStrategy { Direct, Perturbation, BoxChain };

struct CertifyOptions {
  CertifyStrategy strategy = CertifyStrategy::Direct;
  int level_cap = 30;          // hard cap for direct level sweeps
  double margin = 0.01;
  QmOptions qm;
  SampleBudget budget;
};

Certificate certify(const Problem& prob, const CertifyOptions& opts);

struct VerifyReport {
  double residual = 0.0;        // max coefficient residual of f - assembled
  double min_eigenvalue = 0.0;  // over Gram parts
  bool degrees_ok = true;       // deg sigma_i g_i <= level for all parts
  bool verdict = false;
  std::string detail;
};

// Independent re-expansion of the certificate against f and g; shares no
// state with the assembly path.
VerifyReport verify_certificate(const Certificate& cert, const MultiPoly& f,
                                const std::vector<MultiPoly>& g,
                                double res_tol_scale = 1e-6);

std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);

}  // namespace putinar
