#pragma once

#include "putinar/moments.hpp"
#include "putinar/sdp.hpp"
#include "putinar/unipoly.hpp"

namespace putinar {

// PSD Gram block over a monomial basis (multivariate) or the first-kind
// Chebyshev basis T_0..T_k (univariate certificate pipeline).
struct GramBasis {
  bool chebyshev = false;
  std::vector<Exponents> monos;  // when !chebyshev
  int cheb_degree = -1;          // when chebyshev

  int size() const { return chebyshev ? cheb_degree + 1 : static_cast<int>(monos.size()); }
};

struct GramCertificatePart {
  GramBasis basis;
  Eigen::MatrixXd gram;
  int generator_index = 0;  // 0 = sigma_0 slot, i >= 1 multiplies g_i
  double min_eigenvalue = 0.0;
  double identity_residual = 0.0;
};

// expand sigma = b' G b as a polynomial
MultiPoly expand_gram(const GramCertificatePart& part, int nvars);
UniPoly expand_gram_cheb(const GramCertificatePart& part);

struct QmOptions {
  double tol = 1e-8;
  bool chebyshev = false;  // univariate Chebyshev bases instead of monomial
  int max_iter = 120;
  bool verbose = false;
};

struct SosSolve {
  SdpStatus status = SdpStatus::SlowProgress;
  double value = 0.0;  // optimal lambda for the optimization form
  std::vector<GramCertificatePart> parts;
  double max_residual = 0.0;  // max coefficient residual of the assembled identity
  int iterations = 0;
  std::string detail;
};

// sup { lambda : target - lambda in Q_ell(gens) }, Gram parts certifying the
// optimum. Level convention is literal: deg sigma_0 <= ell, deg sigma_i g_i <= ell.
SosSolve qm_optimize(const MultiPoly& target, const std::vector<MultiPoly>& gens, int ell,
                     const QmOptions& opts = {});

// Membership search: target in Q_ell(gens), exact coefficient matching.
// status Infeasible means "not found at this level", never non-membership.
SosSolve qm_feasibility(const MultiPoly& target, const std::vector<MultiPoly>& gens, int ell,
                        const QmOptions& opts = {});

// Chebyshev-native variants for the univariate certificate pipeline: target
// and generators stay in the T-basis end to end, which keeps high-degree
// coefficient matching well conditioned.
SosSolve qm_optimize_cheb(const UniPoly& target, const std::vector<UniPoly>& gens, int ell,
                          const QmOptions& opts = {});
SosSolve qm_feasibility_cheb(const UniPoly& target, const std::vector<UniPoly>& gens, int ell,
                             const QmOptions& opts = {});

// Lasserre relaxations of order ell (module level 2*ell).
struct LasserreSos {
  SdpStatus status = SdpStatus::SlowProgress;
  double value = 0.0;  // f*_{SoS, ell}
  std::vector<GramCertificatePart> parts;
  double max_residual = 0.0;
};

LasserreSos lasserre_sos(const Problem& prob, int ell, const QmOptions& opts = {});

struct LasserreMom {
  SdpStatus status = SdpStatus::SlowProgress;
  double value = 0.0;  // f*_{MoM, ell}
  PseudoMomentSeq L;
  double min_moment_eig = 0.0;  // smallest eigenvalue across moment/localizing blocks
};

LasserreMom lasserre_mom(const Problem& prob, int ell, const QmOptions& opts = {});

// Moment-side SDP over L_ell(gens) with mass fixed to `mass` (or free when
// mass < 0): minimizes <L, objective>. Used for the moment-cone experiments.
struct MomSolveOptions {
  double tol = 1e-8;
  double mass = 1.0;     // <L,1> value; negative = leave unconstrained
  bool trace_one = false;  // add trace(moment matrix) = 1 (for mass-0 probes)
  int max_iter = 120;
};

struct MomSolve {
  SdpStatus status = SdpStatus::SlowProgress;
  double value = 0.0;
  PseudoMomentSeq L;
};

MomSolve mom_optimize(const MultiPoly& objective, const std::vector<MultiPoly>& gens, int ell,
                      const MomSolveOptions& opts = {});

// Eigendecomposition of a Gram part into explicit squares; negative
// eigenvalues are clipped and the clipped mass reported.
struct SosDecomposition {
  std::vector<MultiPoly> squares;       // monomial-basis parts
  std::vector<UniPoly> cheb_squares;    // chebyshev-basis parts
  double clipped_mass = 0.0;
  double reconstruction_residual = 0.0;
};

SosDecomposition gram_to_sos(const GramCertificatePart& part, int nvars,
                             double psd_tol_scale = 1e-8);

// witness level for 1 - g_i in Q_ell(g) for all i, found by an even-step sweep
struct Ell0Witness {
  int level = 0;
  std::vector<SosSolve> certs;  // one per generator
};
Ell0Witness find_ell0_witness(const std::vector<MultiPoly>& gens, int max_level,
                              const QmOptions& opts = {});

}  // namespace putinar
