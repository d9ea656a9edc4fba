#include <chrono>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "putinar/bounds.hpp"
#include "putinar/certificate.hpp"
#include "putinar/echelon.hpp"
#include "putinar/moments.hpp"
#include "putinar/relax.hpp"
#include "putinar/semialgebraic.hpp"
#include "putinar/threads.hpp"

using namespace putinar;
using nlohmann::json;

namespace {

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::NumericalFailure:
    case ErrorKind::InfeasibleAtLevel:
    case ErrorKind::MinCheckFailed:
    case ErrorKind::NotPsd:
    case ErrorKind::ApproximationFailure:
    case ErrorKind::CertificateAssemblyMismatch:
      return 3;
    default:
      return 1;
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

long long elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                               t0)
      .count();
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::fputs(content.c_str(), stdout);
  else
    write_file(out_path, content);
}

BoundInputs inputs_from_json_arg(const std::string& arg) {
  json j;
  if (!arg.empty() && arg.front() == '{') {
    j = json::parse(arg);
  } else {
    j = json::parse(read_file(arg));
  }
  BoundInputs in;
  if (j.contains("n")) in.n = j["n"].get<int>();
  if (j.contains("r")) in.r = j["r"].get<int>();
  if (j.contains("d_g")) in.d_g = j["d_g"].get<int>();
  if (j.contains("d_f")) in.d_f = j["d_f"].get<int>();
  if (j.contains("epsilon_f")) in.epsilon_f = j["epsilon_f"].get<double>();
  if (j.contains("L")) in.L = j["L"].get<double>();
  if (j.contains("c")) in.c = j["c"].get<double>();
  if (j.contains("norm_f")) in.norm_f = j["norm_f"].get<double>();
  if (j.contains("t")) in.t = j["t"].get<int>();
  if (j.contains("epsilon")) in.epsilon = j["epsilon"].get<double>();
  if (j.contains("ell")) in.ell = j["ell"].get<double>();
  return in;
}

std::vector<int> parse_levels(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  require(!out.empty(), ErrorKind::ConfigError, "empty level list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();
  CLI::App app{"putinar-kit: SoS certificates, Lasserre hierarchies and moment experiments"};
  app.require_subcommand(1);

  std::string problem_path, out_path, cert_path, strategy = "direct", mode = "sos";
  std::string formula, json_arg, levels_arg, sweep_arg;
  int level = 1, t_arg = 1, samples = 400;
  double tol = 1e-9, delta = 0.5, kpar = 10.0;
  std::uint64_t seed = 20240901;

  auto* c_certify = app.add_subcommand("certify", "build a quadratic-module certificate for f");
  c_certify->add_option("--problem", problem_path)->required();
  c_certify->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"direct", "perturbation", "boxchain"}));
  c_certify->add_option("--out", out_path);
  c_certify->add_option("--seed", seed);
  c_certify->add_option("--tol", tol);

  auto* c_verify = app.add_subcommand("verify", "re-expand and check a certificate");
  c_verify->add_option("--problem", problem_path)->required();
  c_verify->add_option("--cert", cert_path)->required();

  auto* c_lasserre = app.add_subcommand("lasserre", "SoS / MoM relaxation at one level or a sweep");
  c_lasserre->add_option("--problem", problem_path)->required();
  c_lasserre->add_option("--level", level);
  c_lasserre->add_option("--mode", mode)->check(CLI::IsMember({"sos", "mom"}));
  c_lasserre->add_option("--sweep", sweep_arg, "ellmin..ellmax");
  c_lasserre->add_option("--out", out_path);
  c_lasserre->add_option("--seed", seed);
  c_lasserre->add_option("--tol", tol);

  auto* c_bound = app.add_subcommand("bound", "degree-bound calculators (constant-free shapes)");
  c_bound->add_option("--formula", formula)->required();
  c_bound->add_option("--json", json_arg, "inline JSON or a path to a JSON file");
  c_bound->add_option("--sweep", sweep_arg, "field=lo:hi:count, linear grid");
  c_bound->add_option("--out", out_path);

  auto* c_loja = app.add_subcommand("loja", "Lojasiewicz / CQC / sublevel diagnostics");
  c_loja->add_option("--problem", problem_path)->required();
  c_loja->add_option("--samples", samples);
  c_loja->add_option("--seed", seed);
  c_loja->add_option("--out", out_path);

  auto* c_moments = app.add_subcommand("moments", "truncated moment-cone Hausdorff experiment");
  c_moments->add_option("--problem", problem_path)->required();
  c_moments->add_option("--t", t_arg);
  c_moments->add_option("--levels", levels_arg)->required();
  c_moments->add_option("--seed", seed);
  c_moments->add_option("--out", out_path);

  auto* c_echelon = app.add_subcommand("echelon", "spline echelon and Chebyshev approximation");
  c_echelon->add_option("--delta", delta)->required();
  c_echelon->add_option("--k", kpar)->required();
  c_echelon->add_option("--out", out_path);
  c_echelon->add_option("--samples-csv", cert_path, "optional CSV of (t, H, h) samples");

  CLI11_PARSE(app, argc, argv);
  auto t0 = std::chrono::steady_clock::now();

  try {
    if (*c_certify) {
      Problem raw = load_problem(problem_path);
      Problem prob = normalize(raw);
      CertifyOptions opts;
      opts.strategy = strategy == "direct"
                          ? CertifyStrategy::Direct
                          : (strategy == "perturbation" ? CertifyStrategy::Perturbation
                                                        : CertifyStrategy::BoxChain);
      opts.qm.tol = tol;
      opts.budget.seed = seed;
      Certificate cert = certify(prob, opts);
      VerifyReport rep = verify_certificate(cert, prob.f, prob.g);
      emit(out_path.empty() ? "cert.json" : out_path, certificate_to_json(cert));
      std::printf("certificate level %d, %zu parts, residual %s, verdict %s\n", cert.level,
                  cert.parts.size(), fmt(rep.residual).c_str(), rep.verdict ? "pass" : "FAIL");
      return rep.verdict ? 0 : 2;
    }

    if (*c_verify) {
      Problem prob = normalize(load_problem(problem_path));
      Certificate cert = certificate_from_json(read_file(cert_path));
      VerifyReport rep = verify_certificate(cert, prob.f, prob.g);
      std::printf("residual %s, min eigenvalue %s, degrees %s, verdict %s\n",
                  fmt(rep.residual).c_str(), fmt(rep.min_eigenvalue).c_str(),
                  rep.degrees_ok ? "ok" : "violated", rep.verdict ? "pass" : "FAIL");
      return rep.verdict ? 0 : 2;
    }

    if (*c_lasserre) {
      Problem prob = normalize(load_problem(problem_path));
      QmOptions qopts;
      qopts.tol = tol;
      if (!sweep_arg.empty()) {
        auto dots = sweep_arg.find("..");
        require(dots != std::string::npos, ErrorKind::ConfigError, "sweep wants ellmin..ellmax");
        int lo = std::stoi(sweep_arg.substr(0, dots));
        int hi = std::stoi(sweep_arg.substr(dots + 2));
        require(lo >= 1 && hi >= lo, ErrorKind::ConfigError, "empty level range");
        SampleBudget budget;
        budget.seed = seed;
        FStarReport fs = f_star_and_epsilon(prob, budget);
        std::ostringstream csv;
        csv << "# putinar-kit lasserre sweep problem=" << problem_path << " seed=" << seed
            << " f_star_est=" << fmt(fs.f_star);
        std::ostringstream body;
        BoundInputs bi;
        bi.n = std::max(2, prob.nvars);
        bi.r = static_cast<int>(prob.g.size());
        bi.d_g = prob.max_constraint_degree();
        bi.d_f = std::max(1, prob.f.degree());
        bi.norm_f = fs.norm_f;
        body << "ell,f_sos,f_mom,gap,bound_shape\n";
        for (int l = lo; l <= hi; ++l) {
          LasserreSos s = lasserre_sos(prob, l, qopts);
          LasserreMom m = lasserre_mom(prob, l, qopts);
          bi.ell = l;
          body << l << "," << fmt(s.value) << "," << fmt(m.value) << ","
               << fmt(fs.f_star - s.value) << "," << fmt(lasserre_gap_bound(bi)) << "\n";
        }
        csv << " runtime_ms=" << elapsed_ms(t0) << "\n" << body.str();
        emit(out_path, csv.str());
        return 0;
      }
      if (mode == "sos") {
        LasserreSos s = lasserre_sos(prob, level, qopts);
        json j;
        j["value"] = s.value;
        j["max_residual"] = s.max_residual;
        j["parts"] = json::array();
        for (const auto& p : s.parts) {
          json pj;
          pj["generator_index"] = p.generator_index;
          pj["basis_size"] = p.basis.size();
          pj["min_eigenvalue"] = p.min_eigenvalue;
          j["parts"].push_back(pj);
        }
        emit(out_path, j.dump(2) + "\n");
      } else {
        LasserreMom m = lasserre_mom(prob, level, qopts);
        json j;
        j["value"] = m.value;
        j["moments"] = m.L.values;
        emit(out_path, j.dump(2) + "\n");
      }
      return 0;
    }

    if (*c_bound) {
      if (!sweep_arg.empty()) {
        auto eq = sweep_arg.find('=');
        auto c1 = sweep_arg.find(':');
        auto c2 = sweep_arg.find(':', c1 + 1);
        require(eq != std::string::npos && c1 != std::string::npos && c2 != std::string::npos,
                ErrorKind::ConfigError, "sweep wants field=lo:hi:count");
        std::string field = sweep_arg.substr(0, eq);
        double lo = std::stod(sweep_arg.substr(eq + 1, c1 - eq - 1));
        double hi = std::stod(sweep_arg.substr(c1 + 1, c2 - c1 - 1));
        int count = std::stoi(sweep_arg.substr(c2 + 1));
        require(count >= 2, ErrorKind::ConfigError, "sweep needs count >= 2");
        BoundInputs base = json_arg.empty() ? BoundInputs{} : inputs_from_json_arg(json_arg);
        std::ostringstream csv;
        csv << "# putinar-kit bound sweep formula=" << formula << " field=" << field << "\n";
        csv << field << ",value\n";
        for (int i = 0; i < count; ++i) {
          double v = lo + (hi - lo) * i / (count - 1);
          BoundInputs in = base;
          if (field == "epsilon_f") in.epsilon_f = v;
          else if (field == "epsilon") in.epsilon = v;
          else if (field == "ell") in.ell = v;
          else if (field == "L") in.L = v;
          else if (field == "c") in.c = v;
          else if (field == "norm_f") in.norm_f = v;
          else if (field == "d_f") in.d_f = static_cast<int>(v);
          else if (field == "d_g") in.d_g = static_cast<int>(v);
          else if (field == "n") in.n = static_cast<int>(v);
          else if (field == "r") in.r = static_cast<int>(v);
          else if (field == "t") in.t = static_cast<int>(v);
          else fail(ErrorKind::ConfigError, "unknown sweep field " + field);
          csv << fmt(v) << "," << fmt(evaluate_bound(formula, in).value) << "\n";
        }
        emit(out_path, csv.str());
        return 0;
      }
      BoundInputs in = json_arg.empty() ? BoundInputs{} : inputs_from_json_arg(json_arg);
      BoundEval ev = evaluate_bound(formula, in);
      std::printf("%s\nshape: %s\n", fmt(ev.value).c_str(), ev.shape.c_str());
      return 0;
    }

    if (*c_loja) {
      Problem prob = load_problem(problem_path);
      SampleBudget budget;
      budget.seed = seed;
      LojaEstimate est = estimate_lojasiewicz(prob, samples, budget);
      CqcReport cqc = check_cqc(prob, 1e-6, 1e-8, budget);
      json j;
      j["L_hat"] = est.L_hat;
      j["c_hat"] = est.c_hat;
      j["raw_exponent"] = est.raw_exponent;
      j["fit_residual"] = est.fit_residual;
      j["sample_count"] = est.sample_count;
      j["cqc_holds"] = cqc.holds;
      j["cqc_min_sigma"] = cqc.min_sigma;
      if (!cqc.holds) j["cqc_witness"] = cqc.witness;
      try {
        SublevelDelta sd = sublevel_delta(prob, budget);
        j["delta_emp"] = sd.a_empty ? -1.0 : sd.delta_emp;
        j["delta_loja"] = sd.delta_loja;
        j["a_empty"] = sd.a_empty;
        DistanceBoundReport db = distance_bound_check(prob, budget);
        j["distance_bound"] = {{"hdist_emp", db.hdist_emp},
                               {"bound", db.bound},
                               {"holds", db.holds},
                               {"vacuous", db.vacuous}};
      } catch (const Error& e) {
        j["sublevel_note"] = e.what();
      }
      emit(out_path, j.dump(2) + "\n");
      return 0;
    }

    if (*c_moments) {
      Problem prob = normalize(load_problem(problem_path));
      HausdorffOptions hopts;
      hopts.t = t_arg;
      hopts.levels = parse_levels(levels_arg);
      hopts.seed = seed;
      auto pts = hausdorff_estimate(prob, hopts);
      std::ostringstream csv;
      csv << "# putinar-kit moments problem=" << problem_path << " t=" << t_arg
          << " seed=" << seed << " runtime_ms=" << elapsed_ms(t0) << "\n";
      csv << "ell,dist_lower,theorem_bound_shape\n";
      for (const auto& p : pts)
        csv << p.level << "," << fmt(p.dist_lower) << "," << fmt(p.bound_shape) << "\n";
      emit(out_path, csv.str());
      return 0;
    }

    if (*c_echelon) {
      SplineEchelon H = build_spline(delta, kpar);
      EchelonPoly h = build_echelon(delta, kpar);
      json j;
      j["delta"] = delta;
      j["k"] = kpar;
      j["m"] = h.m;
      j["total_variation"] = H.total_variation();
      j["sup_error_estimate"] = h.sup_error_estimate;
      j["sup_error_bound"] = 1.0 / kpar;
      j["cheb_coeffs"] = h.h.coeffs();
      emit(out_path, j.dump(2) + "\n");
      if (!cert_path.empty()) {
        std::ostringstream csv;
        csv << "t,H,h\n";
        for (int i = 0; i <= 2000; ++i) {
          double t = -1.0 + 2.0 * i / 2000;
          csv << fmt(t) << "," << fmt(H.eval(t)) << "," << fmt(h.h.eval(t)) << "\n";
        }
        write_file(cert_path, csv.str());
      }
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
