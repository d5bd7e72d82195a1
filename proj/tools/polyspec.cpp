#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polyspec/campaign.hpp"

namespace {

using namespace polyspec;

void sort_by_modulus_phase(std::vector<Complex>& values) {
  std::sort(values.begin(), values.end(), [](Complex a, Complex b) {
    const double ma = std::abs(a);
    const double mb = std::abs(b);
    if (ma != mb) return ma < mb;
    return std::arg(a) < std::arg(b);
  });
}

Json spectrum_to_json(const Spectrum& s) {
  Json values = Json::array();
  for (Complex v : s.values) values.push_back(Json::array({v.real(), v.imag()}));
  Json j;
  j["eigenvalues"] = values;
  return j;
}

int run_eig(const std::string& path, bool json_out) {
  const MatrixPolynomial p = pencil_from_json(load_json_file(path));
  Spectrum s = polynomial_spectrum(p);
  sort_by_modulus_phase(s.values);
  if (json_out) {
    std::cout << spectrum_to_json(s).dump(2) << "\n";
  } else {
    std::string line;
    for (Complex v : s.values) {
      if (!line.empty()) line += ", ";
      line += fmt_complex(v);
    }
    std::cout << line << "\n";
  }
  return 0;
}

int run_dist(const std::string& path_a, const std::string& path_b,
             const std::string& method, bool json_out) {
  if (method != "bottleneck" && method != "frobenius")
    throw ConfigError("--method must be bottleneck or frobenius");
  const Spectrum sa = polynomial_spectrum(pencil_from_json(load_json_file(path_a)));
  const Spectrum sb = polynomial_spectrum(pencil_from_json(load_json_file(path_b)));
  const MatchingResult r = (method == "bottleneck")
                               ? optimal_matching_distance(sa, sb)
                               : frobenius_matching_distance(sa, sb);
  if (json_out) {
    Json j;
    j["method"] = method;
    j["distance"] = r.distance;
    j["permutation"] = r.permutation;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "distance = " << fmt_double(r.distance) << "\n";
    std::string perm;
    for (int idx : r.permutation) {
      if (!perm.empty()) perm += ", ";
      perm += std::to_string(idx);
    }
    std::cout << "permutation = [" << perm << "]\n";
  }
  return 0;
}

struct CheckFlags {
  std::string p_text = "2";
  double cap = 5.0;
  double interval_max = 2.0;
  double interval_min = 1.0;
  double lambda_re = 0.0;
  double lambda_im = 0.0;
  int k = 4;
};

BoundReport run_check_dispatch(const std::string& bound_id,
                               const std::vector<std::string>& files,
                               const CheckFlags& f) {
  const auto need = [&](size_t count) {
    if (files.size() != count)
      throw ConfigError(bound_id + " expects " + std::to_string(count) +
                        " input file(s), got " + std::to_string(files.size()));
  };
  const auto load_mat = [&](size_t i) {
    return matrix_from_json(load_json_file(files[i]));
  };
  const auto load_poly = [&](size_t i) {
    return polynomial_from_json(load_json_file(files[i]));
  };
  const auto p_norm = [&]() { return PNorm::parse(f.p_text); };

  if (bound_id == "hoffman-wielandt") {
    need(2);
    return check_hoffman_wielandt(load_mat(0), load_mat(1));
  }
  if (bound_id == "poly-hoffman-wielandt") {
    need(2);
    return check_polynomial_hoffman_wielandt(load_poly(0), load_poly(1));
  }
  if (bound_id == "normal-vs-arbitrary") {
    need(2);
    return check_normal_vs_arbitrary(load_mat(0), load_mat(1));
  }
  if (bound_id == "kahan") {
    need(2);
    return check_kahan(load_mat(0), load_mat(1), p_norm());
  }
  if (bound_id == "poly-universal") {
    need(2);
    return check_polynomial_universal(load_poly(0), load_poly(1), p_norm());
  }
  if (bound_id == "unitary-2mn") {
    need(2);
    return check_unitary_2mn(load_poly(0), load_poly(1), p_norm());
  }
  if (bound_id == "poly-kahan") {
    need(2);
    return check_polynomial_kahan(load_poly(0), load_poly(1), p_norm());
  }
  if (bound_id == "elsner") {
    need(2);
    return check_elsner(load_mat(0), load_mat(1), p_norm());
  }
  if (bound_id == "nbounded") {
    need(2);
    return check_nbounded(load_poly(0), load_poly(1), p_norm(), f.cap);
  }
  if (bound_id == "det-perturbation") {
    need(2);
    return check_det_perturbation(load_mat(0), load_mat(1), p_norm());
  }
  if (bound_id == "nonmonic-ball") {
    need(3);
    return check_nonmonic_ball(load_poly(0), load_poly(1), load_poly(2));
  }
  if (bound_id == "wielandt-scalar") {
    need(3);
    return check_wielandt_scalar(load_mat(0), f.interval_max, f.interval_min,
                                 load_mat(1), load_mat(2));
  }
  if (bound_id == "wielandt-poly") {
    need(3);
    return check_wielandt_polynomial(load_poly(0), f.interval_max, f.interval_min,
                                     load_mat(1), load_mat(2),
                                     Complex(f.lambda_re, f.lambda_im));
  }
  if (bound_id == "gamma-bounds") {
    need(0);
    return gamma_bounds_check(f.k);
  }
  throw ConfigError("unknown bound id: " + bound_id);
}

void print_report_text(const BoundReport& r) {
  std::cout << "bound_id = " << r.bound_id << "\n";
  std::cout << "lhs = " << fmt_double(r.lhs) << "\n";
  std::cout << "rhs = " << fmt_double(r.rhs) << "\n";
  std::cout << "holds = " << (r.holds ? "true" : "false") << "\n";
  std::cout << "slack_ratio = " << fmt_double(r.slack_ratio) << "\n";
  if (!r.constants.empty()) {
    std::cout << "constants:\n";
    for (const auto& [key, value] : r.constants)
      std::cout << "  " << key << " = " << fmt_double(value) << "\n";
  }
  std::cout << "hypotheses_met = " << (r.hypotheses_met ? "true" : "false") << "\n";
  for (const std::string& h : r.failed_hypotheses)
    std::cout << "failed_hypothesis: " << h << "\n";
}

int run_check(const std::string& bound_id, const std::vector<std::string>& files,
              const CheckFlags& flags, bool strict, bool json_out) {
  const BoundReport r = run_check_dispatch(bound_id, files, flags);
  if (json_out)
    std::cout << report_to_json(r).dump(2) << "\n";
  else
    print_report_text(r);
  if (strict && !r.hypotheses_met) return 5;
  if (r.hypotheses_met && !r.holds) return 1;
  return 0;
}

int run_campaign_cmd(const std::string& config_path, int threads,
                     std::optional<std::uint64_t> seed_override, bool strict) {
  CampaignConfig config = campaign_config_from_json(load_json_file(config_path));
  if (seed_override) config.seed = *seed_override;
  if (strict) config.strict_hypotheses = true;
  const CampaignResult result = run_campaign(config, threads);
  const std::string text = (config.format == "json")
                               ? campaign_report_json(result).dump(2) + "\n"
                               : campaign_report_csv(result);
  if (config.output_path.empty())
    std::cout << text;
  else
    write_text_file(config.output_path, text);
  const bool bad = result.summary.violations > 0 ||
                   result.summary.subassertion_failures > 0;
  return bad ? 1 : 0;
}

int run_gamma(int max_k, bool json_out) {
  if (max_k < 1) throw ConfigError("--max-k must be >= 1");
  if (json_out) {
    Json rows = Json::array();
    for (int k = 1; k <= max_k; ++k) {
      const BoundReport r = gamma_bounds_check(k);
      rows.push_back(Json{{"k", k},
                          {"gamma", r.lhs},
                          {"upper", r.rhs},
                          {"margin", r.rhs - r.lhs}});
    }
    std::cout << rows.dump(2) << "\n";
  } else {
    std::cout << "k gamma upper margin\n";
    for (int k = 1; k <= max_k; ++k) {
      const BoundReport r = gamma_bounds_check(k);
      std::cout << k << " " << fmt_double(r.lhs) << " " << fmt_double(r.rhs) << " "
                << fmt_double(r.rhs - r.lhs) << "\n";
    }
  }
  return 0;
}

int run_gen(GenSpec spec, const std::string& abar_path, const std::string& out_path) {
  std::string text;
  if (genspec_is_polynomial(spec.family)) {
    std::optional<MatrixPolynomial> abar;
    if (!abar_path.empty())
      abar = polynomial_from_json(load_json_file(abar_path));
    const MatrixPolynomial p = gen_polynomial(spec, abar ? &*abar : nullptr);
    text = polynomial_to_json(p).dump(2) + "\n";
  } else {
    const ComplexMatrix m = gen_matrix(spec);
    text = matrix_to_json(m).dump(2) + "\n";
  }
  write_text_file(out_path, text);
  std::cout << "seed = " << spec.seed << "\n";
  return 0;
}

int resolve_threads(const CLI::Option* threads_opt, int flag_value) {
  if (threads_opt->count() > 0) {
    if (flag_value < 1) throw ConfigError("--threads must be >= 1");
    return flag_value;
  }
  if (const char* env = std::getenv("POLYSPEC_THREADS")) {
    try {
      const int parsed = std::stoi(env);
      if (parsed < 1) throw ConfigError("POLYSPEC_THREADS must be >= 1");
      return parsed;
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("POLYSPEC_THREADS must be an integer");
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "polyspec: spectra of matrix polynomials, matching distances between "
      "spectra, and randomized verification of spectral variation bounds"};
  app.require_subcommand(1);

  bool json_out = false;
  std::uint64_t seed = 0;
  int threads = 1;
  bool strict = false;
  app.add_flag("--json", json_out, "emit JSON instead of text");
  CLI::Option* seed_opt = app.add_option("--seed", seed, "seed override");
  CLI::Option* threads_opt =
      app.add_option("--threads", threads,
                     "worker threads for campaigns (env POLYSPEC_THREADS)");
  app.add_flag("--strict", strict, "enforce bound hypotheses (exit 5 on failure)");

  CLI::App* eig = app.add_subcommand(
      "eig", "eigenvalues of a matrix or matrix polynomial JSON file");
  std::string eig_input;
  eig->add_option("input", eig_input, "matrix or polynomial JSON file")->required();
  eig->fallthrough();

  CLI::App* dist =
      app.add_subcommand("dist", "matching distance between two spectra");
  std::string dist_a, dist_b, dist_method = "bottleneck";
  dist->add_option("a", dist_a, "first matrix or polynomial JSON file")->required();
  dist->add_option("b", dist_b, "second matrix or polynomial JSON file")->required();
  dist->add_option("--method", dist_method, "bottleneck (default) or frobenius");
  dist->fallthrough();

  CLI::App* check = app.add_subcommand("check", "evaluate one bound on given inputs");
  std::string check_bound;
  std::vector<std::string> check_files;
  CheckFlags check_flags;
  check->add_option("bound", check_bound, "bound id")->required();
  check->add_option("inputs", check_files, "input JSON files (arity per bound)");
  check->add_option("--p", check_flags.p_text, "norm selector: 1, 2, inf, ...");
  check->add_option("--N", check_flags.cap, "coefficient tuple cap (nbounded)");
  check->add_option("--a", check_flags.interval_max, "interval upper end (wielandt)");
  check->add_option("--b", check_flags.interval_min, "interval lower end (wielandt)");
  check->add_option("--lambda-re", check_flags.lambda_re,
                    "evaluation point, real part (wielandt-poly)");
  check->add_option("--lambda-im", check_flags.lambda_im,
                    "evaluation point, imaginary part (wielandt-poly)");
  check->add_option("--k", check_flags.k, "order for gamma-bounds");
  check->fallthrough();

  CLI::App* campaign =
      app.add_subcommand("campaign", "run a randomized verification campaign");
  std::string campaign_config;
  campaign->add_option("config", campaign_config, "campaign config JSON file")
      ->required();
  campaign->fallthrough();

  CLI::App* gamma = app.add_subcommand("gamma", "tabulate the cotangent-sum constant");
  int gamma_max_k = 16;
  gamma->add_option("--max-k", gamma_max_k, "largest order to tabulate");
  gamma->fallthrough();

  CLI::App* gen = app.add_subcommand("gen", "generate a seeded instance file");
  GenSpec gen_spec;
  std::string gen_abar, gen_out;
  gen->add_option("--family", gen_spec.family, "instance family")->required();
  gen->add_option("--n", gen_spec.n, "matrix order")->required();
  gen->add_option("--m", gen_spec.m, "polynomial degree");
  gen->add_option("--scale", gen_spec.scale, "scale for arbitrary families");
  gen->add_option("--a", gen_spec.interval_max, "interval upper end");
  gen->add_option("--b", gen_spec.interval_min, "interval lower end");
  gen->add_option("--radius", gen_spec.radius_fraction,
                  "in-ball perturbation fraction");
  gen->add_option("--abar", gen_abar, "reference polynomial file (nonmonic-ball)");
  gen->add_option("--out", gen_out, "output file")->required();
  gen->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*eig) return run_eig(eig_input, json_out);
    if (*dist) return run_dist(dist_a, dist_b, dist_method, json_out);
    if (*check) return run_check(check_bound, check_files, check_flags, strict, json_out);
    if (*campaign) {
      std::optional<std::uint64_t> seed_override;
      if (seed_opt->count() > 0) seed_override = seed;
      return run_campaign_cmd(campaign_config,
                              resolve_threads(threads_opt, threads),
                              seed_override, strict);
    }
    if (*gamma) return run_gamma(gamma_max_k, json_out);
    if (*gen) {
      if (seed_opt->count() > 0) gen_spec.seed = seed;
      return run_gen(gen_spec, gen_abar, gen_out);
    }
    return 2;
  } catch (const polyspec::SingularLeadingCoefficient& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const polyspec::SizeMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const polyspec::HypothesisViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const polyspec::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
