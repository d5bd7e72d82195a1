#include "polyspec/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <numbers>
#include <optional>
#include <set>
#include <thread>
#include <utility>

namespace polyspec {

namespace {

constexpr int kPerTrialCap = 100000;

const std::set<std::string>& known_bounds() {
  static const std::set<std::string> ids = {
      "hoffman-wielandt", "poly-hoffman-wielandt",
      "normal-vs-arbitrary", "kahan",
      "poly-universal", "unitary-2mn",
      "poly-kahan", "elsner",
      "nbounded", "det-perturbation",
      "nonmonic-ball", "wielandt-scalar",
      "wielandt-poly"};
  return ids;
}

// Inputs of one trial, in the shape the bound consumes.  Regenerable from
// (config, trial index) alone.
struct TrialData {
  std::vector<std::pair<std::string, ComplexMatrix>> matrices;
  std::vector<std::pair<std::string, MatrixPolynomial>> polynomials;
  std::optional<Complex> lambda;
  double interval_max = 0.0;
  double interval_min = 0.0;
  bool has_interval = false;
};

const ComplexMatrix& mat(const TrialData& d, const std::string& name) {
  for (const auto& [key, value] : d.matrices)
    if (key == name) return value;
  throw ConfigError("internal: missing trial matrix " + name);
}

const MatrixPolynomial& poly(const TrialData& d, const std::string& name) {
  for (const auto& [key, value] : d.polynomials)
    if (key == name) return value;
  throw ConfigError("internal: missing trial polynomial " + name);
}

// Slot i takes gen_specs[i], or the last provided entry when the config
// lists fewer specs than the bound has inputs.
GenSpec slot_spec(const CampaignConfig& c, size_t slot, const char* default_family) {
  GenSpec s = c.gen_specs[std::min(slot, c.gen_specs.size() - 1)];
  if (s.family.empty()) s.family = default_family;
  return s;
}

// Rescales A_0 .. A_{m-1} so their entrywise tuple norm sits at or below
// target; used to enforce the nbounded cap with margin.
void clamp_tuple_norm(MatrixPolynomial& p, const PNorm& norm, double target) {
  const std::span<const ComplexMatrix> lower{p.coeffs.data(), p.coeffs.size() - 1};
  const double current = tuple_matrix_p_norm(lower, norm);
  if (current <= target || current == 0.0) return;
  const double factor = target / current;
  for (size_t i = 0; i + 1 < p.coeffs.size(); ++i)
    p.coeffs[i] = p.coeffs[i] * factor;
}

TrialData generate_trial(const CampaignConfig& c, std::uint64_t trial_seed) {
  TrialData data;
  const std::string& id = c.bound_id;
  auto seed_for = [&](std::uint64_t stream) { return derive_seed(trial_seed, stream); };

  auto matrix_slot = [&](size_t slot, const char* name, const char* family) {
    GenSpec s = slot_spec(c, slot, family);
    s.seed = seed_for(slot);
    data.matrices.emplace_back(name, gen_matrix(s));
  };
  auto poly_slot = [&](size_t slot, const char* name, const char* family) {
    GenSpec s = slot_spec(c, slot, family);
    s.seed = seed_for(slot);
    data.polynomials.emplace_back(name, gen_polynomial(s));
  };

  if (id == "hoffman-wielandt") {
    matrix_slot(0, "a", "normal");
    matrix_slot(1, "b", "normal");
  } else if (id == "poly-hoffman-wielandt" || id == "poly-universal" ||
             id == "unitary-2mn") {
    poly_slot(0, "p", "monic-normal-companion");
    poly_slot(1, "q", "monic-normal-companion");
  } else if (id == "normal-vs-arbitrary") {
    matrix_slot(0, "a", "normal");
    matrix_slot(1, "b", "arbitrary");
  } else if (id == "kahan") {
    matrix_slot(0, "a", "hermitian");
    matrix_slot(1, "b", "arbitrary");
  } else if (id == "poly-kahan") {
    poly_slot(0, "p", "monic-hermitian-companion");
    poly_slot(1, "q", "monic-hermitian-companion");
  } else if (id == "elsner" || id == "det-perturbation") {
    matrix_slot(0, "a", "arbitrary");
    matrix_slot(1, "b", "arbitrary");
  } else if (id == "nbounded") {
    poly_slot(0, "p", "monic-arbitrary");
    poly_slot(1, "q", "monic-arbitrary");
    for (auto& entry : data.polynomials)
      clamp_tuple_norm(entry.second, c.p, 0.95 * c.params.cap);
  } else if (id == "nonmonic-ball") {
    const GenSpec s0 = slot_spec(c, 0, "nonmonic-well-conditioned");
    MatrixPolynomial abar = gen_nonmonic_well_conditioned(s0.n, s0.m, seed_for(0));
    Xoshiro256pp aux(seed_for(3));
    const double r1 = aux.uniform(c.params.radius_lo, c.params.radius_hi);
    const double r2 = aux.uniform(c.params.radius_lo, c.params.radius_hi);
    data.polynomials.emplace_back("p", gen_nonmonic_in_ball(abar, r1, seed_for(1)));
    data.polynomials.emplace_back("q", gen_nonmonic_in_ball(abar, r2, seed_for(2)));
    data.polynomials.emplace_back("abar", std::move(abar));
  } else if (id == "wielandt-scalar") {
    const GenSpec s0 = slot_spec(c, 0, "hermitian-in-interval");
    data.interval_max = s0.interval_max;
    data.interval_min = s0.interval_min;
    data.has_interval = true;
    data.matrices.emplace_back(
        "a", gen_hermitian_in_interval(s0.n, s0.interval_max, s0.interval_min,
                                       seed_for(0)));
    auto [x, y] = gen_orthonormal_pair(s0.n, seed_for(1));
    data.matrices.emplace_back("x", std::move(x));
    data.matrices.emplace_back("y", std::move(y));
  } else if (id == "wielandt-poly") {
    const GenSpec s0 = slot_spec(c, 0, "hermitian-in-interval");
    data.interval_max = s0.interval_max;
    data.interval_min = s0.interval_min;
    data.has_interval = true;
    std::vector<ComplexMatrix> coeffs;
    coeffs.reserve(s0.m + 1);
    for (int i = 0; i <= s0.m; ++i)
      coeffs.push_back(gen_hermitian_in_interval(s0.n, s0.interval_max,
                                                 s0.interval_min, seed_for(i)));
    data.polynomials.emplace_back("p", MatrixPolynomial(std::move(coeffs)));
    auto [x, y] = gen_orthonormal_pair(s0.n, seed_for(s0.m + 1));
    data.matrices.emplace_back("x", std::move(x));
    data.matrices.emplace_back("y", std::move(y));
    Xoshiro256pp aux(seed_for(s0.m + 2));
    const double angle = 2.0 * std::numbers::pi * aux.uniform01();
    data.lambda = std::polar(c.params.lambda_radius, angle);
  } else {
    throw ConfigError("unknown bound id: " + id);
  }
  return data;
}

BoundReport evaluate_trial(const CampaignConfig& c, const TrialData& d) {
  const std::string& id = c.bound_id;
  if (id == "hoffman-wielandt")
    return check_hoffman_wielandt(mat(d, "a"), mat(d, "b"));
  if (id == "poly-hoffman-wielandt")
    return check_polynomial_hoffman_wielandt(poly(d, "p"), poly(d, "q"));
  if (id == "normal-vs-arbitrary")
    return check_normal_vs_arbitrary(mat(d, "a"), mat(d, "b"));
  if (id == "kahan") return check_kahan(mat(d, "a"), mat(d, "b"), c.p);
  if (id == "poly-universal")
    return check_polynomial_universal(poly(d, "p"), poly(d, "q"), c.p);
  if (id == "unitary-2mn") return check_unitary_2mn(poly(d, "p"), poly(d, "q"), c.p);
  if (id == "poly-kahan")
    return check_polynomial_kahan(poly(d, "p"), poly(d, "q"), c.p);
  if (id == "elsner") return check_elsner(mat(d, "a"), mat(d, "b"), c.p);
  if (id == "nbounded")
    return check_nbounded(poly(d, "p"), poly(d, "q"), c.p, c.params.cap);
  if (id == "det-perturbation")
    return check_det_perturbation(mat(d, "a"), mat(d, "b"), c.p);
  if (id == "nonmonic-ball")
    return check_nonmonic_ball(poly(d, "p"), poly(d, "q"), poly(d, "abar"));
  if (id == "wielandt-scalar")
    return check_wielandt_scalar(mat(d, "a"), d.interval_max, d.interval_min,
                                 mat(d, "x"), mat(d, "y"));
  if (id == "wielandt-poly")
    return check_wielandt_polynomial(poly(d, "p"), d.interval_max, d.interval_min,
                                     mat(d, "x"), mat(d, "y"), *d.lambda);
  throw ConfigError("unknown bound id: " + id);
}

double number_field(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number())
    throw ConfigError(std::string("field \"") + key + "\" must be a number");
  return j.at(key).get<double>();
}

GenSpec parse_slot_spec(const Json& j) {
  if (!j.is_object()) throw ConfigError("every gen_specs entry must be an object");
  GenSpec s;
  if (j.contains("family")) {
    if (!j.at("family").is_string())
      throw ConfigError("gen spec \"family\" must be a string");
    s.family = j.at("family").get<std::string>();
  }
  if (!j.contains("n") || !j.at("n").is_number_integer())
    throw ConfigError("every gen spec requires an integer \"n\"");
  s.n = j.at("n").get<int>();
  if (s.n < 1) throw ConfigError("gen spec \"n\" must be >= 1");
  if (j.contains("m")) {
    if (!j.at("m").is_number_integer())
      throw ConfigError("gen spec \"m\" must be an integer");
    s.m = j.at("m").get<int>();
    if (s.m < 1) throw ConfigError("gen spec \"m\" must be >= 1");
  }
  s.scale = number_field(j, "scale", s.scale);
  s.interval_max = number_field(j, "a", s.interval_max);
  s.interval_min = number_field(j, "b", s.interval_min);
  s.radius_fraction = number_field(j, "radius", s.radius_fraction);
  return s;
}

CampaignSummary summarize(const CampaignConfig& c,
                          const std::vector<TrialRecord>& records) {
  CampaignSummary s;
  s.trials = static_cast<int>(records.size());
  s.has_empirical_c = (c.bound_id == "poly-universal");
  double slack_sum = 0.0;
  for (const TrialRecord& rec : records) {
    const BoundReport& r = rec.report;
    if (!r.subassertions_ok()) ++s.subassertion_failures;
    if (!r.hypotheses_met) continue;
    ++s.hypotheses_met_trials;
    if (!r.holds) ++s.violations;
    slack_sum += r.slack_ratio;
    if (s.argmax_trial < 0 || r.slack_ratio > s.max_slack_ratio) {
      s.max_slack_ratio = r.slack_ratio;
      s.argmax_trial = rec.trial;
      s.argmax_trial_seed = rec.trial_seed;
    }
    if (s.has_empirical_c) {
      auto it = r.constants.find("empirical_c_ratio");
      if (it != r.constants.end())
        s.max_empirical_c_ratio = std::max(s.max_empirical_c_ratio, it->second);
    }
  }
  if (s.hypotheses_met_trials > 0)
    s.mean_slack_ratio = slack_sum / s.hypotheses_met_trials;
  return s;
}

}  // namespace

CampaignConfig campaign_config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("campaign config must be a JSON object");
  CampaignConfig c;

  if (!j.contains("bound_id") || !j.at("bound_id").is_string())
    throw ConfigError("config requires a string \"bound_id\"");
  c.bound_id = j.at("bound_id").get<std::string>();
  if (known_bounds().count(c.bound_id) == 0)
    throw ConfigError("unknown bound id: " + c.bound_id);

  if (!j.contains("trials") || !j.at("trials").is_number_integer())
    throw ConfigError("config requires an integer \"trials\"");
  c.trials = j.at("trials").get<int>();
  if (c.trials < 1) throw ConfigError("trials must be >= 1");

  if (j.contains("p")) {
    const Json& pj = j.at("p");
    try {
      if (pj.is_string())
        c.p = PNorm::parse(pj.get<std::string>());
      else if (pj.is_number())
        c.p = PNorm::finite(pj.get<double>());
      else
        throw ConfigError("\"p\" must be a number or a string");
    } catch (const UnsupportedPNorm& e) {
      throw ConfigError(e.what());
    }
  }

  if (j.contains("strict_hypotheses")) {
    if (!j.at("strict_hypotheses").is_boolean())
      throw ConfigError("\"strict_hypotheses\" must be a boolean");
    c.strict_hypotheses = j.at("strict_hypotheses").get<bool>();
  }

  if (!j.contains("seed") || !j.at("seed").is_number_integer())
    throw ConfigError("config requires an integer \"seed\"");
  c.seed = j.at("seed").get<std::uint64_t>();

  if (!j.contains("gen_specs") || !j.at("gen_specs").is_array() ||
      j.at("gen_specs").empty())
    throw ConfigError("config requires a nonempty array \"gen_specs\"");
  for (const Json& g : j.at("gen_specs")) c.gen_specs.push_back(parse_slot_spec(g));

  if (j.contains("params")) {
    const Json& pj = j.at("params");
    if (!pj.is_object()) throw ConfigError("\"params\" must be an object");
    c.params.cap = number_field(pj, "N", c.params.cap);
    c.params.lambda_radius = number_field(pj, "lambda_radius", c.params.lambda_radius);
    c.params.radius_lo = number_field(pj, "radius_lo", c.params.radius_lo);
    c.params.radius_hi = number_field(pj, "radius_hi", c.params.radius_hi);
  }

  if (j.contains("output_path")) {
    if (!j.at("output_path").is_string())
      throw ConfigError("\"output_path\" must be a string");
    c.output_path = j.at("output_path").get<std::string>();
  }
  if (j.contains("format")) {
    if (!j.at("format").is_string())
      throw ConfigError("\"format\" must be a string");
    c.format = j.at("format").get<std::string>();
  }
  if (c.format != "json" && c.format != "csv")
    throw ConfigError("format must be \"json\" or \"csv\"");
  return c;
}

CampaignResult run_campaign(const CampaignConfig& config, int threads) {
  if (known_bounds().count(config.bound_id) == 0)
    throw ConfigError("unknown bound id: " + config.bound_id);
  if (config.trials < 1) throw ConfigError("trials must be >= 1");
  if (config.gen_specs.empty())
    throw ConfigError("campaign requires at least one gen spec");

  const auto start = std::chrono::steady_clock::now();
  const int n_trials = config.trials;
  std::vector<TrialRecord> records(n_trials);

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const int t = next.fetch_add(1);
      if (t >= n_trials) return;
      try {
        const std::uint64_t trial_seed = derive_seed(config.seed, t);
        TrialData data = generate_trial(config, trial_seed);
        BoundReport report = evaluate_trial(config, data);
        if (config.strict_hypotheses && !report.hypotheses_met) {
          std::string names;
          for (const std::string& h : report.failed_hypotheses) {
            if (!names.empty()) names += ", ";
            names += h;
          }
          throw HypothesisViolation("trial " + std::to_string(t) +
                                    " failed hypotheses: " + names);
        }
        records[t] = TrialRecord{t, trial_seed, std::move(report)};
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  const int worker_count = std::clamp(threads, 1, 256);
  if (worker_count <= 1 || n_trials <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  CampaignResult result;
  result.config = config;
  result.records = std::move(records);
  result.summary = summarize(config, result.records);
  result.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

Json trial_inputs_json(const CampaignConfig& config, int trial) {
  const std::uint64_t trial_seed = derive_seed(config.seed, trial);
  const TrialData data = generate_trial(config, trial_seed);
  Json j;
  for (const auto& [name, value] : data.polynomials) j[name] = polynomial_to_json(value);
  for (const auto& [name, value] : data.matrices) j[name] = matrix_to_json(value);
  if (data.has_interval) {
    j["a"] = data.interval_max;
    j["b"] = data.interval_min;
  }
  if (data.lambda)
    j["lambda"] = Json::array({data.lambda->real(), data.lambda->imag()});
  return j;
}

Json campaign_config_echo(const CampaignConfig& config) {
  Json j;
  j["bound_id"] = config.bound_id;
  j["trials"] = config.trials;
  j["p"] = config.p.to_string();
  j["strict_hypotheses"] = config.strict_hypotheses;
  j["seed"] = config.seed;
  Json specs = Json::array();
  for (const GenSpec& s : config.gen_specs) {
    Json g = genspec_to_json(s);
    g.erase("seed");
    specs.push_back(g);
  }
  j["gen_specs"] = specs;
  j["params"] = Json{{"N", config.params.cap},
                     {"lambda_radius", config.params.lambda_radius},
                     {"radius_lo", config.params.radius_lo},
                     {"radius_hi", config.params.radius_hi}};
  j["format"] = config.format;
  return j;
}

Json campaign_report_json(const CampaignResult& result) {
  const CampaignSummary& s = result.summary;
  Json j;
  j["config"] = campaign_config_echo(result.config);

  Json summary;
  summary["trials"] = s.trials;
  summary["violations"] = s.violations;
  summary["subassertion_failures"] = s.subassertion_failures;
  summary["hypotheses_met_trials"] = s.hypotheses_met_trials;
  summary["max_slack_ratio"] = s.max_slack_ratio;
  summary["mean_slack_ratio"] = s.mean_slack_ratio;
  summary["argmax_trial"] = s.argmax_trial;
  summary["argmax_trial_seed"] = s.argmax_trial_seed;
  if (s.has_empirical_c) summary["max_empirical_c_ratio"] = s.max_empirical_c_ratio;
  j["summary"] = summary;

  Json violations = Json::array();
  for (const TrialRecord& rec : result.records) {
    if (!(rec.report.hypotheses_met && !rec.report.holds)) continue;
    Json v;
    v["trial"] = rec.trial;
    v["trial_seed"] = rec.trial_seed;
    v["report"] = report_to_json(rec.report);
    v["inputs"] = trial_inputs_json(result.config, rec.trial);
    violations.push_back(v);
  }
  j["violations"] = violations;

  if (static_cast<int>(result.records.size()) <= kPerTrialCap) {
    Json per_trial = Json::array();
    for (const TrialRecord& rec : result.records) {
      Json t;
      t["trial"] = rec.trial;
      t["trial_seed"] = rec.trial_seed;
      t["report"] = report_to_json(rec.report);
      per_trial.push_back(t);
    }
    j["per_trial"] = per_trial;
  } else {
    j["per_trial_elided"] = true;
  }
  j["wall_time_seconds"] = result.wall_time_seconds;
  return j;
}

std::string campaign_report_csv(const CampaignResult& result) {
  std::string out = "bound_id,lhs,rhs,slack_ratio,holds\n";
  for (const TrialRecord& rec : result.records) {
    const BoundReport& r = rec.report;
    out += r.bound_id;
    out += ',';
    out += fmt_double(r.lhs);
    out += ',';
    out += fmt_double(r.rhs);
    out += ',';
    out += fmt_double(r.slack_ratio);
    out += ',';
    out += r.holds ? "true" : "false";
    out += '\n';
  }
  return out;
}

}  // namespace polyspec
