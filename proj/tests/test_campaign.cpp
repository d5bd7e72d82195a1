#include <sstream>
#include <string>

#include "doctest.h"
#include "polyspec/campaign.hpp"

using namespace polyspec;

namespace {

Json base_config(const std::string& bound_id, int trials, std::uint64_t seed,
                 Json gen_specs) {
  Json j;
  j["bound_id"] = bound_id;
  j["trials"] = trials;
  j["seed"] = seed;
  j["gen_specs"] = std::move(gen_specs);
  return j;
}

int csv_field_count(const std::string& line) {
  int fields = 1;
  for (char ch : line)
    if (ch == ',') ++fields;
  return fields;
}

}  // namespace

TEST_CASE("hoffman-wielandt campaign smoke run") {
  const Json j = base_config("hoffman-wielandt", 25, 7,
                             Json::array({Json{{"family", "normal"}, {"n", 3}}}));
  const CampaignConfig config = campaign_config_from_json(j);
  const CampaignResult result = run_campaign(config);
  CHECK(result.summary.trials == 25);
  CHECK(result.records.size() == 25);
  CHECK(result.summary.violations == 0);
  CHECK(result.summary.subassertion_failures == 0);
  CHECK(result.summary.hypotheses_met_trials == 25);
  CHECK(result.summary.max_slack_ratio <= 1.0 + 1e-9);
  CHECK(result.summary.argmax_trial >= 0);
  for (const TrialRecord& rec : result.records) {
    CHECK(rec.report.holds);
    CHECK(rec.report.hypotheses_met);
  }
}

TEST_CASE("trial seeds follow the documented derivation") {
  const Json j = base_config("kahan", 5, 900,
                             Json::array({Json{{"family", "hermitian"}, {"n", 2}}}));
  const CampaignResult result = run_campaign(campaign_config_from_json(j));
  for (int t = 0; t < 5; ++t) {
    CHECK(result.records[t].trial == t);
    CHECK(result.records[t].trial_seed == derive_seed(900, t));
  }
}

TEST_CASE("reports are byte-identical across reruns and thread counts") {
  const Json j = base_config("poly-hoffman-wielandt", 40, 31337,
                             Json::array({Json{{"n", 2}, {"m", 2}}}));
  const CampaignConfig config = campaign_config_from_json(j);

  CampaignResult r1 = run_campaign(config, 1);
  CampaignResult r2 = run_campaign(config, 1);
  CampaignResult r4 = run_campaign(config, 4);

  // wall time is the one nondeterministic field and it sits outside summary
  const auto strip = [](CampaignResult& r) {
    Json j = campaign_report_json(r);
    j.erase("wall_time_seconds");
    return j.dump(2);
  };
  const std::string d1 = strip(r1);
  CHECK(d1 == strip(r2));
  CHECK(d1 == strip(r4));
}

TEST_CASE("seed changes the stream") {
  Json j = base_config("elsner", 10, 1,
                       Json::array({Json{{"family", "arbitrary"}, {"n", 3}}}));
  const CampaignResult a = run_campaign(campaign_config_from_json(j));
  j["seed"] = 2;
  const CampaignResult b = run_campaign(campaign_config_from_json(j));
  CHECK(a.records[0].report.lhs != b.records[0].report.lhs);
}

TEST_CASE("every campaign-capable bound runs clean on its canonical families") {
  for (const char* bound_id :
       {"hoffman-wielandt", "poly-hoffman-wielandt", "normal-vs-arbitrary", "kahan",
        "poly-universal", "unitary-2mn", "poly-kahan", "elsner", "nbounded",
        "det-perturbation", "nonmonic-ball", "wielandt-scalar", "wielandt-poly"}) {
    Json spec = Json{{"n", 2}};
    if (std::string(bound_id).rfind("poly", 0) == 0 || bound_id == std::string("unitary-2mn") ||
        bound_id == std::string("nbounded") || bound_id == std::string("nonmonic-ball"))
      spec["m"] = 2;
    const Json j = base_config(bound_id, 8, 555, Json::array({spec}));
    const CampaignResult result = run_campaign(campaign_config_from_json(j));
    INFO("bound " << bound_id);
    CHECK(result.summary.trials == 8);
    CHECK(result.summary.violations == 0);
    CHECK(result.summary.subassertion_failures == 0);
    CHECK(result.summary.hypotheses_met_trials == 8);
  }
}

TEST_CASE("empirical constant is tracked for the universal bound only") {
  Json spec = Json{{"n", 2}, {"m", 2}};
  const Json ju = base_config("poly-universal", 6, 11, Json::array({spec}));
  const CampaignResult ru = run_campaign(campaign_config_from_json(ju));
  CHECK(ru.summary.has_empirical_c);
  CHECK(ru.summary.max_empirical_c_ratio > 0.0);
  const Json report = campaign_report_json(ru);
  CHECK(report.at("summary").contains("max_empirical_c_ratio"));

  const Json jh = base_config("hoffman-wielandt", 6, 11,
                              Json::array({Json{{"family", "normal"}, {"n", 2}}}));
  const CampaignResult rh = run_campaign(campaign_config_from_json(jh));
  CHECK_FALSE(rh.summary.has_empirical_c);
  CHECK_FALSE(campaign_report_json(rh).at("summary").contains("max_empirical_c_ratio"));
}

TEST_CASE("csv export has one row per trial and five fields") {
  const Json j = base_config("kahan", 12, 5,
                             Json::array({Json{{"family", "hermitian"}, {"n", 2}}}));
  CampaignConfig config = campaign_config_from_json(j);
  config.format = "csv";
  const CampaignResult result = run_campaign(config);
  const std::string csv = campaign_report_csv(result);

  std::istringstream lines(csv);
  std::string line;
  int rows = 0;
  bool first = true;
  while (std::getline(lines, line)) {
    CHECK(csv_field_count(line) == 5);
    if (first) {
      CHECK(line == "bound_id,lhs,rhs,slack_ratio,holds");
      first = false;
    } else {
      ++rows;
    }
  }
  CHECK(rows == 12);
}

TEST_CASE("strict mode raises on the first hypothesis failure") {
  // arbitrary matrices are almost surely not normal
  Json j = base_config("hoffman-wielandt", 5, 17,
                       Json::array({Json{{"family", "arbitrary"}, {"n", 3}}}));
  j["strict_hypotheses"] = true;
  CHECK_THROWS_AS(run_campaign(campaign_config_from_json(j)), HypothesisViolation);

  j["strict_hypotheses"] = false;
  const CampaignResult relaxed = run_campaign(campaign_config_from_json(j));
  CHECK(relaxed.summary.hypotheses_met_trials == 0);
  CHECK(relaxed.summary.violations == 0);
}

TEST_CASE("violation records carry replayable inputs") {
  const Json j = base_config("hoffman-wielandt", 3, 23,
                             Json::array({Json{{"family", "normal"}, {"n", 2}}}));
  const CampaignConfig config = campaign_config_from_json(j);
  const Json inputs_a = trial_inputs_json(config, 1);
  const Json inputs_b = trial_inputs_json(config, 1);
  CHECK(inputs_a.dump() == inputs_b.dump());
  CHECK(inputs_a.contains("a"));
  CHECK(inputs_a.contains("b"));
}

TEST_CASE("config echo excludes the output path and pins the determinants of the run") {
  Json j = base_config("nbounded", 4, 99, Json::array({Json{{"n", 2}, {"m", 2}}}));
  j["p"] = "inf";
  j["output_path"] = "/tmp/somewhere.json";
  j["params"] = Json{{"N", 3.0}};
  const CampaignConfig config = campaign_config_from_json(j);
  const Json echo = campaign_config_echo(config);
  CHECK_FALSE(echo.contains("output_path"));
  CHECK(echo.at("bound_id") == "nbounded");
  CHECK(echo.at("p") == "inf");
  CHECK(echo.at("seed") == 99);
  CHECK(echo.at("params").at("N") == 3.0);
}

TEST_CASE("config validation rejects malformed inputs") {
  CHECK_THROWS_AS(campaign_config_from_json(Json::array()), ConfigError);
  CHECK_THROWS_AS(campaign_config_from_json(Json{{"trials", 3}}), ConfigError);

  Json j = base_config("no-such-bound", 3, 1, Json::array({Json{{"n", 2}}}));
  CHECK_THROWS_AS(campaign_config_from_json(j), ConfigError);

  j = base_config("kahan", 0, 1, Json::array({Json{{"n", 2}}}));
  CHECK_THROWS_AS(campaign_config_from_json(j), ConfigError);

  j = base_config("kahan", 3, 1, Json::array());
  CHECK_THROWS_AS(campaign_config_from_json(j), ConfigError);

  j = base_config("kahan", 3, 1, Json::array({Json{{"family", "hermitian"}}}));
  CHECK_THROWS_AS(campaign_config_from_json(j), ConfigError);

  j = base_config("kahan", 3, 1, Json::array({Json{{"n", 2}}}));
  j["format"] = "yaml";
  CHECK_THROWS_AS(campaign_config_from_json(j), ConfigError);

  j = base_config("kahan", 3, 1, Json::array({Json{{"n", 2}}}));
  j["p"] = "0.25";
  CHECK_THROWS_AS(campaign_config_from_json(j), ConfigError);
}
