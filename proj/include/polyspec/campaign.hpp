#pragma once

/*
 * Randomized verification campaigns: run one bound check over many seeded
 * trials and aggregate the outcomes.
 *
 * Determinism contract: the full result is a pure function of (config,
 * build).  Trial t derives its seed as derive_seed(config.seed, t), every
 * input of the trial derives a further stream from that, and aggregation
 * walks records in trial order, so the report is identical no matter how
 * many threads computed it.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "polyspec/bounds.hpp"
#include "polyspec/genlab.hpp"
#include "polyspec/json_io.hpp"

namespace polyspec {

// Tuning knobs consumed by specific bounds; ignored elsewhere.
struct CampaignParams {
  double cap = 5.0;            // coefficient-tuple cap N (nbounded)
  double lambda_radius = 1.5;  // |lambda| of the evaluation point (wielandt-poly)
  double radius_lo = 0.05;     // in-ball perturbation range (nonmonic-ball)
  double radius_hi = 0.9;
};

struct CampaignConfig {
  std::string bound_id;
  int trials = 1;
  PNorm p = PNorm::finite(2.0);
  bool strict_hypotheses = false;
  std::uint64_t seed = 0;
  std::vector<GenSpec> gen_specs;  // per-input-slot; last entry repeats
  CampaignParams params;
  std::string output_path;  // empty: write to stdout
  std::string format = "json";
};

// Parses and validates a config object; throws ConfigError on anything
// malformed (unknown bound_id, trials < 1, missing n, bad format, ...).
CampaignConfig campaign_config_from_json(const Json& j);

struct TrialRecord {
  int trial = 0;
  std::uint64_t trial_seed = 0;
  BoundReport report;
};

struct CampaignSummary {
  int trials = 0;
  int violations = 0;              // hypotheses met and bound failed
  int subassertion_failures = 0;   // any sub_* constant at 0
  int hypotheses_met_trials = 0;
  double max_slack_ratio = 0.0;    // over trials with hypotheses met
  double mean_slack_ratio = 0.0;
  int argmax_trial = -1;
  std::uint64_t argmax_trial_seed = 0;
  bool has_empirical_c = false;
  double max_empirical_c_ratio = 0.0;
};

struct CampaignResult {
  CampaignConfig config;
  std::vector<TrialRecord> records;  // trial order
  CampaignSummary summary;
  double wall_time_seconds = 0.0;
};

// Runs all trials (in parallel when threads > 1; identical output either
// way).  In strict mode the first trial whose hypotheses fail raises
// HypothesisViolation.
CampaignResult run_campaign(const CampaignConfig& config, int threads = 1);

// Regenerates the exact inputs of one trial and serializes them; used for
// violation replay artifacts and by the CLI for debugging.
Json trial_inputs_json(const CampaignConfig& config, int trial);

// Config echo embedded in reports: everything that determines the numbers
// (excludes output_path; thread count never appears anywhere).
Json campaign_config_echo(const CampaignConfig& config);

// Full JSON report: config echo, summary, violation artifacts with
// replayable inputs, per-trial reports (elided above 1e5 trials), wall
// time last and outside the summary.
Json campaign_report_json(const CampaignResult& result);

// Flat CSV export, one row per trial: bound_id,lhs,rhs,slack_ratio,holds.
std::string campaign_report_csv(const CampaignResult& result);

}  // namespace polyspec
