#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stretchlab/bounds.hpp"

namespace stretchlab {

// Bad experiment configuration (schema, ranges, impossible combinations).
// Distinct from IoError so the CLI can map them to different exit codes.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Slack function w(n) for the asymptotic bounds. Text forms: "log_n",
// "sqrt_log_n", "const:K".
struct WChoice {
  enum class Kind { kLogN, kSqrtLogN, kConstant };
  Kind kind = Kind::kLogN;
  double value = 0.0;  // kConstant only

  double evaluate(std::uint64_t n) const;
  std::string to_string() const;
  static WChoice parse(const std::string& text);
};

enum class GeneratorKind { kDirect, kThreePhase };

std::string to_string(GeneratorKind g);

struct ExperimentSpec {
  std::string name;
  std::vector<std::uint64_t> n_grid;
  PExpression p_expr;
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
  std::vector<double> lambda_grid;
  WChoice w_choice;
  GeneratorKind generator = GeneratorKind::kDirect;
  std::optional<double> c_override;  // any value in (0, 1/(16 pi))
  std::string output_path;           // prefix for emitted files
  // timings perturb bytes between reruns, so they are opt-in
  bool record_timings = false;
};

// Throws ConfigError on any violated invariant, including a staged run whose
// n admits no usable first-stage count.
void validate_spec(const ExperimentSpec& spec);

std::string spec_to_json(const ExperimentSpec& spec);

// Parses and validates; unknown keys are rejected to catch typos.
ExperimentSpec spec_from_json(const std::string& text);

// First-stage vertex count for the staged generator at this n: c_override
// rounded to the nearest even integer (at least 2) when set, otherwise the
// window pick. ConfigError when neither works.
std::uint64_t staged_first_count(const ExperimentSpec& spec, std::uint64_t n);

struct TrialRecord {
  std::uint64_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  bool connected = false;
  bool defined = false;  // stretch defined iff connected and no failure
  double stretch = 0.0;
  std::uint32_t pair_i = 0;
  std::uint32_t pair_j = 0;
  bool has_runtime = false;
  double runtime_ms = 0.0;
  // generator tag; a trial that failed outright carries
  // "<generator>:error:<reason>" and reads as disconnected
  std::string generator;
  bool staged = false;  // conditioning_ok / nice_disc_count applicable
  bool conditioning_ok = false;
  std::uint64_t nice_disc_count = 0;

  bool operator==(const TrialRecord&) const = default;
};

// One row per (n, lambda). Tail probabilities over all trials count an
// undefined stretch as an exceedance; the conditional ones restrict to
// connected trials; below_prob asks for connected AND small. The two
// lambda-independent columns are repeated across the lambda block.
struct SummaryRow {
  std::uint64_t n = 0;
  double lambda = 0.0;
  std::uint64_t count = 0;
  std::uint64_t connected_count = 0;
  double tail_prob = 0.0;      // P(F > lambda)
  double tail_prob_se = 0.0;
  double tail_con_prob = 0.0;  // P(F > lambda | CON), 0 when nothing connects
  double tail_con_prob_se = 0.0;
  double tail_2l1_prob = 0.0;  // P(F > 2*lambda + 1)
  double below_prob = 0.0;     // P(CON and F < lambda)
  double lower_exceed_prob = 0.0;  // P(F > sqrt(n(1-p))/w)
  double upper_within_prob = 0.0;  // P(CON and F <= 1 + w*sqrt(n(1-p))/p)
  bool has_con_stats = false;
  double q10 = 0.0;  // quantiles and mean of F | CON
  double q50 = 0.0;
  double q90 = 0.0;
  double mean_con = 0.0;
  double mean_con_se = 0.0;
};

// Bound comparison per (n, lambda). NaN doubles mean "not applicable" and
// become empty CSV cells / JSON nulls.
struct ReportRow {
  std::uint64_t n = 0;
  double lambda = 0.0;
  double p = 0.0;
  double w = 0.0;
  std::uint64_t trials = 0;
  double tail_2l1_prob = 0.0;
  double tail_bound = 0.0;  // raw formula, may exceed 1
  double tail_slack = 0.0;  // 3*sqrt(bound*(1-bound)/trials) when bound <= 1
  bool tail_violation = false;
  double lower_threshold = 0.0;
  double lower_exceed_prob = 0.0;
  double upper_bound = 0.0;
  bool upper_ok = false;  // density precondition
  double upper_within_prob = 0.0;
  double expected_bound = 0.0;
  bool expected_ok = false;
  bool expected_slack = false;  // carries an unquantified o(1)
  double mean_con = 0.0;
  double expected_gap = 0.0;  // bound - mean, positive means consistent
  double small_c = 0.0;       // c used for the anti-concentration bound
  double small_bound = 0.0;
  bool small_ok = false;
  bool small_slack = false;
  double below_prob = 0.0;
  double small_gap = 0.0;  // bound - empirical, positive means consistent
};

// One trial: seed derived purely from (master_seed, n, trial_index), so any
// execution order and any trial-count extension reproduce the same record.
// Generator or stretch failures are folded into the record, never thrown.
TrialRecord run_trial(const ExperimentSpec& spec, std::uint64_t n,
                      std::uint64_t trial_index);

struct ExperimentResult {
  std::vector<TrialRecord> records;  // n-grid order, trial index ascending
  std::vector<SummaryRow> summary;
};

// All trials for all grid points. The record layout is fixed (grid-major,
// trial-minor) and each worker writes only its own slot, so the result is
// byte-identical for every thread count.
ExperimentResult run_experiment(const ExperimentSpec& spec,
                                unsigned threads = 1);

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records,
                                  const ExperimentSpec& spec);

std::vector<ReportRow> compare_to_bounds(
    const std::vector<SummaryRow>& summary, const ExperimentSpec& spec);

bool any_violation(const std::vector<ReportRow>& report);

// Serialization. CSV columns for records, in order:
// n,p,seed,connected,stretch,pair_i,pair_j,runtime_ms,generator,
// conditioning_ok,nice_disc_count — empty cells where not applicable; the
// JSON mirrors the same fields with nulls, and parses back exactly.
std::string records_to_csv(const std::vector<TrialRecord>& records);
std::string records_to_json(const std::vector<TrialRecord>& records);
std::vector<TrialRecord> records_from_json(const std::string& text);
std::string summary_to_csv(const std::vector<SummaryRow>& summary);
std::string summary_to_json(const std::vector<SummaryRow>& summary);
std::string report_to_csv(const std::vector<ReportRow>& report);
std::string report_to_json(const std::vector<ReportRow>& report);

// Writes {prefix}_records.{csv,json}, {prefix}_summary.{csv,json},
// {prefix}_report.{csv,json}.
void emit_all(const ExperimentResult& result,
              const std::vector<ReportRow>& report,
              const std::string& output_prefix);

}  // namespace stretchlab
