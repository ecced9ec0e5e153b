#include "stretchlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "json.hpp"
#include "stretchlab/constructs.hpp"
#include "stretchlab/io.hpp"
#include "stretchlab/model.hpp"
#include "stretchlab/parallel.hpp"
#include "stretchlab/rng.hpp"
#include "stretchlab/stats.hpp"
#include "stretchlab/stretch.hpp"

namespace stretchlab {

namespace {

using ordered = nlohmann::ordered_json;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kCWindowHi = 1.0 / (16.0 * 3.14159265358979323846);

[[noreturn]] void config_fail(const std::string& what) {
  throw ConfigError(what);
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double WChoice::evaluate(std::uint64_t n) const {
  switch (kind) {
    case Kind::kLogN:
      return std::log(static_cast<double>(n));
    case Kind::kSqrtLogN:
      return std::sqrt(std::log(static_cast<double>(n)));
    case Kind::kConstant:
      return value;
  }
  return 0.0;
}

std::string WChoice::to_string() const {
  switch (kind) {
    case Kind::kLogN:
      return "log_n";
    case Kind::kSqrtLogN:
      return "sqrt_log_n";
    case Kind::kConstant:
      return "const:" + fmt_double(value);
  }
  return {};
}

WChoice WChoice::parse(const std::string& text) {
  WChoice w;
  if (text == "log_n") {
    w.kind = Kind::kLogN;
    return w;
  }
  if (text == "sqrt_log_n") {
    w.kind = Kind::kSqrtLogN;
    return w;
  }
  if (text.rfind("const:", 0) == 0) {
    const std::string body = text.substr(6);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(body, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("w choice: bad constant in " + text);
    }
    if (used != body.size() || !(v > 0.0)) {
      throw std::invalid_argument("w choice: constant must be > 0 in " +
                                  text);
    }
    w.kind = Kind::kConstant;
    w.value = v;
    return w;
  }
  throw std::invalid_argument(
      "w choice: expected log_n | sqrt_log_n | const:K, got " + text);
}

std::string to_string(GeneratorKind g) {
  return g == GeneratorKind::kDirect ? "direct" : "three_phase";
}

std::uint64_t staged_first_count(const ExperimentSpec& spec,
                                 std::uint64_t n) {
  if (spec.c_override) {
    // nearest even integer, floored at the smallest workable count
    std::uint64_t k = 2 * static_cast<std::uint64_t>(std::llround(
                              *spec.c_override * static_cast<double>(n) /
                              2.0));
    if (k < 2) k = 2;
    if (k > n) {
      config_fail("c_override needs a first-stage count above n at n=" +
                  std::to_string(n));
    }
    return k;
  }
  const PrimaryFraction pf = pick_c(n);
  if (!pf.found) {
    config_fail("no valid primary fraction exists at n=" +
                std::to_string(n) + "; set c_override");
  }
  return pf.k;
}

void validate_spec(const ExperimentSpec& spec) {
  if (spec.trials < 1) config_fail("trials must be >= 1");
  if (spec.n_grid.empty()) config_fail("n_grid must be non-empty");
  if (spec.lambda_grid.empty()) config_fail("lambda_grid must be non-empty");
  if (spec.w_choice.kind == WChoice::Kind::kConstant &&
      !(spec.w_choice.value > 0.0)) {
    config_fail("constant w must be > 0");
  }
  for (const std::uint64_t n : spec.n_grid) {
    if (n < 1) config_fail("n_grid entries must be >= 1");
    if (n < 2 && spec.w_choice.kind != WChoice::Kind::kConstant) {
      config_fail("w(n) vanishes at n=1; use a constant w or n >= 2");
    }
    const double p = spec.p_expr.evaluate(static_cast<double>(n));
    if (!(p >= 0.0 && p <= 1.0)) {
      config_fail("p_expr leaves [0,1] at n=" + std::to_string(n));
    }
  }
  for (const double lambda : spec.lambda_grid) {
    if (!(lambda > 0.0)) config_fail("lambda_grid entries must be > 0");
  }
  if (spec.c_override &&
      !(*spec.c_override > 0.0 && *spec.c_override < kCWindowHi)) {
    config_fail("c_override must lie in (0, 1/(16 pi))");
  }
  if (spec.generator == GeneratorKind::kThreePhase) {
    for (const std::uint64_t n : spec.n_grid) {
      staged_first_count(spec, n);  // throws when unusable
    }
  }
}

std::string spec_to_json(const ExperimentSpec& spec) {
  ordered j;
  j["name"] = spec.name;
  j["n_grid"] = spec.n_grid;
  j["p_expr"] = spec.p_expr.to_string();
  j["trials"] = spec.trials;
  j["master_seed"] = spec.master_seed;
  j["lambda_grid"] = spec.lambda_grid;
  j["w_choice"] = spec.w_choice.to_string();
  j["generator"] = to_string(spec.generator);
  if (spec.c_override) j["c_override"] = *spec.c_override;
  j["output_path"] = spec.output_path;
  j["record_timings"] = spec.record_timings;
  return j.dump();
}

ExperimentSpec spec_from_json(const std::string& text) {
  ordered j;
  try {
    j = ordered::parse(text);
  } catch (const std::exception& e) {
    config_fail(std::string("config: ") + e.what());
  }
  if (!j.is_object()) config_fail("config: top level must be an object");

  const auto known = {"name",        "n_grid",     "p_expr",
                      "trials",      "master_seed", "lambda_grid",
                      "w_choice",    "generator",  "c_override",
                      "output_path", "record_timings"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      config_fail("config: unknown key \"" + key + "\"");
    }
  }
  for (const std::string key :
       {"name", "n_grid", "p_expr", "trials", "master_seed", "lambda_grid",
        "generator", "output_path"}) {
    if (!j.contains(key)) config_fail("config: missing key \"" + key + "\"");
  }

  ExperimentSpec spec;
  try {
    if (!j["name"].is_string()) config_fail("config: name must be a string");
    spec.name = j["name"].get<std::string>();

    if (!j["n_grid"].is_array()) config_fail("config: n_grid must be an array");
    for (const auto& item : j["n_grid"]) {
      if (!item.is_number_unsigned()) {
        config_fail("config: n_grid entries must be unsigned");
      }
      spec.n_grid.push_back(item.get<std::uint64_t>());
    }

    if (!j["p_expr"].is_string()) {
      config_fail("config: p_expr must be a string");
    }
    spec.p_expr = PExpression::parse(j["p_expr"].get<std::string>());

    if (!j["trials"].is_number_unsigned()) {
      config_fail("config: trials must be unsigned");
    }
    spec.trials = j["trials"].get<std::uint64_t>();

    if (!j["master_seed"].is_number_unsigned()) {
      config_fail("config: master_seed must be unsigned");
    }
    spec.master_seed = j["master_seed"].get<std::uint64_t>();

    if (!j["lambda_grid"].is_array()) {
      config_fail("config: lambda_grid must be an array");
    }
    for (const auto& item : j["lambda_grid"]) {
      if (!item.is_number()) {
        config_fail("config: lambda_grid entries must be numbers");
      }
      spec.lambda_grid.push_back(item.get<double>());
    }

    if (j.contains("w_choice")) {
      if (!j["w_choice"].is_string()) {
        config_fail("config: w_choice must be a string");
      }
      spec.w_choice = WChoice::parse(j["w_choice"].get<std::string>());
    }

    const std::string gen = j["generator"].is_string()
                                ? j["generator"].get<std::string>()
                                : std::string();
    if (gen == "direct") {
      spec.generator = GeneratorKind::kDirect;
    } else if (gen == "three_phase") {
      spec.generator = GeneratorKind::kThreePhase;
    } else {
      config_fail("config: generator must be direct or three_phase");
    }

    if (j.contains("c_override")) {
      if (!j["c_override"].is_number()) {
        config_fail("config: c_override must be a number");
      }
      spec.c_override = j["c_override"].get<double>();
    }

    if (!j["output_path"].is_string()) {
      config_fail("config: output_path must be a string");
    }
    spec.output_path = j["output_path"].get<std::string>();

    if (j.contains("record_timings")) {
      if (!j["record_timings"].is_boolean()) {
        config_fail("config: record_timings must be a boolean");
      }
      spec.record_timings = j["record_timings"].get<bool>();
    }
  } catch (const std::invalid_argument& e) {
    config_fail(std::string("config: ") + e.what());
  }

  validate_spec(spec);
  return spec;
}

namespace {

std::string sanitize_reason(const char* what) {
  std::string out(what);
  for (char& ch : out) {
    if (ch == ',' || ch == '"' || ch == '\n' || ch == '\r') ch = ';';
  }
  return out;
}

}  // namespace

TrialRecord run_trial(const ExperimentSpec& spec, std::uint64_t n,
                      std::uint64_t trial_index) {
  TrialRecord rec;
  rec.n = n;
  rec.p = spec.p_expr.evaluate(static_cast<double>(n));
  rec.seed = derive_seed(spec.master_seed, stream::kTrial, n, trial_index);
  rec.generator = to_string(spec.generator);
  rec.staged = spec.generator == GeneratorKind::kThreePhase;

  const auto start = std::chrono::steady_clock::now();
  try {
    ModelParams params;
    params.n = n;
    params.p = rec.p;
    params.seed = rec.seed;
    StretchReport rep;
    if (rec.staged) {
      const std::uint64_t k = staged_first_count(spec, n);
      const double c_eff =
          static_cast<double>(k) / static_cast<double>(n);
      // the trace's niceness radius is tied to the head of the lambda grid
      const ThreePhaseResult r =
          three_phase_generate(params, c_eff, spec.lambda_grid.front());
      rec.conditioning_ok = r.trace.conditioning_ok;
      rec.nice_disc_count = r.trace.nice_discs.size();
      rep = stretch_factor(r.graph);
    } else {
      rep = stretch_factor(generate(params));
    }
    rec.connected = rep.defined;
    rec.defined = rep.defined;
    if (rep.defined) {
      rec.stretch = rep.value;
      rec.pair_i = rep.pair_i;
      rec.pair_j = rep.pair_j;
    }
  } catch (const std::exception& e) {
    // tagged failure outcome; the record stays, statistics treat it as a
    // disconnected trial
    rec.generator += ":error:" + sanitize_reason(e.what());
    rec.connected = false;
    rec.defined = false;
    rec.conditioning_ok = false;
    rec.nice_disc_count = 0;
  }
  if (spec.record_timings) {
    rec.has_runtime = true;
    rec.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  return rec;
}

ExperimentResult run_experiment(const ExperimentSpec& spec,
                                unsigned threads) {
  validate_spec(spec);
  if (!spec.output_path.empty()) {
    // surfaces an unwritable destination before any trial runs
    write_text_file(spec.output_path + "_records.csv", "");
  }
  ExperimentResult result;
  const std::size_t total =
      spec.n_grid.size() * static_cast<std::size_t>(spec.trials);
  result.records.resize(total);
  parallel_for(total, threads, [&](std::size_t idx) {
    const std::size_t n_idx = idx / spec.trials;
    const std::uint64_t trial = idx % spec.trials;
    result.records[idx] = run_trial(spec, spec.n_grid[n_idx], trial);
  });
  result.summary = summarize(result.records, spec);
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records,
                                  const ExperimentSpec& spec) {
  // group by n, first-appearance order
  std::vector<std::uint64_t> ns;
  std::vector<std::vector<const TrialRecord*>> groups;
  for (const TrialRecord& rec : records) {
    const auto it = std::find(ns.begin(), ns.end(), rec.n);
    if (it == ns.end()) {
      ns.push_back(rec.n);
      groups.emplace_back();
      groups.back().push_back(&rec);
    } else {
      groups[static_cast<std::size_t>(it - ns.begin())].push_back(&rec);
    }
  }

  std::vector<SummaryRow> out;
  for (std::size_t gi = 0; gi < ns.size(); ++gi) {
    const std::uint64_t n = ns[gi];
    const auto& group = groups[gi];
    const double p = group.front()->p;
    const double w = spec.w_choice.evaluate(n);
    const double lower_thr = aas_lower_threshold(n, p, w);
    const bool have_upper = p > 0.0;
    const double upper = have_upper ? aas_upper_bound(n, p, w).value : 0.0;

    std::vector<double> fcon;
    std::uint64_t lower_exceed = 0;
    std::uint64_t upper_within = 0;
    for (const TrialRecord* rec : group) {
      if (rec->defined) fcon.push_back(rec->stretch);
      if (!rec->defined || rec->stretch > lower_thr) ++lower_exceed;
      if (have_upper && rec->defined && rec->stretch <= upper) {
        ++upper_within;
      }
    }
    std::sort(fcon.begin(), fcon.end());
    const std::uint64_t concount = fcon.size();
    const double trials_d = static_cast<double>(group.size());

    double mean_con = kNan;
    double mean_con_se = kNan;
    double q10 = kNan;
    double q50 = kNan;
    double q90 = kNan;
    if (concount > 0) {
      q10 = quantile_sorted(fcon, 0.10);
      q50 = quantile_sorted(fcon, 0.50);
      q90 = quantile_sorted(fcon, 0.90);
      mean_con = mean(fcon);
      if (concount >= 2) {
        double ss = 0.0;
        for (const double v : fcon) ss += (v - mean_con) * (v - mean_con);
        mean_con_se = std::sqrt(ss / static_cast<double>(concount - 1)) /
                      std::sqrt(static_cast<double>(concount));
      } else {
        mean_con_se = 0.0;
      }
    }

    for (const double lambda : spec.lambda_grid) {
      SummaryRow row;
      row.n = n;
      row.lambda = lambda;
      row.count = group.size();
      row.connected_count = concount;
      std::uint64_t tail = 0;
      std::uint64_t tail_con = 0;
      std::uint64_t tail_2l1 = 0;
      std::uint64_t below = 0;
      for (const TrialRecord* rec : group) {
        const bool defined = rec->defined;
        if (!defined || rec->stretch > lambda) ++tail;
        if (defined && rec->stretch > lambda) ++tail_con;
        if (!defined || rec->stretch > 2.0 * lambda + 1.0) ++tail_2l1;
        if (defined && rec->stretch < lambda) ++below;
      }
      row.tail_prob = static_cast<double>(tail) / trials_d;
      row.tail_prob_se = proportion_se(row.tail_prob, group.size());
      if (concount > 0) {
        row.tail_con_prob =
            static_cast<double>(tail_con) / static_cast<double>(concount);
        row.tail_con_prob_se = proportion_se(row.tail_con_prob, concount);
      }
      row.tail_2l1_prob = static_cast<double>(tail_2l1) / trials_d;
      row.below_prob = static_cast<double>(below) / trials_d;
      row.lower_exceed_prob = static_cast<double>(lower_exceed) / trials_d;
      row.upper_within_prob = static_cast<double>(upper_within) / trials_d;
      row.has_con_stats = concount > 0;
      row.q10 = q10;
      row.q50 = q50;
      row.q90 = q90;
      row.mean_con = mean_con;
      row.mean_con_se = mean_con_se;
      out.push_back(row);
    }
  }
  return out;
}

std::vector<ReportRow> compare_to_bounds(
    const std::vector<SummaryRow>& summary, const ExperimentSpec& spec) {
  std::vector<ReportRow> out;
  out.reserve(summary.size());
  for (const SummaryRow& s : summary) {
    ReportRow r;
    r.n = s.n;
    r.lambda = s.lambda;
    r.p = spec.p_expr.evaluate(static_cast<double>(s.n));
    r.w = spec.w_choice.evaluate(s.n);
    r.trials = s.count;
    r.tail_2l1_prob = s.tail_2l1_prob;

    if (r.p > 0.0) {
      r.tail_bound = stretch_tail_bound(s.n, r.p, s.lambda);
      if (r.tail_bound <= 1.0) {
        r.tail_slack = 3.0 * std::sqrt(r.tail_bound * (1.0 - r.tail_bound) /
                                       static_cast<double>(s.count));
        r.tail_violation = s.tail_2l1_prob > r.tail_bound + r.tail_slack;
      } else {
        r.tail_slack = kNan;  // vacuous bound, nothing to check
      }
    } else {
      r.tail_bound = kNan;
      r.tail_slack = kNan;
    }

    r.lower_threshold = aas_lower_threshold(s.n, r.p, r.w);
    r.lower_exceed_prob = s.lower_exceed_prob;

    if (r.p > 0.0) {
      const BoundValue ub = aas_upper_bound(s.n, r.p, r.w);
      r.upper_bound = ub.value;
      r.upper_ok = ub.precondition_ok;
      const BoundValue eb = expected_stretch_bound(s.n, r.p);
      r.expected_bound = eb.value;
      r.expected_ok = eb.precondition_ok;
      r.expected_slack = eb.asymptotic_slack;
    } else {
      r.upper_bound = kNan;
      r.expected_bound = kNan;
    }
    r.upper_within_prob = s.upper_within_prob;
    r.mean_con = s.has_con_stats ? s.mean_con : kNan;
    r.expected_gap = (s.has_con_stats && r.p > 0.0)
                         ? r.expected_bound - s.mean_con
                         : kNan;

    // anti-concentration bound: prefer the c the staged generator actually
    // used; a direct run falls back to the window pick, then the override
    double c = kNan;
    if (spec.generator == GeneratorKind::kThreePhase) {
      const double c_eff =
          static_cast<double>(staged_first_count(spec, s.n)) /
          static_cast<double>(s.n);
      if (c_eff > 0.0 && c_eff < kCWindowHi) c = c_eff;
    } else if (const PrimaryFraction pf = pick_c(s.n); pf.found) {
      c = pf.c;
    } else if (spec.c_override) {
      c = *spec.c_override;
    }
    r.small_c = c;
    r.below_prob = s.below_prob;
    if (!std::isnan(c)) {
      const BoundValue sb = small_stretch_bound(s.n, r.p, s.lambda, c);
      r.small_bound = sb.value;
      r.small_ok = sb.precondition_ok;
      r.small_slack = sb.asymptotic_slack;
      r.small_gap = sb.value - s.below_prob;
    } else {
      r.small_bound = kNan;
      r.small_gap = kNan;
    }
    out.push_back(r);
  }
  return out;
}

bool any_violation(const std::vector<ReportRow>& report) {
  return std::any_of(report.begin(), report.end(),
                     [](const ReportRow& r) { return r.tail_violation; });
}

namespace {

void cell(std::string& out, double v) {
  if (!std::isnan(v)) out += fmt_double(v);
}

void cell(std::string& out, std::uint64_t v) { out += std::to_string(v); }

void cell(std::string& out, bool v) { out += v ? "true" : "false"; }

ordered num_or_null(double v) {
  return std::isnan(v) ? ordered(nullptr) : ordered(v);
}

}  // namespace

std::string records_to_csv(const std::vector<TrialRecord>& records) {
  std::string out =
      "n,p,seed,connected,stretch,pair_i,pair_j,runtime_ms,generator,"
      "conditioning_ok,nice_disc_count\n";
  for (const TrialRecord& r : records) {
    cell(out, r.n);
    out += ',';
    cell(out, r.p);
    out += ',';
    cell(out, r.seed);
    out += ',';
    cell(out, r.connected);
    out += ',';
    if (r.defined) cell(out, r.stretch);
    out += ',';
    if (r.defined) cell(out, static_cast<std::uint64_t>(r.pair_i));
    out += ',';
    if (r.defined) cell(out, static_cast<std::uint64_t>(r.pair_j));
    out += ',';
    if (r.has_runtime) cell(out, r.runtime_ms);
    out += ',';
    out += r.generator;
    out += ',';
    if (r.staged) cell(out, r.conditioning_ok);
    out += ',';
    if (r.staged) cell(out, r.nice_disc_count);
    out += '\n';
  }
  return out;
}

std::string records_to_json(const std::vector<TrialRecord>& records) {
  ordered arr = ordered::array();
  for (const TrialRecord& r : records) {
    ordered j;
    j["n"] = r.n;
    j["p"] = r.p;
    j["seed"] = r.seed;
    j["connected"] = r.connected;
    j["stretch"] = r.defined ? ordered(r.stretch) : ordered(nullptr);
    j["pair_i"] = r.defined ? ordered(r.pair_i) : ordered(nullptr);
    j["pair_j"] = r.defined ? ordered(r.pair_j) : ordered(nullptr);
    j["runtime_ms"] =
        r.has_runtime ? ordered(r.runtime_ms) : ordered(nullptr);
    j["generator"] = r.generator;
    j["conditioning_ok"] =
        r.staged ? ordered(r.conditioning_ok) : ordered(nullptr);
    j["nice_disc_count"] =
        r.staged ? ordered(r.nice_disc_count) : ordered(nullptr);
    arr.push_back(std::move(j));
  }
  return arr.dump();
}

std::vector<TrialRecord> records_from_json(const std::string& text) {
  ordered arr;
  try {
    arr = ordered::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("records json: ") + e.what());
  }
  if (!arr.is_array()) {
    throw std::invalid_argument("records json: top level must be an array");
  }
  std::vector<TrialRecord> out;
  out.reserve(arr.size());
  for (const auto& j : arr) {
    if (!j.is_object() || j.size() != 11) {
      throw std::invalid_argument("records json: bad record shape");
    }
    const auto need = [&](const char* key) -> const ordered& {
      if (!j.contains(key)) {
        throw std::invalid_argument(
            std::string("records json: missing field ") + key);
      }
      return j.at(key);
    };
    TrialRecord r;
    if (!need("n").is_number_unsigned() ||
        !need("seed").is_number_unsigned() || !need("p").is_number() ||
        !need("connected").is_boolean() || !need("generator").is_string()) {
      throw std::invalid_argument("records json: bad field type");
    }
    r.n = j["n"].get<std::uint64_t>();
    r.p = j["p"].get<double>();
    r.seed = j["seed"].get<std::uint64_t>();
    r.connected = j["connected"].get<bool>();
    r.generator = j["generator"].get<std::string>();
    const auto& stretch = need("stretch");
    const auto& pair_i = need("pair_i");
    const auto& pair_j = need("pair_j");
    r.defined = !stretch.is_null();
    if (r.defined) {
      if (!stretch.is_number() || !pair_i.is_number_unsigned() ||
          !pair_j.is_number_unsigned()) {
        throw std::invalid_argument("records json: bad stretch fields");
      }
      r.stretch = stretch.get<double>();
      r.pair_i = pair_i.get<std::uint32_t>();
      r.pair_j = pair_j.get<std::uint32_t>();
    } else if (!pair_i.is_null() || !pair_j.is_null()) {
      throw std::invalid_argument(
          "records json: pair must be null when stretch is");
    }
    const auto& runtime = need("runtime_ms");
    r.has_runtime = !runtime.is_null();
    if (r.has_runtime) {
      if (!runtime.is_number()) {
        throw std::invalid_argument("records json: bad runtime_ms");
      }
      r.runtime_ms = runtime.get<double>();
    }
    const auto& cond = need("conditioning_ok");
    const auto& nice = need("nice_disc_count");
    r.staged = !cond.is_null();
    if (r.staged) {
      if (!cond.is_boolean() || !nice.is_number_unsigned()) {
        throw std::invalid_argument("records json: bad staged fields");
      }
      r.conditioning_ok = cond.get<bool>();
      r.nice_disc_count = nice.get<std::uint64_t>();
    } else if (!nice.is_null()) {
      throw std::invalid_argument(
          "records json: nice_disc_count must be null when "
          "conditioning_ok is");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string summary_to_csv(const std::vector<SummaryRow>& summary) {
  std::string out =
      "n,lambda,count,connected_count,tail_prob,tail_prob_se,tail_con_prob,"
      "tail_con_prob_se,tail_2l1_prob,below_prob,lower_exceed_prob,"
      "upper_within_prob,q10,q50,q90,mean_con,mean_con_se\n";
  for (const SummaryRow& s : summary) {
    cell(out, s.n);
    out += ',';
    cell(out, s.lambda);
    out += ',';
    cell(out, s.count);
    out += ',';
    cell(out, s.connected_count);
    out += ',';
    cell(out, s.tail_prob);
    out += ',';
    cell(out, s.tail_prob_se);
    out += ',';
    if (s.has_con_stats) cell(out, s.tail_con_prob);
    out += ',';
    if (s.has_con_stats) cell(out, s.tail_con_prob_se);
    out += ',';
    cell(out, s.tail_2l1_prob);
    out += ',';
    cell(out, s.below_prob);
    out += ',';
    cell(out, s.lower_exceed_prob);
    out += ',';
    cell(out, s.upper_within_prob);
    out += ',';
    cell(out, s.q10);
    out += ',';
    cell(out, s.q50);
    out += ',';
    cell(out, s.q90);
    out += ',';
    cell(out, s.mean_con);
    out += ',';
    cell(out, s.mean_con_se);
    out += '\n';
  }
  return out;
}

std::string summary_to_json(const std::vector<SummaryRow>& summary) {
  ordered arr = ordered::array();
  for (const SummaryRow& s : summary) {
    ordered j;
    j["n"] = s.n;
    j["lambda"] = s.lambda;
    j["count"] = s.count;
    j["connected_count"] = s.connected_count;
    j["tail_prob"] = s.tail_prob;
    j["tail_prob_se"] = s.tail_prob_se;
    j["tail_con_prob"] =
        s.has_con_stats ? ordered(s.tail_con_prob) : ordered(nullptr);
    j["tail_con_prob_se"] =
        s.has_con_stats ? ordered(s.tail_con_prob_se) : ordered(nullptr);
    j["tail_2l1_prob"] = s.tail_2l1_prob;
    j["below_prob"] = s.below_prob;
    j["lower_exceed_prob"] = s.lower_exceed_prob;
    j["upper_within_prob"] = s.upper_within_prob;
    j["q10"] = num_or_null(s.q10);
    j["q50"] = num_or_null(s.q50);
    j["q90"] = num_or_null(s.q90);
    j["mean_con"] = num_or_null(s.mean_con);
    j["mean_con_se"] = num_or_null(s.mean_con_se);
    arr.push_back(std::move(j));
  }
  return arr.dump();
}

std::string report_to_csv(const std::vector<ReportRow>& report) {
  std::string out =
      "n,lambda,p,w,trials,tail_2l1_prob,tail_bound,tail_slack,"
      "tail_violation,lower_threshold,lower_exceed_prob,upper_bound,"
      "upper_ok,upper_within_prob,expected_bound,expected_ok,expected_slack,"
      "mean_con,expected_gap,small_c,small_bound,small_ok,small_slack,"
      "below_prob,small_gap\n";
  for (const ReportRow& r : report) {
    cell(out, r.n);
    out += ',';
    cell(out, r.lambda);
    out += ',';
    cell(out, r.p);
    out += ',';
    cell(out, r.w);
    out += ',';
    cell(out, r.trials);
    out += ',';
    cell(out, r.tail_2l1_prob);
    out += ',';
    cell(out, r.tail_bound);
    out += ',';
    cell(out, r.tail_slack);
    out += ',';
    cell(out, r.tail_violation);
    out += ',';
    cell(out, r.lower_threshold);
    out += ',';
    cell(out, r.lower_exceed_prob);
    out += ',';
    cell(out, r.upper_bound);
    out += ',';
    cell(out, r.upper_ok);
    out += ',';
    cell(out, r.upper_within_prob);
    out += ',';
    cell(out, r.expected_bound);
    out += ',';
    cell(out, r.expected_ok);
    out += ',';
    cell(out, r.expected_slack);
    out += ',';
    cell(out, r.mean_con);
    out += ',';
    cell(out, r.expected_gap);
    out += ',';
    cell(out, r.small_c);
    out += ',';
    cell(out, r.small_bound);
    out += ',';
    cell(out, r.small_ok);
    out += ',';
    cell(out, r.small_slack);
    out += ',';
    cell(out, r.below_prob);
    out += ',';
    cell(out, r.small_gap);
    out += '\n';
  }
  return out;
}

std::string report_to_json(const std::vector<ReportRow>& report) {
  ordered arr = ordered::array();
  for (const ReportRow& r : report) {
    ordered j;
    j["n"] = r.n;
    j["lambda"] = r.lambda;
    j["p"] = r.p;
    j["w"] = r.w;
    j["trials"] = r.trials;
    j["tail_2l1_prob"] = r.tail_2l1_prob;
    j["tail_bound"] = num_or_null(r.tail_bound);
    j["tail_slack"] = num_or_null(r.tail_slack);
    j["tail_violation"] = r.tail_violation;
    j["lower_threshold"] = r.lower_threshold;
    j["lower_exceed_prob"] = r.lower_exceed_prob;
    j["upper_bound"] = num_or_null(r.upper_bound);
    j["upper_ok"] = r.upper_ok;
    j["upper_within_prob"] = r.upper_within_prob;
    j["expected_bound"] = num_or_null(r.expected_bound);
    j["expected_ok"] = r.expected_ok;
    j["expected_slack"] = r.expected_slack;
    j["mean_con"] = num_or_null(r.mean_con);
    j["expected_gap"] = num_or_null(r.expected_gap);
    j["small_c"] = num_or_null(r.small_c);
    j["small_bound"] = num_or_null(r.small_bound);
    j["small_ok"] = r.small_ok;
    j["small_slack"] = r.small_slack;
    j["below_prob"] = r.below_prob;
    j["small_gap"] = num_or_null(r.small_gap);
    arr.push_back(std::move(j));
  }
  return arr.dump();
}

void emit_all(const ExperimentResult& result,
              const std::vector<ReportRow>& report,
              const std::string& output_prefix) {
  if (output_prefix.empty()) {
    throw IoError("output prefix is empty");
  }
  write_text_file(output_prefix + "_records.csv",
                  records_to_csv(result.records));
  write_text_file(output_prefix + "_records.json",
                  records_to_json(result.records));
  write_text_file(output_prefix + "_summary.csv",
                  summary_to_csv(result.summary));
  write_text_file(output_prefix + "_summary.json",
                  summary_to_json(result.summary));
  write_text_file(output_prefix + "_report.csv", report_to_csv(report));
  write_text_file(output_prefix + "_report.json", report_to_json(report));
}

}  // namespace stretchlab
