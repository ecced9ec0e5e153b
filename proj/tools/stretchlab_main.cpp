#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "stretchlab/bounds.hpp"
#include "stretchlab/constructs.hpp"
#include "stretchlab/harness.hpp"
#include "stretchlab/io.hpp"
#include "stretchlab/model.hpp"
#include "stretchlab/stretch.hpp"

namespace {

using ordered = nlohmann::ordered_json;
using namespace stretchlab;

// exit codes: 0 success, 2 bad arguments/config/input, 3 bound violation in
// compare mode, 4 I/O failure
constexpr int kOk = 0;
constexpr int kBadInput = 2;
constexpr int kViolation = 3;
constexpr int kIoFailure = 4;

struct GenerateArgs {
  std::uint64_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_generate(const GenerateArgs& args) {
  ModelParams params;
  params.n = args.n;
  params.p = args.p;
  params.seed = args.seed;
  const std::string text = graph_to_json(generate(params));
  if (args.out.empty()) {
    std::cout << text << '\n';
  } else {
    write_text_file(args.out, text);
  }
  return kOk;
}

int cmd_stretch(const std::string& in_path) {
  const EmbeddedGraph g = graph_from_json(read_text_file(in_path));
  std::cout << stretch_report_to_json(stretch_factor(g)) << '\n';
  return kOk;
}

struct BoundsArgs {
  std::uint64_t n = 0;
  double lambda = 0.0;
  std::optional<double> p;
  std::string p_expr;
  std::optional<double> w;
  std::optional<double> c;
};

int cmd_bounds(const BoundsArgs& args) {
  if (args.p.has_value() == !args.p_expr.empty()) {
    throw std::invalid_argument("bounds: give exactly one of --p, --p-expr");
  }
  const double p =
      args.p ? *args.p
             : PExpression::parse(args.p_expr)
                   .evaluate(static_cast<double>(args.n));
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("bounds: p is outside [0,1] at this n");
  }
  const double w =
      args.w ? *args.w : std::log(static_cast<double>(args.n));

  ordered j;
  j["n"] = args.n;
  j["p"] = p;
  j["lambda"] = args.lambda;
  j["w"] = w;
  j["lower_threshold"] = aas_lower_threshold(args.n, p, w);
  if (p > 0.0) {
    const BoundValue ub = aas_upper_bound(args.n, p, w);
    j["upper_bound"] = {{"value", ub.value},
                        {"precondition_ok", ub.precondition_ok}};
    const BoundValue eb = expected_stretch_bound(args.n, p);
    j["expected_bound"] = {{"value", eb.value},
                           {"precondition_ok", eb.precondition_ok},
                           {"asymptotic_slack", eb.asymptotic_slack}};
    j["tail_bound"] = stretch_tail_bound(args.n, p, args.lambda);
  } else {
    j["upper_bound"] = nullptr;
    j["expected_bound"] = nullptr;
    j["tail_bound"] = nullptr;
  }
  double c = args.c.value_or(0.0);
  if (!args.c) {
    const PrimaryFraction pf = pick_c(args.n);
    c = pf.found ? pf.c : 0.0;
  }
  if (c > 0.0) {
    const BoundValue sb = small_stretch_bound(args.n, p, args.lambda, c);
    j["c"] = c;
    j["small_bound"] = {{"value", sb.value},
                        {"precondition_ok", sb.precondition_ok},
                        {"asymptotic_slack", sb.asymptotic_slack}};
  } else {
    j["c"] = nullptr;
    j["small_bound"] = nullptr;
  }
  std::cout << j.dump() << '\n';
  return kOk;
}

int cmd_experiment(const std::string& config_path, unsigned threads) {
  const ExperimentSpec spec = spec_from_json(read_text_file(config_path));
  if (spec.output_path.empty()) {
    throw ConfigError("config: output_path must be non-empty");
  }
  const ExperimentResult result = run_experiment(spec, threads);
  const std::vector<ReportRow> report =
      compare_to_bounds(result.summary, spec);
  emit_all(result, report, spec.output_path);
  const bool violated = any_violation(report);
  std::cout << "experiment " << spec.name << ": " << result.records.size()
            << " trials, outputs at " << spec.output_path
            << "_{records,summary,report}.{csv,json}"
            << (violated ? "; TAIL BOUND VIOLATION" : "") << '\n';
  return violated ? kViolation : kOk;
}

struct ThreePhaseArgs {
  std::uint64_t n = 0;
  double p = 0.0;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  std::optional<double> c;
};

int cmd_three_phase(const ThreePhaseArgs& args) {
  // reuse the experiment rounding rules for the first-stage count
  ExperimentSpec probe;
  probe.c_override = args.c;
  std::uint64_t k = 0;
  try {
    k = staged_first_count(probe, args.n);
  } catch (const ConfigError& e) {
    throw std::invalid_argument(e.what());
  }
  ModelParams params;
  params.n = args.n;
  params.p = args.p;
  params.seed = args.seed;
  const double c_eff = static_cast<double>(k) / static_cast<double>(args.n);
  const ThreePhaseResult r = three_phase_generate(params, c_eff, args.lambda);
  std::cout << trace_to_json(r.trace) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulation lab for the stretch factor of randomly embedded "
               "random graphs"};
  app.require_subcommand(1);

  GenerateArgs gen_args;
  CLI::App* gen = app.add_subcommand(
      "generate", "sample a graph, print or write its JSON");
  gen->add_option("--n", gen_args.n, "vertex count")->required();
  gen->add_option("--p", gen_args.p, "edge probability")->required();
  gen->add_option("--seed", gen_args.seed, "master seed")->required();
  gen->add_option("--out", gen_args.out, "output file (stdout if omitted)");

  std::string stretch_in;
  CLI::App* st = app.add_subcommand(
      "stretch", "stretch factor of a graph JSON file");
  st->add_option("--in", stretch_in, "graph JSON file")->required();

  BoundsArgs bounds_args;
  CLI::App* bd = app.add_subcommand(
      "bounds", "evaluate the closed-form bounds as JSON");
  bd->add_option("--n", bounds_args.n, "vertex count")->required();
  bd->add_option("--p", bounds_args.p, "edge probability");
  bd->add_option("--p-expr", bounds_args.p_expr,
                 "p(n) family, e.g. const:0.5 | power:2,1 | nlogn:1 | "
                 "threshold:1");
  bd->add_option("--lambda", bounds_args.lambda, "stretch level")->required();
  bd->add_option("--w", bounds_args.w, "slack value (default: log n)");
  bd->add_option("--c", bounds_args.c,
                 "anti-concentration constant (default: window pick)");

  std::string config_path;
  unsigned threads = 1;
  CLI::App* ex = app.add_subcommand(
      "experiment", "run a configured Monte Carlo experiment");
  ex->add_option("--config", config_path, "experiment config JSON file")
      ->required();
  ex->add_option("--threads", threads, "worker threads (default 1)");

  CLI::App* cs =
      app.add_subcommand("constructs", "staged construction tools");
  cs->require_subcommand(1);
  ThreePhaseArgs tp_args;
  CLI::App* tp = cs->add_subcommand(
      "three-phase", "run the staged generator, print its trace JSON");
  tp->add_option("--n", tp_args.n, "vertex count")->required();
  tp->add_option("--p", tp_args.p, "edge probability")->required();
  tp->add_option("--lambda", tp_args.lambda, "niceness level")->required();
  tp->add_option("--seed", tp_args.seed, "master seed")->required();
  tp->add_option("--c", tp_args.c,
                 "primary fraction override (default: window pick)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_args);
    if (st->parsed()) return cmd_stretch(stretch_in);
    if (bd->parsed()) return cmd_bounds(bounds_args);
    if (ex->parsed()) return cmd_experiment(config_path, threads);
    if (tp->parsed()) return cmd_three_phase(tp_args);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoFailure;
  }
  return kBadInput;
}
