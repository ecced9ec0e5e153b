#pragma once

#include <cstdint>
#include <string>

namespace stretchlab {

// Closed-form bound evaluators for the stretch factor of the model. Some
// bounds only take effect above a density precondition (reported, never
// enforced) and some carry an unquantified asymptotic o(1) slack; both facts
// travel with the value so reports cannot silently overstate a bound.
struct BoundValue {
  double value = 0.0;
  bool precondition_ok = true;
  bool asymptotic_slack = false;
};

// Lower threshold that the stretch factor exceeds asymptotically almost
// surely: sqrt(n(1-p)) / w. Requires w > 0.
double aas_lower_threshold(std::uint64_t n, double p, double w);

// High-probability upper bound 1 + w * sqrt(n(1-p)) / p, with precondition
// p^2 n >= 33 log n. Requires p > 0.
BoundValue aas_upper_bound(std::uint64_t n, double p, double w);

// Bound on the expected stretch factor conditioned on connectivity:
// 1 + sqrt(2048 n (1-p)) / p, plus an unquantified o(1); precondition
// p^2 n >= 113 log n. Requires p > 0.
BoundValue expected_stretch_bound(std::uint64_t n, double p);

// Anti-concentration bound P(F < lambda) <= exp(-c n (1-p) / (2 e^8 lambda^2))
// plus an unquantified o(1). Requires lambda > 0 and c in (0, 1/(16 pi));
// the construction's own window for c is (1/51, 1/(16 pi)) and is enforced
// where c is chosen, not here.
BoundValue small_stretch_bound(std::uint64_t n, double p, double lambda,
                               double c);

// Tail bound P(F > 2 lambda + 1) <= n^2 [exp(-p^2 n / 16)
// + 128 (1-p) / (p^2 n lambda^2)]. Deliberately not clamped to [0,1]: tests
// compare against the raw formula. Requires p > 0 and lambda > 0.
double stretch_tail_bound(std::uint64_t n, double p, double lambda);

// Asymptotic behaviour of n(1 - p(n)): vanishes, stays of constant order, or
// diverges. Drives where the stretch factor concentrates near 1.
enum class Regime { kBounded, kCritical, kUnbounded };

std::string to_string(Regime r);

// The p(n) families experiments sweep over.
struct PExpression {
  enum class Family {
    kConstant,         // p(n) = a
    kPowerComplement,  // p(n) = 1 - a / n^b
    kNLogNComplement,  // p(n) = 1 - a / (n log n)
    kThreshold,        // p(n) = sqrt(a log n / n)
  };

  Family family = Family::kConstant;
  double a = 0.0;
  double b = 0.0;  // only kPowerComplement uses it

  double evaluate(double n) const;

  static PExpression constant(double a);
  static PExpression power_complement(double a, double b);
  static PExpression nlogn_complement(double a);
  static PExpression threshold(double a);

  // Compact form used on the command line and in config files:
  // "const:0.5" | "power:2,1" | "nlogn:1" | "threshold:1".
  static PExpression parse(const std::string& text);
  std::string to_string() const;
};

// Classification by family shape. Throws std::invalid_argument when the
// expression leaves [0,1] somewhere on the reference range n = 2^10..2^20.
Regime regime_classify(const PExpression& expr);

// Numeric fallback: least-squares slope of log(n(1-p(n))) against log n over
// n = 2^10..2^20; slope beyond +/-0.05 resolves the regime, else critical.
Regime regime_classify_numeric(const PExpression& expr);

}  // namespace stretchlab
