#include "stretchlab/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace stretchlab {

namespace {

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("bounds: p outside [0,1]");
  }
}

void require_positive_p(double p) {
  require_probability(p);
  if (p == 0.0) throw std::invalid_argument("bounds: p must be positive");
}

}  // namespace

double aas_lower_threshold(std::uint64_t n, double p, double w) {
  require_probability(p);
  if (!(w > 0.0)) throw std::invalid_argument("bounds: w must be positive");
  return std::sqrt(static_cast<double>(n) * (1.0 - p)) / w;
}

BoundValue aas_upper_bound(std::uint64_t n, double p, double w) {
  require_positive_p(p);
  if (!(w > 0.0)) throw std::invalid_argument("bounds: w must be positive");
  BoundValue out;
  out.value = 1.0 + w * std::sqrt(static_cast<double>(n) * (1.0 - p)) / p;
  out.precondition_ok =
      p * p * static_cast<double>(n) >= 33.0 * std::log(static_cast<double>(n));
  return out;
}

BoundValue expected_stretch_bound(std::uint64_t n, double p) {
  require_positive_p(p);
  BoundValue out;
  out.value = 1.0 + std::sqrt(2048.0 * static_cast<double>(n) * (1.0 - p)) / p;
  out.precondition_ok = p * p * static_cast<double>(n) >=
                        113.0 * std::log(static_cast<double>(n));
  out.asymptotic_slack = true;
  return out;
}

BoundValue small_stretch_bound(std::uint64_t n, double p, double lambda,
                               double c) {
  require_probability(p);
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("bounds: lambda must be positive");
  }
  if (!(c > 0.0 && c < 1.0 / (16.0 * std::numbers::pi))) {
    throw std::invalid_argument("bounds: c outside (0, 1/(16 pi))");
  }
  BoundValue out;
  const double two_e8 = 2.0 * std::exp(8.0);
  out.value = std::exp(-c * static_cast<double>(n) * (1.0 - p) /
                       (two_e8 * lambda * lambda));
  out.asymptotic_slack = true;
  return out;
}

double stretch_tail_bound(std::uint64_t n, double p, double lambda) {
  require_positive_p(p);
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("bounds: lambda must be positive");
  }
  const double nd = static_cast<double>(n);
  const double first = std::exp(-p * p * nd / 16.0);
  const double second = 128.0 * (1.0 - p) / (p * p * nd * lambda * lambda);
  return nd * nd * (first + second);
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::kBounded:
      return "bounded";
    case Regime::kCritical:
      return "critical";
    case Regime::kUnbounded:
      return "unbounded";
  }
  return "unbounded";
}

double PExpression::evaluate(double n) const {
  switch (family) {
    case Family::kConstant:
      return a;
    case Family::kPowerComplement:
      return 1.0 - a / std::pow(n, b);
    case Family::kNLogNComplement:
      return 1.0 - a / (n * std::log(n));
    case Family::kThreshold:
      return std::sqrt(a * std::log(n) / n);
  }
  return 0.0;
}

PExpression PExpression::constant(double a) {
  PExpression e;
  e.family = Family::kConstant;
  e.a = a;
  return e;
}

PExpression PExpression::power_complement(double a, double b) {
  PExpression e;
  e.family = Family::kPowerComplement;
  e.a = a;
  e.b = b;
  return e;
}

PExpression PExpression::nlogn_complement(double a) {
  PExpression e;
  e.family = Family::kNLogNComplement;
  e.a = a;
  return e;
}

PExpression PExpression::threshold(double a) {
  PExpression e;
  e.family = Family::kThreshold;
  e.a = a;
  return e;
}

PExpression PExpression::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("p-expression: expected family:params");
  }
  const std::string family = text.substr(0, colon);
  const std::string params = text.substr(colon + 1);
  const auto one_number = [&]() {
    std::size_t used = 0;
    const double v = std::stod(params, &used);
    if (used != params.size()) {
      throw std::invalid_argument("p-expression: trailing characters");
    }
    return v;
  };
  if (family == "const") return constant(one_number());
  if (family == "nlogn") return nlogn_complement(one_number());
  if (family == "threshold") return threshold(one_number());
  if (family == "power") {
    const auto comma = params.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("p-expression: power needs a,b");
    }
    std::size_t used = 0;
    const double a = std::stod(params.substr(0, comma), &used);
    const std::string rest = params.substr(comma + 1);
    const double b = std::stod(rest, &used);
    if (used != rest.size()) {
      throw std::invalid_argument("p-expression: trailing characters");
    }
    return power_complement(a, b);
  }
  throw std::invalid_argument("p-expression: unknown family " + family);
}

std::string PExpression::to_string() const {
  const auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  switch (family) {
    case Family::kConstant:
      return "const:" + num(a);
    case Family::kPowerComplement:
      return "power:" + num(a) + "," + num(b);
    case Family::kNLogNComplement:
      return "nlogn:" + num(a);
    case Family::kThreshold:
      return "threshold:" + num(a);
  }
  return "";
}

namespace {

// Reference range over which expressions must stay inside [0,1] and on which
// the numeric classifier fits its slope.
std::vector<double> reference_ns() {
  std::vector<double> ns;
  for (int e = 10; e <= 20; ++e) ns.push_back(std::pow(2.0, e));
  return ns;
}

void validate_on_range(const PExpression& expr) {
  // a is p itself in the constant family (0 and 1 are legitimate sweeps);
  // in the scaling families a = 0 degenerates and is rejected
  if (expr.family == PExpression::Family::kConstant) {
    if (!(expr.a >= 0.0)) {
      throw std::invalid_argument("p-expression: negative constant");
    }
  } else if (!(expr.a > 0.0)) {
    throw std::invalid_argument("p-expression: parameter a must be positive");
  }
  if (expr.family == PExpression::Family::kPowerComplement && !(expr.b > 0.0)) {
    throw std::invalid_argument("p-expression: parameter b must be positive");
  }
  for (const double n : reference_ns()) {
    const double p = expr.evaluate(n);
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument(
          "p-expression: leaves [0,1] on the reference range");
    }
  }
}

}  // namespace

Regime regime_classify(const PExpression& expr) {
  validate_on_range(expr);
  switch (expr.family) {
    case PExpression::Family::kConstant:
      return expr.a == 1.0 ? Regime::kBounded : Regime::kUnbounded;
    case PExpression::Family::kPowerComplement:
      if (expr.b > 1.0) return Regime::kBounded;
      if (expr.b == 1.0) return Regime::kCritical;
      return Regime::kUnbounded;
    case PExpression::Family::kNLogNComplement:
      return Regime::kBounded;
    case PExpression::Family::kThreshold:
      return Regime::kUnbounded;
  }
  return Regime::kUnbounded;
}

Regime regime_classify_numeric(const PExpression& expr) {
  validate_on_range(expr);
  std::vector<double> xs, ys;
  for (const double n : reference_ns()) {
    const double target = n * (1.0 - expr.evaluate(n));
    if (target <= 0.0) return Regime::kBounded;  // identically vanishing
    xs.push_back(std::log(n));
    ys.push_back(std::log(target));
  }
  const auto m = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  if (slope > 0.05) return Regime::kUnbounded;
  if (slope < -0.05) return Regime::kBounded;
  return Regime::kCritical;
}

}  // namespace stretchlab
