#include "sdpfeas/hazard.hpp"

#include <cmath>
#include <limits>

namespace sdpfeas {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

void require_positive(double value, const char* what) {
  if (!positive_finite(value)) {
    throw InvalidInput(std::string(what) + " must be a positive finite number");
  }
}

// Domain check shared by all evaluators. `strict` forbids t = 0.
void check_time(const HazardModel& model, double t, bool strict) {
  if (!std::isfinite(t) || t < 0.0) {
    throw DomainError("time must be a finite non-negative number");
  }
  if (strict && t == 0.0) throw DomainError("time must be strictly positive");
  if (t > model.time_limit()) {
    throw DomainError("time " + std::to_string(t) +
                      " exceeds the linearly decreasing domain K/m = " +
                      std::to_string(model.time_limit()));
  }
}

bool singular_at_origin(const HazardModel& model) {
  return model.family() == HazardFamily::NonLinearDecreasing ||
         (model.family() == HazardFamily::Weibull && model.m() < 0.0);
}

}  // namespace

std::string_view family_name(HazardFamily family) noexcept {
  switch (family) {
    case HazardFamily::Weibull: return "weibull";
    case HazardFamily::NonLinearDecreasing: return "nld";
    case HazardFamily::LinearDecreasing: return "ld";
    case HazardFamily::NonLinearIncreasing: return "nli";
    case HazardFamily::LinearIncreasing: return "li";
    case HazardFamily::Constant: return "constant";
  }
  return "unknown";
}

HazardFamily family_from_name(std::string_view name) {
  for (auto f : {HazardFamily::Weibull, HazardFamily::NonLinearDecreasing,
                 HazardFamily::LinearDecreasing, HazardFamily::NonLinearIncreasing,
                 HazardFamily::LinearIncreasing, HazardFamily::Constant}) {
    if (family_name(f) == name) return f;
  }
  throw InvalidInput("unknown hazard family `" + std::string(name) + "`");
}

HazardModel HazardModel::weibull(double K, double m) {
  require_positive(K, "Weibull K");
  if (!std::isfinite(m) || m <= -1.0) throw InvalidInput("Weibull m must exceed -1");
  return {HazardFamily::Weibull, K, m, 0.0};
}

HazardModel HazardModel::non_linear_decreasing(double K) {
  require_positive(K, "K");
  return {HazardFamily::NonLinearDecreasing, K, 0.0, 0.0};
}

HazardModel HazardModel::linear_decreasing(double K, double m) {
  require_positive(K, "K");
  require_positive(m, "linearly decreasing slope m");
  return {HazardFamily::LinearDecreasing, K, m, 0.0};
}

HazardModel HazardModel::non_linear_increasing(double K) {
  require_positive(K, "K");
  return {HazardFamily::NonLinearIncreasing, K, 0.0, 0.0};
}

HazardModel HazardModel::linear_increasing(double K) {
  require_positive(K, "K");
  return {HazardFamily::LinearIncreasing, K, 0.0, 0.0};
}

HazardModel HazardModel::constant(double lambda) {
  require_positive(lambda, "lambda");
  return {HazardFamily::Constant, 0.0, 0.0, lambda};
}

double HazardModel::time_limit() const noexcept {
  if (family_ == HazardFamily::LinearDecreasing) return K_ / m_;
  return std::numeric_limits<double>::infinity();
}

double hazard_at(const HazardModel& model, double t) {
  check_time(model, t, singular_at_origin(model));
  const double K = model.K();
  switch (model.family()) {
    case HazardFamily::Weibull: return K * std::pow(t, model.m());
    case HazardFamily::NonLinearDecreasing: return K / std::sqrt(t);
    case HazardFamily::LinearDecreasing: return K - model.m() * t;
    case HazardFamily::NonLinearIncreasing: return K * t * t;
    case HazardFamily::LinearIncreasing: return K * t;
    case HazardFamily::Constant: return model.lambda();
  }
  throw InternalError("unhandled hazard family");
}

double cumulative_hazard(const HazardModel& model, double t) {
  check_time(model, t, false);
  if (t == 0.0) return 0.0;
  const double K = model.K();
  switch (model.family()) {
    case HazardFamily::Weibull: {
      const double e = model.m() + 1.0;
      return K * std::pow(t, e) / e;
    }
    case HazardFamily::NonLinearDecreasing: return 2.0 * K * std::sqrt(t);
    case HazardFamily::LinearDecreasing: return K * t - model.m() * t * t / 2.0;
    case HazardFamily::NonLinearIncreasing: return K * t * t * t / 3.0;
    case HazardFamily::LinearIncreasing: return K * t * t / 2.0;
    case HazardFamily::Constant: return model.lambda() * t;
  }
  throw InternalError("unhandled hazard family");
}

double reliability_at(const HazardModel& model, double t) {
  return std::exp(-cumulative_hazard(model, t));
}

double reliability_tail_threshold(const HazardModel& model, double t) {
  check_time(model, t, true);
  const double K = model.K();
  switch (model.family()) {
    case HazardFamily::Weibull: return K * std::pow(t, model.m()) / (model.m() + 1.0);
    case HazardFamily::NonLinearDecreasing: return 2.0 * K / std::sqrt(t);
    case HazardFamily::LinearDecreasing: return K - model.m() * t / 2.0;
    case HazardFamily::NonLinearIncreasing: return K * t * t / 3.0;
    case HazardFamily::LinearIncreasing: return K * t / 2.0;
    case HazardFamily::Constant: return model.lambda();
  }
  throw InternalError("unhandled hazard family");
}

}  // namespace sdpfeas
