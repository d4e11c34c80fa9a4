#include "sdpfeas/outcome.hpp"

#include <cmath>

namespace sdpfeas {

namespace {

void check_positive_time(double t) {
  if (!std::isfinite(t) || t <= 0.0) throw DomainError("time must be strictly positive");
}

const WeibullInjection& require_injection(const SdpOutcome& o) {
  if (!o.injection()) {
    throw WrongVariant("operation needs a Weibull injection (Y-variant outcome)");
  }
  return *o.injection();
}

void require_no_injection(const SdpOutcome& o) {
  if (o.injection()) {
    throw WrongVariant("operation is defined for the unit-failure (X-variant) outcome");
  }
}

}  // namespace

const char* to_string(SignMode mode) noexcept {
  return mode == SignMode::Corrected ? "corrected" : "as-published";
}

SdpOutcome::SdpOutcome(std::uint64_t l, double p,
                       std::optional<WeibullInjection> injection,
                       std::optional<std::uint64_t> n)
    : l_(l), p_(p), injection_(injection), n_(n) {
  if (l_ < 1) throw InvalidInput("l (predicted-clean modules) must be at least 1");
  if (!(p_ > 0.0 && p_ < 1.0)) throw InvalidInput("p must lie strictly inside (0, 1)");
  if (injection_) {
    if (!(std::isfinite(injection_->K_hat) && injection_->K_hat > 0.0)) {
      throw InvalidInput("K_hat must be positive");
    }
    if (!(std::isfinite(injection_->m_hat) && injection_->m_hat > -1.0)) {
      throw InvalidInput("m_hat must exceed -1");
    }
  }
  if (n_ && *n_ < l_) throw InvalidInput("n (developed modules) cannot be below l");
}

SdpOutcome::SdpOutcome(std::uint64_t l, const FailureProbability& p,
                       std::optional<WeibullInjection> injection,
                       std::optional<std::uint64_t> n)
    : SdpOutcome(l, p.p, injection, n) {}

double injection_scale(const WeibullInjection& injection, double t) {
  check_positive_time(t);
  return injection.K_hat * std::pow(t, injection.m_hat);
}

double expected_hazard_x(const SdpOutcome& o) {
  require_no_injection(o);
  return static_cast<double>(o.l()) * o.p();
}

double expected_hazard_y(const SdpOutcome& o, double t) {
  const auto& inj = require_injection(o);
  return static_cast<double>(o.l()) * o.p() * injection_scale(inj, t);
}

double log_expected_reliability_bound_x(const SdpOutcome& o, double t) {
  require_no_injection(o);
  check_positive_time(t);
  // expm1 keeps the exponent accurate for small t.
  return static_cast<double>(o.l()) * o.p() * std::expm1(-t);
}

double expected_reliability_bound_x(const SdpOutcome& o, double t) {
  return std::exp(log_expected_reliability_bound_x(o, t));
}

double exact_expected_reliability_x(const SdpOutcome& o, double t) {
  require_no_injection(o);
  check_positive_time(t);
  return std::exp(static_cast<double>(o.l()) * std::log1p(o.p() * std::expm1(-t)));
}

double log_expected_reliability_bound_y(const SdpOutcome& o, double t, SignMode mode) {
  const auto& inj = require_injection(o);
  check_positive_time(t);
  const double inner = inj.K_hat * std::pow(t, inj.m_hat + 1.0);
  const double sign = mode == SignMode::Corrected ? -1.0 : 1.0;
  return static_cast<double>(o.l()) * o.p() * std::expm1(sign * inner);
}

double expected_reliability_bound_y(const SdpOutcome& o, double t, SignMode mode) {
  return std::exp(log_expected_reliability_bound_y(o, t, mode));
}

double exact_expected_reliability_y(const SdpOutcome& o, double t) {
  const auto& inj = require_injection(o);
  check_positive_time(t);
  const double inner = inj.K_hat * std::pow(t, inj.m_hat + 1.0);
  return std::exp(static_cast<double>(o.l()) * std::log1p(o.p() * std::expm1(-inner)));
}

}  // namespace sdpfeas
