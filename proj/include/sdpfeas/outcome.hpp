#pragma once

// The SDP-tested system: l predicted-clean modules, each independently a
// dormant defect with probability p.
//
// X-variant: every dormant defect contributes one failure, so X ~ Binomial(l, p).
// Y-variant: every dormant defect contributes a Weibull hazard K_hat t^m_hat,
//            so at fixed t, Y = K_hat t^m_hat * Binomial(l, p).

#include <cstdint>
#include <optional>

#include "sdpfeas/confusion.hpp"

namespace sdpfeas {

struct WeibullInjection {
  double K_hat = 1.0;
  double m_hat = 0.0;
};

// Sign used for exp(-t Y_i) when forming the expected Y reliability.
// Corrected: exp(-K_hat t^(m_hat+1)), consistent with R_Y(t) = exp(-Y t).
// AsPublished: exp(+K_hat t^(m_hat+1)), reproduced verbatim; can exceed 1.
enum class SignMode { Corrected, AsPublished };

const char* to_string(SignMode mode) noexcept;

class SdpOutcome {
 public:
  SdpOutcome(std::uint64_t l, double p,
             std::optional<WeibullInjection> injection = std::nullopt,
             std::optional<std::uint64_t> n = std::nullopt);
  SdpOutcome(std::uint64_t l, const FailureProbability& p,
             std::optional<WeibullInjection> injection = std::nullopt,
             std::optional<std::uint64_t> n = std::nullopt);

  std::uint64_t l() const noexcept { return l_; }
  double p() const noexcept { return p_; }
  const std::optional<WeibullInjection>& injection() const noexcept { return injection_; }
  // Total developed modules; reporting metadata only.
  const std::optional<std::uint64_t>& n() const noexcept { return n_; }

  bool is_y_variant() const noexcept { return injection_.has_value(); }

 private:
  std::uint64_t l_;
  double p_;
  std::optional<WeibullInjection> injection_;
  std::optional<std::uint64_t> n_;
};

// Value each dormant defect contributes to Y at time t: K_hat t^m_hat.
double injection_scale(const WeibullInjection& injection, double t);

// E[X] = l p.
double expected_hazard_x(const SdpOutcome& o);

// E[Y] = l p K_hat t^m_hat.
double expected_hazard_y(const SdpOutcome& o, double t);

// Upper bound exp(l p (e^-t - 1)) on E[exp(-X t)], obtained from 1 + x < e^x.
double expected_reliability_bound_x(const SdpOutcome& o, double t);
// Its logarithm, l p (e^-t - 1), finite even where the bound underflows.
double log_expected_reliability_bound_x(const SdpOutcome& o, double t);

// E[exp(-X t)] exactly: (p (e^-t - 1) + 1)^l.
double exact_expected_reliability_x(const SdpOutcome& o, double t);

// exp(l p (e^{s K_hat t^(m_hat+1)} - 1)) with s = -1 (Corrected) or +1
// (AsPublished).
double expected_reliability_bound_y(const SdpOutcome& o, double t,
                                    SignMode mode = SignMode::Corrected);
double log_expected_reliability_bound_y(const SdpOutcome& o, double t,
                                        SignMode mode = SignMode::Corrected);

// E[exp(-Y t)] exactly under the corrected sign: (p (e^{-K_hat t^(m_hat+1)} - 1) + 1)^l.
double exact_expected_reliability_y(const SdpOutcome& o, double t);

}  // namespace sdpfeas
