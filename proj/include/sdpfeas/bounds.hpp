#pragma once

// Chernoff lower-tail bounds comparing SDP-tested software against a manually
// tested baseline.
//
// Every named bound is the same kernel
//
//     Pr[S < c] < exp(-mu delta^2 / 2),   delta = 1 - c / mu,  0 < delta <= 1,
//
// instantiated with a different (mu, c):
//
//   hazard, X        mu = l p                         c = z(t)
//   reliability, X   mu = exp(l p (e^-t - 1))         c = H(t) / t
//   hazard, Y        mu = l p K_hat t^m_hat           c = K t^m
//   reliability, Y   mu = exp(l p (e^{-/+K_hat t^(m_hat+1)} - 1))
//                                                     c = K t^m / (m + 1)
//
// When c >= mu (delta <= 0) or c < 0 (delta > 1) the inequality says nothing;
// the result is tagged OutOfRegime and carries no bound.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdpfeas/hazard.hpp"
#include "sdpfeas/outcome.hpp"

namespace sdpfeas {

enum class Regime { Valid, OutOfRegime };

// Which published result a bound instantiates.
enum class TheoremTag {
  Chernoff,  // bare kernel
  Theorem1,  // Weibull hazard, X
  Theorem2,  // Weibull reliability, X
  Theorem3,  // Weibull hazard, Y
  Theorem4,  // Weibull reliability, Y
  Corollary1,   // nld hazard
  Corollary2,   // nld reliability
  Corollary3,   // ld hazard
  Corollary4,   // ld reliability
  Corollary5,   // nli hazard
  Corollary6,   // nli reliability
  Corollary7,   // li hazard
  Corollary8,   // li reliability
  Corollary9,   // constant hazard
  Corollary10,  // constant reliability
};

const char* to_string(TheoremTag tag) noexcept;
const char* to_string(Regime regime) noexcept;

enum class BoundKind { Hazard, Reliability };
enum class Variant { X, Y };

const char* to_string(BoundKind kind) noexcept;
const char* to_string(Variant variant) noexcept;

struct BoundResult {
  TheoremTag theorem = TheoremTag::Chernoff;
  Regime regime = Regime::OutOfRegime;
  double mu = 0.0;
  double threshold = 0.0;
  double delta = 0.0;
  // -(mu - c)^2 / (2 mu); only meaningful when Valid.
  double log_bound = 0.0;
  // exp(log_bound); only meaningful when Valid.
  double bound = 0.0;
  std::optional<double> t;
  std::optional<SignMode> sign_mode;

  bool valid() const noexcept { return regime == Regime::Valid; }
};

// Bare kernel. Never throws for finite inputs with mu > 0; regime reports
// applicability.
BoundResult chernoff_lower_tail(double mu, double threshold);

// Theorem 1 / Corollaries 1, 3, 5, 7, 9.
BoundResult hazard_bound(const SdpOutcome& o, const HazardModel& model, double t);

// Theorem 2 / Corollaries 2, 4, 6, 8, 10.
BoundResult reliability_bound(const SdpOutcome& o, const HazardModel& model, double t);

// Theorem 3. `model` must be Weibull.
BoundResult hazard_bound_y(const SdpOutcome& o, const HazardModel& model, double t);

// Theorem 4. `model` must be Weibull.
BoundResult reliability_bound_y(const SdpOutcome& o, const HazardModel& model, double t,
                                SignMode mode = SignMode::Corrected);

// Dispatches to one of the four bounds above.
BoundResult compute_bound(const SdpOutcome& o, const HazardModel& model, double t,
                          BoundKind kind, Variant variant,
                          SignMode mode = SignMode::Corrected);

// Evaluates a bound at every grid point, in grid order. The grid must be
// non-empty, strictly increasing and positive. Points may be evaluated on
// `threads` worker threads; the output does not depend on the thread count.
std::vector<BoundResult> bound_sweep(const SdpOutcome& o, const HazardModel& model,
                                     std::span<const double> grid, BoundKind kind,
                                     Variant variant, SignMode mode = SignMode::Corrected,
                                     unsigned threads = 1);

}  // namespace sdpfeas
