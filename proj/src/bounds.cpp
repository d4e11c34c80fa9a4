#include "sdpfeas/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>
#include <utility>

namespace sdpfeas {

namespace {

TheoremTag hazard_tag(HazardFamily family) {
  switch (family) {
    case HazardFamily::Weibull: return TheoremTag::Theorem1;
    case HazardFamily::NonLinearDecreasing: return TheoremTag::Corollary1;
    case HazardFamily::LinearDecreasing: return TheoremTag::Corollary3;
    case HazardFamily::NonLinearIncreasing: return TheoremTag::Corollary5;
    case HazardFamily::LinearIncreasing: return TheoremTag::Corollary7;
    case HazardFamily::Constant: return TheoremTag::Corollary9;
  }
  throw InternalError("unhandled hazard family");
}

TheoremTag reliability_tag(HazardFamily family) {
  switch (family) {
    case HazardFamily::Weibull: return TheoremTag::Theorem2;
    case HazardFamily::NonLinearDecreasing: return TheoremTag::Corollary2;
    case HazardFamily::LinearDecreasing: return TheoremTag::Corollary4;
    case HazardFamily::NonLinearIncreasing: return TheoremTag::Corollary6;
    case HazardFamily::LinearIncreasing: return TheoremTag::Corollary8;
    case HazardFamily::Constant: return TheoremTag::Corollary10;
  }
  throw InternalError("unhandled hazard family");
}

void require_weibull(const HazardModel& model) {
  if (model.family() != HazardFamily::Weibull) {
    throw InvalidInput("Y-variant bounds are defined for the Weibull baseline only");
  }
}

void require_x(const SdpOutcome& o) {
  if (o.is_y_variant()) {
    throw WrongVariant("X-variant bound requested for an outcome with a Weibull injection");
  }
}

}  // namespace

const char* to_string(TheoremTag tag) noexcept {
  switch (tag) {
    case TheoremTag::Chernoff: return "chernoff";
    case TheoremTag::Theorem1: return "theorem1";
    case TheoremTag::Theorem2: return "theorem2";
    case TheoremTag::Theorem3: return "theorem3";
    case TheoremTag::Theorem4: return "theorem4";
    case TheoremTag::Corollary1: return "corollary1";
    case TheoremTag::Corollary2: return "corollary2";
    case TheoremTag::Corollary3: return "corollary3";
    case TheoremTag::Corollary4: return "corollary4";
    case TheoremTag::Corollary5: return "corollary5";
    case TheoremTag::Corollary6: return "corollary6";
    case TheoremTag::Corollary7: return "corollary7";
    case TheoremTag::Corollary8: return "corollary8";
    case TheoremTag::Corollary9: return "corollary9";
    case TheoremTag::Corollary10: return "corollary10";
  }
  return "unknown";
}

const char* to_string(Regime regime) noexcept {
  return regime == Regime::Valid ? "Valid" : "OutOfRegime";
}

const char* to_string(BoundKind kind) noexcept {
  return kind == BoundKind::Hazard ? "hazard" : "reliability";
}

const char* to_string(Variant variant) noexcept {
  return variant == Variant::X ? "X" : "Y";
}

BoundResult chernoff_lower_tail(double mu, double threshold) {
  if (!(std::isfinite(mu) && mu > 0.0)) {
    throw InvalidInput("expectation must be positive and finite");
  }
  if (!std::isfinite(threshold)) throw InvalidInput("threshold must be finite");
  BoundResult r;
  r.mu = mu;
  r.threshold = threshold;
  r.delta = 1.0 - threshold / mu;
  if (threshold >= mu || threshold < 0.0) {
    r.regime = Regime::OutOfRegime;
    return r;
  }
  r.regime = Regime::Valid;
  // delta^2 mu / 2 in the (mu - c)^2 / (2 mu) arrangement avoids cancellation
  // in 1 - c/mu when c is close to mu.
  const double gap = mu - threshold;
  r.log_bound = -(gap * gap) / (2.0 * mu);
  r.bound = std::exp(r.log_bound);
  return r;
}

namespace {

// Kernel for an expectation known through its logarithm. Matches
// chernoff_lower_tail whenever exp(log_mu) is a normal double; below that the
// regime test and the bound are evaluated from log_mu directly.
BoundResult chernoff_from_log_mu(double log_mu, double threshold) {
  const double mu = std::exp(log_mu);
  if (mu >= std::numeric_limits<double>::min() || !std::isfinite(log_mu)) {
    return chernoff_lower_tail(mu, threshold);
  }
  if (!std::isfinite(threshold)) throw InvalidInput("threshold must be finite");
  BoundResult r;
  r.mu = mu;
  r.threshold = threshold;
  if (threshold < 0.0) {
    r.delta = 1.0 - threshold / mu;
    r.regime = Regime::OutOfRegime;
    return r;
  }
  const double log_ratio = threshold > 0.0 ? std::log(threshold) - log_mu
                                           : -std::numeric_limits<double>::infinity();
  r.delta = -std::expm1(log_ratio);
  // The reported mu is the rounded value, so the regime must agree with it too.
  if (log_ratio >= 0.0 || threshold >= mu) {
    r.delta = std::min(r.delta, 0.0);
    r.regime = Regime::OutOfRegime;
    return r;
  }
  r.regime = Regime::Valid;
  // -mu delta^2 / 2, formed in log space.
  r.log_bound = -std::exp(log_mu + 2.0 * std::log(r.delta) - std::log(2.0));
  r.bound = std::exp(r.log_bound);
  return r;
}

}  // namespace

BoundResult hazard_bound(const SdpOutcome& o, const HazardModel& model, double t) {
  require_x(o);
  auto r = chernoff_lower_tail(expected_hazard_x(o), hazard_at(model, t));
  r.theorem = hazard_tag(model.family());
  r.t = t;
  return r;
}

BoundResult reliability_bound(const SdpOutcome& o, const HazardModel& model, double t) {
  require_x(o);
  const double c = reliability_tail_threshold(model, t);
  auto r = chernoff_from_log_mu(log_expected_reliability_bound_x(o, t), c);
  r.theorem = reliability_tag(model.family());
  r.t = t;
  return r;
}

BoundResult hazard_bound_y(const SdpOutcome& o, const HazardModel& model, double t) {
  require_weibull(model);
  auto r = chernoff_lower_tail(expected_hazard_y(o, t), hazard_at(model, t));
  r.theorem = TheoremTag::Theorem3;
  r.t = t;
  return r;
}

BoundResult reliability_bound_y(const SdpOutcome& o, const HazardModel& model, double t,
                                SignMode mode) {
  require_weibull(model);
  const double log_mu = log_expected_reliability_bound_y(o, t, mode);
  if (!std::isfinite(std::exp(log_mu))) {
    // As-published sign overflows for large K_hat t^(m_hat+1).
    throw DomainError("expected Y reliability overflows in " +
                      std::string(to_string(mode)) + " sign mode");
  }
  auto r = chernoff_from_log_mu(log_mu, reliability_tail_threshold(model, t));
  r.theorem = TheoremTag::Theorem4;
  r.t = t;
  r.sign_mode = mode;
  return r;
}

BoundResult compute_bound(const SdpOutcome& o, const HazardModel& model, double t,
                          BoundKind kind, Variant variant, SignMode mode) {
  if (variant == Variant::X) {
    return kind == BoundKind::Hazard ? hazard_bound(o, model, t)
                                     : reliability_bound(o, model, t);
  }
  return kind == BoundKind::Hazard ? hazard_bound_y(o, model, t)
                                   : reliability_bound_y(o, model, t, mode);
}

std::vector<BoundResult> bound_sweep(const SdpOutcome& o, const HazardModel& model,
                                     std::span<const double> grid, BoundKind kind,
                                     Variant variant, SignMode mode, unsigned threads) {
  if (grid.empty()) throw InvalidInput("time grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(std::isfinite(grid[i]) && grid[i] > 0.0)) {
      throw InvalidInput("time grid points must be positive");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw InvalidInput("time grid must be strictly increasing");
    }
  }

  std::vector<BoundResult> out(grid.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(grid.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out[i] = compute_bound(o, model, grid[i], kind, variant, mode);
    }
    return out;
  }

  // Strided partition; each slot is written by exactly one worker.
  // First failing grid index per worker, so the reported error is the one at
  // the smallest t regardless of scheduling.
  std::vector<std::pair<std::size_t, std::exception_ptr>> errors(threads);
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < grid.size(); i += threads) {
          try {
            out[i] = compute_bound(o, model, grid[i], kind, variant, mode);
          } catch (...) {
            errors[w] = {i, std::current_exception()};
            return;
          }
        }
      });
    }
  }
  const std::pair<std::size_t, std::exception_ptr>* first = nullptr;
  for (const auto& e : errors) {
    if (e.second && (!first || e.first < first->first)) first = &e;
  }
  if (first) std::rethrow_exception(first->second);
  return out;
}

}  // namespace sdpfeas
