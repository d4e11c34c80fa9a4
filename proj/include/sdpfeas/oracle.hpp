#pragma once

// Independent tail-probability oracles used to certify the bounds.
//
// Strictness: every event is Pr[S < c] with S integer-valued, so for integral
// c the event is S <= c - 1. In general the largest admitted count is
// ceil(c) - 1.

#include <cstdint>
#include <optional>
#include <string>

#include "sdpfeas/bounds.hpp"

namespace sdpfeas {

enum class OracleMethod { Exact, MonteCarlo };
const char* to_string(OracleMethod method) noexcept;

struct TailEstimate {
  double value = 0.0;
  // log(value), kept separately so tails far below the double range still
  // compare correctly against a log-space bound. -inf for an impossible event.
  double log_value = 0.0;
  OracleMethod method = OracleMethod::Exact;
  // Monte-Carlo only.
  std::optional<std::uint64_t> trials;
  std::optional<double> stderr_;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const TailEstimate&, const TailEstimate&) = default;
};

struct TailQuery {
  std::uint64_t l = 1;
  double p = 0.5;
  double threshold = 0.0;
};

// log Pr[Binomial(l, p) = k].
double binomial_log_pmf(std::uint64_t l, double p, std::uint64_t k);

// log Pr[Binomial(l, p) <= k], summed in log space with a max shift.
double binomial_log_cdf(std::uint64_t l, double p, std::uint64_t k);
double binomial_cdf(std::uint64_t l, double p, std::uint64_t k);

// Pr[X < threshold], X ~ Binomial(l, p).
TailEstimate exact_binomial_tail(const TailQuery& q);

// Pr[Y < threshold] for Y = scale * Binomial(l, p).
TailEstimate exact_scaled_tail_y(std::uint64_t l, double p, double scale, double threshold);

// Pr[exp(-X t) > r_threshold] = Pr[X < -ln(r_threshold) / t].
TailEstimate exact_reliability_tail(std::uint64_t l, double p, double t, double r_threshold);

enum class BinomialSampler {
  Auto,          // inversion when the CDF walk is short and well scaled
  Inversion,     // sequential search on the CDF; one uniform per sample
  BernoulliSum,  // l uniforms per sample
};

// One Binomial(l, p) draw for trial `trial` of stream `seed`.
std::uint64_t sample_binomial(std::uint64_t l, double p, std::uint64_t seed,
                              std::uint64_t trial,
                              BinomialSampler sampler = BinomialSampler::Auto);

// Fraction of `trials` Binomial(l, p) draws with X < threshold. The result is
// a function of (query, trials, seed, sampler) only, for any `threads`.
TailEstimate mc_tail(const TailQuery& q, std::uint64_t trials, std::uint64_t seed,
                     unsigned threads = 1,
                     BinomialSampler sampler = BinomialSampler::Auto);

struct SampleMean {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::uint64_t trials = 0;
};

// Sample mean of f(X) over seeded Binomial(l, p) draws, with its standard error.
SampleMean mc_mean_binomial(std::uint64_t l, double p, std::uint64_t trials,
                            std::uint64_t seed);
SampleMean mc_mean_reliability_x(std::uint64_t l, double p, double t,
                                 std::uint64_t trials, std::uint64_t seed);

// The event a bound makes a claim about: Pr[scale * Binomial(l, p) < threshold].
// scale is 1 for the X-variant.
struct TailEvent {
  Variant variant = Variant::X;
  std::uint64_t l = 1;
  double p = 0.5;
  double scale = 1.0;
  double threshold = 0.0;

  std::string describe() const;
  friend bool operator==(const TailEvent&, const TailEvent&) = default;
};

// Event targeted by compute_bound(o, model, t, kind, variant, mode). For
// reliability bounds this is the transformed event X < H(t)/t (resp. Y < c).
TailEvent bound_event(const SdpOutcome& o, const HazardModel& model, double t,
                      BoundKind kind, Variant variant);

TailEstimate exact_oracle(const TailEvent& event);
TailEstimate mc_oracle(const TailEvent& event, std::uint64_t trials, std::uint64_t seed,
                       unsigned threads = 1);

struct VerificationRecord {
  std::string event;
  double bound = 0.0;
  double oracle = 0.0;
  OracleMethod method = OracleMethod::Exact;
  bool holds = false;
  double slack = 0.0;  // bound - oracle
  double ratio = 0.0;  // oracle / bound
  std::optional<double> stderr_;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  // Monte-Carlo only: the point estimate alone reaches the bound even though
  // the 3-sigma criterion passes.
  bool advisory = false;
};

// Exact oracles: holds iff oracle < bound (compared as logarithms). Monte-Carlo oracles: holds iff
// value - 3 stderr < bound. Throws InvalidInput for an OutOfRegime bound and
// InternalError when the two events differ.
VerificationRecord verify_bound(const BoundResult& bound, const TailEvent& bound_event,
                                const TailEstimate& oracle, const TailEvent& oracle_event);

}  // namespace sdpfeas
