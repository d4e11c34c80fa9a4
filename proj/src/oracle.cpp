#include "sdpfeas/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>
#include <vector>

#include "sdpfeas/rng.hpp"

namespace sdpfeas {

namespace {

void check_query(std::uint64_t l, double p) {
  if (l < 1) throw InvalidInput("l must be at least 1");
  if (!(p > 0.0 && p < 1.0)) throw InvalidInput("p must lie strictly inside (0, 1)");
}

// Largest count k with k < threshold, or -1 when no count qualifies.
// Values above l are clamped to l.
std::int64_t largest_admitted(std::uint64_t l, double threshold) {
  if (std::isnan(threshold)) throw InvalidInput("threshold is NaN");
  if (threshold <= 0.0) return -1;
  if (threshold > static_cast<double>(l)) return static_cast<std::int64_t>(l);
  return static_cast<std::int64_t>(std::ceil(threshold)) - 1;
}

// Below this many expected log-units of (1-p)^l the inversion walk starts from
// a representable probability.
constexpr double kInversionLogFloor = 600.0;
constexpr std::uint64_t kInversionMaxL = 1000;

bool use_inversion(std::uint64_t l, double p, BinomialSampler sampler) {
  switch (sampler) {
    case BinomialSampler::Inversion: return true;
    case BinomialSampler::BernoulliSum: return false;
    case BinomialSampler::Auto: break;
  }
  return l <= kInversionMaxL &&
         -static_cast<double>(l) * std::log1p(-p) < kInversionLogFloor;
}

std::uint64_t sample_inversion(std::uint64_t l, double p, CounterStream& stream) {
  const double u = stream.next_uniform();
  const double q = 1.0 - p;
  const double odds = p / q;
  double pmf = std::exp(static_cast<double>(l) * std::log1p(-p));
  if (pmf <= 0.0) {
    throw InvalidInput("inversion sampler underflows for these (l, p); use BernoulliSum");
  }
  double cdf = pmf;
  std::uint64_t k = 0;
  while (u >= cdf && k < l) {
    pmf *= static_cast<double>(l - k) / static_cast<double>(k + 1) * odds;
    ++k;
    cdf += pmf;
  }
  return k;
}

std::uint64_t sample_bernoulli_sum(std::uint64_t l, double p, CounterStream& stream) {
  std::uint64_t k = 0;
  for (std::uint64_t i = 0; i < l; ++i) {
    if (stream.next_uniform() < p) ++k;
  }
  return k;
}

// Splits [0, trials) into contiguous chunks and reduces per-chunk results in
// chunk order, so the total is independent of the thread count.
template <typename T, typename ChunkFn>
std::vector<T> run_chunks(std::uint64_t trials, unsigned threads, ChunkFn fn) {
  threads = std::max(1u, threads);
  if (static_cast<std::uint64_t>(threads) > trials) threads = static_cast<unsigned>(trials);
  // Fixed chunk count keeps floating-point reductions identical across
  // thread counts.
  constexpr std::uint64_t kChunks = 64;
  const std::uint64_t chunks = std::min<std::uint64_t>(kChunks, trials);
  std::vector<T> partial(chunks);
  auto chunk_range = [&](std::uint64_t c) {
    const std::uint64_t begin = trials * c / chunks;
    const std::uint64_t end = trials * (c + 1) / chunks;
    return std::pair{begin, end};
  };
  if (threads <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) {
      auto [b, e] = chunk_range(c);
      partial[c] = fn(b, e);
    }
    return partial;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::uint64_t c = w; c < chunks; c += threads) {
            auto [b, e] = chunk_range(c);
            partial[c] = fn(b, e);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return partial;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

const char* to_string(OracleMethod method) noexcept {
  return method == OracleMethod::Exact ? "exact" : "monte-carlo";
}

double binomial_log_pmf(std::uint64_t l, double p, std::uint64_t k) {
  if (k > l) return -std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(l);
  const double kk = static_cast<double>(k);
  const double log_choose =
      std::lgamma(n + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(n - kk + 1.0);
  const double log_p_term = k == 0 ? 0.0 : kk * std::log(p);
  const double log_q_term = k == l ? 0.0 : (n - kk) * std::log1p(-p);
  return log_choose + log_p_term + log_q_term;
}

double binomial_log_cdf(std::uint64_t l, double p, std::uint64_t k) {
  check_query(l, p);
  if (k >= l) return 0.0;
  std::vector<double> logs(k + 1);
  double shift = -std::numeric_limits<double>::infinity();
  for (std::uint64_t j = 0; j <= k; ++j) {
    logs[j] = binomial_log_pmf(l, p, j);
    shift = std::max(shift, logs[j]);
  }
  if (!std::isfinite(shift)) return shift;
  // Ascending-order summation of the shifted terms; terms are unimodal so
  // the largest contributions come last.
  double sum = 0.0;
  for (double lv : logs) sum += std::exp(lv - shift);
  return std::min(0.0, shift + std::log(sum));
}

double binomial_cdf(std::uint64_t l, double p, std::uint64_t k) {
  return std::exp(binomial_log_cdf(l, p, k));
}

TailEstimate exact_binomial_tail(const TailQuery& q) {
  check_query(q.l, q.p);
  TailEstimate out;
  out.method = OracleMethod::Exact;
  const std::int64_t k = largest_admitted(q.l, q.threshold);
  if (k < 0) {
    out.log_value = -std::numeric_limits<double>::infinity();
  } else if (static_cast<std::uint64_t>(k) >= q.l) {
    out.log_value = 0.0;
  } else {
    out.log_value = binomial_log_cdf(q.l, q.p, static_cast<std::uint64_t>(k));
  }
  out.value = std::exp(out.log_value);
  return out;
}

TailEstimate exact_scaled_tail_y(std::uint64_t l, double p, double scale, double threshold) {
  if (!(std::isfinite(scale) && scale > 0.0)) throw InvalidInput("scale must be positive");
  return exact_binomial_tail({l, p, threshold / scale});
}

TailEstimate exact_reliability_tail(std::uint64_t l, double p, double t, double r_threshold) {
  if (!(r_threshold > 0.0 && r_threshold < 1.0)) {
    throw InvalidInput("reliability threshold must lie strictly inside (0, 1)");
  }
  if (!(std::isfinite(t) && t > 0.0)) throw InvalidInput("time must be positive");
  return exact_binomial_tail({l, p, -std::log(r_threshold) / t});
}

std::uint64_t sample_binomial(std::uint64_t l, double p, std::uint64_t seed,
                              std::uint64_t trial, BinomialSampler sampler) {
  check_query(l, p);
  CounterStream stream(seed, trial);
  return use_inversion(l, p, sampler) ? sample_inversion(l, p, stream)
                                      : sample_bernoulli_sum(l, p, stream);
}

TailEstimate mc_tail(const TailQuery& q, std::uint64_t trials, std::uint64_t seed,
                     unsigned threads, BinomialSampler sampler) {
  check_query(q.l, q.p);
  if (trials == 0) throw InvalidInput("trials must be at least 1");
  const std::int64_t k = largest_admitted(q.l, q.threshold);
  const bool inversion = use_inversion(q.l, q.p, sampler);
  auto counts = run_chunks<std::uint64_t>(trials, threads, [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = b; i < e; ++i) {
      CounterStream stream(seed, i);
      const std::uint64_t x = inversion ? sample_inversion(q.l, q.p, stream)
                                        : sample_bernoulli_sum(q.l, q.p, stream);
      if (static_cast<std::int64_t>(x) <= k) ++hits;
    }
    return hits;
  });
  std::uint64_t hits = 0;
  for (auto c : counts) hits += c;
  TailEstimate out;
  out.method = OracleMethod::MonteCarlo;
  out.value = static_cast<double>(hits) / static_cast<double>(trials);
  out.log_value = std::log(out.value);
  out.trials = trials;
  out.stderr_ = std::sqrt(out.value * (1.0 - out.value) / static_cast<double>(trials));
  out.seed = seed;
  return out;
}

namespace {

template <typename F>
SampleMean mc_mean(std::uint64_t l, double p, std::uint64_t trials, std::uint64_t seed, F f) {
  check_query(l, p);
  if (trials < 2) throw InvalidInput("trials must be at least 2 for a standard error");
  struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  auto parts = run_chunks<Moments>(trials, 1, [&](std::uint64_t b, std::uint64_t e) {
    Moments m;
    for (std::uint64_t i = b; i < e; ++i) {
      const double v = f(sample_binomial(l, p, seed, i));
      m.sum += v;
      m.sum_sq += v * v;
    }
    return m;
  });
  Moments total;
  for (const auto& m : parts) {
    total.sum += m.sum;
    total.sum_sq += m.sum_sq;
  }
  const double n = static_cast<double>(trials);
  SampleMean out;
  out.trials = trials;
  out.mean = total.sum / n;
  const double var = std::max(0.0, (total.sum_sq - n * out.mean * out.mean) / (n - 1.0));
  out.stderr_ = std::sqrt(var / n);
  return out;
}

}  // namespace

SampleMean mc_mean_binomial(std::uint64_t l, double p, std::uint64_t trials,
                            std::uint64_t seed) {
  return mc_mean(l, p, trials, seed, [](std::uint64_t x) { return static_cast<double>(x); });
}

SampleMean mc_mean_reliability_x(std::uint64_t l, double p, double t, std::uint64_t trials,
                                 std::uint64_t seed) {
  if (!(std::isfinite(t) && t > 0.0)) throw InvalidInput("time must be positive");
  return mc_mean(l, p, trials, seed,
                 [t](std::uint64_t x) { return std::exp(-static_cast<double>(x) * t); });
}

std::string TailEvent::describe() const {
  if (variant == Variant::X) {
    return "Pr[X < " + format_number(threshold) + "], X ~ Binomial(" + std::to_string(l) +
           ", " + format_number(p) + ")";
  }
  return "Pr[Y < " + format_number(threshold) + "], Y = " + format_number(scale) +
         " * Binomial(" + std::to_string(l) + ", " + format_number(p) + ")";
}

TailEvent bound_event(const SdpOutcome& o, const HazardModel& model, double t,
                      BoundKind kind, Variant variant) {
  TailEvent e;
  e.variant = variant;
  e.l = o.l();
  e.p = o.p();
  if (variant == Variant::X) {
    e.scale = 1.0;
    e.threshold = kind == BoundKind::Hazard ? hazard_at(model, t)
                                            : reliability_tail_threshold(model, t);
    return e;
  }
  if (!o.injection()) throw WrongVariant("Y-variant event needs a Weibull injection");
  e.scale = injection_scale(*o.injection(), t);
  e.threshold = kind == BoundKind::Hazard ? hazard_at(model, t)
                                          : reliability_tail_threshold(model, t);
  return e;
}

TailEstimate exact_oracle(const TailEvent& event) {
  if (event.variant == Variant::X) return exact_binomial_tail({event.l, event.p, event.threshold});
  return exact_scaled_tail_y(event.l, event.p, event.scale, event.threshold);
}

TailEstimate mc_oracle(const TailEvent& event, std::uint64_t trials, std::uint64_t seed,
                       unsigned threads) {
  if (!(std::isfinite(event.scale) && event.scale > 0.0)) {
    throw InvalidInput("scale must be positive");
  }
  return mc_tail({event.l, event.p, event.threshold / event.scale}, trials, seed, threads);
}

VerificationRecord verify_bound(const BoundResult& bound, const TailEvent& bound_event,
                                const TailEstimate& oracle, const TailEvent& oracle_event) {
  if (!bound.valid()) throw InvalidInput("cannot verify an OutOfRegime bound");
  if (!(bound_event == oracle_event)) {
    throw InternalError("oracle event `" + oracle_event.describe() +
                        "` does not match bound event `" + bound_event.describe() + "`");
  }
  VerificationRecord r;
  r.event = bound_event.describe();
  r.bound = bound.bound;
  r.oracle = oracle.value;
  r.method = oracle.method;
  r.slack = bound.bound - oracle.value;
  r.ratio = bound.bound > 0.0 ? oracle.value / bound.bound
                              : std::numeric_limits<double>::infinity();
  if (oracle.method == OracleMethod::Exact) {
    r.holds = oracle.log_value < bound.log_bound;
  } else {
    const double se = oracle.stderr_.value_or(0.0);
    r.holds = oracle.value - 3.0 * se < bound.bound;
    r.advisory = r.holds && oracle.value >= bound.bound;
    r.stderr_ = oracle.stderr_;
    r.seed = oracle.seed;
    r.trials = oracle.trials;
  }
  return r;
}

}  // namespace sdpfeas
