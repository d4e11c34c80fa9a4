#pragma once

// Verification campaigns over a scenario's time grid and the feasibility
// report built from them.

#include <cstdint>
#include <string>
#include <vector>

#include "sdpfeas/io.hpp"

namespace sdpfeas {

inline constexpr const char* kToolName = "sdpfeas";
inline constexpr const char* kToolVersion = "0.1.0";

struct CampaignOptions {
  std::uint64_t seed = 0;
  std::uint64_t mc_trials = 0;
  bool exact = true;
  double epsilon = 0.05;
  unsigned threads = 1;
  // Test hook: multiplies every bound before verification. 1 in normal use.
  double bound_scale = 1.0;
};

enum class PointStatus { Feasible, Infeasible, OutOfRegime };
const char* to_string(PointStatus status) noexcept;

struct ReportRow {
  double t = 0.0;
  BoundKind kind = BoundKind::Hazard;
  BoundResult bound;
  TailEvent event;
  std::vector<VerificationRecord> checks;
  // As-published Y reliability bounds are reported but never counted as
  // soundness failures.
  bool exempt = false;
  PointStatus status = PointStatus::OutOfRegime;
};

struct TimeRange {
  double from = 0.0;
  double to = 0.0;
};

struct KindSummary {
  BoundKind kind = BoundKind::Hazard;
  std::vector<TimeRange> feasible_at;
  std::vector<TimeRange> infeasible_at;
  std::vector<TimeRange> out_of_regime_at;
};

struct FeasibilityReport {
  Json scenario;
  CampaignOptions options;
  std::vector<ReportRow> rows;  // time-major, kinds in configuration order
  std::vector<KindSummary> kinds;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  std::uint64_t exempt = 0;
  std::optional<double> min_slack;
  std::optional<double> max_slack;

  bool all_hold() const noexcept { return failed == 0; }
};

FeasibilityReport run_campaign(const ScenarioConfig& config, const CampaignOptions& options);

// `timestamp` is the only field that varies between identical runs.
Json report_to_json(const FeasibilityReport& report, const std::string& timestamp);

std::string utc_timestamp();

}  // namespace sdpfeas
