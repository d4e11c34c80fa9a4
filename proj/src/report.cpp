#include "sdpfeas/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>

namespace sdpfeas {

namespace {

std::vector<TimeRange> ranges_with(const std::vector<ReportRow>& rows, BoundKind kind,
                                   PointStatus status) {
  std::vector<TimeRange> out;
  bool open = false;
  for (const auto& row : rows) {
    if (row.kind != kind) continue;
    if (row.status == status) {
      if (open) {
        out.back().to = row.t;
      } else {
        out.push_back({row.t, row.t});
        open = true;
      }
    } else {
      open = false;
    }
  }
  return out;
}

Json ranges_json(const std::vector<TimeRange>& ranges) {
  Json arr = Json::array();
  for (const auto& r : ranges) arr.push_back(Json::array({r.from, r.to}));
  return arr;
}

}  // namespace

const char* to_string(PointStatus status) noexcept {
  switch (status) {
    case PointStatus::Feasible: return "feasible";
    case PointStatus::Infeasible: return "infeasible";
    case PointStatus::OutOfRegime: return "out-of-regime";
  }
  return "unknown";
}

FeasibilityReport run_campaign(const ScenarioConfig& config, const CampaignOptions& options) {
  if (!(options.epsilon > 0.0 && options.epsilon < 1.0)) {
    throw InvalidInput("epsilon must lie inside (0, 1)");
  }
  const auto& outcome = config.outcome.outcome;
  const auto times = scenario_times(config);

  FeasibilityReport report;
  report.scenario = config.source;
  report.options = options;

  // Bounds per kind, evaluated as sweeps, then interleaved time-major.
  std::vector<std::vector<BoundResult>> per_kind;
  for (auto kind : config.kinds) {
    per_kind.push_back(bound_sweep(outcome, config.model, times, kind, config.variant,
                                   config.sign_mode, options.threads));
  }

  for (std::size_t i = 0; i < times.size(); ++i) {
    for (std::size_t k = 0; k < config.kinds.size(); ++k) {
      ReportRow row;
      row.t = times[i];
      row.kind = config.kinds[k];
      row.bound = per_kind[k][i];
      row.event = bound_event(outcome, config.model, row.t, row.kind, config.variant);
      row.exempt = config.variant == Variant::Y && row.kind == BoundKind::Reliability &&
                   config.sign_mode == SignMode::AsPublished;

      if (!row.bound.valid()) {
        row.status = PointStatus::OutOfRegime;
      } else {
        row.status = row.bound.bound <= options.epsilon ? PointStatus::Infeasible
                                                        : PointStatus::Feasible;
        BoundResult checked = row.bound;
        if (options.bound_scale != 1.0) {
          checked.bound *= options.bound_scale;
          checked.log_bound += std::log(options.bound_scale);
        }
        if (options.exact) {
          row.checks.push_back(
              verify_bound(checked, row.event, exact_oracle(row.event), row.event));
        }
        if (options.mc_trials > 0) {
          row.checks.push_back(verify_bound(
              checked, row.event,
              mc_oracle(row.event, options.mc_trials, options.seed, options.threads),
              row.event));
        }
        for (const auto& rec : row.checks) {
          if (row.exempt) {
            ++report.exempt;
            continue;
          }
          ++report.checked;
          if (!rec.holds) ++report.failed;
          report.min_slack = std::min(report.min_slack.value_or(rec.slack), rec.slack);
          report.max_slack = std::max(report.max_slack.value_or(rec.slack), rec.slack);
        }
      }
      report.rows.push_back(std::move(row));
    }
  }

  for (auto kind : config.kinds) {
    report.kinds.push_back({kind, ranges_with(report.rows, kind, PointStatus::Feasible),
                            ranges_with(report.rows, kind, PointStatus::Infeasible),
                            ranges_with(report.rows, kind, PointStatus::OutOfRegime)});
  }
  return report;
}

Json report_to_json(const FeasibilityReport& report, const std::string& timestamp) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["timestamp"] = timestamp;
  j["scenario"] = report.scenario;
  j["settings"] = {{"seed", report.options.seed},
                   {"mc_trials", report.options.mc_trials},
                   {"exact", report.options.exact},
                   {"epsilon", report.options.epsilon}};

  Json rows = Json::array();
  Json checks = Json::array();
  for (const auto& row : report.rows) {
    Json r = to_json(row.bound);
    r["kind"] = to_string(row.kind);
    r["status"] = to_string(row.status);
    rows.push_back(std::move(r));
    for (const auto& rec : row.checks) {
      Json c;
      c["t"] = row.t;
      c["kind"] = to_string(row.kind);
      c["theorem"] = to_string(row.bound.theorem);
      const Json fields = to_json(rec);
      for (const auto& [key, value] : fields.items()) c[key] = value;
      if (row.exempt) c["exempt"] = true;
      checks.push_back(std::move(c));
    }
  }
  j["bounds"] = std::move(rows);
  j["verification"] = std::move(checks);

  Json summary;
  summary["all_hold"] = report.all_hold();
  summary["checked"] = report.checked;
  summary["failed"] = report.failed;
  summary["exempt"] = report.exempt;
  summary["min_slack"] = report.min_slack ? Json(*report.min_slack) : Json(nullptr);
  summary["max_slack"] = report.max_slack ? Json(*report.max_slack) : Json(nullptr);
  summary["verdict_rule"] =
      "tool convention: bound <= epsilon => SDP testing unlikely to beat manual testing at t";
  Json kinds;
  for (const auto& k : report.kinds) {
    kinds[to_string(k.kind)] = {{"feasible_at", ranges_json(k.feasible_at)},
                                {"infeasible_at", ranges_json(k.infeasible_at)},
                                {"out_of_regime_at", ranges_json(k.out_of_regime_at)}};
  }
  summary["by_kind"] = std::move(kinds);
  j["summary"] = std::move(summary);
  return j;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace sdpfeas
