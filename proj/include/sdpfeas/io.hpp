#pragma once

// Descriptor parsing and result serialization.
//
// Numbers in CSV output use 17 significant digits; JSON output uses the
// shortest representation that parses back to the same double. Both
// round-trip exactly.

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdpfeas/bounds.hpp"
#include "sdpfeas/confusion.hpp"
#include "sdpfeas/oracle.hpp"

namespace sdpfeas {

using Json = nlohmann::ordered_json;

std::string format_double(double x);

// {"tp":int,"fn":int,"fp":int,"tn":int}; all four required, no extras.
ConfusionMatrix parse_counts_json(const Json& j);

// {"family":"weibull|nld|ld|nli|li|constant","K":num,"m":num,"lambda":num}
// with exactly the fields the family uses.
HazardModel parse_hazard_model(const Json& j);
Json to_json(const HazardModel& model);

LabelVocabulary parse_label_aliases(const Json& j);

// {"l":int,"p":num} | {"l":int,"confusion":{...}} | {"l":int,"records":"path.csv"}
// plus optional "injection":{"K_hat":num,"m_hat":num}, "n":int and
// "labels":{"word":"defective|clean"}. Relative record paths resolve against
// `base_dir`.
struct ParsedOutcome {
  SdpOutcome outcome;
  std::optional<ConfusionMatrix> confusion;
  std::optional<FailureProbability> probability;
};
ParsedOutcome parse_outcome(const Json& j, const std::filesystem::path& base_dir = {});

enum class Spacing { Linear, Log };

struct TimeGrid {
  double start = 1.0;
  double stop = 2.0;
  std::uint64_t steps = 1;
  Spacing spacing = Spacing::Linear;
};

// Points of the grid, first = start and (for steps > 1) last = stop.
std::vector<double> make_grid(const TimeGrid& grid);

struct VerifySettings {
  bool exact = true;
  std::uint64_t mc_trials = 0;
  std::optional<std::uint64_t> seed;
};

struct ScenarioConfig {
  ParsedOutcome outcome;
  HazardModel model;
  std::optional<TimeGrid> time_grid;
  std::optional<double> t;  // single evaluation time for `bound`
  std::vector<BoundKind> kinds;
  Variant variant = Variant::X;
  SignMode sign_mode = SignMode::Corrected;
  VerifySettings verify;
  double epsilon = 0.05;
  Json source;  // parsed document, echoed in reports
};

ScenarioConfig parse_scenario(const Json& j, const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario(const std::filesystem::path& path);

// Time points the scenario evaluates: the grid, or the single `t`.
std::vector<double> scenario_times(const ScenarioConfig& config);

Json to_json(const BoundResult& r);
Json to_json(const VerificationRecord& r);

inline constexpr const char* kSweepHeader = "t,theorem,mu,threshold,delta,bound,regime";

void write_sweep_csv(std::ostream& out, std::span<const BoundResult> rows);

struct SweepRow {
  double t = 0.0;
  std::string theorem;
  double mu = 0.0;
  double threshold = 0.0;
  double delta = 0.0;
  std::optional<double> bound;
  std::string regime;
};
std::vector<SweepRow> read_sweep_csv(std::istream& in);

}  // namespace sdpfeas
