#include "sdpfeas/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace sdpfeas {

namespace {

void reject_extras(const Json& j, const std::set<std::string>& allowed, const char* what) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) {
      throw InvalidInput(std::string(what) + ": unexpected field `" + key + "`");
    }
  }
}

void require_object(const Json& j, const char* what) {
  if (!j.is_object()) throw InvalidInput(std::string(what) + " must be a JSON object");
}

double number_field(const Json& j, const char* key, const char* what) {
  if (!j.contains(key)) {
    throw InvalidInput(std::string(what) + ": missing field `" + key + "`");
  }
  const auto& v = j.at(key);
  if (!v.is_number()) {
    throw InvalidInput(std::string(what) + ": field `" + key + "` must be a number");
  }
  return v.get<double>();
}

std::int64_t integer_field(const Json& j, const char* key, const char* what) {
  if (!j.contains(key)) {
    throw InvalidInput(std::string(what) + ": missing field `" + key + "`");
  }
  const auto& v = j.at(key);
  if (!v.is_number_integer()) {
    throw InvalidInput(std::string(what) + ": field `" + key + "` must be an integer");
  }
  return v.get<std::int64_t>();
}

std::uint64_t unsigned_field(const Json& j, const char* key, const char* what) {
  const std::int64_t v = integer_field(j, key, what);
  if (v < 0) throw InvalidInput(std::string(what) + ": field `" + key + "` must be >= 0");
  return static_cast<std::uint64_t>(v);
}

Label parse_label(const std::string& word) {
  Label out{};
  if (!LabelVocabulary{}.lookup(word, out)) {
    throw InvalidInput("label alias must map to `defective` or `clean`, got `" + word + "`");
  }
  return out;
}

BoundKind parse_kind(const std::string& s) {
  if (s == "hazard") return BoundKind::Hazard;
  if (s == "reliability") return BoundKind::Reliability;
  throw InvalidInput("kind must be `hazard` or `reliability`, got `" + s + "`");
}

double parse_csv_number(const std::string& cell, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "not a number: `" + cell + "`");
  }
  if (used != cell.size()) throw ParseError(line, "not a number: `" + cell + "`");
  return v;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ConfusionMatrix parse_counts_json(const Json& j) {
  require_object(j, "counts");
  reject_extras(j, {"tp", "fn", "fp", "tn"}, "counts");
  return confusion_from_counts(integer_field(j, "tp", "counts"), integer_field(j, "fn", "counts"),
                               integer_field(j, "fp", "counts"), integer_field(j, "tn", "counts"));
}

HazardModel parse_hazard_model(const Json& j) {
  constexpr const char* what = "model";
  require_object(j, what);
  if (!j.contains("family") || !j.at("family").is_string()) {
    throw InvalidInput("model: missing string field `family`");
  }
  const auto family = family_from_name(j.at("family").get<std::string>());
  switch (family) {
    case HazardFamily::Weibull:
      reject_extras(j, {"family", "K", "m"}, what);
      return HazardModel::weibull(number_field(j, "K", what), number_field(j, "m", what));
    case HazardFamily::NonLinearDecreasing:
      reject_extras(j, {"family", "K"}, what);
      return HazardModel::non_linear_decreasing(number_field(j, "K", what));
    case HazardFamily::LinearDecreasing:
      reject_extras(j, {"family", "K", "m"}, what);
      return HazardModel::linear_decreasing(number_field(j, "K", what),
                                            number_field(j, "m", what));
    case HazardFamily::NonLinearIncreasing:
      reject_extras(j, {"family", "K"}, what);
      return HazardModel::non_linear_increasing(number_field(j, "K", what));
    case HazardFamily::LinearIncreasing:
      reject_extras(j, {"family", "K"}, what);
      return HazardModel::linear_increasing(number_field(j, "K", what));
    case HazardFamily::Constant:
      reject_extras(j, {"family", "lambda"}, what);
      return HazardModel::constant(number_field(j, "lambda", what));
  }
  throw InternalError("unhandled hazard family");
}

Json to_json(const HazardModel& model) {
  Json j;
  j["family"] = std::string(family_name(model.family()));
  switch (model.family()) {
    case HazardFamily::Weibull:
    case HazardFamily::LinearDecreasing:
      j["K"] = model.K();
      j["m"] = model.m();
      break;
    case HazardFamily::Constant:
      j["lambda"] = model.lambda();
      break;
    default:
      j["K"] = model.K();
  }
  return j;
}

LabelVocabulary parse_label_aliases(const Json& j) {
  require_object(j, "labels");
  LabelVocabulary vocab;
  for (const auto& [word, target] : j.items()) {
    if (!target.is_string()) throw InvalidInput("labels: alias targets must be strings");
    vocab.add_alias(word, parse_label(target.get<std::string>()));
  }
  return vocab;
}

ParsedOutcome parse_outcome(const Json& j, const std::filesystem::path& base_dir) {
  constexpr const char* what = "outcome";
  require_object(j, what);
  reject_extras(j, {"l", "p", "confusion", "records", "labels", "injection", "n"}, what);
  const std::int64_t l = integer_field(j, "l", what);
  if (l < 1) throw InvalidInput("outcome: l must be at least 1");

  const int sources = int(j.contains("p")) + int(j.contains("confusion")) +
                      int(j.contains("records"));
  if (sources != 1) {
    throw InvalidInput("outcome: exactly one of `p`, `confusion`, `records` is required");
  }

  std::optional<WeibullInjection> injection;
  if (j.contains("injection")) {
    const auto& inj = j.at("injection");
    require_object(inj, "injection");
    reject_extras(inj, {"K_hat", "m_hat"}, "injection");
    injection = WeibullInjection{number_field(inj, "K_hat", "injection"),
                                 number_field(inj, "m_hat", "injection")};
  }
  std::optional<std::uint64_t> n;
  if (j.contains("n")) n = unsigned_field(j, "n", what);

  std::optional<ConfusionMatrix> confusion;
  std::optional<FailureProbability> probability;
  double p = 0.0;
  if (j.contains("p")) {
    p = number_field(j, "p", what);
  } else {
    if (j.contains("confusion")) {
      confusion = parse_counts_json(j.at("confusion"));
    } else {
      if (!j.at("records").is_string()) throw InvalidInput("outcome: `records` must be a path");
      std::filesystem::path path = j.at("records").get<std::string>();
      if (path.is_relative()) path = base_dir / path;
      std::ifstream in(path);
      if (!in) throw InvalidInput("cannot open records file " + path.string());
      LabelVocabulary vocab;
      if (j.contains("labels")) vocab = parse_label_aliases(j.at("labels"));
      const auto records = parse_records_csv(in, vocab);
      confusion = confusion_from_records(records);
    }
    probability = false_omission_rate(*confusion);
    p = probability->p;
  }
  return ParsedOutcome{SdpOutcome(static_cast<std::uint64_t>(l), p, injection, n), confusion,
                       probability};
}

std::vector<double> make_grid(const TimeGrid& grid) {
  if (!(std::isfinite(grid.start) && grid.start > 0.0)) {
    throw InvalidInput("time_grid.start must be positive");
  }
  if (!(std::isfinite(grid.stop) && grid.stop > grid.start)) {
    throw InvalidInput("time_grid.stop must exceed time_grid.start");
  }
  if (grid.steps < 1) throw InvalidInput("time_grid.steps must be at least 1");
  std::vector<double> out(grid.steps);
  out[0] = grid.start;
  if (grid.steps == 1) return out;
  const double denom = static_cast<double>(grid.steps - 1);
  for (std::uint64_t i = 1; i + 1 < grid.steps; ++i) {
    const double f = static_cast<double>(i) / denom;
    out[i] = grid.spacing == Spacing::Linear
                 ? grid.start + f * (grid.stop - grid.start)
                 : std::exp(std::log(grid.start) + f * (std::log(grid.stop) - std::log(grid.start)));
  }
  out.back() = grid.stop;
  return out;
}

namespace {

ScenarioConfig parse_scenario_impl(const Json& j, const std::filesystem::path& base_dir) {
  require_object(j, "config");
  reject_extras(j,
                {"outcome", "model", "time_grid", "t", "kinds", "variant", "corrected",
                 "verify", "epsilon"},
                "config");
  if (!j.contains("outcome")) throw InvalidInput("config: missing `outcome`");
  if (!j.contains("model")) throw InvalidInput("config: missing `model`");

  ScenarioConfig c{parse_outcome(j.at("outcome"), base_dir), parse_hazard_model(j.at("model")),
                   {}, {}, {}, Variant::X, SignMode::Corrected, {}, 0.05, j};

  if (j.contains("time_grid")) {
    const auto& g = j.at("time_grid");
    require_object(g, "time_grid");
    reject_extras(g, {"start", "stop", "steps", "spacing"}, "time_grid");
    TimeGrid grid;
    grid.start = number_field(g, "start", "time_grid");
    grid.stop = number_field(g, "stop", "time_grid");
    grid.steps = unsigned_field(g, "steps", "time_grid");
    if (g.contains("spacing")) {
      const auto s = g.at("spacing").get<std::string>();
      if (s == "linear") {
        grid.spacing = Spacing::Linear;
      } else if (s == "log") {
        grid.spacing = Spacing::Log;
      } else {
        throw InvalidInput("time_grid.spacing must be `linear` or `log`");
      }
    }
    make_grid(grid);  // validate eagerly
    c.time_grid = grid;
  }
  if (j.contains("t")) {
    const double t = number_field(j, "t", "config");
    if (!(std::isfinite(t) && t > 0.0)) throw InvalidInput("config: t must be positive");
    c.t = t;
  }

  if (j.contains("kinds")) {
    const auto& kinds = j.at("kinds");
    if (!kinds.is_array() || kinds.empty()) {
      throw InvalidInput("config: `kinds` must be a non-empty array");
    }
    for (const auto& k : kinds) {
      const auto kind = parse_kind(k.get<std::string>());
      if (std::find(c.kinds.begin(), c.kinds.end(), kind) != c.kinds.end()) {
        throw InvalidInput("config: duplicate kind in `kinds`");
      }
      c.kinds.push_back(kind);
    }
  } else {
    c.kinds = {BoundKind::Hazard};
  }

  if (j.contains("variant")) {
    const auto v = j.at("variant").get<std::string>();
    if (v == "X") {
      c.variant = Variant::X;
    } else if (v == "Y") {
      c.variant = Variant::Y;
    } else {
      throw InvalidInput("config: variant must be `X` or `Y`");
    }
  } else {
    c.variant = c.outcome.outcome.is_y_variant() ? Variant::Y : Variant::X;
  }
  if ((c.variant == Variant::Y) != c.outcome.outcome.is_y_variant()) {
    throw InvalidInput(c.variant == Variant::Y
                           ? "config: variant Y needs `outcome.injection`"
                           : "config: variant X must not carry `outcome.injection`");
  }
  if (c.variant == Variant::Y && c.model.family() != HazardFamily::Weibull) {
    throw InvalidInput("config: variant Y is defined for the Weibull baseline only");
  }

  if (j.contains("corrected")) {
    if (!j.at("corrected").is_boolean()) throw InvalidInput("config: `corrected` must be boolean");
    c.sign_mode = j.at("corrected").get<bool>() ? SignMode::Corrected : SignMode::AsPublished;
  }

  if (j.contains("verify")) {
    const auto& v = j.at("verify");
    require_object(v, "verify");
    reject_extras(v, {"exact", "mc_trials", "seed"}, "verify");
    if (v.contains("exact")) c.verify.exact = v.at("exact").get<bool>();
    if (v.contains("mc_trials")) c.verify.mc_trials = unsigned_field(v, "mc_trials", "verify");
    if (v.contains("seed")) {
      if (!v.at("seed").is_number_unsigned() && !v.at("seed").is_number_integer()) {
        throw InvalidInput("verify: seed must be an unsigned integer");
      }
      c.verify.seed = v.at("seed").get<std::uint64_t>();
    }
  }
  if (j.contains("epsilon")) {
    c.epsilon = number_field(j, "epsilon", "config");
    if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) {
      throw InvalidInput("config: epsilon must lie inside (0, 1)");
    }
  }
  return c;
}

}  // namespace

ScenarioConfig parse_scenario(const Json& j, const std::filesystem::path& base_dir) {
  try {
    return parse_scenario_impl(j, base_dir);
  } catch (const nlohmann::json::exception& e) {
    // Wrong JSON types surface as library errors, not nlohmann ones.
    throw InvalidInput(std::string("config: ") + e.what());
  }
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("config " + path.string() + ": " + e.what());
  }
  return parse_scenario(j, path.parent_path());
}

std::vector<double> scenario_times(const ScenarioConfig& config) {
  if (config.time_grid) return make_grid(*config.time_grid);
  if (config.t) return {*config.t};
  throw InvalidInput("config: either `time_grid` or `t` is required");
}

Json to_json(const BoundResult& r) {
  Json j;
  j["theorem"] = to_string(r.theorem);
  j["mu"] = r.mu;
  j["threshold"] = r.threshold;
  j["delta"] = r.delta;
  if (r.valid()) {
    j["bound"] = r.bound;
    j["log_bound"] = r.log_bound;
  } else {
    j["bound"] = nullptr;
  }
  j["regime"] = to_string(r.regime);
  if (r.t) {
    j["t"] = *r.t;
  } else {
    j["t"] = nullptr;
  }
  if (r.sign_mode) j["sign_mode"] = to_string(*r.sign_mode);
  return j;
}

Json to_json(const VerificationRecord& r) {
  Json j;
  j["event"] = r.event;
  j["bound"] = r.bound;
  j["oracle"] = r.oracle;
  j["method"] = to_string(r.method);
  j["holds"] = r.holds;
  j["slack"] = r.slack;
  // oracle/bound is infinite only when the bound underflowed to zero.
  if (std::isfinite(r.ratio)) {
    j["ratio"] = r.ratio;
  } else {
    j["ratio"] = nullptr;
  }
  if (r.method == OracleMethod::MonteCarlo) {
    if (r.seed) j["seed"] = *r.seed;
    if (r.trials) j["trials"] = *r.trials;
    if (r.stderr_) j["stderr"] = *r.stderr_;
    j["advisory"] = r.advisory;
  }
  return j;
}

void write_sweep_csv(std::ostream& out, std::span<const BoundResult> rows) {
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    out << (r.t ? format_double(*r.t) : std::string()) << ',' << to_string(r.theorem) << ','
        << format_double(r.mu) << ',' << format_double(r.threshold) << ','
        << format_double(r.delta) << ',' << (r.valid() ? format_double(r.bound) : std::string())
        << ',' << to_string(r.regime) << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader) {
    throw ParseError(0, std::string("expected header `") + kSweepHeader + "`");
  }
  std::vector<SweepRow> rows;
  std::size_t index = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != 7) throw ParseError(index, "expected 7 columns");
    SweepRow row;
    row.t = parse_csv_number(cells[0], index);
    row.theorem = cells[1];
    row.mu = parse_csv_number(cells[2], index);
    row.threshold = parse_csv_number(cells[3], index);
    row.delta = parse_csv_number(cells[4], index);
    if (!cells[5].empty()) row.bound = parse_csv_number(cells[5], index);
    row.regime = cells[6];
    rows.push_back(std::move(row));
    ++index;
  }
  return rows;
}

}  // namespace sdpfeas
