#include "sdpfeas/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "sdpfeas/report.hpp"

namespace sdpfeas::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240901;

struct Options {
  std::string config;
  std::string input;
  std::string out;
  std::string format;
  std::vector<std::string> aliases;
  std::optional<double> t;
  std::optional<std::string> kind;
  bool corrected = false;
  bool as_published = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<double> epsilon;
  unsigned threads = 1;
  bool no_exact = false;
  double bound_scale = 1.0;
};

// Output sink: --out file or the caller's stream. Fails before any work is
// done when the file cannot be created.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw InvalidInput("cannot write output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }
  void finish(const std::string& path) {
    stream().flush();
    if (file_.is_open() && !file_) throw InvalidInput("failed writing " + path);
  }

 private:
  std::ostream& fallback_;
  std::ofstream file_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Label parse_label_word(const std::string& word) {
  Label l{};
  if (!LabelVocabulary{}.lookup(word, l)) {
    throw InvalidInput("alias target must be `defective` or `clean`, got `" + word + "`");
  }
  return l;
}

void apply_sign_flags(const Options& o, ScenarioConfig& config) {
  if (o.corrected && o.as_published) {
    throw InvalidInput("--corrected and --as-published are mutually exclusive");
  }
  if (o.corrected) config.sign_mode = SignMode::Corrected;
  if (o.as_published) config.sign_mode = SignMode::AsPublished;
}

std::string require_format(const std::string& format, std::initializer_list<const char*> allowed,
                           const char* fallback) {
  if (format.empty()) return fallback;
  for (const char* a : allowed) {
    if (format == a) return format;
  }
  throw InvalidInput("unsupported --format `" + format + "`");
}

int cmd_metrics(const Options& o, std::ostream& out) {
  const std::string format = require_format(o.format, {"json", "csv"}, "json");
  const std::string text = read_file(o.input);
  ConfusionMatrix m;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidInput(o.input + ": " + e.what());
    }
    m = parse_counts_json(j);
  } else {
    LabelVocabulary vocab;
    for (const auto& a : o.aliases) {
      const auto eq = a.find('=');
      if (eq == std::string::npos) throw InvalidInput("--alias expects word=label");
      vocab.add_alias(a.substr(0, eq), parse_label_word(a.substr(eq + 1)));
    }
    std::istringstream in(text);
    const auto records = parse_records_csv(in, vocab);
    m = confusion_from_records(records);
  }
  const auto p = false_omission_rate(m);

  Sink sink(o.out, out);
  if (format == "json") {
    Json j;
    j["p"] = p.p;
    j["fraction"] = p.fraction();
    j["confusion"] = {{"tp", m.tp}, {"fn", m.fn}, {"fp", m.fp}, {"tn", m.tn}};
    sink.stream() << j.dump() << '\n';
  } else {
    sink.stream() << "p,fraction,tp,fn,fp,tn\n"
                  << format_double(p.p) << ',' << p.fraction() << ',' << m.tp << ',' << m.fn
                  << ',' << m.fp << ',' << m.tn << '\n';
  }
  sink.finish(o.out);
  return kOk;
}

int cmd_bound(const Options& o, std::ostream& out) {
  const std::string format = require_format(o.format, {"json", "csv"}, "json");
  auto config = load_scenario(o.config);
  apply_sign_flags(o, config);
  BoundKind kind;
  if (o.kind) {
    if (*o.kind == "hazard") {
      kind = BoundKind::Hazard;
    } else if (*o.kind == "reliability") {
      kind = BoundKind::Reliability;
    } else {
      throw InvalidInput("--kind must be hazard or reliability");
    }
  } else {
    if (config.kinds.size() != 1) {
      throw InvalidInput("config lists several kinds; choose one with --kind");
    }
    kind = config.kinds.front();
  }
  double t = 0.0;
  if (o.t) {
    t = *o.t;
  } else if (config.t) {
    t = *config.t;
  } else if (config.time_grid) {
    if (config.time_grid->steps != 1) {
      throw InvalidInput("bound evaluates one time point; set `t`, pass --t, or use steps = 1");
    }
    t = config.time_grid->start;
  } else {
    throw InvalidInput("bound needs a time point (`t` in config or --t)");
  }
  if (!(t > 0.0)) throw InvalidInput("time must be positive");

  const auto r = compute_bound(config.outcome.outcome, config.model, t, kind, config.variant,
                               config.sign_mode);
  Sink sink(o.out, out);
  if (format == "json") {
    sink.stream() << to_json(r).dump() << '\n';
  } else {
    write_sweep_csv(sink.stream(), std::span<const BoundResult>(&r, 1));
  }
  sink.finish(o.out);
  return r.valid() ? kOk : kOutOfRegime;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const std::string format = require_format(o.format, {"csv", "json"}, "csv");
  auto config = load_scenario(o.config);
  apply_sign_flags(o, config);
  const auto times = scenario_times(config);
  std::vector<std::vector<BoundResult>> per_kind;
  for (auto kind : config.kinds) {
    per_kind.push_back(bound_sweep(config.outcome.outcome, config.model, times, kind,
                                   config.variant, config.sign_mode, o.threads));
  }
  std::vector<BoundResult> rows;
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (const auto& k : per_kind) rows.push_back(k[i]);
  }
  Sink sink(o.out, out);
  if (format == "csv") {
    write_sweep_csv(sink.stream(), rows);
  } else {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    sink.stream() << arr.dump(2) << '\n';
  }
  sink.finish(o.out);
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out, const EnvLookup& env) {
  const std::string format = require_format(o.format, {"json"}, "json");
  auto config = load_scenario(o.config);
  apply_sign_flags(o, config);

  CampaignOptions options;
  if (o.seed) {
    options.seed = *o.seed;
  } else if (config.verify.seed) {
    options.seed = *config.verify.seed;
  } else if (auto s = env("SDPFEAS_SEED")) {
    try {
      std::size_t used = 0;
      options.seed = std::stoull(*s, &used, 0);
      if (used != s->size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw InvalidInput("SDPFEAS_SEED is not an unsigned integer: `" + *s + "`");
    }
  } else {
    options.seed = kDefaultSeed;
  }
  options.mc_trials = o.trials ? *o.trials : config.verify.mc_trials;
  options.exact = config.verify.exact && !o.no_exact;
  options.epsilon = o.epsilon ? *o.epsilon : config.epsilon;
  options.threads = o.threads;
  options.bound_scale = o.bound_scale;
  if (!options.exact && options.mc_trials == 0) {
    throw InvalidInput("verification needs the exact oracle or --trials > 0");
  }

  Sink sink(o.out, out);
  const auto report = run_campaign(config, options);
  sink.stream() << report_to_json(report, utc_timestamp()).dump(2) << '\n';
  sink.finish(o.out);
  return report.all_hold() ? kOk : kVerificationFailed;
}

void add_sign_flags(CLI::App* cmd, Options& o) {
  cmd->add_flag("--corrected", o.corrected, "Y reliability: use the sign consistent with R_Y = exp(-Y t)");
  cmd->add_flag("--as-published", o.as_published, "Y reliability: reproduce the printed sign");
}

}  // namespace

std::optional<std::string> process_env(const std::string& name) {
  if (const char* v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env) {
  CLI::App app{"Chernoff-bound feasibility analysis for software defect prediction"};
  app.name(kToolName);
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Options o;

  auto* metrics = app.add_subcommand("metrics", "false omission rate from counts JSON or records CSV");
  metrics->add_option("input", o.input, "counts JSON or `actual,predicted` CSV")->required();
  metrics->add_option("--alias", o.aliases, "extra record label, word=defective|clean");
  metrics->add_option("--out", o.out, "write output to this path");
  metrics->add_option("--format", o.format, "json (default) or csv");

  auto* bound = app.add_subcommand("bound", "one bound at one time point");
  bound->add_option("--config", o.config, "scenario JSON")->required();
  bound->add_option("--t", o.t, "evaluation time (overrides the config)");
  bound->add_option("--kind", o.kind, "hazard or reliability");
  bound->add_option("--out", o.out, "write output to this path");
  bound->add_option("--format", o.format, "json (default) or csv");
  add_sign_flags(bound, o);

  auto* sweep = app.add_subcommand("sweep", "bounds over the scenario time grid");
  sweep->add_option("--config", o.config, "scenario JSON")->required();
  sweep->add_option("--out", o.out, "write output to this path");
  sweep->add_option("--format", o.format, "csv (default) or json");
  sweep->add_option("--threads", o.threads, "worker threads");
  add_sign_flags(sweep, o);

  auto* verify = app.add_subcommand("verify", "certify every bound against the oracles");
  verify->add_option("--config", o.config, "scenario JSON")->required();
  verify->add_option("--out", o.out, "write the report to this path");
  verify->add_option("--format", o.format, "json");
  verify->add_option("--seed", o.seed, "Monte-Carlo seed (falls back to SDPFEAS_SEED)");
  verify->add_option("--trials", o.trials, "Monte-Carlo trials per point (0 disables)");
  verify->add_option("--epsilon", o.epsilon, "verdict cutoff on the bound");
  verify->add_option("--threads", o.threads, "worker threads");
  verify->add_flag("--no-exact", o.no_exact, "skip the exact oracle");
  // Empty group hides the option from --help.
  verify->add_option("--test-bound-scale", o.bound_scale)->group("");
  add_sign_flags(verify, o);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back(kToolName);
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageOrIo;
  }

  try {
    if (o.threads == 0) throw InvalidInput("--threads must be at least 1");
    if (*metrics) return cmd_metrics(o, out);
    if (*bound) return cmd_bound(o, out);
    if (*sweep) return cmd_sweep(o, out);
    if (*verify) return cmd_verify(o, out, env);
  } catch (const AssumptionViolation& e) {
    err << "error: " << e.what() << '\n';
    return kAssumptionViolation;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return kUsageOrIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrIo;
  }
  return kUsageOrIo;
}

}  // namespace sdpfeas::cli
