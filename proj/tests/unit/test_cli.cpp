#include <doctest.h>

#include <sstream>

#include "sdpfeas/cli.hpp"
#include "sdpfeas/io.hpp"
#include "tempdir.hpp"

using namespace sdpfeas;
using testing::TempDir;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, cli::EnvLookup env = nullptr) {
  std::ostringstream out;
  std::ostringstream err;
  if (!env) env = [](const std::string&) { return std::optional<std::string>{}; };
  const int code = cli::run(args, out, err, env);
  return {code, out.str(), err.str()};
}

constexpr const char* kWorked = R"({
  "outcome": {"l": 100, "p": 0.05},
  "model": {"family": "constant", "lambda": 2},
  "t": 1.0
})";

}  // namespace

TEST_CASE("metrics from counts and records") {
  TempDir dir;
  const auto counts = dir.write("c.json", R"({"tp":5,"fn":3,"fp":2,"tn":17})");
  auto r = run({"metrics", counts.string()});
  REQUIRE(r.code == cli::kOk);
  const auto j = Json::parse(r.out);
  CHECK(j.at("fraction") == "3/20");
  CHECK(j.at("p").get<double>() == doctest::Approx(0.15));

  const auto recs = dir.write("r.csv", "actual,predicted\nyes,no\nno,no\n");
  r = run({"metrics", recs.string(), "--alias", "yes=defective", "--alias", "no=clean"});
  REQUIRE(r.code == cli::kOk);
  CHECK(Json::parse(r.out).at("fraction") == "1/2");

  r = run({"metrics", recs.string()});
  CHECK(r.code == cli::kUsageOrIo);
  CHECK(r.err.find("record 0") != std::string::npos);
}

TEST_CASE("assumption violation exits 2") {
  TempDir dir;
  const auto counts = dir.write("c.json", R"({"tp":5,"fn":0,"fp":2,"tn":17})");
  const auto r = run({"metrics", counts.string()});
  CHECK(r.code == cli::kAssumptionViolation);
  CHECK(r.err.find("at least one false negative and one true negative") != std::string::npos);
}

TEST_CASE("usage and IO errors exit 1") {
  CHECK(run({}).code == cli::kUsageOrIo);
  CHECK(run({"frobnicate"}).code == cli::kUsageOrIo);
  CHECK(run({"bound"}).code == cli::kUsageOrIo);
  CHECK(run({"bound", "--config", "/nonexistent/x.json"}).code == cli::kUsageOrIo);
  TempDir dir;
  const auto cfg = dir.write("s.json", kWorked);
  CHECK(run({"bound", "--config", cfg.string(), "--format", "xml"}).code == cli::kUsageOrIo);
  CHECK(run({"verify", "--config", cfg.string(), "--out", "/nonexistent/dir/r.json"}).code ==
        cli::kUsageOrIo);
  const auto bad = dir.write("bad.json", "{not json");
  CHECK(run({"bound", "--config", bad.string()}).code == cli::kUsageOrIo);
}

TEST_CASE("bound prints the worked example and flags out of regime") {
  TempDir dir;
  const auto cfg = dir.write("s.json", kWorked);
  auto r = run({"bound", "--config", cfg.string()});
  REQUIRE(r.code == cli::kOk);
  const auto j = Json::parse(r.out);
  CHECK(j.at("theorem") == "corollary9");
  CHECK(j.at("bound").get<double>() == doctest::Approx(0.4065696597405991).epsilon(1e-15));

  r = run({"bound", "--config", cfg.string(), "--kind", "reliability"});
  CHECK(r.code == cli::kOutOfRegime);
  CHECK(Json::parse(r.out).at("bound").is_null());

  r = run({"bound", "--config", cfg.string(), "--format", "csv"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.rfind(kSweepHeader, 0) == 0);
}

TEST_CASE("sweep CSV to file parses back") {
  TempDir dir;
  const auto cfg = dir.write("s.json", R"({
    "outcome": {"l": 100, "p": 0.05},
    "model": {"family": "li", "K": 1.5},
    "time_grid": {"start": 0.1, "stop": 10, "steps": 30, "spacing": "log"}
  })");
  const auto out = dir.path() / "sweep.csv";
  const auto r = run({"sweep", "--config", cfg.string(), "--out", out.string(), "--threads", "2"});
  REQUIRE(r.code == cli::kOk);
  std::ifstream in(out);
  const auto rows = read_sweep_csv(in);
  REQUIRE(rows.size() == 30);
  CHECK(rows.front().t == 0.1);
  CHECK(rows.back().t == 10.0);
  CHECK(rows.front().bound.has_value());
  CHECK_FALSE(rows.back().bound.has_value());
}

TEST_CASE("verify: exit 0, determinism, and a corrupted bound exits 4") {
  TempDir dir;
  const auto cfg = dir.write("s.json", kWorked);
  auto a = run({"verify", "--config", cfg.string(), "--trials", "5000", "--seed", "3"});
  REQUIRE(a.code == cli::kOk);
  auto b = run({"verify", "--config", cfg.string(), "--trials", "5000", "--seed", "3",
                "--threads", "2"});
  auto ja = Json::parse(a.out);
  auto jb = Json::parse(b.out);
  ja.erase("timestamp");
  jb.erase("timestamp");
  CHECK(ja.dump() == jb.dump());
  CHECK(ja.at("settings").at("seed") == 3);

  const auto bad = run({"verify", "--config", cfg.string(), "--test-bound-scale", "0.01"});
  CHECK(bad.code == cli::kVerificationFailed);
  CHECK(Json::parse(bad.out).at("summary").at("failed") == 1);
}

TEST_CASE("seed precedence: flag, config, environment, default") {
  TempDir dir;
  const auto plain = dir.write("s.json", kWorked);
  const auto seeded = dir.write("t.json", R"({
    "outcome": {"l": 100, "p": 0.05},
    "model": {"family": "constant", "lambda": 2},
    "t": 1.0,
    "verify": {"seed": 17}
  })");
  auto env = [](const std::string& k) -> std::optional<std::string> {
    if (k == "SDPFEAS_SEED") return "4242";
    return std::nullopt;
  };
  auto seed_of = [](const Result& r) {
    REQUIRE(r.code == cli::kOk);
    return Json::parse(r.out).at("settings").at("seed").get<std::uint64_t>();
  };
  CHECK(seed_of(run({"verify", "--config", plain.string()})) == 20240901u);
  CHECK(seed_of(run({"verify", "--config", plain.string()}, env)) == 4242u);
  CHECK(seed_of(run({"verify", "--config", seeded.string()}, env)) == 17u);
  CHECK(seed_of(run({"verify", "--config", seeded.string(), "--seed", "5"}, env)) == 5u);

  auto junk = [](const std::string&) -> std::optional<std::string> { return "abc"; };
  CHECK(run({"verify", "--config", plain.string()}, junk).code == cli::kUsageOrIo);
}

TEST_CASE("metrics from a four-line records file") {
  TempDir dir;
  const auto recs = dir.write("r.csv",
                              "actual,predicted\ndefective,clean\nclean,clean\nclean,defective\n"
                              "defective,defective\n");
  const auto r = run({"metrics", recs.string()});
  REQUIRE(r.code == cli::kOk);
  CHECK(Json::parse(r.out).at("p").get<double>() == 0.5);
  CHECK(Json::parse(r.out).at("confusion").at("fn") == 1);
}

TEST_CASE("out-of-regime record keeps mu and threshold") {
  TempDir dir;
  const auto cfg = dir.write("s.json", R"({
    "outcome": {"l": 100, "p": 0.05},
    "model": {"family": "li", "K": 1},
    "t": 6
  })");
  const auto r = run({"bound", "--config", cfg.string()});
  CHECK(r.code == cli::kOutOfRegime);
  const auto j = Json::parse(r.out);
  CHECK(j.at("mu").get<double>() == 5.0);
  CHECK(j.at("threshold").get<double>() == 6.0);
  CHECK(j.at("regime") == "OutOfRegime");
}

TEST_CASE("as-published Y reliability is tagged") {
  TempDir dir;
  const auto cfg = dir.write("s.json", R"({
    "outcome": {"l": 10, "p": 0.5, "injection": {"K_hat": 1, "m_hat": 0}},
    "model": {"family": "weibull", "K": 0.02, "m": 0},
    "t": 1,
    "kinds": ["reliability"],
    "corrected": false
  })");
  auto r = run({"bound", "--config", cfg.string()});
  REQUIRE(r.code == cli::kOk);
  CHECK(Json::parse(r.out).at("sign_mode") == "as-published");
  r = run({"bound", "--config", cfg.string(), "--corrected"});
  REQUIRE(r.code == cli::kOk);
  CHECK(Json::parse(r.out).at("sign_mode") == "corrected");
}

TEST_CASE("single-step sweep equals bound") {
  TempDir dir;
  const auto grid = dir.write("g.json", R"({
    "outcome": {"l": 100, "p": 0.05},
    "model": {"family": "weibull", "K": 1, "m": 1},
    "time_grid": {"start": 1.5, "stop": 3, "steps": 1}
  })");
  const auto point = dir.write("p.json", R"({
    "outcome": {"l": 100, "p": 0.05},
    "model": {"family": "weibull", "K": 1, "m": 1},
    "t": 1.5
  })");
  const auto s = run({"sweep", "--config", grid.string(), "--format", "json"});
  const auto b = run({"bound", "--config", point.string()});
  REQUIRE(s.code == cli::kOk);
  REQUIRE(b.code == cli::kOk);
  const auto rows = Json::parse(s.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].dump() == Json::parse(b.out).dump());
}

TEST_CASE("sweep rows flip to out of regime at t = lp / K") {
  TempDir dir;
  const auto cfg = dir.write("s.json", R"({
    "outcome": {"l": 100, "p": 0.05},
    "model": {"family": "li", "K": 2},
    "time_grid": {"start": 0.25, "stop": 5, "steps": 20}
  })");
  const auto r = run({"sweep", "--config", cfg.string()});
  REQUIRE(r.code == cli::kOk);
  std::istringstream in(r.out);
  for (const auto& row : read_sweep_csv(in)) {
    CHECK(row.bound.has_value() == (row.t < 2.5));
  }
  const auto bad = dir.write("b.json", R"({
    "outcome": {"l": 100, "p": 0.05},
    "model": {"family": "li", "K": 2},
    "time_grid": {"start": 1, "stop": 1, "steps": 4, "spacing": "log"}
  })");
  CHECK(run({"sweep", "--config", bad.string()}).code == cli::kUsageOrIo);
  CHECK(run({"sweep", "--config", cfg.string(), "--out", "/nonexistent/d/x.csv"}).code ==
        cli::kUsageOrIo);
}

TEST_CASE("verify over a 50-point all-Valid grid") {
  TempDir dir;
  const auto cfg = dir.write("s.json", R"({
    "outcome": {"l": 100, "p": 0.05},
    "model": {"family": "constant", "lambda": 2},
    "time_grid": {"start": 0.1, "stop": 10, "steps": 50}
  })");
  auto r = run({"verify", "--config", cfg.string()});
  REQUIRE(r.code == cli::kOk);
  const auto j = Json::parse(r.out);
  CHECK(j.at("verification").size() == 50);
  CHECK(j.at("bounds").size() == 50);

  r = run({"verify", "--config", cfg.string(), "--test-bound-scale", "1e-6"});
  CHECK(r.code == cli::kVerificationFailed);
  CHECK(Json::parse(r.out).at("summary").at("failed") == 50);
}
