#include <fstream>
#include <sstream>

#include "doctest.h"

#include "nvfix/error.hpp"
#include "nvfix_cli/config.hpp"
#include "nvfix_cli/run.hpp"

using namespace nvfix;
using namespace nvfix::cli;

namespace {

ErrorCode config_error_code(const std::string &text, std::string *message = nullptr) {
  try {
    parse_config(text);
  } catch (const Error &e) {
    if (message)
      *message = e.what();
    return e.code();
  }
  FAIL("config accepted: " << text);
  return ErrorCode::ParseError;
}

const char *kTorus = R"J({
  "surface": "Torus", "n": 2, "sigma": ["(1 2)", "id"],
  "payload": {"M": [[0, 0], [0, 0]], "c": ["0", "0"]}, "task": "nielsen"
})J";

} // namespace

TEST_CASE("task names") {
  CHECK(parse_task("scan") == Task::Scan);
  CHECK(to_string(Task::Classify) == "classify");
  CHECK_THROWS_AS(parse_task("dance"), Error);
}

TEST_CASE("config errors") {
  std::string msg;
  CHECK(config_error_code("{\n  \"n\": 2,\n  oops\n}", &msg) == ErrorCode::ConfigError);
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(config_error_code(R"J({"surface": "Torus", "n": "two", "sigma": ["id", "id"]})J", &msg) ==
        ErrorCode::ConfigError);
  CHECK(msg.find("n") != std::string::npos);
  CHECK(config_error_code(R"J({"surface": "Klein", "n": 2, "sigma": ["id", "id"]})J") ==
        ErrorCode::ConfigError);
  CHECK(config_error_code(R"J({"surface": "Torus", "n": 2, "sigma": ["id"]})J") ==
        ErrorCode::ConfigError);
  CHECK(config_error_code(R"J({"surface": "Torus", "n": 2, "sigma": ["id", "id"], "task": "x"})J") ==
        ErrorCode::ConfigError);
  CHECK(config_error_code(
            R"J({"surface": "Sphere", "n": 2, "sigma": [], "task": "scan", "grid": {"resolution": -1}})J") ==
        ErrorCode::ConfigError);
}

TEST_CASE("verify configs need no descriptor") {
  const auto cfg = parse_config(R"J({"task": "verify", "suite": "torus"})J");
  CHECK(cfg.task == Task::Verify);
  CHECK(cfg.suite == "torus");
}

TEST_CASE("torus nielsen report") {
  const auto report = run(parse_config(kTorus));
  CHECK(report["task"] == "nielsen");
  CHECK(report["nielsen"]["total"] == 2);
  CHECK(report["nielsen"]["torus"]["N"] == 2);
  CHECK(report["covering_analysis"]["index_H"] == 2);
  CHECK_FALSE(report.contains("wall_time_s"));
  CHECK(run(parse_config(kTorus), true).contains("wall_time_s"));
}

TEST_CASE("orbit sum report and conflicting per-pair input") {
  const auto report = run(parse_config(R"J({
    "surface": "Torus", "n": 4, "sigma": ["(1 2)(3 4)", "(1 3)(2 4)"], "task": "nielsen",
    "nielsen": {"per_pair": {"3": 5}}
  })J"));
  CHECK(report["nielsen"]["formula_used"] == "orbit sum over free covering");
  CHECK(report["nielsen"]["total"] == 5);

  const auto cfg = parse_config(R"J({
    "surface": "Torus", "n": 2, "sigma": ["(1 2)", "id"],
    "payload": {"M": [[0, 0], [0, 0]], "c": ["0", "0"]}, "task": "nielsen",
    "nielsen": {"per_pair": {"1": 7}}
  })J");
  try {
    run(cfg);
    FAIL("expected InconsistentInput");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::InconsistentInput);
  }
}

TEST_CASE("torus scan lists exact coincidences") {
  const auto report = run(parse_config(R"J({
    "surface": "Torus", "n": 2, "sigma": ["(1 2)", "id"],
    "payload": {"M": [[3, 0], [0, 2]], "c": ["1/3", "0"]}, "task": "scan"
  })J"));
  CHECK(report.dump().find("1/3") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
  const std::string sphere = R"J({
    "surface": "Sphere", "n": 2, "sigma": [], "task": "scan",
    "payload": {"coordinates": ["f2", "A*f2"]},
    "grid": {"resolution": 0.02, "cluster_radius": 0.1}, "seed": 3
  })J";
  const auto cfg = parse_config(sphere);
  CHECK(run(cfg).dump(2) == run(cfg).dump(2));
  CHECK(run(parse_config(kTorus)).dump() == run(parse_config(kTorus)).dump());
  CHECK_FALSE(render_text(run(cfg)).empty());
}

TEST_CASE("suite mapping") {
  CHECK(suite_criteria("all").size() == static_cast<std::size_t>(kCriterionCount));
  CHECK(suite_criteria("torus") == std::vector<int>{5});
  CHECK(suite_criteria("group") == std::vector<int>{4, 6});
  CHECK(suite_criteria("sphere") == std::vector<int>{3, 7});
  CHECK(suite_criteria("rp2") == std::vector<int>{1, 2});
  try {
    suite_criteria("everything");
    FAIL("expected UnknownSuite");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::UnknownSuite);
  }
}

TEST_CASE("fast suites pass") {
  const auto report = verify("torus");
  CHECK(report.dump().find("\"pass\":false") == std::string::npos);
  CHECK(run_criterion(5).pass());
}
