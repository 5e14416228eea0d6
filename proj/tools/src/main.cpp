// nvfix: Nielsen numbers and fixed point data for n-valued surface maps.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "nvfix/error.hpp"
#include "nvfix_cli/run.hpp"

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kConfigError = 2, kEngineError = 3 };

} // namespace

int main(int argc, char **argv) {
  using namespace nvfix;
  using namespace nvfix::cli;

  CLI::App app{"Nielsen numbers, homotopy invariants and fixed point scans for "
               "n-valued maps of the disc, sphere, projective plane and torus"};
  std::string config_path, task_name, suite, output, format = "json";
  std::optional<double> resolution, cluster_radius;
  std::optional<int> refine;
  std::optional<std::uint64_t> seed;
  bool timing = false;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--task", task_name, "classify | nielsen | scan | verify (overrides config)");
  app.add_option("--suite", suite, "verification suite: group | torus | sphere | rp2 | all");
  app.add_option("--resolution", resolution, "scan grid angular step (rad)");
  app.add_option("--refine", refine, "refinement depth");
  app.add_option("--cluster-radius", cluster_radius, "cluster merge radius");
  app.add_option("--seed", seed, "seed for regular values and random suites");
  app.add_option("--output", output, "write the report here instead of stdout");
  app.add_option("--format", format, "json | text")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timing", timing, "include wall times (reports are then not reproducible)");
  CLI11_PARSE(app, argc, argv);

  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      std::string text = buf.str();
      // a verify task needs no map description
      if (task_name == "verify") {
        auto doc = json::parse(text, nullptr, false);
        if (!doc.is_discarded() && doc.is_object()) {
          doc["task"] = "verify";
          text = doc.dump();
        }
      }
      cfg = parse_config(text);
    } else if (task_name == "verify" || (!suite.empty() && task_name.empty())) {
      cfg.task = Task::Verify;
    } else {
      std::cerr << "error: --config is required unless running --task verify\n";
      return kConfigError;
    }
    if (!task_name.empty())
      cfg.task = parse_task(task_name);
    if (!suite.empty())
      cfg.suite = suite;
    if (resolution)
      cfg.grid.resolution = *resolution;
    if (refine)
      cfg.grid.refinement_depth = *refine;
    if (cluster_radius)
      cfg.grid.cluster_radius = *cluster_radius;
    if (seed)
      cfg.grid.seed = *seed;
    cfg.grid.validate();
    if (cfg.task == Task::Verify)
      suite_criteria(cfg.suite);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }

  json report;
  try {
    report = run(cfg, timing);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::ConfigError ? kConfigError : kEngineError;
  }

  const std::string text = format == "text" ? render_text(report) : report.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "error: cannot write " << output << "\n";
      return kConfigError;
    }
    out << text;
  }
  if (cfg.task == Task::Verify && !report["verify"]["pass"].get<bool>())
    return kCheckFailed;
  return kOk;
}
