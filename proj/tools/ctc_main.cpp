// Copyright 2026 The ctcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ctc run <config.json> [--out report.json] [--no-timing]
// ctc scan <config.json> --out trace.csv
// ctc validate <config.json>
//
// Exit codes: 0 success, 2 configuration error, 3 model error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ctc/errors.hpp"
#include "ctc/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitModel = 3;

ctc::ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ctc::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  ctc::ExperimentConfig cfg = ctc::parse_config_text(text.str());
  if (const char* env = std::getenv("CTC_SEED")) {
    const std::string s(env);
    std::size_t used = 0;
    unsigned long long seed = 0;
    try {
      seed = std::stoull(s, &used, 10);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size() || s[0] == '-')
      throw ctc::ConfigError("CTC_SEED must be a non-negative integer, got '" + s + "'");
    cfg.seed = seed;
  }
  return cfg;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

int emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return kExitOk;
  }
  if (!write_file(path, content)) {
    std::cerr << "ctc: cannot write '" << path << "'\n";
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed timelike curve simulator"};
  app.set_version_flag("--version", ctc::library_version());
  app.require_subcommand(1);

  std::string config_path, out_path;
  bool no_timing = false;

  CLI::App* run = app.add_subcommand("run", "Run one experiment and write a JSON report");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out_path, "Report path (default: stdout)");
  run->add_flag("--no-timing", no_timing, "Leave wall_time_s out of the report");

  CLI::App* scan = app.add_subcommand("scan", "Run a parameter sweep and write a CSV trace");
  scan->add_option("config", config_path, "Experiment config with params.sweep")->required();
  scan->add_option("--out", out_path, "CSV path")->required();

  CLI::App* validate = app.add_subcommand("validate", "Check a config and print its canonical form");
  validate->add_option("config", config_path, "Experiment config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const ctc::ExperimentConfig cfg = load_config(config_path);

    if (*validate) {
      std::cout << ctc::serialize_config(cfg).dump(2) << '\n';
      return kExitOk;
    }

    if (*run) {
      ctc::RunOptions options;
      options.include_timing = !no_timing;
      const ctc::RunResult r = ctc::run(cfg, options);
      const int status = emit(out_path, r.report.dump(2) + "\n");
      if (status != kExitOk) return status;
      if (!r.error_code.empty()) {
        std::cerr << "ctc: " << r.error_code << ": "
                  << r.report["error"]["message"].get<std::string>() << '\n';
        return kExitModel;
      }
      return kExitOk;
    }

    const std::vector<ctc::ScanPoint> points = ctc::scan(cfg);
    return emit(out_path, ctc::scan_to_csv(points));
  } catch (const ctc::ConfigError& e) {
    std::cerr << "ctc: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ctc::Error& e) {
    std::cerr << "ctc: " << e.code() << ": " << e.what() << '\n';
    return kExitModel;
  } catch (const std::exception& e) {
    std::cerr << "ctc: " << e.what() << '\n';
    return kExitModel;
  }
}
