#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cantor {

// What `analyze` runs. Stages run in the order map, puzzle, tableau, nest,
// geometry, measure whatever order they are listed in.
struct Manifest {
  std::string map_path;
  std::string symbolic;   // "SEED:LAG" swaps the map for the symbolic kneading model
  int symbolic_length = 300000;
  std::vector<std::string> stages{"all"};
  int depth = 12;
  int cols = 512;
  double resolution = 1.0 / 2048;  // grid spacing as a fraction of the depth-0 box
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out_dir = "out";
  int samples = 10000;             // density probes
  int iter_cap = 200;
  int nest_levels = 3;
};

struct StageResult {
  std::string stage;
  bool ran = false;
  int checks = 0;
  int failures = 0;
  std::string note;
};

struct AnalyzeResult {
  std::vector<StageResult> stages;
  std::vector<std::string> files;  // written, relative to out_dir
  int exit_code = 0;               // 0 all checks pass, 1 some check failed, 3 a stage failed
  std::string error;
};

std::vector<std::string> expand_stages(const std::vector<std::string>& requested);
AnalyzeResult run_analyze(const Manifest& m);

struct SuiteLine {
  std::string check;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteLine> lines;
  bool pass() const;
};

const std::vector<std::string>& suite_names();
// Throws Domain for an unknown suite name.
SuiteResult run_suite(const std::string& name, const std::string& corpus_dir, std::uint64_t seed);
std::string format_suite(const SuiteResult& r);

}  // namespace cantor
