#include "cantor/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cantor/error.hpp"
#include "pipeline_impl.hpp"

namespace cantor {

namespace {

const std::vector<std::string> kOrder{"map", "puzzle", "tableau", "nest", "geometry", "measure"};

}  // namespace

void RunState::write(const std::string& name, const std::string& text) {
  std::filesystem::path p = std::filesystem::path(m.out_dir) / name;
  std::ofstream out(p, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + p.string());
  out << text;
  result.files.push_back(name);
}

nlohmann::json num(double x) {
  if (!std::isfinite(x)) return fmt12(x);
  return std::stod(fmt12(x));
}

std::vector<std::string> expand_stages(const std::vector<std::string>& requested) {
  std::vector<bool> on(kOrder.size(), false);
  for (const auto& s : requested) {
    if (s == "all") {
      std::fill(on.begin(), on.end(), true);
      continue;
    }
    auto it = std::find(kOrder.begin(), kOrder.end(), s);
    if (it == kOrder.end()) fail(ErrorCode::Domain, "unknown stage '" + s + "'");
    on[it - kOrder.begin()] = true;
  }
  // map -> puzzle -> tableau -> nest is a chain; geometry and measure need
  // the puzzle and use the nest or the classification when present
  int last = -1;
  for (int i = 0; i < static_cast<int>(kOrder.size()); ++i)
    if (on[i]) last = std::max(last, i <= 3 ? i : 1);
  for (int i = 0; i <= last; ++i) on[i] = true;
  std::vector<std::string> out;
  for (size_t i = 0; i < kOrder.size(); ++i)
    if (on[i]) out.push_back(kOrder[i]);
  return out;
}

AnalyzeResult run_analyze(const Manifest& m) {
  AnalyzeResult result;
  std::vector<std::string> stages;
  try {
    stages = expand_stages(m.stages);
    if (m.symbolic.empty() && m.map_path.empty()) fail(ErrorCode::Domain, "no map given");
    if (!m.symbolic.empty() && !m.map_path.empty()) fail(ErrorCode::Domain, "give either a map or a symbolic model");
    if (m.symbolic.empty() && !std::filesystem::exists(m.map_path))
      fail(ErrorCode::Io, "map file not found: " + m.map_path);
    if (!(m.resolution > 0 && m.resolution < 1)) fail(ErrorCode::Domain, "resolution must lie in (0, 1)");
    if (m.depth < 1 || m.cols < 1) fail(ErrorCode::Domain, "depth and cols must be positive");
    std::filesystem::create_directories(m.out_dir);
  } catch (const Error& e) {
    result.exit_code = 2;
    result.error = e.what();
    return result;
  }

  RunState s{m, result};
  for (const auto& name : stages) {
    StageResult r;
    r.stage = name;
    try {
      if (name == "map") stage_map(s, r);
      else if (name == "puzzle") stage_puzzle(s, r);
      else if (name == "tableau") stage_tableau(s, r);
      else if (name == "nest") stage_nest(s, r);
      else if (name == "geometry") stage_geometry(s, r);
      else if (name == "measure") stage_measure(s, r);
      r.ran = true;
    } catch (const std::exception& e) {
      result.stages.push_back(r);
      result.exit_code = 3;
      result.error = "stage " + name + ": " + e.what();
      break;
    }
    result.stages.push_back(r);
  }

  std::ostringstream sum;
  sum << "manifest map=" << (m.symbolic.empty() ? m.map_path : "symbolic " + m.symbolic)
      << " depth=" << m.depth << " cols=" << m.cols << " resolution=" << fmt12(m.resolution) << " seed=" << m.seed
      << " samples=" << m.samples << " iter_cap=" << m.iter_cap << "\n";
  if (m.threads != 1) sum << "threads requested " << m.threads << "; stages run on one thread\n";
  int failures = 0;
  for (const auto& r : result.stages) {
    sum << "stage " << r.stage << ": " << (r.ran ? "ran" : "FAILED") << ", checks " << r.checks << ", failures "
        << r.failures;
    if (!r.note.empty()) sum << " (" << r.note << ")";
    sum << "\n";
    failures += r.failures;
  }
  if (!result.error.empty()) sum << "error: " << result.error << "\n";
  if (result.exit_code == 0 && failures > 0) result.exit_code = 1;
  sum << "exit " << result.exit_code << "\n";
  try {
    s.write("summary.txt", sum.str());
  } catch (const Error& e) {
    if (result.exit_code == 0) result.exit_code = 3;
    result.error = e.what();
  }
  return result;
}

}  // namespace cantor
