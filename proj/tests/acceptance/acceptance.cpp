// One PASS/FAIL line per acceptance criterion.
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cantor/pipeline.hpp"
#include "cantor/puzzle.hpp"

using namespace cantor;
namespace fs = std::filesystem;

namespace {

const std::string kCorpus = CANTOR_CORPUS_DIR;
int failed = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " " << id << " " << name << ": " << detail << std::endl;
  failed += !pass;
}

// lines of a suite whose check name starts with one of the prefixes
void report_lines(int id, const std::string& name, const SuiteResult& r, const std::vector<std::string>& prefixes) {
  bool pass = true;
  int n = 0;
  std::string detail;
  for (const auto& l : r.lines) {
    bool hit = false;
    for (const auto& p : prefixes) hit = hit || l.check.rfind(p, 0) == 0;
    if (!hit) continue;
    ++n;
    pass = pass && l.pass;
    detail += (detail.empty() ? "" : "; ") + l.check + " [" + l.detail + "]";
  }
  report(id, name, pass && n > 0, detail.empty() ? "no lines" : detail);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_outputs(const Manifest& base, const std::string& tag, std::string& detail) {
  Manifest a = base, b = base;
  a.out_dir = (fs::temp_directory_path() / ("cantor_det_" + tag + "_a")).string();
  b.out_dir = (fs::temp_directory_path() / ("cantor_det_" + tag + "_b")).string();
  fs::remove_all(a.out_dir);
  fs::remove_all(b.out_dir);
  auto ra = run_analyze(a), rb = run_analyze(b);
  if (ra.files != rb.files || ra.files.empty()) {
    detail += tag + ": file lists differ; ";
    return false;
  }
  int diff = 0;
  for (const auto& f : ra.files) diff += slurp(fs::path(a.out_dir) / f) != slurp(fs::path(b.out_dir) / f);
  detail += tag + ": " + std::to_string(ra.files.size()) + " files, " + std::to_string(diff) + " differ, exit " +
            std::to_string(ra.exit_code) + "; ";
  return diff == 0 && ra.exit_code == rb.exit_code;
}

}  // namespace

int main() {
  {
    auto g = run_suite("geometry", kCorpus, 1);
    report_lines(1, "modulus engine", g, {"round annulus", "covering degree"});
    report_lines(2, "extremal ring", g, {"slit modulus", "mod(A) <= mod(B_r)"});
  }
  {
    auto b = run_suite("blaschke", kCorpus, 1);
    report_lines(3, "shape under Blaschke products", b, {"Shape(U,0)"});
    report_lines(4, "Koebe gap", b, {"d(w, bd U)"});
  }
  report_lines(5, "tableau rules", run_suite("tableau-rules", kCorpus, 1), {""});

  {
    bool pass = true;
    std::string detail;
    std::vector<std::string> maps;
    for (const auto& e : fs::directory_iterator(kCorpus))
      if (e.path().extension() == ".json") maps.push_back(e.path().string());
    std::sort(maps.begin(), maps.end());
    for (const auto& path : maps) {
      Puzzle pz(load_map(path));
      auto c = check_puzzle(pz, 12, 1000, 1);
      pass = pass && c.pass();
      detail += fs::path(path).stem().string() + " nesting " + std::to_string(c.nesting_failures) + "/" +
                std::to_string(c.nesting_tests) + " disjoint " + std::to_string(c.disjoint_failures) + "/" +
                std::to_string(c.disjoint_tests) + " image " + std::to_string(c.image_failures) + "/" +
                std::to_string(c.image_tests) + " shrinking " + (c.shrinking ? "yes" : "no") + "; ";
    }
    report(6, "puzzle invariants to depth 12", pass && !maps.empty(), detail);
  }

  auto nest = run_suite("nest-inequalities", kCorpus, 1);
  report_lines(7, "KSS nest inequality matrix", nest, {"inequality matrix"});
  {
    // the measurements need planar pieces for the nest of the previous criterion
    bool synthetic = false;
    for (const auto& l : nest.lines) synthetic = synthetic || l.check.find("synthetic") != std::string::npos;
    if (synthetic) {
      report(8, "moduli and shapes on the nest", false,
             "the nest of criterion 7 is the synthetic symbolic instance, which has no planar pieces; "
             "no corpus map has a persistently recurrent critical point at caps");
    } else {
      Manifest m;
      std::string detail;
      bool pass = true;
      for (const auto& l : nest.lines) {
        if (l.check.rfind("inequality matrix on ", 0) != 0) continue;
        m.map_path = (fs::path(kCorpus) / (l.check.substr(21) + ".json")).string();
        m.stages = {"geometry"};
        m.out_dir = (fs::temp_directory_path() / "cantor_nest_geometry").string();
        auto r = run_analyze(m);
        pass = pass && r.exit_code == 0;
        detail += l.check.substr(21) + " exit " + std::to_string(r.exit_code) + "; ";
      }
      report(8, "moduli and shapes on the nest", pass && !detail.empty(), detail);
    }
  }

  report_lines(9, "density probes on z2p5", run_suite("density", kCorpus, 1), {""});

  {
    std::string detail;
    Manifest m;
    m.map_path = (fs::path(kCorpus) / "z2p5.json").string();
    bool pass = same_outputs(m, "z2p5", detail);
    Manifest s;
    s.symbolic = "W:2";
    pass = same_outputs(s, "symbolic", detail) && pass;
    report(10, "determinism", pass, detail);
  }
  std::cout << failed << " of 10 criteria failed" << std::endl;
  // criterion failures are results, not crashes; the lines above carry them
  return 0;
}
