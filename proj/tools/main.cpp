#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cantor/error.hpp"
#include "cantor/pipeline.hpp"

#ifndef CANTOR_CORPUS_DIR
#define CANTOR_CORPUS_DIR "corpus"
#endif

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"puzzle pieces, tableaux and KSS nests for polynomial Julia sets"};
  app.require_subcommand(1);

  cantor::Manifest m;
  std::string stages = "all";
  auto* analyze = app.add_subcommand("analyze", "run pipeline stages on one map");
  analyze->add_option("--map", m.map_path, "map spec (JSON)");
  analyze->add_option("--symbolic", m.symbolic, "SEED:LAG symbolic kneading model instead of a map");
  analyze->add_option("--symbolic-length", m.symbolic_length, "itinerary length of the symbolic model");
  analyze->add_option("--stages", stages, "comma list of map,puzzle,tableau,nest,geometry,measure or all");
  analyze->add_option("--depth", m.depth, "puzzle depth");
  analyze->add_option("--cols", m.cols, "tableau columns");
  analyze->add_option("--resolution", m.resolution, "depth-0 grid spacing as a fraction of the box");
  analyze->add_option("--seed", m.seed, "random seed");
  analyze->add_option("--threads", m.threads, "thread cap");
  analyze->add_option("--out", m.out_dir, "output directory");
  analyze->add_option("--samples", m.samples, "density samples per piece");
  analyze->add_option("--iter-cap", m.iter_cap, "escape-time iteration cap");
  analyze->add_option("--levels", m.nest_levels, "nest levels");

  std::string suite, corpus = CANTOR_CORPUS_DIR;
  std::uint64_t vseed = 1;
  auto* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("suite", suite, "geometry, tableau-rules, nest-inequalities, blaschke or density")->required();
  verify->add_option("--corpus", corpus, "directory of corpus maps");
  verify->add_option("--seed", vseed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*analyze) {
    m.stages = split_list(stages);
    auto r = cantor::run_analyze(m);
    for (const auto& s : r.stages)
      std::cout << "stage " << s.stage << ": checks " << s.checks << ", failures " << s.failures
                << (s.note.empty() ? "" : " (" + s.note + ")") << "\n";
    if (!r.error.empty()) std::cerr << "error: " << r.error << "\n";
    return r.exit_code;
  }

  try {
    auto r = cantor::run_suite(suite, corpus, vseed);
    std::cout << cantor::format_suite(r);
    return r.pass() ? 0 : 1;
  } catch (const cantor::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == cantor::ErrorCode::Domain || e.code() == cantor::ErrorCode::Io ? 2 : 3;
  }
}
