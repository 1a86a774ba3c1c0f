#include "cantor/symbolic.hpp"

#include "cantor/error.hpp"

namespace cantor {

namespace {

std::vector<int> labels_for(const std::string& s) {
  std::vector<int> out;
  for (char ch : s) {
    if (ch == 'W') out.push_back(0);
    else if (ch == '-' || ch == '+' || ch == 'c') out.push_back(1);
    else fail(ErrorCode::Parse, std::string("bad itinerary symbol '") + ch + "'");
  }
  return out;
}

}  // namespace

SymbolicPuzzle::SymbolicPuzzle(const std::string& critical_itinerary) {
  if (critical_itinerary.find('c') != std::string::npos)
    fail(ErrorCode::Domain, "a critical itinerary that returns to c is periodic");
  setup(2, {-1, 0}, {2});
  symbols_.push_back("c" + critical_itinerary);
  set_critical_labels(0, labels_for(symbols_[0]));
}

int SymbolicPuzzle::add_itinerary(const std::string& symbols) {
  symbols_.push_back(symbols);
  return add_orbit_labels(labels_for(symbols));
}

bool SymbolicPuzzle::same_branch(int oa, int ta, int ob, int tb, int) const {
  char a = symbols_[oa][ta], b = symbols_[ob][tb];
  return a == 'c' || b == 'c' || a == b;
}

std::string kneading_itinerary(const std::string& seed, int lag, int length) {
  if (seed.empty() || lag < 1) fail(ErrorCode::Domain, "kneading map needs a seed and a positive lag");
  labels_for(seed);
  std::string x = "?" + seed;  // 1-based
  std::vector<int> returns{static_cast<int>(seed.size())};
  while (static_cast<int>(x.size()) <= length) {
    int j = static_cast<int>(returns.size());
    int q = returns[std::max(0, j - lag)];
    x.append(x, 1, q - 1);
    char last = x[q];
    x.push_back(last == '+' ? '-' : '+');
    returns.push_back(returns.back() + q);
  }
  return x.substr(1, length);
}

}  // namespace cantor
