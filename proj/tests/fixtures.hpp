#pragma once

// The small graphs used throughout the test suites.

#include <string>
#include <vector>

#include "gcx/graph.hpp"
#include "gcx/partitions.hpp"

namespace fixtures {

inline gcx::DefiningGraph e2() {
  return gcx::DefiningGraph({"a", "b"}, {{0, 1}});
}

inline gcx::DefiningGraph d2() {
  return gcx::DefiningGraph({"a", "b"}, {});
}

inline gcx::DefiningGraph p3() {
  return gcx::DefiningGraph({"a", "b", "c"}, {{0, 1}, {1, 2}});
}

inline gcx::DefiningGraph k3() {
  return gcx::DefiningGraph({"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 2}});
}

inline gcx::DefiningGraph c4() {
  return gcx::DefiningGraph({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

inline gcx::DefiningGraph f3() {
  return gcx::DefiningGraph({"a", "b", "w"}, {{0, 1}});
}

// letters like "a" or "c^-1"
inline gcx::LetterSet letters(const gcx::DefiningGraph& g,
                              std::initializer_list<const char*> toks) {
  gcx::LetterSet out = 0;
  for (std::string t : toks) {
    bool inv = t.size() > 3 && t.substr(t.size() - 3) == "^-1";
    if (inv) t = t.substr(0, t.size() - 3);
    out |= gcx::letter_bit(gcx::letter(g.index_of(t), inv));
  }
  return out;
}

inline gcx::WhiteheadPartition partition(const gcx::DefiningGraph& g, const char* base,
                                         std::initializer_list<const char*> plus,
                                         std::initializer_list<const char*> minus) {
  gcx::WhiteheadPartition p;
  p.base = g.index_of(base);
  p.plus = letters(g, plus);
  p.minus = letters(g, minus);
  p.link = gcx::letters_of(g.link(p.base));
  if (!gcx::validate_partition(g, p)) throw std::logic_error("fixtures::partition invalid");
  return p;
}

// every labeled simple graph on 1..max_n vertices
inline std::vector<gcx::DefiningGraph> all_graphs(int max_n = 4) {
  std::vector<gcx::DefiningGraph> out;
  const std::vector<std::string> names = {"a", "b", "c", "d"};
  for (int n = 1; n <= max_n; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    for (uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
      std::vector<std::pair<int, int>> edges;
      for (size_t k = 0; k < pairs.size(); ++k)
        if (mask & (1u << k)) edges.push_back(pairs[k]);
      out.emplace_back(std::vector<std::string>(names.begin(), names.begin() + n), edges);
    }
  }
  return out;
}

}  // namespace fixtures
