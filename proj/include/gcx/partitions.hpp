#pragma once

// Whitehead partitions of the signed generators of a RAAG: validation,
// Sing/max, enumeration, adjacency, compatibility, and compatible collections.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcx/graph.hpp"

namespace gcx {

// Signed generators are letters 2v (positive) and 2v+1 (inverse); a letter's
// inverse is letter ^ 1. Letter sets are bitmasks.
using LetterSet = uint64_t;

inline int letter(int v, bool inv) { return 2 * v + (inv ? 1 : 0); }
inline int letter_vertex(int l) { return l / 2; }
inline bool letter_inverted(int l) { return l & 1; }
inline LetterSet letter_bit(int l) { return LetterSet(1) << l; }

inline LetterSet letters_of(VSet vs) {
  LetterSet out = 0;
  for (int v : bits_of(vs)) out |= letter_bit(letter(v, false)) | letter_bit(letter(v, true));
  return out;
}

inline LetterSet all_letters(const DefiningGraph& g) { return letters_of(g.all_vertices()); }

struct WhiteheadPartition {
  int base = -1;        // a vertex in max(P); a convenience witness
  LetterSet plus = 0;   // side P+
  LetterSet minus = 0;  // side P-
  LetterSet link = 0;   // lk(base) together with inverses

  bool same_sides(const WhiteheadPartition& o) const {
    return (plus == o.plus && minus == o.minus) || (plus == o.minus && minus == o.plus);
  }

  bool splits(int v) const {
    bool pos_plus = (plus >> letter(v, false)) & 1;
    bool neg_plus = (plus >> letter(v, true)) & 1;
    bool pos_minus = (minus >> letter(v, false)) & 1;
    bool neg_minus = (minus >> letter(v, true)) & 1;
    return (pos_plus && neg_minus) || (pos_minus && neg_plus);
  }

  // side containing a letter, or nullopt when the letter is in lk(P)
  std::optional<bool> side_of_letter(int l) const {  // false = plus, true = minus
    if ((plus >> l) & 1) return false;
    if ((minus >> l) & 1) return true;
    return std::nullopt;
  }
};

enum class PartitionIssue {
  ok,
  bad_base,
  not_a_partition,     // sides and link do not partition the signed generators
  link_mismatch,       // link set differs from lk(base) with inverses
  base_not_split,
  singleton_side,
  component_torn,      // a component of the star complement is split across sides
  split_not_below_base // a split generator whose link exceeds lk(base)
};

inline const char* to_string(PartitionIssue r) {
  switch (r) {
    case PartitionIssue::ok: return "ok";
    case PartitionIssue::bad_base: return "bad_base";
    case PartitionIssue::not_a_partition: return "not_a_partition";
    case PartitionIssue::link_mismatch: return "link_mismatch";
    case PartitionIssue::base_not_split: return "base_not_split";
    case PartitionIssue::singleton_side: return "singleton_side";
    case PartitionIssue::component_torn: return "component_torn";
    case PartitionIssue::split_not_below_base: return "split_not_below_base";
  }
  return "?";
}

inline PartitionIssue validate_partition_reason(const DefiningGraph& g,
                                                const WhiteheadPartition& p) {
  if (p.base < 0 || p.base >= g.n()) return PartitionIssue::bad_base;
  LetterSet all = all_letters(g);
  if ((p.plus & p.minus) || (p.plus & p.link) || (p.minus & p.link))
    return PartitionIssue::not_a_partition;
  if ((p.plus | p.minus | p.link) != all) return PartitionIssue::not_a_partition;
  if (p.link != letters_of(g.link(p.base))) return PartitionIssue::link_mismatch;
  if (!p.splits(p.base)) return PartitionIssue::base_not_split;
  if (popcount(p.plus) < 2 || popcount(p.minus) < 2) return PartitionIssue::singleton_side;
  for (VSet comp : components_minus_star(g, p.base)) {
    LetterSet cl = letters_of(comp);
    if ((cl & p.plus) && (cl & p.minus)) {
      // a singleton component may be split; larger ones may not, and a
      // non-split component must sit entirely in one side
      if (popcount(comp) > 1) return PartitionIssue::component_torn;
      int v = bits_of(comp)[0];
      if (!p.splits(v)) return PartitionIssue::component_torn;
    }
  }
  for (int v = 0; v < g.n(); ++v) {
    if (v != p.base && p.splits(v) && (g.link(v) & ~g.link(p.base)))
      return PartitionIssue::split_not_below_base;
  }
  return PartitionIssue::ok;
}

inline bool validate_partition(const DefiningGraph& g, const WhiteheadPartition& p) {
  return validate_partition_reason(g, p) == PartitionIssue::ok;
}

// Sing(P) and max(P), recomputed from the sides alone so the answer cannot
// depend on which witness base is stored.
inline std::pair<VSet, VSet> sing_and_max(const DefiningGraph& g, const WhiteheadPartition& p) {
  if (!validate_partition(g, p)) throw std::invalid_argument("sing_and_max: invalid partition");
  VSet sing = 0;
  for (int v = 0; v < g.n(); ++v)
    if (p.splits(v)) sing |= DefiningGraph::bit(v);
  VSet mx = 0;
  for (int v : bits_of(sing)) {
    bool top = true;
    for (int w : bits_of(sing))
      if (g.link(w) & ~g.link(v)) { top = false; break; }
    if (top) mx |= DefiningGraph::bit(v);
  }
  return {sing, mx};
}

inline VSet max_of(const DefiningGraph& g, const WhiteheadPartition& p) {
  return sing_and_max(g, p).second;
}

namespace detail {

inline std::vector<int> sorted_letters(LetterSet s) { return bits_of(s); }

// canonical form: the side holding the smallest letter is stored as plus,
// and the base is the smallest vertex of max(P)
inline WhiteheadPartition canonicalize(const DefiningGraph& g, WhiteheadPartition p) {
  int lo_plus = p.plus ? std::countr_zero(p.plus) : 64;
  int lo_minus = p.minus ? std::countr_zero(p.minus) : 64;
  if (lo_minus < lo_plus) std::swap(p.plus, p.minus);
  p.base = bits_of(max_of(g, p))[0];
  return p;
}

}  // namespace detail

// All Whitehead partitions of g, deduplicated by unordered side pair, in a
// fixed order: lexicographic by (sorted max set, sorted plus side).
inline std::vector<WhiteheadPartition> enumerate_partitions(const DefiningGraph& g) {
  std::vector<WhiteheadPartition> out;
  for (int m = 0; m < g.n(); ++m) {
    auto comps = components_minus_star(g, m);
    const int k = static_cast<int>(comps.size());
    // per component: 0 = all plus, 1 = all minus, and for singletons also
    // 2 = split with positive letter up, 3 = split with positive letter down
    std::vector<int> choice(k, 0);
    auto emit = [&]() {
      WhiteheadPartition p;
      p.base = m;
      p.link = letters_of(g.link(m));
      p.plus = letter_bit(letter(m, false));
      p.minus = letter_bit(letter(m, true));
      for (int i = 0; i < k; ++i) {
        LetterSet cl = letters_of(comps[i]);
        int v = std::countr_zero(comps[i]);
        switch (choice[i]) {
          case 0: p.plus |= cl; break;
          case 1: p.minus |= cl; break;
          case 2:
            p.plus |= letter_bit(letter(v, false));
            p.minus |= letter_bit(letter(v, true));
            break;
          case 3:
            p.minus |= letter_bit(letter(v, false));
            p.plus |= letter_bit(letter(v, true));
            break;
        }
      }
      if (validate_partition(g, p)) out.push_back(detail::canonicalize(g, p));
    };
    // odometer over component choices
    int pos = 0;
    for (;;) {
      emit();
      pos = 0;
      while (pos < k) {
        int lim = popcount(comps[pos]) == 1 ? 4 : 2;
        if (++choice[pos] < lim) break;
        choice[pos] = 0;
        ++pos;
      }
      if (pos >= k) break;
    }
  }
  // dedup by unordered side pair
  std::vector<WhiteheadPartition> uniq;
  for (const auto& p : out) {
    bool seen = false;
    for (const auto& q : uniq)
      if (p.same_sides(q)) { seen = true; break; }
    if (!seen) uniq.push_back(p);
  }
  std::sort(uniq.begin(), uniq.end(),
            [&](const WhiteheadPartition& a, const WhiteheadPartition& b) {
              auto ka = std::make_pair(bits_of(max_of(g, a)), detail::sorted_letters(a.plus));
              auto kb = std::make_pair(bits_of(max_of(g, b)), detail::sorted_letters(b.plus));
              return ka < kb;
            });
  return uniq;
}

// Label adjacency. Two partitions are adjacent when every vertex of max(P)
// is graph-adjacent to every vertex of max(Q); a vertex and a partition are
// adjacent when the vertex lies in lk(P); two vertices when they share an
// edge of the graph.
inline bool adjacent(const DefiningGraph& g, const WhiteheadPartition& p,
                     const WhiteheadPartition& q) {
  if (p.same_sides(q)) throw std::invalid_argument("adjacent: equal partitions");
  for (int x : bits_of(max_of(g, p)))
    for (int y : bits_of(max_of(g, q)))
      if (x == y || !g.adjacent(x, y)) return false;
  return true;
}

inline bool adjacent(const DefiningGraph& g, int v, const WhiteheadPartition& p) {
  g.check_vertex(v);
  return (p.link >> letter(v, false)) & 1;
}

inline bool adjacent(const DefiningGraph& g, int u, int v) {
  if (u == v) throw std::invalid_argument("adjacent: equal vertices");
  return g.adjacent(u, v);
}

// Side pairs (X, Y) with X a side of p and Y a side of q and X disjoint
// from Y. Compatibility is adjacency or the existence of such a pair.
inline int disjoint_side_pairs(const WhiteheadPartition& p, const WhiteheadPartition& q) {
  int count = 0;
  for (LetterSet x : {p.plus, p.minus})
    for (LetterSet y : {q.plus, q.minus})
      if ((x & y) == 0) ++count;
  return count;
}

inline bool compatible(const DefiningGraph& g, const WhiteheadPartition& p,
                       const WhiteheadPartition& q) {
  if (p.same_sides(q)) throw std::invalid_argument("compatible: equal partitions");
  return adjacent(g, p, q) || disjoint_side_pairs(p, q) > 0;
}

// All pairwise-compatible subsets of the partition list, the empty set
// included, ordered by their index sequences.
inline std::vector<std::vector<int>> compatible_collections(
    const DefiningGraph& g, const std::vector<WhiteheadPartition>& parts) {
  const int n = static_cast<int>(parts.size());
  std::vector<std::vector<bool>> comp(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      comp[i][j] = comp[j][i] = compatible(g, parts[i], parts[j]);
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto dfs = [&](auto&& self, int start) -> void {
    out.push_back(cur);
    for (int i = start; i < n; ++i) {
      bool ok = true;
      for (int j : cur)
        if (!comp[j][i]) { ok = false; break; }
      if (!ok) continue;
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  dfs(dfs, 0);
  return out;
}

inline std::vector<std::vector<int>> compatible_collections(const DefiningGraph& g) {
  return compatible_collections(g, enumerate_partitions(g));
}

}  // namespace gcx
