#pragma once

// Defining graphs for right-angled Artin groups: links, stars, the fold and
// twist orders, clique structure, and components of the complement of a star.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcx/common.hpp"

namespace gcx {

// Vertex subsets as index bitmasks. Graphs here are desk-scale by design.
using VSet = uint32_t;

class DefiningGraph {
 public:
  DefiningGraph() = default;

  DefiningGraph(std::vector<std::string> names,
                const std::vector<std::pair<int, int>>& edges)
      : names_(std::move(names)) {
    const int nv = static_cast<int>(names_.size());
    if (nv == 0) throw std::invalid_argument("graph: no vertices");
    if (nv > 30) throw std::invalid_argument("graph: more than 30 vertices");
    for (int i = 0; i < nv; ++i) {
      if (name_index_.count(names_[i]))
        throw std::invalid_argument("graph: duplicate vertex name " + names_[i]);
      name_index_[names_[i]] = i;
    }
    adj_.assign(nv, 0);
    for (auto [u, v] : edges) {
      check_vertex(u);
      check_vertex(v);
      if (u == v) throw std::invalid_argument("graph: loop at " + names_[u]);
      if (adj_[u] & bit(v))
        throw std::invalid_argument("graph: repeated edge " + names_[u] + "-" + names_[v]);
      adj_[u] |= bit(v);
      adj_[v] |= bit(u);
      edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
  }

  static DefiningGraph from_names(std::vector<std::string> names,
                                  const std::vector<std::pair<std::string, std::string>>& edges) {
    std::map<std::string, int> idx;
    for (size_t i = 0; i < names.size(); ++i) idx[names[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> e;
    for (const auto& [a, b] : edges) {
      if (!idx.count(a)) throw std::invalid_argument("graph: unknown edge endpoint " + a);
      if (!idx.count(b)) throw std::invalid_argument("graph: unknown edge endpoint " + b);
      e.emplace_back(idx[a], idx[b]);
    }
    return DefiningGraph(std::move(names), e);
  }

  int n() const { return static_cast<int>(names_.size()); }
  const std::string& name(int v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  int index_of(const std::string& name) const {
    auto it = name_index_.find(name);
    if (it == name_index_.end()) throw std::invalid_argument("graph: unknown vertex " + name);
    return it->second;
  }

  bool adjacent(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return (adj_[u] & bit(v)) != 0;
  }

  VSet link(int v) const {
    check_vertex(v);
    return adj_[v];
  }

  VSet star(int v) const {
    check_vertex(v);
    return adj_[v] | bit(v);
  }

  VSet all_vertices() const { return (n() == 32) ? ~VSet(0) : ((VSet(1) << n()) - 1); }

  void check_vertex(int v) const {
    if (v < 0 || v >= n()) throw std::invalid_argument("graph: unknown vertex index");
  }

  static VSet bit(int v) { return VSet(1) << v; }

 private:
  std::vector<std::string> names_;
  std::vector<VSet> adj_;
  std::vector<std::pair<int, int>> edges_;
  std::map<std::string, int> name_index_;
};

enum class Nbhd { link, star };

inline VSet neighborhood(const DefiningGraph& g, int v, Nbhd kind) {
  return kind == Nbhd::link ? g.link(v) : g.star(v);
}

enum class Order { fold, twist };

// order_leq(g, u, v, fold) is u <=_f v, i.e. lk(u) subset of lk(v); the twist
// variant tests stars.
inline bool order_leq(const DefiningGraph& g, int u, int v, Order kind) {
  VSet a = kind == Order::fold ? g.link(u) : g.star(u);
  VSet b = kind == Order::fold ? g.link(v) : g.star(v);
  return (a & ~b) == 0;
}

// A generator is twist-dominant when some *other* generator sits below it in
// the twist order; the reflexive witness is useless for building twists.
inline bool twist_dominant(const DefiningGraph& g, int v) {
  g.check_vertex(v);
  for (int w = 0; w < g.n(); ++w)
    if (w != v && order_leq(g, w, v, Order::twist)) return true;
  return false;
}

inline bool is_clique(const DefiningGraph& g, VSet s) {
  auto vs = bits_of(s);
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = i + 1; j < vs.size(); ++j)
      if (!g.adjacent(vs[i], vs[j])) return false;
  return true;
}

namespace detail {
inline void extend_clique(const DefiningGraph& g, VSet clique, VSet candidates,
                          std::vector<VSet>& out) {
  if (!candidates) {
    // maximal iff no vertex outside extends it
    for (int v = 0; v < g.n(); ++v) {
      if (clique & DefiningGraph::bit(v)) continue;
      if ((clique & ~g.link(v)) == 0) return;
    }
    out.push_back(clique);
    return;
  }
  int v = std::countr_zero(candidates);
  extend_clique(g, clique | DefiningGraph::bit(v), candidates & g.link(v), out);
  extend_clique(g, clique, candidates & ~DefiningGraph::bit(v), out);
}
}  // namespace detail

inline std::vector<VSet> maximal_cliques(const DefiningGraph& g) {
  std::vector<VSet> out;
  detail::extend_clique(g, 0, g.all_vertices(), out);
  std::sort(out.begin(), out.end(), [](VSet a, VSet b) {
    return bits_of(a) < bits_of(b);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Intersection of all maximal cliques; equals {v : st(v) = V}.
inline VSet central_clique(const DefiningGraph& g) {
  VSet z = g.all_vertices();
  for (VSet c : maximal_cliques(g)) z &= c;
  return z;
}

// Connected components of the induced subgraph on V minus st(v), each as a
// vertex mask, ordered by smallest member.
inline std::vector<VSet> components_minus_star(const DefiningGraph& g, int v) {
  VSet rest = g.all_vertices() & ~g.star(v);
  std::vector<VSet> comps;
  while (rest) {
    int seed = std::countr_zero(rest);
    VSet comp = DefiningGraph::bit(seed);
    VSet frontier = comp;
    while (frontier) {
      VSet next = 0;
      for (int u : bits_of(frontier)) next |= g.link(u) & rest & ~comp;
      comp |= next;
      frontier = next;
    }
    comps.push_back(comp);
    rest &= ~comp;
  }
  return comps;
}

}  // namespace gcx
