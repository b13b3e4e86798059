#pragma once

// Blowups of the Salvetti complex along compatible collections of Whitehead
// partitions: regions, the labeled cube complex, characteristic cycles, and
// hyperplane collapses.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcx/complex.hpp"
#include "gcx/graph.hpp"
#include "gcx/partitions.hpp"

namespace gcx {

// A region picks one side of every partition; bit i set means the minus side
// of partition i. Regions are the vertices of the blowup.
using RegionBits = uint32_t;

struct Blowup {
  DefiningGraph graph;
  std::vector<WhiteheadPartition> parts;
  CubeComplex cx;
  std::vector<RegionBits> region_bits;       // per complex vertex
  std::vector<int> region_index;             // bits -> vertex id, or -1
  std::vector<RegionBits> splitters;         // per generator: partitions splitting it

  int n_vertices() const { return graph.n(); }
  int n_parts() const { return static_cast<int>(parts.size()); }

  int vertex_label(int v) const { return v; }
  int partition_label(int i) const { return graph.n() + i; }
  bool is_partition_label(int label) const { return label >= graph.n(); }
  int partition_of_label(int label) const { return label - graph.n(); }

  std::string label_name(int label) const {
    if (!is_partition_label(label)) return graph.name(label);
    return "P" + std::to_string(partition_of_label(label));
  }

  // the XOR mask a crossing applies to region bits
  RegionBits move_mask(int label) const {
    return is_partition_label(label) ? (RegionBits(1) << partition_of_label(label))
                                     : splitters[label];
  }

  // label adjacency in the sense of partitions: graph adjacency for two
  // generators, membership in lk(P) for a generator and a partition, and
  // max-set adjacency for two partitions
  bool labels_adjacent(int a, int b) const { return label_adj_[a][b]; }

  VSet max_of_label(int label) const {
    return is_partition_label(label) ? part_max_[partition_of_label(label)]
                                     : DefiningGraph::bit(label);
  }

  std::vector<std::vector<bool>> label_adj_;
  std::vector<VSet> part_max_;
};

namespace blowdetail {

inline bool region_valid(const std::vector<WhiteheadPartition>& parts,
                         const std::vector<std::vector<bool>>& part_adj, RegionBits r) {
  const int k = static_cast<int>(parts.size());
  for (int i = 0; i < k; ++i) {
    LetterSet si = (r >> i) & 1 ? parts[i].minus : parts[i].plus;
    for (int j = i + 1; j < k; ++j) {
      if (part_adj[i][j]) continue;
      LetterSet sj = (r >> j) & 1 ? parts[j].minus : parts[j].plus;
      if ((si & sj) == 0) return false;
    }
  }
  return true;
}

// a region is terminal for a signed letter when it selects the side holding
// that letter wherever the letter lies in a side at all
inline bool terminal_for(const std::vector<WhiteheadPartition>& parts, RegionBits r, int let) {
  for (size_t i = 0; i < parts.size(); ++i) {
    auto side = parts[i].side_of_letter(let);
    if (!side) continue;
    if (*side != (((r >> i) & 1) != 0)) return false;
  }
  return true;
}

}  // namespace blowdetail

inline std::vector<RegionBits> enumerate_regions(const DefiningGraph& g,
                                                 const std::vector<WhiteheadPartition>& parts) {
  const int k = static_cast<int>(parts.size());
  if (k > 25) throw std::invalid_argument("enumerate_regions: collection too large");
  std::vector<std::vector<bool>> part_adj(k, std::vector<bool>(k, false));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      if (!compatible(g, parts[i], parts[j]))
        throw std::invalid_argument("enumerate_regions: incompatible collection");
      part_adj[i][j] = adjacent(g, parts[i], parts[j]);
    }
  std::vector<RegionBits> out;
  for (RegionBits r = 0; r < (RegionBits(1) << k); ++r)
    if (blowdetail::region_valid(parts, part_adj, r)) out.push_back(r);
  return out;
}

inline Blowup build_blowup(const DefiningGraph& g,
                           const std::vector<WhiteheadPartition>& parts) {
  Blowup b;
  b.graph = g;
  b.parts = parts;
  const int n = g.n();
  const int k = static_cast<int>(parts.size());

  for (const auto& p : parts)
    if (!validate_partition(g, p)) throw std::invalid_argument("build_blowup: invalid partition");

  b.part_max_.resize(k);
  for (int i = 0; i < k; ++i) b.part_max_[i] = max_of(g, parts[i]);

  const int nl = n + k;
  b.label_adj_.assign(nl, std::vector<bool>(nl, false));
  for (int a = 0; a < nl; ++a) {
    for (int c = a + 1; c < nl; ++c) {
      bool adj;
      if (a < n && c < n) {
        adj = g.adjacent(a, c);
      } else if (a < n) {
        adj = (parts[c - n].link >> letter(a, false)) & 1;
      } else {
        adj = adjacent(g, parts[a - n], parts[c - n]);
      }
      b.label_adj_[a][c] = b.label_adj_[c][a] = adj;
    }
  }

  b.splitters.assign(n, 0);
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < k; ++i)
      if (parts[i].splits(v)) b.splitters[v] |= RegionBits(1) << i;

  auto regions = enumerate_regions(g, parts);
  b.region_bits = regions;
  b.region_index.assign(size_t(1) << k, -1);
  b.cx.num_vertex_labels = n;
  b.cx.num_labels = nl;
  for (RegionBits r : regions) {
    b.region_index[r] = b.cx.add_vertex();
  }
  auto valid = [&](RegionBits r) { return b.region_index[r] != -1; };

  // partition edges: regions differing in exactly one chosen side
  for (int i = 0; i < k; ++i) {
    for (RegionBits r : regions) {
      RegionBits s = r ^ (RegionBits(1) << i);
      if (s > r && valid(s))
        b.cx.add_edge(b.partition_label(i), b.region_index[r], b.region_index[s]);
    }
  }
  // generator edges: one per terminal region for the positive letter,
  // oriented away from it
  for (int v = 0; v < n; ++v) {
    for (RegionBits r : regions) {
      if (!blowdetail::terminal_for(parts, r, letter(v, false))) continue;
      RegionBits s = r ^ b.splitters[v];
      if (!valid(s))
        throw std::logic_error("build_blowup: switched terminal region is invalid");
      b.cx.add_edge(b.vertex_label(v), b.region_index[r], b.region_index[s]);
    }
  }
  std::sort(b.cx.edges.begin(), b.cx.edges.end(), [](const CEdge& x, const CEdge& y) {
    auto kx = std::make_tuple(x.label, std::min(x.from, x.to), std::max(x.from, x.to), x.from);
    auto ky = std::make_tuple(y.label, std::min(y.from, y.to), std::max(y.from, y.to), y.from);
    return kx < ky;
  });
  b.cx.build_edge_table();
  if (!b.cx.regular()) throw std::logic_error("build_blowup: duplicate (vertex,label) edge");

  // cubes: every pairwise-adjacent set of labels with edges at a common
  // region spans one, with corners reached by composing the crossings
  std::vector<int> bits_to_vertex(size_t(1) << k, -1);
  for (RegionBits r : regions) bits_to_vertex[r] = b.region_index[r];

  for (RegionBits r : regions) {
    std::vector<int> avail;
    for (int label = 0; label < nl; ++label)
      if (b.cx.edge_at(b.region_index[r], label) >= 0) avail.push_back(label);

    std::vector<int> chosen;
    auto attach = [&]() {
      const int dim = static_cast<int>(chosen.size());
      CCube c;
      c.labels = chosen;
      c.corners.resize(size_t(1) << dim);
      for (int eps = 0; eps < (1 << dim); ++eps) {
        RegionBits at = r;
        for (int i = 0; i < dim; ++i)
          if (eps & (1 << i)) at ^= b.move_mask(chosen[i]);
        if (at >= bits_to_vertex.size() || bits_to_vertex[at] < 0)
          throw std::logic_error("build_blowup: cube corner left the region set");
        c.corners[eps] = bits_to_vertex[at];
      }
      const int half = 1 << (dim - 1);
      c.edges.resize(size_t(dim) * half);
      for (int dir = 0; dir < dim; ++dir) {
        for (int ctx = 0; ctx < half; ++ctx) {
          int eps0 = cubedetail::expand_context(ctx, dir, 0);
          int eps1 = cubedetail::expand_context(ctx, dir, 1);
          int e = b.cx.edge_at(c.corners[eps0], chosen[dir]);
          if (e < 0 || e != b.cx.edge_at(c.corners[eps1], chosen[dir]))
            throw std::logic_error("build_blowup: missing cube edge");
          c.edges[size_t(dir) * half + ctx] = e;
        }
      }
      b.cx.add_cube(std::move(c));
    };
    auto dfs = [&](auto&& self, size_t start) -> void {
      if (chosen.size() >= 2) attach();
      for (size_t i = start; i < avail.size(); ++i) {
        bool ok = true;
        for (int c : chosen)
          if (!b.labels_adjacent(c, avail[i])) { ok = false; break; }
        if (!ok) continue;
        chosen.push_back(avail[i]);
        self(self, i + 1);
        chosen.pop_back();
      }
    };
    dfs(dfs, 0);
  }
  return b;
}

inline Blowup salvetti(const DefiningGraph& g) { return build_blowup(g, {}); }

// ---------------------------------------------------------------------------
// characteristic cycles

struct CycleStep {
  int edge = -1;
  bool forward = true;
};

struct EdgeCycle {
  int vertex = -1;  // the generator the cycle represents
  std::vector<CycleStep> steps;
};

inline int step_source(const CubeComplex& cx, const CycleStep& s) {
  return s.forward ? cx.edges[s.edge].from : cx.edges[s.edge].to;
}

inline int step_target(const CubeComplex& cx, const CycleStep& s) {
  return s.forward ? cx.edges[s.edge].to : cx.edges[s.edge].from;
}

inline bool cycle_closed(const CubeComplex& cx, const EdgeCycle& c) {
  if (c.steps.empty()) return false;
  for (size_t i = 0; i < c.steps.size(); ++i) {
    const CycleStep& cur = c.steps[i];
    const CycleStep& nxt = c.steps[(i + 1) % c.steps.size()];
    if (step_target(cx, cur) != step_source(cx, nxt)) return false;
  }
  return true;
}

// Shortest path between two vertices using partition edges only, choosing the
// lexicographically least label sequence among shortest paths.
inline std::vector<CycleStep> partition_path(const Blowup& b, int from, int to) {
  const int nv = b.cx.num_vertices;
  std::vector<int> dist(nv, -1);
  std::vector<int> queue = {to};
  dist[to] = 0;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (int i = 0; i < b.n_parts(); ++i) {
      int e = b.cx.edge_at(v, b.partition_label(i));
      if (e < 0) continue;
      int u = b.cx.edges[e].from == v ? b.cx.edges[e].to : b.cx.edges[e].from;
      if (dist[u] == -1) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  if (dist[from] == -1) throw std::logic_error("partition_path: disconnected");
  std::vector<CycleStep> steps;
  int at = from;
  while (at != to) {
    for (int i = 0;; ++i) {
      if (i >= b.n_parts()) throw std::logic_error("partition_path: stuck");
      int e = b.cx.edge_at(at, b.partition_label(i));
      if (e < 0) continue;
      int u = b.cx.edges[e].from == at ? b.cx.edges[e].to : b.cx.edges[e].from;
      if (dist[u] == dist[at] - 1) {
        steps.push_back({e, b.cx.edges[e].from == at});
        at = u;
        break;
      }
    }
  }
  return steps;
}

// The characteristic cycle through a generator edge: the edge itself followed
// by a shortest partition path closing it up.
inline EdgeCycle characteristic_cycle(const Blowup& b, int edge) {
  const CEdge& e = b.cx.edges[edge];
  if (e.label >= b.graph.n())
    throw std::invalid_argument("characteristic_cycle: edge is not generator-labeled");
  EdgeCycle out;
  out.vertex = e.label;
  out.steps.push_back({edge, true});
  if (!e.loop()) {
    auto back = partition_path(b, e.to, e.from);
    out.steps.insert(out.steps.end(), back.begin(), back.end());
  }
  if (!cycle_closed(b.cx, out)) throw std::logic_error("characteristic_cycle: path did not close");
  return out;
}

// ---------------------------------------------------------------------------
// collapse of a partition hyperplane

struct CubicalMap {
  std::vector<int> vertex_image;
  std::vector<CellRef> edge_image;  // dim 1 or degenerate to dim 0
  std::vector<CellRef> cube_image;  // same dim or one lower on collapsed cubes
};

struct CollapseResult {
  CubeComplex quotient;
  CubicalMap map;
  bool regular = true;  // false when identified cells collide unexpectedly
};

namespace blowdetail {

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int x) { return up[x] == x ? x : up[x] = find(up[x]); }
  void unite(int a, int b) { up[find(a)] = find(b); }
};

}  // namespace blowdetail

// Collapses every cube through the hyperplane of one partition onto its
// shadow face. The result of collapsing P in the blowup of Pi is cubically
// isomorphic to the blowup of Pi minus P.
inline CollapseResult collapse_partition(const Blowup& b, int part_index) {
  if (part_index < 0 || part_index >= b.n_parts())
    throw std::invalid_argument("collapse_partition: partition not in the collection");
  const int plabel = b.partition_label(part_index);
  const CubeComplex& cx = b.cx;

  blowdetail::UnionFind vuf(cx.num_vertices);
  blowdetail::UnionFind euf(static_cast<int>(cx.edges.size()));
  blowdetail::UnionFind quf(static_cast<int>(cx.cubes.size()));

  for (size_t e = 0; e < cx.edges.size(); ++e)
    if (cx.edges[e].label == plabel) vuf.unite(cx.edges[e].from, cx.edges[e].to);
  for (size_t q = 0; q < cx.cubes.size(); ++q) {
    const CCube& c = cx.cubes[q];
    auto it = std::find(c.labels.begin(), c.labels.end(), plabel);
    if (it == c.labels.end()) continue;
    int dir = static_cast<int>(it - c.labels.begin());
    CellRef f0 = cx.face(c, dir, 0);
    CellRef f1 = cx.face(c, dir, 1);
    if (f0.dim == 1) euf.unite(f0.idx, f1.idx);
    else quf.unite(f0.idx, f1.idx);
  }

  CollapseResult out;
  CubeComplex& qx = out.quotient;
  qx.num_vertex_labels = cx.num_vertex_labels;
  qx.num_labels = cx.num_labels - 1;
  auto map_label = [&](int l) { return l < plabel ? l : l - 1; };

  std::vector<int> vimg(cx.num_vertices, -1);
  for (int v = 0; v < cx.num_vertices; ++v) {
    int root = vuf.find(v);
    if (vimg[root] == -1) vimg[root] = qx.add_vertex();
    vimg[v] = vimg[root];
  }

  std::vector<int> eimg(cx.edges.size(), -1);
  std::map<std::vector<int>, int> edge_seen;  // collision detection
  for (size_t e = 0; e < cx.edges.size(); ++e) {
    if (cx.edges[e].label == plabel) continue;
    int root = euf.find(static_cast<int>(e));
    if (eimg[root] == -1) {
      const CEdge& re = cx.edges[root];
      int id = qx.add_edge(map_label(re.label), vimg[re.from], vimg[re.to]);
      eimg[root] = id;
      std::vector<int> sig = {map_label(re.label), std::min(vimg[re.from], vimg[re.to]),
                              std::max(vimg[re.from], vimg[re.to])};
      auto [it2, inserted] = edge_seen.emplace(sig, id);
      if (!inserted) out.regular = false;
    }
    eimg[e] = eimg[root];
  }

  std::vector<CellRef> qimg(cx.cubes.size(), CellRef{});
  // dimension order so faces exist before their cofaces are inserted
  std::vector<int> order(cx.cubes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int bb) { return cx.cubes[a].dim() < cx.cubes[bb].dim(); });
  for (int q : order) {
    const CCube& c = cx.cubes[q];
    if (std::find(c.labels.begin(), c.labels.end(), plabel) != c.labels.end()) continue;
    int root = quf.find(q);
    if (qimg[root].dim == -1) {
      const CCube& rc = cx.cubes[root];
      CCube image;
      image.labels.reserve(rc.labels.size());
      for (int l : rc.labels) image.labels.push_back(map_label(l));
      image.corners.reserve(rc.corners.size());
      for (int v : rc.corners) image.corners.push_back(vimg[v]);
      image.edges.reserve(rc.edges.size());
      for (int e : rc.edges) image.edges.push_back(eimg[e]);
      if (qx.find_cube(image)) out.regular = false;
      int id = qx.add_cube(std::move(image));
      qimg[root] = {rc.dim(), id};
    }
    qimg[q] = qimg[root];
  }
  qx.build_edge_table();
  if (!qx.regular()) out.regular = false;

  // collapsed cells land on their shadows
  out.map.vertex_image = vimg;
  out.map.edge_image.resize(cx.edges.size());
  for (size_t e = 0; e < cx.edges.size(); ++e) {
    if (cx.edges[e].label == plabel)
      out.map.edge_image[e] = {0, vimg[cx.edges[e].from]};
    else
      out.map.edge_image[e] = {1, eimg[e]};
  }
  out.map.cube_image.resize(cx.cubes.size());
  for (size_t q = 0; q < cx.cubes.size(); ++q) {
    const CCube& c = cx.cubes[q];
    auto it = std::find(c.labels.begin(), c.labels.end(), plabel);
    if (it == c.labels.end()) {
      out.map.cube_image[q] = qimg[q];
    } else {
      int dir = static_cast<int>(it - c.labels.begin());
      CellRef f = cx.face(c, dir, 0);
      out.map.cube_image[q] = f.dim == 1 ? out.map.edge_image[f.idx] : qimg[f.idx];
    }
  }
  return out;
}

// Convenience: collapse and check the result against the freshly built
// smaller blowup.
inline bool collapse_matches_subblowup(const Blowup& b, int part_index,
                                       const Blowup& smaller) {
  CollapseResult r = collapse_partition(b, part_index);
  if (!r.regular) return false;
  return find_isomorphism(r.quotient, smaller.cx).has_value();
}

}  // namespace gcx
