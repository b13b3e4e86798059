#pragma once

// Labeled cube complexes: cells with explicit attaching data, vertex links
// and the flag test, hyperplanes and carriers, f-vectors, free faces, and
// label-preserving isomorphism.
//
// Cubes carry a corner map: corner(eps) for eps in {0,1}^k, where moving in
// direction i crosses an edge with the i-th label. Boundary identifications
// (a square with both sides on one edge, loops) are legal, so a cube also
// stores the edge used at every 1-face.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcx/common.hpp"

namespace gcx {

struct CEdge {
  int label = -1;
  int from = -1;  // for generator edges: the end the positive letter leaves
  int to = -1;

  bool loop() const { return from == to; }
};

struct CCube {
  std::vector<int> labels;   // ascending label ids; size k >= 2
  std::vector<int> corners;  // size 1<<k; corner(eps) vertex
  std::vector<int> edges;    // size k<<(k-1); edge of direction i at context c

  int dim() const { return static_cast<int>(labels.size()); }
};

struct CellRef {
  int dim = -1;
  int idx = -1;
  bool operator==(const CellRef&) const = default;
  bool operator<(const CellRef& o) const { return dim != o.dim ? dim < o.dim : idx < o.idx; }
};

namespace cubedetail {

// context index: eps with the bit of direction `dir` removed
inline int context_of(int eps, int dir) {
  int low = eps & ((1 << dir) - 1);
  int high = (eps >> (dir + 1)) << dir;
  return low | high;
}

inline int expand_context(int ctx, int dir, int side) {
  int low = ctx & ((1 << dir) - 1);
  int high = (ctx >> dir) << (dir + 1);
  return low | high | (side << dir);
}

// corner and edge tables of a cube after flipping the directions in `flips`
inline void flipped_tables(const CCube& c, int flips, std::vector<int>& corners,
                           std::vector<int>& edges) {
  const int k = c.dim();
  corners.resize(c.corners.size());
  edges.resize(c.edges.size());
  for (int eps = 0; eps < (1 << k); ++eps) corners[eps] = c.corners[eps ^ flips];
  const int half = 1 << (k - 1);
  for (int dir = 0; dir < k; ++dir) {
    int ctx_flips = context_of(flips, dir);
    for (int ctx = 0; ctx < half; ++ctx)
      edges[dir * half + ctx] = c.edges[dir * half + (ctx ^ ctx_flips)];
  }
}

inline std::vector<int> cube_key(const CCube& c) {
  const int k = c.dim();
  std::vector<int> best;
  std::vector<int> corners, edges;
  for (int flips = 0; flips < (1 << k); ++flips) {
    flipped_tables(c, flips, corners, edges);
    std::vector<int> key = c.labels;
    key.insert(key.end(), corners.begin(), corners.end());
    key.insert(key.end(), edges.begin(), edges.end());
    if (best.empty() || key < best) best = std::move(key);
  }
  return best;
}

// the geometric codimension-1 face tables of a cube, before cell lookup
inline CCube raw_face(const CCube& c, int dir, int side) {
  const int k = c.dim();
  CCube f;
  for (int i = 0; i < k; ++i)
    if (i != dir) f.labels.push_back(c.labels[i]);
  f.corners.resize(size_t(1) << (k - 1));
  for (int ctx = 0; ctx < (1 << (k - 1)); ++ctx)
    f.corners[ctx] = c.corners[expand_context(ctx, dir, side)];
  if (k >= 3) {
    const int fhalf = 1 << (k - 2);
    f.edges.resize(static_cast<size_t>(k - 1) * fhalf);
    for (int fdir = 0; fdir < k - 1; ++fdir) {
      int orig_dir = fdir < dir ? fdir : fdir + 1;
      for (int fctx = 0; fctx < fhalf; ++fctx) {
        // full corner coordinates: face coordinates spread over the surviving
        // directions, with `side` inserted at `dir`
        int face_eps = expand_context(fctx, fdir, 0);
        int full = 0;
        for (int i = 0, src = 0; i < k; ++i) {
          if (i == dir) full |= side << i;
          else {
            if (face_eps & (1 << src)) full |= 1 << i;
            ++src;
          }
        }
        int ctx_full = context_of(full, orig_dir);
        f.edges[static_cast<size_t>(fdir) * fhalf + fctx] =
            c.edges[static_cast<size_t>(orig_dir) * (1 << (k - 1)) + ctx_full];
      }
    }
  }
  return f;
}

}  // namespace cubedetail

class CubeComplex {
 public:
  int num_vertices = 0;
  int num_vertex_labels = 0;  // labels [0, num_vertex_labels) are generators
  int num_labels = 0;
  std::vector<CEdge> edges;
  std::vector<CCube> cubes;

  int add_vertex() { return num_vertices++; }

  int add_edge(int label, int from, int to) {
    edges.push_back({label, from, to});
    return static_cast<int>(edges.size()) - 1;
  }

  // deduplicates by the flip-canonical corner/edge tables
  int add_cube(CCube c) {
    auto key = cubedetail::cube_key(c);
    auto it = cube_index_.find(key);
    if (it != cube_index_.end()) return it->second;
    int id = static_cast<int>(cubes.size());
    cubes.push_back(std::move(c));
    cube_index_.emplace(std::move(key), id);
    return id;
  }

  std::optional<int> find_cube(const CCube& like) const {
    auto it = cube_index_.find(cubedetail::cube_key(like));
    if (it == cube_index_.end()) return std::nullopt;
    return it->second;
  }

  void build_edge_table() {
    edge_at_.assign(static_cast<size_t>(num_vertices) * num_labels, -1);
    regular_ = true;
    for (size_t e = 0; e < edges.size(); ++e) {
      for (int v : {edges[e].from, edges[e].to}) {
        int& slot = edge_at_[static_cast<size_t>(v) * num_labels + edges[e].label];
        if (slot != -1 && slot != static_cast<int>(e)) regular_ = false;
        slot = static_cast<int>(e);
      }
    }
  }

  // at most one edge per (vertex, label) in every complex this library builds
  int edge_at(int v, int label) const {
    return edge_at_[static_cast<size_t>(v) * num_labels + label];
  }

  bool regular() const { return regular_; }

  std::vector<int> f_vector() const {
    int maxdim = 1;
    for (const auto& c : cubes) maxdim = std::max(maxdim, c.dim());
    std::vector<int> f(maxdim + 1, 0);
    f[0] = num_vertices;
    f[1] = static_cast<int>(edges.size());
    for (const auto& c : cubes) ++f[c.dim()];
    if (f.back() == 0 && f.size() > 1) f.pop_back();
    return f;
  }

  long long euler_characteristic() const {
    auto f = f_vector();
    long long chi = 0;
    for (size_t k = 0; k < f.size(); ++k) chi += (k % 2 == 0 ? 1 : -1) * f[k];
    return chi;
  }

  int cell_count() const {
    return num_vertices + static_cast<int>(edges.size()) + static_cast<int>(cubes.size());
  }

  // The codimension-1 face of a cube in direction dir at the given side, as a
  // cell of the complex. Throws when the complex is not face-closed.
  CellRef face(const CCube& c, int dir, int side) const {
    const int k = c.dim();
    if (k == 1) throw std::logic_error("face: use edge endpoints");
    if (k == 2) return {1, c.edges[(1 - dir) * 2 + side]};
    CCube f = cubedetail::raw_face(c, dir, side);
    auto found = find_cube(f);
    if (!found) throw std::logic_error("face: missing face cell");
    return {k - 1, *found};
  }

  // all proper faces of a cell, the cell included, as a sorted set
  std::vector<CellRef> closure(CellRef cell) const {
    std::set<CellRef> out;
    std::vector<CellRef> stack = {cell};
    while (!stack.empty()) {
      CellRef c = stack.back();
      stack.pop_back();
      if (!out.insert(c).second) continue;
      if (c.dim == 1) {
        out.insert({0, edges[c.idx].from});
        out.insert({0, edges[c.idx].to});
      } else if (c.dim >= 2) {
        const CCube& q = cubes[c.idx];
        for (int dir = 0; dir < q.dim(); ++dir)
          for (int side = 0; side < 2; ++side) stack.push_back(face(q, dir, side));
      }
    }
    return {out.begin(), out.end()};
  }

 private:
  std::vector<int> edge_at_;
  std::map<std::vector<int>, int> cube_index_;
  bool regular_ = true;
};

// ---------------------------------------------------------------------------
// vertex links and the flag condition

struct LinkVertex {
  int edge = -1;
  int end = 0;  // 0/1; loops have two distinct ends
  bool operator<(const LinkVertex& o) const {
    return edge != o.edge ? edge < o.edge : end < o.end;
  }
  bool operator==(const LinkVertex&) const = default;
};

// Builds the link of every vertex from cube corners and tests that each is a
// simplicial flag complex. Corner instances contributing a simplex twice mean
// doubled cells, which also fails the test.
inline bool check_flag(const CubeComplex& cx, std::string* why = nullptr) {
  const int nv = cx.num_vertices;
  std::vector<std::set<std::vector<LinkVertex>>> simplices(nv);
  std::vector<std::vector<std::vector<LinkVertex>>> instances(nv);

  auto end_at = [&](const CEdge& e, int vertex, int eps_bit) -> LinkVertex {
    if (e.loop()) return {0, eps_bit};
    return {0, e.from == vertex ? 0 : 1};
  };

  for (const auto& cube : cx.cubes) {
    const int k = cube.dim();
    const int half = 1 << (k - 1);
    for (int eps = 0; eps < (1 << k); ++eps) {
      int v = cube.corners[eps];
      std::vector<LinkVertex> simplex;
      for (int dir = 0; dir < k; ++dir) {
        int edge_id = cube.edges[dir * half + cubedetail::context_of(eps, dir)];
        LinkVertex lv = end_at(cx.edges[edge_id], v, (eps >> dir) & 1);
        lv.edge = edge_id;
        simplex.push_back(lv);
      }
      std::sort(simplex.begin(), simplex.end());
      instances[v].push_back(simplex);
    }
  }
  for (int v = 0; v < nv; ++v) {
    for (auto& s : instances[v]) {
      if (!simplices[v].insert(s).second) {
        if (why) *why = "duplicate link simplex at vertex " + std::to_string(v);
        return false;
      }
    }
  }

  // flagness: a simplex extended by a link vertex joined to all its members
  // must itself be present
  for (int v = 0; v < nv; ++v) {
    std::set<LinkVertex> verts;
    std::set<std::pair<LinkVertex, LinkVertex>> edges1;
    for (int label = 0; label < cx.num_labels; ++label) {
      int e = cx.edge_at(v, label);
      if (e < 0) continue;
      if (cx.edges[e].loop()) {
        verts.insert({e, 0});
        verts.insert({e, 1});
      } else {
        verts.insert({e, cx.edges[e].from == v ? 0 : 1});
      }
    }
    for (const auto& s : simplices[v])
      if (s.size() == 2) edges1.insert({s[0], s[1]});
    auto joined = [&](const LinkVertex& a, const LinkVertex& b) {
      return edges1.count({std::min(a, b), std::max(a, b)}) > 0;
    };
    // grow cliques upward; every clique must span a stored simplex
    std::vector<std::vector<LinkVertex>> frontier;
    for (const auto& s : simplices[v])
      if (s.size() == 2) frontier.push_back(s);
    while (!frontier.empty()) {
      std::set<std::vector<LinkVertex>> next;
      for (const auto& s : frontier) {
        for (const LinkVertex& u : verts) {
          if (std::find(s.begin(), s.end(), u) != s.end()) continue;
          bool all = true;
          for (const auto& x : s)
            if (!joined(u, x)) { all = false; break; }
          if (!all) continue;
          std::vector<LinkVertex> bigger = s;
          bigger.push_back(u);
          std::sort(bigger.begin(), bigger.end());
          if (!simplices[v].count(bigger)) {
            if (why)
              *why = "empty simplex boundary in link of vertex " + std::to_string(v);
            return false;
          }
          next.insert(bigger);
        }
      }
      frontier.assign(next.begin(), next.end());
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// hyperplanes

struct Hyperplane {
  int label = -1;
  std::vector<int> dual_edges;
  std::vector<CellRef> carrier;  // closed: the cells through the hyperplane
                                 // together with all their faces
};

inline Hyperplane hyperplane_of(const CubeComplex& cx, int label) {
  if (label < 0 || label >= cx.num_labels)
    throw std::invalid_argument("hyperplane_of: unknown label");
  Hyperplane h;
  h.label = label;
  std::set<CellRef> carrier;
  for (size_t e = 0; e < cx.edges.size(); ++e)
    if (cx.edges[e].label == label) {
      h.dual_edges.push_back(static_cast<int>(e));
      for (CellRef c : cx.closure({1, static_cast<int>(e)})) carrier.insert(c);
    }
  if (h.dual_edges.empty()) throw std::invalid_argument("hyperplane_of: absent label");
  for (size_t q = 0; q < cx.cubes.size(); ++q) {
    bool dual = std::find(cx.cubes[q].labels.begin(), cx.cubes[q].labels.end(), label) !=
                cx.cubes[q].labels.end();
    if (dual)
      for (CellRef c : cx.closure({cx.cubes[q].dim(), static_cast<int>(q)}))
        carrier.insert(c);
  }
  h.carrier.assign(carrier.begin(), carrier.end());
  return h;
}

// ---------------------------------------------------------------------------
// maximal cells and free faces

inline std::vector<CellRef> maximal_cells(const CubeComplex& cx) {
  std::set<CellRef> covered;
  for (size_t q = 0; q < cx.cubes.size(); ++q) {
    const CCube& c = cx.cubes[q];
    for (int dir = 0; dir < c.dim(); ++dir)
      for (int side = 0; side < 2; ++side) covered.insert(cx.face(c, dir, side));
  }
  std::vector<CellRef> out;
  for (size_t e = 0; e < cx.edges.size(); ++e)
    if (!covered.count({1, static_cast<int>(e)})) out.push_back({1, static_cast<int>(e)});
  for (size_t q = 0; q < cx.cubes.size(); ++q)
    if (!covered.count({cx.cubes[q].dim(), static_cast<int>(q)}))
      out.push_back({cx.cubes[q].dim(), static_cast<int>(q)});
  return out;
}

// Geodesic extension certificate: every codimension-1 face of a maximal cube
// must appear in at least two maximal-cube face positions.
inline bool free_face_check(const CubeComplex& cx, std::string* why = nullptr) {
  std::map<CellRef, int> incidence;
  auto maxcells = maximal_cells(cx);
  for (CellRef m : maxcells) {
    if (m.dim == 1) {
      ++incidence[{0, cx.edges[m.idx].from}];
      ++incidence[{0, cx.edges[m.idx].to}];
    } else {
      const CCube& c = cx.cubes[m.idx];
      for (int dir = 0; dir < c.dim(); ++dir)
        for (int side = 0; side < 2; ++side) ++incidence[cx.face(c, dir, side)];
    }
  }
  for (CellRef m : maxcells) {
    auto check = [&](CellRef f) {
      if (incidence[f] < 2) {
        if (why)
          *why = "free face (dim " + std::to_string(f.dim) + ", idx " +
                 std::to_string(f.idx) + ")";
        return false;
      }
      return true;
    };
    if (m.dim == 1) {
      if (!check({0, cx.edges[m.idx].from}) || !check({0, cx.edges[m.idx].to})) return false;
    } else {
      const CCube& c = cx.cubes[m.idx];
      for (int dir = 0; dir < c.dim(); ++dir)
        for (int side = 0; side < 2; ++side)
          if (!check(cx.face(c, dir, side))) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// label-preserving isomorphism
//
// Complexes built here have at most one edge per (vertex, label), so a vertex
// image propagates uniquely along labeled edges; candidates are anchored at
// vertex 0 of the source.

struct ComplexIso {
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
};

inline std::optional<ComplexIso> find_isomorphism(const CubeComplex& a, const CubeComplex& b) {
  if (a.num_vertices != b.num_vertices || a.edges.size() != b.edges.size() ||
      a.cubes.size() != b.cubes.size() || a.num_labels != b.num_labels ||
      a.f_vector() != b.f_vector())
    return std::nullopt;
  if (!a.regular() || !b.regular()) return std::nullopt;
  if (a.num_vertices == 0) return ComplexIso{};

  for (int root = 0; root < b.num_vertices; ++root) {
    std::vector<int> vmap(a.num_vertices, -1);
    vmap[0] = root;
    std::vector<int> stack = {0};
    bool ok = true;
    std::vector<bool> hit(b.num_vertices, false);
    hit[root] = true;
    while (!stack.empty() && ok) {
      int v = stack.back();
      stack.pop_back();
      for (int label = 0; label < a.num_labels && ok; ++label) {
        int ea = a.edge_at(v, label);
        int eb = b.edge_at(vmap[v], label);
        if ((ea < 0) != (eb < 0)) { ok = false; break; }
        if (ea < 0) continue;
        const CEdge& xa = a.edges[ea];
        const CEdge& xb = b.edges[eb];
        if (xa.loop() != xb.loop()) { ok = false; break; }
        int other_a = xa.from == v ? xa.to : xa.from;
        int other_b = xb.from == vmap[v] ? xb.to : xb.from;
        if (vmap[other_a] == -1) {
          if (hit[other_b]) { ok = false; break; }
          vmap[other_a] = other_b;
          hit[other_b] = true;
          stack.push_back(other_a);
        } else if (vmap[other_a] != other_b) {
          ok = false;
        }
      }
    }
    if (!ok) continue;
    for (int v = 0; v < a.num_vertices && ok; ++v)
      if (vmap[v] == -1) ok = false;  // disconnected sources are not handled
    if (!ok) continue;

    // edges follow from the vertex map
    std::vector<int> emap(a.edges.size(), -1);
    for (size_t e = 0; e < a.edges.size() && ok; ++e) {
      int target = b.edge_at(vmap[a.edges[e].from], a.edges[e].label);
      if (target < 0) { ok = false; break; }
      const CEdge& xb = b.edges[target];
      std::pair<int, int> want = {std::min(vmap[a.edges[e].from], vmap[a.edges[e].to]),
                                  std::max(vmap[a.edges[e].from], vmap[a.edges[e].to])};
      std::pair<int, int> got = {std::min(xb.from, xb.to), std::max(xb.from, xb.to)};
      if (want != got || xb.label != a.edges[e].label) { ok = false; break; }
      emap[e] = target;
    }
    if (!ok) continue;

    std::set<int> used_cubes;
    for (const auto& c : a.cubes) {
      CCube image = c;
      for (auto& x : image.corners) x = vmap[x];
      for (auto& x : image.edges) x = emap[x];
      auto found = b.find_cube(image);
      if (!found || !used_cubes.insert(*found).second) { ok = false; break; }
    }
    if (!ok) continue;
    return ComplexIso{vmap, emap};
  }
  return std::nullopt;
}

}  // namespace gcx
