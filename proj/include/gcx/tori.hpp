#pragma once

// Maximal tori inside blowups: the product-of-cycles subcomplex attached to a
// maximal clique, coverage of the complex by tori, intersections with their
// K x torus decomposition, and chains of tori.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "gcx/blowup.hpp"
#include "gcx/homology.hpp"

namespace gcx {

struct MaximalTorus {
  VSet clique = 0;
  int base = -1;                          // complex vertex
  std::vector<EdgeCycle> cycles;          // per clique vertex, ascending
  std::vector<std::vector<int>> cells;    // per dim, sorted cell ids
  std::map<int, std::vector<int>> coord;  // torus vertex -> cycle positions

  bool contains(CellRef c) const {
    if (c.dim >= static_cast<int>(cells.size())) return false;
    return std::binary_search(cells[c.dim].begin(), cells[c.dim].end(), c.idx);
  }

  int cycle_length(int i) const { return static_cast<int>(cycles[i].steps.size()); }
};

namespace toridetail {

// region bits reached after the first `pos` steps of a cycle
inline RegionBits prefix_mask(const Blowup& b, const EdgeCycle& c, int pos) {
  RegionBits m = 0;
  for (int s = 0; s < pos; ++s) m ^= b.move_mask(b.cx.edges[c.steps[s].edge].label);
  return m;
}

}  // namespace toridetail

inline bool clique_is_maximal(const DefiningGraph& g, VSet clique) {
  if (!clique || !is_clique(g, clique)) return false;
  for (int v = 0; v < g.n(); ++v) {
    if (clique & DefiningGraph::bit(v)) continue;
    if ((clique & ~g.link(v)) == 0) return false;
  }
  return true;
}

// The torus of a maximal clique: characteristic cycles through the unique
// cube carrying the clique labels, closed under the product structure. Cells
// are required to exist and to be pairwise distinct; the f-vector is forced
// to be the product of the cycle f-vectors.
inline MaximalTorus maximal_torus(const Blowup& b, VSet clique) {
  if (!clique_is_maximal(b.graph, clique))
    throw std::invalid_argument("maximal_torus: clique is not maximal");
  MaximalTorus t;
  t.clique = clique;
  auto verts = bits_of(clique);
  const int k = static_cast<int>(verts.size());

  // locate the unique cube whose labels are exactly the clique
  if (k == 1) {
    int v = verts[0];
    int found = -1;
    for (size_t e = 0; e < b.cx.edges.size(); ++e)
      if (b.cx.edges[e].label == v) {
        if (found != -1) throw std::logic_error("maximal_torus: clique edge not unique");
        found = static_cast<int>(e);
      }
    if (found == -1) throw std::logic_error("maximal_torus: clique edge missing");
    t.base = std::min(b.cx.edges[found].from, b.cx.edges[found].to);
  } else {
    std::vector<int> want = verts;
    int found = -1;
    for (size_t q = 0; q < b.cx.cubes.size(); ++q)
      if (b.cx.cubes[q].labels == want) {
        if (found != -1) throw std::logic_error("maximal_torus: clique cube not unique");
        found = static_cast<int>(q);
      }
    if (found == -1) throw std::logic_error("maximal_torus: clique cube missing");
    const CCube& c = b.cx.cubes[found];
    t.base = *std::min_element(c.corners.begin(), c.corners.end());
  }

  for (int v : verts) {
    int e = b.cx.edge_at(t.base, v);
    if (e < 0) throw std::logic_error("maximal_torus: no generator edge at the base");
    t.cycles.push_back(characteristic_cycle(b, e));
  }

  // product cells: per direction either a vertex position or an edge position
  std::vector<int> lens;
  for (int i = 0; i < k; ++i) lens.push_back(t.cycle_length(i));

  std::set<CellRef> cells;
  std::vector<int> pos(k, 0);
  std::vector<int> kind(k, 0);  // 0 = vertex, 1 = edge at that position
  auto region_at = [&](const std::vector<int>& p) {
    RegionBits bits = b.region_bits[t.base];
    for (int i = 0; i < k; ++i) bits ^= toridetail::prefix_mask(b, t.cycles[i], p[i]);
    int v = b.region_index[bits];
    if (v < 0) throw std::logic_error("maximal_torus: product left the region set");
    return v;
  };
  auto emit = [&]() {
    std::vector<int> dirs;      // directions taking an edge
    for (int i = 0; i < k; ++i)
      if (kind[i]) dirs.push_back(i);
    if (dirs.empty()) {
      int v = region_at(pos);
      cells.insert({0, v});
      if (!t.coord.count(v)) t.coord[v] = pos;
      else if (t.coord[v] != pos)
        throw std::logic_error("maximal_torus: vertex reached twice");
      return;
    }
    if (dirs.size() == 1) {
      // translate the cycle edge to the current position of the others
      int d0 = dirs[0];
      int label = b.cx.edges[t.cycles[d0].steps[pos[d0]].edge].label;
      int v0 = region_at(pos);
      std::vector<int> p1 = pos;
      p1[d0] = (p1[d0] + 1) % lens[d0];
      int v1 = region_at(p1);
      int e = b.cx.edge_at(v0, label);
      if (e < 0 || std::set<int>{b.cx.edges[e].from, b.cx.edges[e].to} != std::set<int>{v0, v1})
        throw std::logic_error("maximal_torus: missing translated edge");
      cells.insert({1, e});
      return;
    }
    // a higher product cell: labels from the chosen cycle edges, corners by
    // composing the crossings
    CCube c;
    std::vector<std::pair<int, int>> dir_labels;  // (label, direction)
    for (int i : dirs)
      dir_labels.emplace_back(b.cx.edges[t.cycles[i].steps[pos[i]].edge].label, i);
    std::sort(dir_labels.begin(), dir_labels.end());
    for (auto& [l, i] : dir_labels) c.labels.push_back(l);
    for (size_t i = 1; i < dir_labels.size(); ++i)
      if (dir_labels[i].first == dir_labels[i - 1].first)
        throw std::logic_error("maximal_torus: repeated label in product cell");
    const int dim = static_cast<int>(dirs.size());
    c.corners.resize(size_t(1) << dim);
    for (int eps = 0; eps < (1 << dim); ++eps) {
      std::vector<int> p = pos;
      for (int i = 0; i < dim; ++i)
        if (eps & (1 << i)) p[dir_labels[i].second] += 1;  // step along that cycle
      for (int i = 0; i < k; ++i) p[i] = p[i] % lens[i];
      c.corners[eps] = region_at(p);
    }
    const int half = 1 << (dim - 1);
    c.edges.resize(size_t(dim) * half);
    for (int dir = 0; dir < dim; ++dir) {
      for (int ctx = 0; ctx < half; ++ctx) {
        int eps0 = cubedetail::expand_context(ctx, dir, 0);
        int e = b.cx.edge_at(c.corners[eps0], c.labels[dir]);
        if (e < 0) throw std::logic_error("maximal_torus: missing product cell edge");
        c.edges[size_t(dir) * half + ctx] = e;
      }
    }
    auto found = b.cx.find_cube(c);
    if (!found) throw std::logic_error("maximal_torus: product cell not present");
    cells.insert({dim, *found});
  };

  // odometer over (kind, pos) pairs
  for (;;) {
    emit();
    int i = 0;
    while (i < k) {
      if (kind[i] == 0) { kind[i] = 1; break; }
      kind[i] = 0;
      if (++pos[i] < lens[i]) break;
      pos[i] = 0;
      ++i;
    }
    if (i >= k) break;
  }

  int maxdim = 0;
  for (CellRef c : cells) maxdim = std::max(maxdim, c.dim);
  t.cells.assign(maxdim + 1, {});
  for (CellRef c : cells) t.cells[c.dim].push_back(c.idx);
  for (auto& v : t.cells) std::sort(v.begin(), v.end());

  // the injectivity and existence checks above force the product f-vector
  long long expect_total = 1;
  for (int l : lens) expect_total *= 2LL * l;
  long long got = 0;
  for (const auto& v : t.cells) got += static_cast<long long>(v.size());
  if (got != expect_total) throw std::logic_error("maximal_torus: product structure broken");
  return t;
}

inline std::vector<MaximalTorus> all_maximal_tori(const Blowup& b) {
  std::vector<MaximalTorus> out;
  for (VSet c : maximal_cliques(b.graph)) out.push_back(maximal_torus(b, c));
  return out;
}

// every maximal cube lies in at least one maximal torus; returns the witness
// clique per maximal cube
inline bool torus_cover_check(const Blowup& b, std::vector<VSet>* witness = nullptr,
                              std::string* why = nullptr) {
  auto tori = all_maximal_tori(b);
  bool ok = true;
  if (witness) witness->clear();
  for (CellRef m : maximal_cells(b.cx)) {
    bool covered = false;
    for (const auto& t : tori) {
      if (t.contains(m)) {
        covered = true;
        if (witness) witness->push_back(t.clique);
        break;
      }
    }
    if (!covered) {
      ok = false;
      if (witness) witness->push_back(0);
      if (why)
        *why = "maximal cell (dim " + std::to_string(m.dim) + ", idx " +
               std::to_string(m.idx) + ") lies in no maximal torus";
    }
  }
  return ok;
}

// ---------------------------------------------------------------------------
// intersections

struct TorusIntersection {
  bool has_vertex = false;
  VSet clique = 0;                        // the clique of the torus factor
  std::vector<std::vector<int>> cells;    // the intersection, per dim
  std::vector<std::vector<int>> k_cells;  // the K factor, per dim
  bool product_ok = false;
  bool k_contractible = false;

  std::vector<int> f_vector() const {
    std::vector<int> f;
    for (const auto& v : cells) f.push_back(static_cast<int>(v.size()));
    while (f.size() > 1 && f.back() == 0) f.pop_back();
    return f;
  }
};

// Intersection of two maximal tori, decomposed as K x T_{clique}. K is the
// component of the base vertex among intersection cells free of the torus
// directions; the product certificate re-embeds K x (product of cycles) and
// demands a bijection onto the intersection cells.
inline TorusIntersection intersect_tori(const Blowup& b, const MaximalTorus& t1,
                                        const MaximalTorus& t2) {
  TorusIntersection out;
  out.clique = t1.clique & t2.clique;

  const int maxdim = static_cast<int>(std::min(t1.cells.size(), t2.cells.size()));
  out.cells.resize(maxdim);
  for (int d = 0; d < maxdim; ++d)
    std::set_intersection(t1.cells[d].begin(), t1.cells[d].end(), t2.cells[d].begin(),
                          t2.cells[d].end(), std::back_inserter(out.cells[d]));
  while (out.cells.size() > 1 && out.cells.back().empty()) out.cells.pop_back();
  out.has_vertex = !out.cells.empty() && !out.cells[0].empty();
  if (!out.has_vertex) return out;

  // labels of the torus directions: the clique vertices and their splitters
  std::set<int> dlabels;
  for (int v : bits_of(out.clique)) {
    dlabels.insert(v);
    for (int i : bits_of(b.splitters[v])) dlabels.insert(b.partition_label(i));
  }
  auto is_dfree = [&](CellRef c) {
    if (c.dim == 0) return true;
    if (c.dim == 1) return !dlabels.count(b.cx.edges[c.idx].label);
    for (int l : b.cx.cubes[c.idx].labels)
      if (dlabels.count(l)) return false;
    return true;
  };

  // K: component of the least intersection vertex in the d-free part
  int base = out.cells[0].front();
  std::set<CellRef> dfree;
  for (int d = 0; d < static_cast<int>(out.cells.size()); ++d)
    for (int idx : out.cells[d])
      if (is_dfree({d, idx})) dfree.insert({d, idx});
  std::set<int> k_verts = {base};
  bool grew = true;
  while (grew) {
    grew = false;
    for (CellRef c : dfree) {
      if (c.dim != 1) continue;
      const CEdge& e = b.cx.edges[c.idx];
      bool touch = k_verts.count(e.from) || k_verts.count(e.to);
      if (touch && (k_verts.insert(e.from).second || k_verts.insert(e.to).second)) grew = true;
    }
  }
  std::set<CellRef> k_set;
  for (CellRef c : dfree) {
    if (c.dim == 0 && k_verts.count(c.idx)) k_set.insert(c);
    if (c.dim >= 1) {
      // all vertices of the cell must lie in the component
      bool inside = true;
      if (c.dim == 1)
        inside = k_verts.count(b.cx.edges[c.idx].from) && k_verts.count(b.cx.edges[c.idx].to);
      else
        for (int v : b.cx.cubes[c.idx].corners)
          if (!k_verts.count(v)) { inside = false; break; }
      if (inside) k_set.insert(c);
    }
  }
  out.k_cells.assign(out.cells.size(), {});
  for (CellRef c : k_set) out.k_cells[c.dim].push_back(c.idx);
  for (auto& v : out.k_cells) std::sort(v.begin(), v.end());
  while (out.k_cells.size() > 1 && out.k_cells.back().empty()) out.k_cells.pop_back();

  out.k_contractible = contractibility_certificate(b.cx, out.k_cells);

  // product certificate: embed (K cell, torus position cell) pairs and match
  // the intersection cell-for-cell
  auto tverts = bits_of(out.clique);
  const int tk = static_cast<int>(tverts.size());
  std::vector<const EdgeCycle*> cyc(tk, nullptr);
  for (int i = 0; i < tk; ++i) {
    for (size_t j = 0; j < t1.cycles.size(); ++j)
      if (t1.cycles[j].vertex == tverts[i]) cyc[i] = &t1.cycles[j];
  }
  std::vector<int> lens(tk);
  for (int i = 0; i < tk; ++i) lens[i] = static_cast<int>(cyc[i]->steps.size());

  std::set<CellRef> produced;
  bool ok = true;
  std::vector<int> pos(tk, 0), kind(tk, 0);
  auto embed = [&](CellRef kcell) {
    // region shift for the torus position, applied to every corner of kcell
    RegionBits shift = 0;
    for (int i = 0; i < tk; ++i) shift ^= toridetail::prefix_mask(b, *cyc[i], pos[i]);
    std::vector<int> dirs;
    for (int i = 0; i < tk; ++i)
      if (kind[i]) dirs.push_back(i);
    // gather the base corners of the combined cell
    std::vector<int> kcorners;
    if (kcell.dim == 0) kcorners = {kcell.idx};
    else if (kcell.dim == 1)
      kcorners = {b.cx.edges[kcell.idx].from, b.cx.edges[kcell.idx].to};
    else
      kcorners = b.cx.cubes[kcell.idx].corners;

    std::vector<int> klabels;
    if (kcell.dim == 1) klabels = {b.cx.edges[kcell.idx].label};
    else if (kcell.dim >= 2) klabels = b.cx.cubes[kcell.idx].labels;

    std::vector<int> tlabels;
    for (int i : dirs) tlabels.push_back(b.cx.edges[cyc[i]->steps[pos[i]].edge].label);

    const int total_dim = kcell.dim + static_cast<int>(dirs.size());
    // shift a region by XOR on its bits
    auto shifted = [&](int vertex, RegionBits extra) {
      RegionBits bits = b.region_bits[vertex] ^ shift ^ extra;
      int v = b.region_index[bits];
      if (v < 0) ok = false;
      return v < 0 ? 0 : v;
    };
    if (total_dim == 0) {
      produced.insert({0, shifted(kcell.idx, 0)});
      return;
    }
    // build the combined cube: directions = klabels then tlabels, sorted
    std::vector<std::pair<int, int>> all_dirs;  // (label, source): source<k
    for (size_t i = 0; i < klabels.size(); ++i) all_dirs.emplace_back(klabels[i], int(i));
    for (size_t i = 0; i < tlabels.size(); ++i)
      all_dirs.emplace_back(tlabels[i], int(klabels.size() + i));
    std::sort(all_dirs.begin(), all_dirs.end());
    CCube c;
    for (auto& [l, s] : all_dirs) c.labels.push_back(l);
    for (size_t i = 1; i < c.labels.size(); ++i)
      if (c.labels[i] == c.labels[i - 1]) { ok = false; return; }
    c.corners.resize(size_t(1) << total_dim);
    for (int eps = 0; eps < (1 << total_dim); ++eps) {
      // split eps into the k-part corner and torus steps
      int keps = 0;
      RegionBits extra = 0;
      for (int i = 0; i < total_dim; ++i) {
        if (!(eps & (1 << i))) continue;
        int src = all_dirs[i].second;
        if (src < static_cast<int>(klabels.size())) keps |= 1 << src;
        else {
          int ti = dirs[src - static_cast<int>(klabels.size())];
          extra ^= toridetail::prefix_mask(b, *cyc[ti], pos[ti] + 1) ^
                   toridetail::prefix_mask(b, *cyc[ti], pos[ti]);
        }
      }
      int kvertex;
      if (kcell.dim == 0) kvertex = kcell.idx;
      else if (kcell.dim == 1) {
        const CEdge& e = b.cx.edges[kcell.idx];
        kvertex = keps ? e.to : e.from;
      } else {
        kvertex = b.cx.cubes[kcell.idx].corners[keps];
      }
      c.corners[eps] = shifted(kvertex, extra);
      if (!ok) return;
    }
    if (total_dim == 1) {
      int e = b.cx.edge_at(c.corners[0], c.labels[0]);
      if (e < 0 ||
          std::set<int>{b.cx.edges[e].from, b.cx.edges[e].to} !=
              std::set<int>{c.corners[0], c.corners[1]}) {
        ok = false;
        return;
      }
      produced.insert({1, e});
      return;
    }
    const int half = 1 << (total_dim - 1);
    c.edges.resize(size_t(total_dim) * half);
    for (int dir = 0; dir < total_dim; ++dir) {
      for (int ctx = 0; ctx < half; ++ctx) {
        int eps0 = cubedetail::expand_context(ctx, dir, 0);
        int e = b.cx.edge_at(c.corners[eps0], c.labels[dir]);
        if (e < 0) { ok = false; return; }
        c.edges[size_t(dir) * half + ctx] = e;
      }
    }
    auto found = b.cx.find_cube(c);
    if (!found) { ok = false; return; }
    produced.insert({total_dim, *found});
  };

  for (;;) {
    for (CellRef kcell : k_set) {
      embed(kcell);
      if (!ok) break;
    }
    if (!ok) break;
    int i = 0;
    while (i < tk) {
      if (kind[i] == 0) { kind[i] = 1; break; }
      kind[i] = 0;
      if (++pos[i] < lens[i]) break;
      pos[i] = 0;
      ++i;
    }
    if (i >= tk) break;
  }

  if (ok) {
    std::set<CellRef> inter;
    for (int d = 0; d < static_cast<int>(out.cells.size()); ++d)
      for (int idx : out.cells[d]) inter.insert({d, idx});
    ok = produced == inter;
  }
  out.product_ok = ok;
  return out;
}

// ---------------------------------------------------------------------------
// chains of tori

// A chain of maximal tori from t1 to t2 where consecutive members share a
// vertex, built along a partition-edge path between the bases.
inline std::vector<MaximalTorus> chain_tori(const Blowup& b, const MaximalTorus& t1,
                                            const MaximalTorus& t2) {
  auto share_vertex = [&](const MaximalTorus& x, const MaximalTorus& y) {
    std::vector<int> common;
    std::set_intersection(x.cells[0].begin(), x.cells[0].end(), y.cells[0].begin(),
                          y.cells[0].end(), std::back_inserter(common));
    return !common.empty();
  };
  if (t1.clique == t2.clique) return {t1};
  if (share_vertex(t1, t2)) return {t1, t2};

  auto tori = all_maximal_tori(b);
  auto path = partition_path(b, t1.base, t2.base);
  std::vector<MaximalTorus> chain = {t1};
  for (const CycleStep& s : path) {
    CellRef edge = {1, s.edge};
    const MaximalTorus* cover = nullptr;
    for (const auto& t : tori)
      if (t.contains(edge)) { cover = &t; break; }
    if (!cover) throw std::logic_error("chain_tori: path edge in no maximal torus");
    if (chain.back().clique != cover->clique) chain.push_back(*cover);
  }
  if (chain.back().clique != t2.clique) chain.push_back(t2);

  // drop members whose neighbors already meet
  bool shrunk = true;
  while (shrunk && chain.size() > 2) {
    shrunk = false;
    for (size_t i = 1; i + 1 < chain.size(); ++i) {
      if (share_vertex(chain[i - 1], chain[i + 1])) {
        chain.erase(chain.begin() + i);
        shrunk = true;
        break;
      }
    }
  }
  for (size_t i = 0; i + 1 < chain.size(); ++i)
    if (!share_vertex(chain[i], chain[i + 1]))
      throw std::logic_error("chain_tori: consecutive tori do not meet");
  return chain;
}

}  // namespace gcx
