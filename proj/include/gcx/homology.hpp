#pragma once

// Integer homology of (sub)complexes via Smith normal form of the cubical
// boundary matrices. Used for the contractibility certificates on torus
// intersections. Matrices here are tiny.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "gcx/complex.hpp"

namespace gcx {

using IMatrix = std::vector<std::vector<long long>>;

// diagonal entries of the Smith normal form, nonzero ones only
inline std::vector<long long> smith_diagonal(IMatrix m) {
  std::vector<long long> diag;
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  size_t r0 = 0, c0 = 0;
  while (r0 < rows && c0 < cols) {
    size_t pr = rows, pc = cols;
    long long best = 0;
    for (size_t i = r0; i < rows; ++i)
      for (size_t j = c0; j < cols; ++j)
        if (m[i][j] != 0 && (best == 0 || std::abs(m[i][j]) < std::abs(best))) {
          best = m[i][j];
          pr = i;
          pc = j;
        }
    if (best == 0) break;
    std::swap(m[r0], m[pr]);
    for (size_t i = 0; i < rows; ++i) std::swap(m[i][c0], m[i][pc]);
    bool clean = true;
    for (size_t i = r0 + 1; i < rows; ++i) {
      long long f = m[i][c0] / m[r0][c0];
      if (f)
        for (size_t j = c0; j < cols; ++j) m[i][j] -= f * m[r0][j];
      if (m[i][c0]) clean = false;
    }
    for (size_t j = c0 + 1; j < cols; ++j) {
      long long f = m[r0][j] / m[r0][c0];
      if (f)
        for (size_t i = r0; i < rows; ++i) m[i][j] -= f * m[i][c0];
      if (m[r0][j]) clean = false;
    }
    if (!clean) continue;  // remainders left; a smaller pivot exists now
    diag.push_back(std::abs(m[r0][c0]));
    ++r0;
    ++c0;
  }
  return diag;
}

struct HomologyGroup {
  int rank = 0;
  std::vector<long long> torsion;  // invariant factors > 1

  bool trivial() const { return rank == 0 && torsion.empty(); }
  bool operator==(const HomologyGroup&) const = default;
};

struct ChainComplex {
  std::vector<int> dims;          // cells per dimension
  std::vector<IMatrix> boundary;  // boundary[k]: dims[k-1] x dims[k]
};

namespace homdetail {

// parity of the flip relating a stored face cell to the geometric face of a
// cube; +1 or -1 as an orientation factor
inline int face_orientation(const CubeComplex& cx, const CCube& c, int dir, int side,
                            CellRef stored) {
  if (stored.dim < 2) return 1;
  CCube raw = cubedetail::raw_face(c, dir, side);
  const CCube& s = cx.cubes[stored.idx];
  std::vector<int> corners, edges;
  for (int flips = 0; flips < (1 << s.dim()); ++flips) {
    cubedetail::flipped_tables(s, flips, corners, edges);
    if (corners == raw.corners && edges == raw.edges)
      return popcount(static_cast<uint32_t>(flips)) % 2 == 0 ? 1 : -1;
  }
  throw std::logic_error("face_orientation: face does not match its stored cell");
}

}  // namespace homdetail

// Cubical boundary with signs: d(Q) = sum_dir (-1)^dir (Q_dir^1 - Q_dir^0),
// each stored face weighted by the parity of its canonicalizing flip.
inline ChainComplex chain_complex(const CubeComplex& cx,
                                  const std::vector<std::vector<int>>& cells_by_dim) {
  ChainComplex out;
  const int top = static_cast<int>(cells_by_dim.size());
  out.dims.resize(top);
  std::vector<std::map<int, int>> index(top);
  for (int d = 0; d < top; ++d) {
    out.dims[d] = static_cast<int>(cells_by_dim[d].size());
    for (int i = 0; i < out.dims[d]; ++i) index[d][cells_by_dim[d][i]] = i;
  }
  out.boundary.resize(top);
  for (int d = 1; d < top; ++d) {
    IMatrix m(out.dims[d - 1], std::vector<long long>(out.dims[d], 0));
    for (int j = 0; j < out.dims[d]; ++j) {
      if (d == 1) {
        const CEdge& e = cx.edges[cells_by_dim[1][j]];
        auto to = index[0].find(e.to);
        auto from = index[0].find(e.from);
        if (to == index[0].end() || from == index[0].end())
          throw std::logic_error("chain_complex: edge endpoint outside the cell set");
        m[to->second][j] += 1;
        m[from->second][j] -= 1;
      } else {
        const CCube& c = cx.cubes[cells_by_dim[d][j]];
        for (int dir = 0; dir < c.dim(); ++dir) {
          long long sign = (dir % 2 == 0) ? 1 : -1;
          for (int side = 0; side < 2; ++side) {
            CellRef f = cx.face(c, dir, side);
            long long orient = homdetail::face_orientation(cx, c, dir, side, f);
            auto it = index[d - 1].find(f.idx);
            if (it == index[d - 1].end())
              throw std::logic_error("chain_complex: face outside the cell set");
            m[it->second][j] += sign * (side == 1 ? 1 : -1) * orient;
          }
        }
      }
    }
    out.boundary[d] = std::move(m);
  }
  return out;
}

inline std::vector<HomologyGroup> homology(const ChainComplex& cc) {
  const int top = static_cast<int>(cc.dims.size());
  std::vector<int> rank(top + 1, 0);
  std::vector<std::vector<long long>> tors(top + 1);
  for (int d = 1; d < top; ++d) {
    auto diag = smith_diagonal(cc.boundary[d]);
    rank[d] = static_cast<int>(diag.size());
    for (long long x : diag)
      if (x > 1) tors[d].push_back(x);
  }
  std::vector<HomologyGroup> out(top);
  for (int d = 0; d < top; ++d) {
    out[d].rank = cc.dims[d] - rank[d] - (d + 1 < top ? rank[d + 1] : 0);
    if (d + 1 < top) out[d].torsion = tors[d + 1];
  }
  return out;
}

// cells of the whole complex grouped by dimension
inline std::vector<std::vector<int>> all_cells_by_dim(const CubeComplex& cx) {
  int top = 1;
  for (const auto& c : cx.cubes) top = std::max(top, c.dim());
  std::vector<std::vector<int>> cells(top + 1);
  for (int v = 0; v < cx.num_vertices; ++v) cells[0].push_back(v);
  for (size_t e = 0; e < cx.edges.size(); ++e) cells[1].push_back(static_cast<int>(e));
  for (size_t q = 0; q < cx.cubes.size(); ++q)
    cells[cx.cubes[q].dim()].push_back(static_cast<int>(q));
  return cells;
}

inline std::vector<HomologyGroup> homology(const CubeComplex& cx) {
  return homology(chain_complex(cx, all_cells_by_dim(cx)));
}

inline bool cells_connected(const CubeComplex& cx, const std::vector<std::vector<int>>& cells) {
  if (cells.empty() || cells[0].empty()) return false;
  std::map<int, int> parent;
  for (int v : cells[0]) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  if (cells.size() > 1)
    for (int e : cells[1]) parent[find(cx.edges[e].from)] = find(cx.edges[e].to);
  std::set<int> roots;
  for (int v : cells[0]) roots.insert(find(v));
  return roots.size() == 1;
}

// connected with vanishing reduced integer homology in every positive degree
inline bool contractibility_certificate(const CubeComplex& cx,
                                        const std::vector<std::vector<int>>& cells) {
  if (!cells_connected(cx, cells)) return false;
  auto h = homology(chain_complex(cx, cells));
  for (size_t d = 1; d < h.size(); ++d)
    if (!h[d].trivial()) return false;
  return true;
}

}  // namespace gcx
