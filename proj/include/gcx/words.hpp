#pragma once

// Words in a RAAG with a canonical normal form, endomorphisms given by
// generator images, the Laurence-Servatius generating set, and Whitehead
// automorphisms attached to partitions.

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcx/graph.hpp"
#include "gcx/partitions.hpp"

namespace gcx {

struct Gen {
  int v = 0;
  bool inv = false;

  bool operator==(const Gen&) const = default;
  // shortlex letter order: vertex index first, positive before inverse
  bool operator<(const Gen& o) const { return v != o.v ? v < o.v : inv < o.inv; }
};

using Word = std::vector<Gen>;

inline Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->v, !it->inv});
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Free cancellation across commuting letters, run to a fixpoint, then the
// lexicographically least shuffle of the reduced word. Two words are equal in
// the group iff their normal forms agree.
inline Word normal_form(const DefiningGraph& g, Word w) {
  for (const Gen& x : w) g.check_vertex(x.v);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < w.size() && !changed; ++i) {
      for (size_t j = i + 1; j < w.size(); ++j) {
        if (w[j].v == w[i].v) {
          if (w[j].inv != w[i].inv) {
            w.erase(w.begin() + j);
            w.erase(w.begin() + i);
            changed = true;
          }
          break;  // a same-vertex letter blocks anything beyond it
        }
        if (!g.adjacent(w[j].v, w[i].v)) break;
      }
    }
  }
  // greedy least-available letter gives the lex-least linearization
  Word out;
  out.reserve(w.size());
  while (!w.empty()) {
    size_t best = w.size();
    for (size_t i = 0; i < w.size(); ++i) {
      bool avail = true;
      for (size_t k = 0; k < i; ++k) {
        if (w[k].v == w[i].v || !g.adjacent(w[k].v, w[i].v)) { avail = false; break; }
      }
      if (avail && (best == w.size() || w[i] < w[best])) best = i;
    }
    out.push_back(w[best]);
    w.erase(w.begin() + best);
  }
  return out;
}

inline bool words_equal(const DefiningGraph& g, const Word& a, const Word& b) {
  return normal_form(g, a) == normal_form(g, b);
}

struct Endomorphism {
  enum class Type { identity, graph_auto, inversion, partial_conj, transvection, whitehead };
  enum class TransvKind { none, twist, fold };

  std::vector<Word> im;  // image of each generator, indexed by vertex
  Type type = Type::identity;
  TransvKind tkind = TransvKind::none;
  std::string name;
  int acting = -1;     // v of i_v, chi_{v,C}, phi_{v,w}, or the Whitehead base
  int moved = -1;      // w of phi_{v,w}
  VSet moved_set = 0;  // C of chi_{v,C}
};

inline Endomorphism identity_endo(const DefiningGraph& g) {
  Endomorphism e;
  e.im.resize(g.n());
  for (int v = 0; v < g.n(); ++v) e.im[v] = {Gen{v, false}};
  e.type = Endomorphism::Type::identity;
  e.name = "id";
  return e;
}

inline Word apply_endomorphism(const DefiningGraph& g, const Endomorphism& f, const Word& w) {
  if (static_cast<int>(f.im.size()) != g.n())
    throw std::invalid_argument("apply_endomorphism: image table size mismatch");
  Word out;
  for (const Gen& x : w) {
    Word piece = x.inv ? inverse(f.im[x.v]) : f.im[x.v];
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return normal_form(g, out);
}

// (f . g)(v) = f(g(v))
inline Endomorphism compose(const DefiningGraph& g, const Endomorphism& f,
                            const Endomorphism& h) {
  Endomorphism out;
  out.im.resize(g.n());
  for (int v = 0; v < g.n(); ++v) out.im[v] = apply_endomorphism(g, f, h.im[v]);
  out.name = f.name + "*" + h.name;
  return out;
}

inline bool is_identity(const DefiningGraph& g, const Endomorphism& f) {
  for (int v = 0; v < g.n(); ++v) {
    Word w = normal_form(g, f.im[v]);
    if (w.size() != 1 || w[0].v != v || w[0].inv) return false;
  }
  return true;
}

// Well-definedness on the presentation: every defining relator maps to the
// identity.
inline bool verify_relators(const DefiningGraph& g, const Endomorphism& f) {
  for (auto [u, v] : g.edges()) {
    Word comm = {Gen{u, false}, Gen{v, false}, Gen{u, true}, Gen{v, true}};
    if (!apply_endomorphism(g, f, comm).empty()) return false;
  }
  return true;
}

namespace detail {
inline void graph_autos_rec(const DefiningGraph& g, std::vector<int>& perm,
                            std::vector<bool>& used, std::vector<std::vector<int>>& out) {
  int v = static_cast<int>(perm.size());
  if (v == g.n()) {
    out.push_back(perm);
    return;
  }
  for (int w = 0; w < g.n(); ++w) {
    if (used[w]) continue;
    bool ok = true;
    for (int u = 0; u < v; ++u)
      if (g.adjacent(u, v) != g.adjacent(perm[u], w)) { ok = false; break; }
    if (!ok) continue;
    perm.push_back(w);
    used[w] = true;
    graph_autos_rec(g, perm, used, out);
    perm.pop_back();
    used[w] = false;
  }
}
}  // namespace detail

inline std::vector<std::vector<int>> graph_automorphisms(const DefiningGraph& g) {
  std::vector<std::vector<int>> out;
  std::vector<int> perm;
  std::vector<bool> used(g.n(), false);
  detail::graph_autos_rec(g, perm, used, out);
  std::sort(out.begin(), out.end());
  return out;
}

// The Laurence-Servatius generators: graph automorphisms, inversions, partial
// conjugations, and left transvections w -> vw with lk(w) inside st(v). A
// transvection is a twist exactly when v and w are adjacent, a fold otherwise.
inline std::vector<Endomorphism> ls_generators(const DefiningGraph& g) {
  std::vector<Endomorphism> out;
  for (const auto& perm : graph_automorphisms(g)) {
    Endomorphism e = identity_endo(g);
    std::string tag;
    for (int v = 0; v < g.n(); ++v) {
      e.im[v] = {Gen{perm[v], false}};
      tag += g.name(perm[v]);
    }
    e.type = Endomorphism::Type::graph_auto;
    e.name = "graph[" + tag + "]";
    out.push_back(std::move(e));
  }
  for (int v = 0; v < g.n(); ++v) {
    Endomorphism e = identity_endo(g);
    e.im[v] = {Gen{v, true}};
    e.type = Endomorphism::Type::inversion;
    e.name = "inv[" + g.name(v) + "]";
    e.acting = v;
    out.push_back(std::move(e));
  }
  for (int v = 0; v < g.n(); ++v) {
    for (VSet comp : components_minus_star(g, v)) {
      Endomorphism e = identity_endo(g);
      std::string tag;
      for (int w : bits_of(comp)) {
        e.im[w] = {Gen{v, false}, Gen{w, false}, Gen{v, true}};
        tag += g.name(w);
      }
      e.type = Endomorphism::Type::partial_conj;
      e.name = "conj[" + g.name(v) + ";" + tag + "]";
      e.acting = v;
      e.moved_set = comp;
      out.push_back(std::move(e));
    }
  }
  for (int v = 0; v < g.n(); ++v) {
    for (int w = 0; w < g.n(); ++w) {
      if (v == w) continue;
      if (g.link(w) & ~g.star(v)) continue;
      Endomorphism e = identity_endo(g);
      e.im[w] = {Gen{v, false}, Gen{w, false}};
      e.type = Endomorphism::Type::transvection;
      e.tkind = g.adjacent(v, w) ? Endomorphism::TransvKind::twist
                                 : Endomorphism::TransvKind::fold;
      e.name = "trv[" + g.name(w) + "<-" + g.name(v) + g.name(w) + "]";
      e.acting = v;
      e.moved = w;
      out.push_back(std::move(e));
    }
  }
  return out;
}

// The Whitehead automorphism of a partition based at m: inverts m, multiplies
// split generators by m on the side away from their letter, and conjugates
// the non-split part of the minus side. Only elements of max(P) give
// automorphisms, so the base is required to lie there.
inline Endomorphism whitehead_automorphism(const DefiningGraph& g,
                                           const WhiteheadPartition& part, int m) {
  if (!validate_partition(g, part))
    throw std::invalid_argument("whitehead_automorphism: invalid partition");
  auto [sing, mx] = sing_and_max(g, part);
  if (!(mx & DefiningGraph::bit(m)))
    throw std::invalid_argument("whitehead_automorphism: base not in max(P)");
  WhiteheadPartition p = part;
  if (p.side_of_letter(letter(m, false)).value())  // put m's positive letter in P+
    std::swap(p.plus, p.minus);
  Endomorphism e = identity_endo(g);
  for (int v = 0; v < g.n(); ++v) {
    if (v == m) {
      e.im[v] = {Gen{m, true}};
    } else if (p.splits(v)) {
      bool pos_in_plus = !p.side_of_letter(letter(v, false)).value();
      e.im[v] = pos_in_plus ? Word{Gen{v, false}, Gen{m, true}}
                            : Word{Gen{m, false}, Gen{v, false}};
    } else if (p.side_of_letter(letter(v, false)) == std::optional<bool>(true)) {
      e.im[v] = {Gen{m, false}, Gen{v, false}, Gen{m, true}};
    }
  }
  e.type = Endomorphism::Type::whitehead;
  e.name = "wh[" + g.name(m) + "]";
  e.acting = m;
  return e;
}

inline std::string word_to_string(const DefiningGraph& g, const Word& w) {
  if (w.empty()) return "1";
  std::vector<std::string> parts;
  for (const Gen& x : w) parts.push_back(g.name(x.v) + (x.inv ? "^-1" : ""));
  return join(parts, " ");
}

inline Word word_from_string(const DefiningGraph& g, const std::string& s) {
  Word out;
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] == ' ') { ++i; continue; }
    size_t j = s.find(' ', i);
    std::string tok = s.substr(i, j == std::string::npos ? std::string::npos : j - i);
    i = j == std::string::npos ? s.size() : j + 1;
    if (tok == "1") continue;
    bool inv = false;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      inv = true;
      tok = tok.substr(0, tok.size() - 3);
    }
    out.push_back({g.index_of(tok), inv});
  }
  return out;
}

}  // namespace gcx
