#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "gcx/tori.hpp"
#include "oracle.hpp"

using namespace gcx;

namespace {

Blowup p3_blowup() {
  auto g = fixtures::p3();
  return build_blowup(g, {fixtures::partition(g, "a", {"a", "c"}, {"a^-1", "c^-1"})});
}

Blowup c4_full() {
  auto g = fixtures::c4();
  return build_blowup(g, {fixtures::partition(g, "a", {"a", "c"}, {"a^-1", "c^-1"}),
                          fixtures::partition(g, "b", {"b", "d"}, {"b^-1", "d^-1"})});
}

std::vector<int> torus_f(const MaximalTorus& t) {
  std::vector<int> f;
  for (const auto& v : t.cells) f.push_back(static_cast<int>(v.size()));
  while (f.size() > 1 && f.back() == 0) f.pop_back();
  return f;
}

VSet clique_of(const DefiningGraph& g, std::initializer_list<const char*> names) {
  VSet c = 0;
  for (const char* n : names) c |= DefiningGraph::bit(g.index_of(n));
  return c;
}

long long product_cells(const MaximalTorus& t) {
  long long total = 1;
  for (size_t i = 0; i < t.cycles.size(); ++i) total *= 2LL * t.cycle_length(static_cast<int>(i));
  return total;
}

}  // namespace

TEST_CASE("maximal tori on the fixtures") {
  Blowup b = p3_blowup();
  MaximalTorus tab = maximal_torus(b, clique_of(b.graph, {"a", "b"}));
  CHECK(torus_f(tab) == std::vector<int>{2, 4, 2});

  Blowup k3 = salvetti(fixtures::k3());
  MaximalTorus tk = maximal_torus(k3, clique_of(k3.graph, {"a", "b", "c"}));
  CHECK(torus_f(tk) == std::vector<int>{1, 3, 3, 1});
  CHECK(static_cast<int>(tk.cells[0].size() + tk.cells[1].size() + tk.cells[2].size() +
                         tk.cells[3].size()) == k3.cx.cell_count());

  Blowup c4 = salvetti(fixtures::c4());
  MaximalTorus tc = maximal_torus(c4, clique_of(c4.graph, {"a", "b"}));
  CHECK(torus_f(tc) == std::vector<int>{1, 2, 1});

  CHECK_THROWS_AS(maximal_torus(b, clique_of(b.graph, {"a"})), std::invalid_argument);
}

TEST_CASE("torus f-vectors factor as products of cycle lengths") {
  auto check_blowup = [&](const Blowup& b) {
    for (VSet c : maximal_cliques(b.graph)) {
      MaximalTorus t = maximal_torus(b, c);
      long long total = 0;
      for (const auto& v : t.cells) total += static_cast<long long>(v.size());
      CHECK(total == product_cells(t));
      // Euler characteristic of a torus is zero
      long long chi = 0;
      for (size_t d = 0; d < t.cells.size(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(t.cells[d].size());
      CHECK(chi == 0);
      // the subcomplex only uses clique labels and their splitters
      for (size_t d = 1; d < t.cells.size(); ++d) {
        for (int idx : t.cells[d]) {
          std::vector<int> labels = d == 1 ? std::vector<int>{b.cx.edges[idx].label}
                                           : b.cx.cubes[idx].labels;
          for (int l : labels) {
            if (b.is_partition_label(l)) {
              bool splits_clique = false;
              for (int v : bits_of(c))
                if (b.splitters[v] & (RegionBits(1) << b.partition_of_label(l)))
                  splits_clique = true;
              CHECK(splits_clique);
            } else {
              CHECK((c & DefiningGraph::bit(l)) != 0);
            }
          }
        }
      }
    }
  };
  check_blowup(p3_blowup());
  check_blowup(c4_full());
  check_blowup(salvetti(fixtures::f3()));
  auto g = fixtures::f3();
  check_blowup(build_blowup(g, {fixtures::partition(g, "b", {"b", "w"}, {"b^-1", "w^-1"})}));
}

TEST_CASE("the torus meets the partition subcomplex in a product of segments") {
  for (const Blowup& b : {p3_blowup(), c4_full()}) {
    for (VSet c : maximal_cliques(b.graph)) {
      MaximalTorus t = maximal_torus(b, c);
      long long count = 0;
      for (size_t d = 0; d < t.cells.size(); ++d) {
        for (int idx : t.cells[d]) {
          bool partition_only = true;
          if (d == 1) partition_only = b.is_partition_label(b.cx.edges[idx].label);
          else if (d >= 2)
            for (int l : b.cx.cubes[idx].labels)
              if (!b.is_partition_label(l)) partition_only = false;
          if (partition_only) ++count;
        }
      }
      long long expect = 1;
      for (size_t i = 0; i < t.cycles.size(); ++i)
        expect *= 2LL * t.cycle_length(static_cast<int>(i)) - 1;
      CHECK(count == expect);
    }
  }
}

TEST_CASE("torus coverage") {
  std::vector<VSet> witness;
  CHECK(torus_cover_check(p3_blowup(), &witness));
  CHECK(!witness.empty());
  CHECK(torus_cover_check(salvetti(fixtures::p3())));
  CHECK(torus_cover_check(salvetti(fixtures::d2())));
  CHECK(torus_cover_check(salvetti(fixtures::c4())));
  auto g = fixtures::f3();
  CHECK(torus_cover_check(
      build_blowup(g, {fixtures::partition(g, "b", {"b", "w"}, {"b^-1", "w^-1"})})));
  CHECK(torus_cover_check(c4_full()));
}

TEST_CASE("torus intersections decompose") {
  Blowup b = p3_blowup();
  MaximalTorus tab = maximal_torus(b, clique_of(b.graph, {"a", "b"}));
  MaximalTorus tbc = maximal_torus(b, clique_of(b.graph, {"b", "c"}));
  TorusIntersection x = intersect_tori(b, tab, tbc);
  REQUIRE(x.has_vertex);
  CHECK(x.clique == clique_of(b.graph, {"b"}));
  CHECK(x.f_vector() == std::vector<int>{2, 3, 1});
  CHECK(x.product_ok);
  CHECK(x.k_contractible);
  // K is the partition edge with its endpoints
  CHECK(x.k_cells[0].size() == 2);
  CHECK(x.k_cells[1].size() == 1);
  CHECK(b.is_partition_label(b.cx.edges[x.k_cells[1][0]].label));

  Blowup c4 = salvetti(fixtures::c4());
  MaximalTorus t1 = maximal_torus(c4, clique_of(c4.graph, {"a", "b"}));
  MaximalTorus t2 = maximal_torus(c4, clique_of(c4.graph, {"b", "c"}));
  MaximalTorus t3 = maximal_torus(c4, clique_of(c4.graph, {"c", "d"}));
  TorusIntersection y = intersect_tori(c4, t1, t2);
  CHECK(y.clique == clique_of(c4.graph, {"b"}));
  CHECK(y.f_vector() == std::vector<int>{1, 1});
  CHECK(y.product_ok);
  CHECK(y.k_contractible);
  TorusIntersection z = intersect_tori(c4, t1, t3);
  CHECK(z.clique == 0);
  CHECK(z.f_vector() == std::vector<int>{1});
  CHECK(z.product_ok);
  CHECK(z.k_contractible);

  // self-intersection: K is a point, the torus factor is everything
  TorusIntersection s = intersect_tori(b, tab, tab);
  CHECK(s.product_ok);
  CHECK(s.k_contractible);
  CHECK(s.f_vector() == torus_f(tab));

  Blowup full = c4_full();
  MaximalTorus u1 = maximal_torus(full, clique_of(full.graph, {"a", "b"}));
  MaximalTorus u2 = maximal_torus(full, clique_of(full.graph, {"b", "c"}));
  CHECK(torus_f(u1) == std::vector<int>{4, 8, 4});
  TorusIntersection w = intersect_tori(full, u1, u2);
  CHECK(w.f_vector() == std::vector<int>{4, 6, 2});
  CHECK(w.product_ok);
  CHECK(w.k_contractible);
}

TEST_CASE("chains of tori") {
  Blowup b = p3_blowup();
  MaximalTorus tab = maximal_torus(b, clique_of(b.graph, {"a", "b"}));
  MaximalTorus tbc = maximal_torus(b, clique_of(b.graph, {"b", "c"}));
  auto chain1 = chain_tori(b, tab, tbc);
  REQUIRE(chain1.size() == 2);
  CHECK(chain1.front().clique == tab.clique);
  CHECK(chain1.back().clique == tbc.clique);

  Blowup c4 = salvetti(fixtures::c4());
  MaximalTorus t1 = maximal_torus(c4, clique_of(c4.graph, {"a", "b"}));
  MaximalTorus t3 = maximal_torus(c4, clique_of(c4.graph, {"c", "d"}));
  auto chain2 = chain_tori(c4, t1, t3);
  REQUIRE(chain2.size() == 2);  // the single vertex is shared

  auto chain3 = chain_tori(b, tab, tab);
  CHECK(chain3.size() == 1);
}
