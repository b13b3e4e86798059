#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "gcx/partitions.hpp"
#include "oracle.hpp"

using namespace gcx;

namespace {

LetterSet ls(const DefiningGraph& g, std::initializer_list<const char*> toks) {
  LetterSet out = 0;
  for (std::string t : toks) {
    bool inv = t.size() > 3 && t.substr(t.size() - 3) == "^-1";
    if (inv) t = t.substr(0, t.size() - 3);
    out |= letter_bit(letter(g.index_of(t), inv));
  }
  return out;
}

WhiteheadPartition make(const DefiningGraph& g, const char* base,
                        std::initializer_list<const char*> plus,
                        std::initializer_list<const char*> minus) {
  WhiteheadPartition p;
  p.base = g.index_of(base);
  p.plus = ls(g, plus);
  p.minus = ls(g, minus);
  p.link = letters_of(g.link(p.base));
  return p;
}

const WhiteheadPartition* find_by_sides(const std::vector<WhiteheadPartition>& parts,
                                        const WhiteheadPartition& like) {
  for (const auto& p : parts)
    if (p.same_sides(like)) return &p;
  return nullptr;
}

}  // namespace

TEST_CASE("validate_partition on the fixture examples") {
  auto d2 = fixtures::d2();
  CHECK(validate_partition(d2, make(d2, "a", {"a", "b"}, {"a^-1", "b^-1"})));
  auto bad = make(d2, "a", {"a"}, {"a^-1", "b", "b^-1"});
  CHECK(validate_partition_reason(d2, bad) == PartitionIssue::singleton_side);

  auto p3 = fixtures::p3();
  CHECK(validate_partition(p3, make(p3, "a", {"a", "c^-1"}, {"a^-1", "c"})));

  // torn component: w and its inverse on different sides without a split
  auto f3 = fixtures::f3();
  auto torn = make(f3, "a", {"a", "w", "w"}, {"a^-1", "w^-1"});
  torn.plus = ls(f3, {"a", "w"});
  torn.minus = ls(f3, {"a^-1", "w^-1"});
  CHECK(validate_partition(f3, torn));  // this one is a genuine split
  auto c4 = fixtures::c4();
  auto off_link = make(c4, "a", {"a", "c", "b"}, {"a^-1", "c^-1", "b^-1"});
  CHECK(validate_partition_reason(c4, off_link) == PartitionIssue::not_a_partition);
}

TEST_CASE("sing and max") {
  auto d2 = fixtures::d2();
  auto [s1, m1] = sing_and_max(d2, make(d2, "a", {"a", "b"}, {"a^-1", "b^-1"}));
  CHECK(s1 == 0b11u);
  CHECK(m1 == 0b11u);

  auto p3 = fixtures::p3();
  auto [s2, m2] = sing_and_max(p3, make(p3, "a", {"a", "c"}, {"a^-1", "c^-1"}));
  CHECK(s2 == (DefiningGraph::bit(0) | DefiningGraph::bit(2)));
  CHECK(m2 == s2);

  auto f3 = fixtures::f3();
  auto [s3, m3] = sing_and_max(f3, make(f3, "b", {"b", "w"}, {"b^-1", "w^-1"}));
  CHECK(s3 == (DefiningGraph::bit(1) | DefiningGraph::bit(2)));
  CHECK(m3 == DefiningGraph::bit(1));
}

TEST_CASE("partition enumeration matches the brute-force oracle") {
  const std::pair<const char*, size_t> expected[] = {
      {"e2", 0}, {"k3", 0}, {"d2", 2}, {"p3", 2}, {"f3", 4}};
  std::map<std::string, DefiningGraph> graphs = {
      {"e2", fixtures::e2()}, {"k3", fixtures::k3()}, {"d2", fixtures::d2()},
      {"p3", fixtures::p3()}, {"f3", fixtures::f3()}};
  for (auto [name, count] : expected) {
    const auto& g = graphs.at(name);
    auto impl = enumerate_partitions(g);
    auto raw = oracle::enumerate_partitions(g);
    INFO(name);
    CHECK(impl.size() == count);
    CHECK(raw.size() == count);
    for (const auto& p : impl) {
      CHECK(validate_partition(g, p));
      CHECK(raw.count({p.plus, p.minus}) == 1);
    }
  }

  auto f3 = fixtures::f3();
  CHECK(find_by_sides(enumerate_partitions(f3),
                      make(f3, "b", {"b", "w"}, {"b^-1", "w^-1"})) != nullptr);

  // completeness + soundness on every small graph
  for (const auto& g : fixtures::all_graphs(3)) {
    auto impl = enumerate_partitions(g);
    auto raw = oracle::enumerate_partitions(g);
    CHECK(impl.size() == raw.size());
    for (const auto& p : impl) CHECK(raw.count({p.plus, p.minus}) == 1);
  }
}

TEST_CASE("adjacency") {
  auto p3 = fixtures::p3();
  auto pa = make(p3, "a", {"a", "c"}, {"a^-1", "c^-1"});
  CHECK(adjacent(p3, p3.index_of("b"), pa));

  auto d2 = fixtures::d2();
  CHECK_FALSE(adjacent(d2, d2.index_of("a"), make(d2, "a", {"a", "b"}, {"a^-1", "b^-1"})));

  auto c4 = fixtures::c4();
  auto qa = make(c4, "a", {"a", "c"}, {"a^-1", "c^-1"});
  auto qb = make(c4, "b", {"b", "d"}, {"b^-1", "d^-1"});
  CHECK(adjacent(c4, qa, qb));
  CHECK(adjacent(c4, qb, qa));
  CHECK_THROWS_AS(adjacent(c4, qa, qa), std::invalid_argument);
  CHECK_THROWS_AS(adjacent(c4, 1, 1), std::invalid_argument);
}

TEST_CASE("compatibility") {
  auto d2 = fixtures::d2();
  auto p1 = make(d2, "a", {"a", "b"}, {"a^-1", "b^-1"});
  auto p2 = make(d2, "a", {"a", "b^-1"}, {"a^-1", "b"});
  CHECK_FALSE(compatible(d2, p1, p2));

  auto c4 = fixtures::c4();
  auto qa = make(c4, "a", {"a", "c"}, {"a^-1", "c^-1"});
  auto qb = make(c4, "b", {"b", "d"}, {"b^-1", "d^-1"});
  CHECK(compatible(c4, qa, qb));

  auto p3 = fixtures::p3();
  auto r1 = make(p3, "a", {"a", "c"}, {"a^-1", "c^-1"});
  auto r2 = make(p3, "a", {"a", "c^-1"}, {"a^-1", "c"});
  CHECK_FALSE(compatible(p3, r1, r2));

  // compatible-not-adjacent pairs have exactly one disjoint side pair
  for (const auto& g : fixtures::all_graphs()) {
    auto parts = enumerate_partitions(g);
    for (size_t i = 0; i < parts.size(); ++i) {
      for (size_t j = i + 1; j < parts.size(); ++j) {
        bool adj = adjacent(g, parts[i], parts[j]);
        bool comp = compatible(g, parts[i], parts[j]);
        CHECK(adj == adjacent(g, parts[j], parts[i]));
        CHECK(comp == compatible(g, parts[j], parts[i]));
        if (adj) CHECK(comp);
        if (comp && !adj) CHECK(disjoint_side_pairs(parts[i], parts[j]) == 1);
      }
    }
  }
}

TEST_CASE("compatible collections") {
  CHECK(compatible_collections(fixtures::k3()).size() == 1);
  CHECK(compatible_collections(fixtures::d2()).size() == 3);
  auto c4 = fixtures::c4();
  auto parts = enumerate_partitions(c4);
  auto colls = compatible_collections(c4, parts);
  bool has_pair = false;
  for (const auto& c : colls) has_pair = has_pair || c.size() == 2;
  CHECK(has_pair);
  CHECK(colls.front().empty());
}

TEST_CASE("twist-dominant split generators force a singleton max") {
  for (const auto& g : fixtures::all_graphs()) {
    for (const auto& p : enumerate_partitions(g)) {
      auto [sing, mx] = sing_and_max(g, p);
      for (int v : bits_of(sing))
        if (twist_dominant(g, v)) CHECK(mx == DefiningGraph::bit(v));
    }
  }
}

TEST_CASE("dedup soundness: sing and max are side-determined") {
  for (const auto& g : fixtures::all_graphs()) {
    for (const auto& p : enumerate_partitions(g)) {
      auto [sing, mx] = sing_and_max(g, p);
      // rebase on every element of max and recompute
      for (int m : bits_of(mx)) {
        WhiteheadPartition q = p;
        q.base = m;
        q.link = letters_of(g.link(m));
        REQUIRE(validate_partition(g, q));
        auto [sing2, mx2] = sing_and_max(g, q);
        CHECK(sing2 == sing);
        CHECK(mx2 == mx);
      }
    }
  }
}
