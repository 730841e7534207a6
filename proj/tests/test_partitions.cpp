#include "jtdet/error.hpp"
#include "jtdet/partitions.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <map>

using namespace jtdet;

namespace {

Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }

// Conjugate from the box set, transposed.
Partition conjugate_by_boxes(const Partition& lambda) {
  std::vector<int> cols;
  for (auto [r, c] : oracle::box_set(SkewShape(lambda))) {
    if (static_cast<int>(cols.size()) < c) cols.resize(c, 0);
    ++cols[c - 1];
  }
  return Partition(cols);
}

}  // namespace

TEST_CASE("parse") {
  CHECK(parse_partition("7,4,1") == P({7, 4, 1}));
  CHECK(parse_partition("3^2,1^4") == P({3, 3, 1, 1, 1, 1}));
  CHECK(parse_partition(" 2 , 1 ") == P({2, 1}));
  CHECK(parse_partition("").empty());
  CHECK_THROWS_AS(parse_partition("2,5"), ParseError);
  CHECK_THROWS_AS(parse_partition("2,0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_partition("2,-1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_partition("2,,1"), ParseError);
  CHECK_THROWS_AS(parse_partition("a"), ParseError);
  CHECK_THROWS_AS(parse_partition("3^"), ParseError);

  const auto s = parse_skew("8,6,4,4/5,3,3");
  CHECK(s.outer() == P({8, 6, 4, 4}));
  CHECK(s.inner() == P({5, 3, 3}));
  CHECK(s.to_string() == "8,6,4,4/5,3,3");
  CHECK(parse_skew("7,4,1").to_string() == "7,4,1");
  CHECK_THROWS_AS(parse_skew("2,1/3"), ParseError);
  CHECK_THROWS_AS(parse_skew("2/1/1"), ParseError);
}

TEST_CASE("size, length, indexing") {
  const auto l = P({7, 4, 1});
  CHECK(l.size() == 12);
  CHECK(l.length() == 3);
  CHECK(l.part(1) == 7);
  CHECK(l.part(4) == 0);
  CHECK(SkewShape(P({8, 6, 4, 4}), P({5, 3, 3})).box_count() == 11);
}

TEST_CASE("conjugate") {
  CHECK(conjugate(P({7, 4, 1})) == P({3, 2, 2, 2, 1, 1, 1}));
  CHECK(conjugate(Partition()).empty());
  CHECK(conjugate_skew(parse_skew("2,1")) == parse_skew("2,1"));
  CHECK(conjugate_skew(parse_skew("2,2/1")) == parse_skew("2,2/1"));
  CHECK(conjugate_skew(parse_skew("7,4,1")) == parse_skew("3,2,2,2,1,1,1"));

  for (const auto& l : partitions_up_to(12)) {
    const auto c = conjugate(l);
    REQUIRE(conjugate(c) == l);
    REQUIRE(c.size() == l.size());
    REQUIRE(c.length() == l.part(1));
    REQUIRE(c == conjugate_by_boxes(l));
  }
}

TEST_CASE("partition counts") {
  const std::vector<std::size_t> p = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (int n = 0; n <= 10; ++n) CHECK(partitions_of(n).size() == p[n]);
  CHECK(subpartitions(P({2, 1})).size() == 5);  // {}, 1, 2, 1^2, 21
}

TEST_CASE("boxes") {
  CHECK(boxes(parse_skew("2,1")) == std::vector<Box>{{1, 1}, {1, 2}, {2, 1}});
  CHECK(boxes(parse_skew("2,2/1")) == std::vector<Box>{{1, 2}, {2, 1}, {2, 2}});
  CHECK(boxes(parse_skew("8,6,4,4/5,3,3")).size() == 11);
  for (const auto& s : skew_shapes_up_to(6)) {
    const auto b = boxes(s);
    REQUIRE(std::set<Box>(b.begin(), b.end()) == oracle::box_set(s));
  }
}

TEST_CASE("connectivity and ribbons") {
  CHECK(is_connected(parse_skew("8,6,4,4/5,3,3")));
  CHECK_FALSE(is_connected(parse_skew("8,6,4,3/5,3,3")));
  CHECK(is_connected(parse_skew("1")));
  CHECK(is_ribbon(parse_skew("8,6,4,4/5,3,3")));
  CHECK_FALSE(is_ribbon(parse_skew("8,7,5,4/5,4,3")));
  CHECK(is_ribbon(parse_skew("1")));
  CHECK_FALSE(is_connected(parse_skew("2,1/2,1")));
  CHECK_FALSE(is_ribbon(SkewShape()));

  // Row-overlap criterion against flood fill, and ribbon test against a
  // direct 2x2 search, on every skew shape with |outer| <= 10.
  for (const auto& s : skew_shapes_up_to(10)) {
    if (s.box_count() > 10) continue;
    CAPTURE(s.to_string());
    REQUIRE(is_connected(s) == oracle::flood_connected(s));
    REQUIRE(is_ribbon(s) == (oracle::flood_connected(s) && !oracle::has_2x2(s)));
  }
}

TEST_CASE("ribbon enumeration") {
  // Connected ribbons of b boxes correspond to compositions of b.
  const auto ribbons = ribbons_up_to(8);
  std::map<int, int> by_size;
  for (const auto& r : ribbons) {
    REQUIRE(is_ribbon(r));
    REQUIRE(normalize_ribbon(r) == r);
    ++by_size[r.box_count()];
  }
  for (int b = 1; b <= 8; ++b) CHECK(by_size[b] == (1 << (b - 1)));

  for (const auto& r : ribbons) {
    // Boxes = rows + columns - 1 of the bounding box.
    const auto cells = oracle::box_set(r);
    std::set<int> rows, cols;
    for (auto [i, j] : cells) {
      rows.insert(i);
      cols.insert(j);
    }
    REQUIRE(static_cast<int>(cells.size()) == static_cast<int>(rows.size() + cols.size()) - 1);
  }
}

TEST_CASE("normalize_ribbon") {
  CHECK(normalize_ribbon(parse_skew("2,2/1")) == parse_skew("2,2/1"));
  CHECK(normalize_ribbon(parse_skew("3,3/3,2")) == parse_skew("1"));
  CHECK(normalize_ribbon(parse_skew("8,6,4,4/5,3,3")) == parse_skew("8,6,4,4/5,3,3"));
  CHECK_THROWS_AS(normalize_ribbon(parse_skew("2,2")), InvalidArgument);

  // Every ribbon in a larger frame normalizes to a rigid translate.
  for (const auto& s : skew_shapes_up_to(9)) {
    if (!is_ribbon(s)) continue;
    const auto n = normalize_ribbon(s);
    CAPTURE(s.to_string());
    REQUIRE(n.outer().part(1) > n.inner().part(1));
    REQUIRE(n.outer().part(n.rows()) > 0);
    REQUIRE(n.inner().part(n.rows()) == 0);
    const auto a = oracle::box_set(s), b = oracle::box_set(n);
    REQUIRE(a.size() == b.size());
    const int dr = a.begin()->first - b.begin()->first;
    const int dc = a.begin()->second - b.begin()->second;
    for (auto [r, c] : b) REQUIRE(a.count({r + dr, c + dc}));
  }
}

TEST_CASE("staircases") {
  CHECK(shifted_staircase(2, 2, 3) == P({6, 4, 2}));
  CHECK(shifted_staircase(1, 1, 4) == P({4, 3, 2, 1}));
  CHECK(shifted_staircase(3, 1, 1) == P({3}));
  CHECK(shifted_staircase(2, 2, 0).empty());
  CHECK(block_staircase(1, 2, 3) == P({3, 2, 2, 1, 1}));
  CHECK(block_staircase(2, 1, 1) == P({1, 1}));
  CHECK(is_inward(2, 2));
  CHECK_FALSE(is_inward(3, 2));
  CHECK_THROWS_AS(shifted_staircase(0, 1, 2), InvalidArgument);
  for (int p = 1; p <= 4; ++p)
    for (int n = 1; n <= 4; ++n)
      for (int k = 0; k <= 5; ++k) {
        REQUIRE(block_staircase(p, n, k) == conjugate(shifted_staircase(p, n, k)));
        REQUIRE(block_staircase(p, n, k).length() == (k == 0 ? 0 : p + (k - 1) * n));
      }
}

TEST_CASE("skew shape enumeration") {
  const auto shapes = skew_shapes_up_to(4);
  std::set<SkewShape> unique(shapes.begin(), shapes.end());
  CHECK(unique.size() == shapes.size());
  std::size_t expected = 0;
  for (const auto& l : partitions_up_to(4)) expected += subpartitions(l).size();
  CHECK(shapes.size() == expected);
}
