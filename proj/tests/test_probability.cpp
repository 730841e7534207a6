#include "jtdet/error.hpp"
#include "jtdet/probability.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace jtdet;

namespace {

Distribution dist(const char* shape, std::uint32_t q) {
  return exact_distribution(build_jacobi_trudi(parse_skew(shape)), Field::make(q));
}

}  // namespace

TEST_CASE("exact distribution spot values") {
  const auto h1 = dist("1", 3);
  CHECK(h1.vars == 1);
  CHECK(h1.counts == std::vector<std::uint64_t>{1, 1, 1});

  const auto d21 = dist("2,1", 2);
  CHECK(d21.vars == 3);
  CHECK(d21.counts[0] == 4);
  CHECK(prob_of(d21, Field::zero()) == Rational(1, 2));

  const auto d642 = dist("6,4,2", 2);
  CHECK(d642.vars == 8);
  CHECK(d642.counts[0] == 160);
  CHECK(prob_of(d642, Field::zero()) == Rational(5, 8));

  const auto ribbon = dist("8,6,4,4/5,3,3", 2);
  CHECK(ribbon.vars == 8);
  CHECK(ribbon.counts == std::vector<std::uint64_t>{128, 128});

  const auto empty = exact_distribution(build_jacobi_trudi(SkewShape()), Field::make(2));
  CHECK(empty.vars == 0);
  CHECK(prob_of(empty, Field::zero()) == 0);
  CHECK(prob_of(empty, Field::one()) == 1);
}

TEST_CASE("sipr_exact") {
  const MultislantSpec three({SlantBlock{3, 2, {SymEntry::var(2), SymEntry::var(1)}, {SymEntry::constant(3)}},
                              SlantBlock{3, 1, {SymEntry::var(4), SymEntry::var(3), SymEntry::constant(1)}, {}}});
  CHECK(sipr_exact(three, Field::make(5)) == Rational(1, 5));
  CHECK(sipr_exact(MultislantSpec({SlantBlock{1, 1, {SymEntry::constant(1)}, {}}}), Field::make(2)) == 0);
  const MultislantSpec zeros({SlantBlock{2, 1, {SymEntry::var(1), SymEntry::constant(0)}, {}},
                              SlantBlock{2, 1, {SymEntry::var(2), SymEntry::constant(3)}, {}}});
  CHECK(sipr_exact(zeros, Field::make(3)) == 1);
}

TEST_CASE("budget") {
  const auto m = build_jacobi_trudi(parse_skew("6,4,2"));
  CHECK_THROWS_AS(exact_distribution(m, Field::make(2), 255), BudgetExceeded);
  CHECK_NOTHROW(exact_distribution(m, Field::make(2), 256));
  try {
    exact_distribution(m, Field::make(3), 100);
  } catch (const BudgetExceeded& e) {
    CHECK(e.q() == 3);
    CHECK(e.vars() == 8);
    CHECK(e.budget() == 100);
  }
  CHECK(assignment_count(2, 10) == 1024);
  CHECK(assignment_count(2, 70) == kMaxBudget + 1);
}

TEST_CASE("matches the full h_1..h_N cube") {
  for (auto q : {2u, 3u}) {
    const Field f = Field::make(q);
    for (const auto& s : skew_shapes_up_to(5)) {
      const auto m = build_jacobi_trudi(s);
      int top = 0;
      for (const auto& e : m.entries())
        if (e.is_var()) top = std::max(top, e.var_index());
      if (assignment_count(q, top) > 20000) continue;
      const auto d = exact_distribution(m, f);
      const auto cube = oracle::cube_distribution(m, f);
      CAPTURE(s.to_string());
      for (const auto a : f.elements()) REQUIRE(prob_of(d, a) == oracle::cube_probability(cube, a, q));
    }
  }
}

TEST_CASE("distribution invariants") {
  for (auto q : {2u, 3u}) {
    const Field f = Field::make(q);
    for (const auto& l : partitions_up_to(6)) {
      const auto d = exact_distribution(build_jacobi_trudi(SkewShape(l)), f);
      CAPTURE(l.to_string());
      REQUIRE(d.total() == assignment_count(q, d.vars));
      Rational sum = 0;
      for (const auto a : f.elements()) sum += prob_of(d, a);
      REQUIRE(sum == 1);
      if (!l.empty()) REQUIRE(prob_of(d, Field::zero()) >= Rational(1, q));
    }
  }
}

TEST_CASE("column and row permutations keep the zero count") {
  std::mt19937_64 rng(8);
  const Field f = Field::make(3);
  for (const char* shape : {"4,2,1", "3,3,1", "5,3,2/2,1", "4,4,2/1"}) {
    const auto m = build_jacobi_trudi(parse_skew(shape));
    const int k = m.dim();
    const auto base = exact_distribution(m, f);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<int> rows(k), cols(k);
      std::iota(rows.begin(), rows.end(), 0);
      std::iota(cols.begin(), cols.end(), 0);
      std::shuffle(rows.begin(), rows.end(), rng);
      std::shuffle(cols.begin(), cols.end(), rng);
      SymbolicMatrix p(k);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) p.at(r, c) = m.at(rows[r], cols[c]);
      const auto d = exact_distribution(p, f);
      REQUIRE(d.counts[0] == base.counts[0]);
      // Values are only relabeled by a sign.
      REQUIRE(((d.counts == base.counts) || (d.counts[1] == base.counts[2] && d.counts[2] == base.counts[1])));
    }
  }
}

TEST_CASE("sharding") {
  const auto m = build_jacobi_trudi(parse_skew("5,3,2/1"));
  for (auto q : {2u, 3u, 4u}) {
    const Field f = Field::from_order(q);
    const auto whole = exact_distribution(m, f);
    const DetEvaluator ev(m, f);
    Distribution merged{q, whole.vars, std::vector<std::uint64_t>(q, 0)};
    // Shards merged in reverse order.
    for (std::uint32_t s = q; s-- > 0;) merge_into(merged, exact_distribution_shard(ev, {s}));
    CHECK(merged == whole);
    CHECK(exact_distribution(m, f, kDefaultBudget, 3) == whole);
  }
  Distribution a{2, 1, {1, 1}}, b{3, 1, {1, 1, 1}};
  CHECK_THROWS_AS(merge_into(a, b), InvalidArgument);
}

TEST_CASE("wilson interval") {
  const auto ci = wilson_interval(50, 100, kZ95);
  CHECK(ci.low == doctest::Approx(0.4038).epsilon(1e-3));
  CHECK(ci.high == doctest::Approx(0.5962).epsilon(1e-3));
  const auto all = wilson_interval(10, 10, kZ95);
  CHECK(all.high == 1.0);
  CHECK(all.low < 1.0);
  const auto none = wilson_interval(0, 10, kZ95);
  CHECK(none.low == 0.0);
  for (std::uint64_t n : {1u, 7u, 100u})
    for (std::uint64_t h = 0; h <= n; ++h) {
      const auto w = wilson_interval(h, n, 3.0);
      const double phat = static_cast<double>(h) / n;
      REQUIRE((0.0 <= w.low && w.low <= phat && phat <= w.high && w.high <= 1.0));
    }
}

TEST_CASE("counter rng") {
  const CounterRng rng(42);
  std::vector<FieldElement> a(5), b(5);
  rng.draw(7, 5, a);
  rng.draw(7, 5, b);
  CHECK(a == b);
  std::vector<std::uint64_t> hist(5, 0);
  for (std::uint64_t i = 0; i < 20000; ++i) {
    rng.draw(i, 5, a);
    for (auto v : a) {
      REQUIRE(v.index < 5);
      ++hist[v.index];
    }
  }
  for (auto h : hist) CHECK(h == doctest::Approx(20000.0).epsilon(0.05));
}

TEST_CASE("monte carlo") {
  const auto one = build_jacobi_trudi(SkewShape());
  const auto e = monte_carlo(one, Field::make(2), Field::one(), 1000, 1);
  CHECK(e.estimate == 1);
  CHECK(e.ci_high == 1.0);
  CHECK(e.ci_low > 0.99);

  const auto m = build_jacobi_trudi(parse_skew("2,1"));
  const auto a = monte_carlo(m, Field::make(2), Field::zero(), 100000, 9);
  const auto b = monte_carlo(m, Field::make(2), Field::zero(), 100000, 9, 4);
  CHECK(a == b);
  CHECK(to_double(a.estimate) > 0.49);
  CHECK(to_double(a.estimate) < 0.51);
  CHECK((a.ci_low <= to_double(a.estimate) && to_double(a.estimate) <= a.ci_high));
  CHECK(monte_carlo(m, Field::make(2), Field::zero(), 1000, 10) != a);
  CHECK_THROWS_AS(monte_carlo(m, Field::make(2), Field::zero(), 0, 1), InvalidArgument);
  CHECK_THROWS_AS(monte_carlo(m, Field::make(2), {2}, 10, 1), InvalidArgument);
}

TEST_CASE("json round trips") {
  const auto d = dist("6,4,2", 3);
  CHECK(distribution_from_json(to_json(d)) == d);
  CHECK(to_json(dist("6,4,2", 2)) == nlohmann::json::parse(R"({"q":2,"V":8,"counts":[160,96]})"));
  CHECK_THROWS_AS(distribution_from_json(nlohmann::json::parse(R"({"q":2,"V":1,"counts":[1]})")), ParseError);
  CHECK_THROWS_AS(distribution_from_json(nlohmann::json::parse(R"({"q":2})")), ParseError);

  const auto e = monte_carlo(build_jacobi_trudi(parse_skew("3,1")), Field::make(3), Field::zero(), 777, 5);
  CHECK(mc_estimate_from_json(to_json(e)) == e);
  CHECK(mc_estimate_from_json(nlohmann::json::parse(to_json(e).dump())) == e);
}
