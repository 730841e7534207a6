#include "jtdet/error.hpp"
#include "jtdet/multislant.hpp"
#include "jtdet/probability.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <doctest.h>

#include <fstream>

using namespace jtdet;

namespace {

SymEntry V(int i) { return SymEntry::var(i); }
SymEntry C(std::int64_t c) { return SymEntry::constant(c); }

MultislantSpec load(const std::string& name) {
  std::ifstream in(std::string(JTDET_TEST_DATA_DIR) + "/" + name);
  REQUIRE(in);
  return multislant_from_json(nlohmann::json::parse(in));
}

Rational sipr_by_leibniz(const MultislantSpec& spec, const Field& f) {
  const auto m = to_symbolic(spec);
  const auto c = oracle::cube_distribution(m, f);
  return oracle::cube_probability(c, Field::zero(), f.order());
}

}  // namespace

TEST_CASE("gamma") {
  CHECK(gamma(0, 2) == 1);
  CHECK(gamma(1, 7) == 1);
  CHECK(gamma(2, 2) == Rational(1, 2));
  CHECK(gamma(3, 2) == Rational(3, 8));
  // gamma_k = |GL_{k-1}(F_q)| / q^{(k-1)^2}
  for (auto q : {2u, 3u}) {
    const Field f = Field::make(q);
    for (int k = 1; k <= 4; ++k) {
      const auto gl = oracle::count_invertible(k - 1, f);
      CHECK(gamma(k, q) == Rational(BigInt(gl), big_pow(q, static_cast<unsigned>((k - 1) * (k - 1)))));
    }
  }
}

TEST_CASE("block classification is relative to the field") {
  SlantBlock b{2, 1, {V(1), C(4)}, {}};
  CHECK(classify_block(b, Field::make(2)) == SlantType::Zero);
  CHECK(classify_block(b, Field::make(5)) == SlantType::One);
  b.full.back() = V(2);
  CHECK(classify_block(b, Field::make(5)) == SlantType::X);
  b.full.back() = C(3);
  CHECK(classify_block(b, Field::make(5)) == SlantType::One);

  const auto m = load("multislant_6x13.json");
  CHECK(m.rows() == 6);
  CHECK(m.cols() == 13);
  CHECK(signature(m, Field::make(5)) == Signature{1, 1, 2});
  CHECK(signature(m, Field::make(3)) == Signature{1, 2, 1});
  CHECK(signature(m, Field::make(7)).to_string() == "(1,1,2)");
  CHECK(signature(MultislantSpec(), Field::make(2)) == Signature{0, 0, 0});
}

TEST_CASE("theoretical singular probability") {
  CHECK(theoretical_sipr({1, 1, 1}, 2) == Rational(5, 8));
  CHECK(theoretical_sipr({0, 3, 0}, 5) == 1);
  CHECK(theoretical_sipr({1, 0, 1}, 3) == Rational(1, 3));
  // (p, n-p, 1) gives the inward staircase value.
  for (int n = 1; n <= 4; ++n)
    for (int p = 1; p <= n; ++p) {
      Rational prod = 1;
      for (int i = 1; i <= n; ++i) prod *= 1 - Rational(1, big_pow(3, i));
      CHECK(theoretical_sipr({p, n - p, 1}, 3) == 1 - prod);
    }
  CHECK_THROWS_AS(theoretical_sipr({0, 0, 0}, 2), InvalidArgument);
}

TEST_CASE("to_symbolic") {
  const auto spec = load("multislant_3x3.json");
  const auto m = to_symbolic(spec);
  CHECK(m.to_text() == "b 3 y / a b x / 0 a 1");
  for (auto q : {2u, 3u, 5u}) CHECK(sipr_by_leibniz(spec, Field::make(q)) == Rational(1, q));

  CHECK(to_symbolic(MultislantSpec({SlantBlock{1, 1, {C(1)}, {}}})).to_text() == "1");
  const MultislantSpec zeros({SlantBlock{4, 2, {V(1), V(2), C(0)}, {V(3)}}, SlantBlock{4, 2, {V(4), V(5), C(2)}, {C(1)}}});
  const auto z = to_symbolic(zeros);
  for (int c = 0; c < 4; ++c) CHECK(z.at(3, c).const_value(Field::make(2)) == Field::zero());
  CHECK(sipr_exact(zeros, Field::make(2)) == 1);
  CHECK_THROWS_AS(to_symbolic(load("multislant_6x13.json")), InvalidArgument);
}

TEST_CASE("slant invariants") {
  CHECK_THROWS_AS(MultislantSpec({SlantBlock{1, 2, {}, {V(1)}}}), InvalidArgument);                   // not tall
  CHECK_THROWS_AS(MultislantSpec({SlantBlock{3, 1, {V(1), V(1), C(1)}, {}}}), InvalidArgument);        // repeated
  CHECK_THROWS_AS(MultislantSpec({SlantBlock{3, 1, {V(1), V(2), V(1)}, {}}}), InvalidArgument);        // bottom repeats
  CHECK_THROWS_AS(MultislantSpec({SlantBlock{3, 2, {V(1), V(2)}, {V(1)}}}), InvalidArgument);          // attic on full
  CHECK_THROWS_AS(MultislantSpec({SlantBlock{3, 2, {C(2), V(1)}, {V(3)}}}), InvalidArgument);          // constant above bottom
  CHECK_THROWS_AS(MultislantSpec({SlantBlock{2, 1, {V(1), C(1)}, {}}, SlantBlock{3, 1, {V(2), V(3), C(1)}, {}}}),
                  InvalidArgument);  // heights differ
  CHECK_THROWS_AS(load("multislant_overlap.json"), InvalidArgument);
  CHECK_NOTHROW(MultislantSpec({SlantBlock{4, 3, {V(1), C(0)}, {V(2), V(2)}}}));  // attic may repeat
  CHECK_THROWS_AS(multislant_from_json(nlohmann::json::parse(R"({"blocks": [{"rows": 2}]})")), ParseError);
  CHECK_THROWS_AS(multislant_from_json(nlohmann::json::parse(R"({"block": []})")), ParseError);
  CHECK_THROWS_AS(multislant_from_json(nlohmann::json::parse(R"({"blocks":[{"rows":1,"cols":1,"full":[1.5]}]})")),
                  ParseError);
}

TEST_CASE("json round trip") {
  const auto m = load("multislant_6x13.json");
  const auto again = multislant_from_json(to_json(m));
  CHECK(again == m);
  CHECK(to_json(again) == to_json(m));
  CHECK(to_json(m)["blocks"][0]["attic"] == nlohmann::json::parse(R"([1, 0, "p"])"));
}

TEST_CASE("staircase grouping") {
  auto bottoms = [](const MultislantSpec& s) {
    std::vector<SymEntry> out;
    for (const auto& b : s.blocks()) out.push_back(b.bottom());
    return out;
  };
  const Field f2 = Field::make(2);
  {
    const auto g = staircase_grouping(1, 1, 2);
    CHECK(signature(g.spec, f2) == Signature{1, 0, 1});
    CHECK(g.column_order == std::vector<int>{0, 1});
  }
  CHECK(signature(staircase_grouping(2, 2, 3).spec, f2) == Signature{2, 0, 1});
  CHECK(signature(staircase_grouping(1, 2, 3).spec, f2) == Signature{1, 1, 1});
  CHECK_THROWS_AS(staircase_grouping(3, 2, 4), InvalidArgument);
  CHECK_THROWS_AS(staircase_grouping(1, 3, 3), InvalidArgument);

  for (int n = 1; n <= 4; ++n)
    for (int p = 1; p <= n; ++p)
      for (int k = n + 1; k <= n + 3; ++k) {
        CAPTURE(p);
        CAPTURE(n);
        CAPTURE(k);
        const auto g = staircase_grouping(p, n, k);
        const auto j = build_jacobi_trudi(SkewShape(shifted_staircase(p, n, k)));
        const auto m = to_symbolic(g.spec);
        REQUIRE(g.spec.blocks().size() == static_cast<std::size_t>(n + 1));
        for (int r = 0; r < k; ++r)
          for (int t = 0; t < k; ++t) REQUIRE(m.at(r, t) == j.at(r, g.column_order[t]));
        REQUIRE(signature(g.spec, Field::make(3)) == Signature{p, n - p, 1});
        std::vector<SymEntry> want;
        for (int c = p; c >= 1; --c) want.push_back(SymEntry::h(c));
        want.push_back(C(1));
        while (want.size() < static_cast<std::size_t>(n + 1)) want.push_back(C(0));
        const auto got = bottoms(g.spec);
        REQUIRE(std::is_permutation(got.begin(), got.end(), want.begin(), want.end()));
      }
}

TEST_CASE("reduce_type1_pair") {
  const Field f = Field::make(7);
  // a=1, b=2, x=3, y=4, z=5
  const SlantBlock ai{5, 3, {V(2), V(1), C(1)}, {C(2), C(3)}};
  const SlantBlock aj{5, 2, {V(5), V(4), V(3), C(1)}, {C(5)}};
  const MultislantSpec m({ai, aj});
  const auto r = reduce_type1_pair(m, 0, 1, f);
  CHECK(r.blocks()[0] == ai);
  CHECK(r.blocks()[1] == SlantBlock{5, 2, {V(5), V(4), V(3), C(0)}, {C(2)}});
  CHECK(to_symbolic(r).to_text() == "h2 2 3 h5 2 / h1 h2 2 h4 h5 / 1 h1 h2 h3 h4 / 0 1 h1 0 h3 / 0 0 1 0 0");

  CHECK_THROWS_AS(reduce_type1_pair(m, 1, 0, f), InvalidArgument);  // fewer columns
  const MultislantSpec loose({SlantBlock{5, 3, {V(2), V(1), C(1)}, {V(6), C(3)}}, aj});
  CHECK_THROWS_AS(reduce_type1_pair(loose, 0, 1, f), InvalidArgument);  // not strict
  const MultislantSpec typex({SlantBlock{5, 3, {V(2), V(1), V(6)}, {C(2), C(3)}}, aj});
  CHECK_THROWS_AS(reduce_type1_pair(typex, 0, 1, f), InvalidArgument);

  // Equal shapes, bottoms 1: plain column subtraction, SiPr unchanged.
  const MultislantSpec twins({SlantBlock{4, 2, {V(1), V(2), C(1)}, {C(1)}}, SlantBlock{4, 2, {V(3), V(4), C(1)}, {C(0)}}});
  const Field f2 = Field::make(2);
  const auto t = reduce_type1_pair(twins, 0, 1, f2);
  CHECK(classify_block(t.blocks()[1], f2) == SlantType::Zero);
  CHECK(sipr_by_leibniz(twins, f2) == sipr_by_leibniz(t, f2));

  // Over GF(4) the new constants can leave the prime subfield.
  const Field f4 = Field::make(2, 2);
  const MultislantSpec ext({SlantBlock{3, 2, {V(1), C(1)}, {C(1)}}, SlantBlock{3, 1, {V(2), V(3), SymEntry::field_const({2})}, {}}});
  const auto e = reduce_type1_pair(ext, 0, 1, f4);
  CHECK(classify_block(e.blocks()[1], f4) == SlantType::Zero);
  CHECK(sipr_by_leibniz(ext, f4) == sipr_by_leibniz(e, f4));
}

TEST_CASE("specialize_bottom") {
  const Field f7 = Field::make(7);
  const MultislantSpec m({SlantBlock{3, 2, {V(1), V(2)}, {V(3)}}, SlantBlock{3, 1, {V(4), V(5), C(1)}, {}}});
  const auto zero = specialize_bottom(m, 0, Field::zero(), f7);
  CHECK(classify_block(zero.blocks()[0], f7) == SlantType::Zero);
  CHECK(zero.blocks()[0].full == std::vector<SymEntry>{V(1), C(0)});
  const auto five = specialize_bottom(m, 0, {5}, f7);
  CHECK(classify_block(five.blocks()[0], f7) == SlantType::One);
  CHECK(five.blocks()[0].bottom() == C(5));
  CHECK_THROWS_AS(specialize_bottom(m, 1, {5}, f7), InvalidArgument);
  CHECK_THROWS_AS(specialize_bottom(m, 2, {5}, f7), InvalidArgument);

  const Field f4 = Field::make(2, 2);
  CHECK(specialize_bottom(m, 0, {3}, f4).blocks()[0].bottom() == SymEntry::field_const({3}));
}

TEST_CASE("strip_strange_block") {
  const Field f2 = Field::make(2);
  const MultislantSpec one({SlantBlock{1, 1, {C(1)}, {}}});
  CHECK(strip_strange_block(one, f2).blocks().empty());

  // (0,1,1) with a 3x2 strange block -> (1,0,1).
  const MultislantSpec m({SlantBlock{3, 1, {V(1), V(2), C(0)}, {}}, SlantBlock{3, 2, {V(3), C(1)}, {C(4)}}});
  const auto s = strip_strange_block(m, f2);
  CHECK(signature(s, f2) == Signature{1, 0, 1});
  CHECK(s.rows() == 2);
  CHECK(s.is_square());
  CHECK(sipr_by_leibniz(m, f2) == sipr_by_leibniz(s, f2));

  const MultislantSpec wrong({SlantBlock{2, 1, {V(1), V(2)}, {}}, SlantBlock{2, 1, {V(3), C(1)}, {}}});
  CHECK_THROWS_AS(strip_strange_block(wrong, f2), InvalidArgument);
}

TEST_CASE("random generator") {
  std::mt19937_64 rng(11);
  const Field f3 = Field::make(3);
  for (const auto& sig : signature_classes(4)) {
    for (int i = 0; i < 10; ++i) {
      GeneratorOptions opts;
      opts.strict = i % 2 == 0;
      const auto m = random_multislant(sig, f3, rng, opts);
      REQUIRE(signature(m, f3) == sig);
      REQUIRE(m.is_square());
      REQUIRE(m.rows() <= opts.dim_max);
      REQUIRE(static_cast<int>(m.variables().size()) <= opts.max_vars);
      if (opts.strict) REQUIRE(m.is_strict());
    }
  }
  CHECK(signature_classes(4).size() == 34);

  std::mt19937_64 a(5), b(5);
  CHECK(random_multislant({1, 1, 1}, f3, a) == random_multislant({1, 1, 1}, f3, b));
  CHECK_THROWS_AS(random_multislant({0, 0, 0}, f3, a), InvalidArgument);
  GeneratorOptions tiny;
  tiny.max_vars = 2;
  CHECK_THROWS_AS(random_multislant({3, 0, 0}, f3, a, tiny), InvalidArgument);
}

TEST_CASE("master formula on random instances, Leibniz oracle") {
  std::mt19937_64 rng(3);
  GeneratorOptions opts;
  opts.dim_max = 5;
  opts.max_vars = 9;
  for (auto q : {2u, 3u, 4u}) {
    const Field f = Field::from_order(q);
    for (const auto& sig : signature_classes(3))
      for (int i = 0; i < 4; ++i) {
        const auto m = random_multislant(sig, f, rng, opts);
        CAPTURE(to_json(m).dump());
        REQUIRE(sipr_by_leibniz(m, f) == theoretical_sipr(sig, q));
      }
  }
}

TEST_CASE("master formula with attic indeterminates repeated inside a block") {
  std::mt19937_64 rng(17);
  GeneratorOptions opts;
  opts.reuse_attic_vars = true;
  opts.attic_var_prob = 0.9;
  opts.max_vars = 14;
  int repeats = 0;
  const Field f = Field::make(2);
  for (const auto& sig : signature_classes(3))
    for (int i = 0; i < 10; ++i) {
      const auto m = random_multislant(sig, f, rng, opts);
      for (const auto& b : m.blocks()) {
        std::set<int> seen;
        for (const auto& e : b.attic)
          if (e.is_var() && !seen.insert(e.var_index()).second) ++repeats;
      }
      CAPTURE(to_json(m).dump());
      REQUIRE(sipr_exact(m, f) == theoretical_sipr(sig, 2));
    }
  CHECK(repeats > 0);
}
