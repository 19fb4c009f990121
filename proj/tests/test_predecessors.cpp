#include <doctest.h>

#include <map>

#include "ducci/error.hpp"
#include "ducci/predecessors.hpp"
#include "oracle.hpp"

using namespace ducci;

namespace {

Tuple T(std::uint64_t m, std::vector<Residue> e) { return Tuple(Modulus(m), std::move(e)); }

}  // namespace

TEST_SUITE("predecessors") {

TEST_CASE("worked example") {
  const PredecessorSet p = predecessors(T(4, {3, 0, 3}));
  CHECK(p.count == 2);
  CHECK(p.listed);
  CHECK(p.solutions == std::vector<Tuple>{T(4, {1, 2, 2}), T(4, {3, 0, 0})});
}

TEST_CASE("basic tuple with m and n odd") {
  for (std::uint64_t m : {3u, 5u, 9u, 15u}) {
    for (std::size_t n : {1u, 3u, 5u, 7u}) {
      // ((m+1)/2, (m-1)/2, (m+1)/2, ..., (m-1)/2, (m+1)/2), alternating.
      std::vector<Residue> want(n);
      for (std::size_t i = 0; i < n; ++i) {
        want[i] = static_cast<Residue>(i % 2 == 0 ? (m + 1) / 2 : (m - 1) / 2);
      }
      const PredecessorSet p = predecessors(Tuple::basic(Modulus(m), n));
      CAPTURE(m);
      CAPTURE(n);
      REQUIRE(p.count == 1);
      CHECK(p.solutions.front() == Tuple(Modulus(m), want));
    }
  }
}

TEST_CASE("basic tuple in Z_4^3 has no predecessor") {
  CHECK(predecessors(T(4, {0, 0, 1})).count == 0);
  CHECK(preimages_by_scan(T(4, {0, 0, 1}), 1000).empty());
  CHECK_FALSE(has_predecessor(T(4, {0, 0, 1})));
  CHECK(has_predecessor(T(4, {3, 0, 3})));
  CHECK(has_predecessor(T(4, {0, 0, 0})));
  CHECK(predecessors(T(4, {0, 0, 0})).solutions.front() == T(4, {0, 0, 0}));
}

TEST_CASE("even sum count") {
  CHECK(even_sum_count(Modulus(4), 3) == 32);
  CHECK(even_sum_count(Modulus(2), 1) == 1);
  CHECK(even_sum_count(Modulus(2), 3) == 4);
  CHECK_THROWS_AS(even_sum_count(Modulus(3), 3), HypothesisError);
}

TEST_CASE("n even: none or m solutions") {
  const PredecessorSet p = predecessors(T(6, {1, 2, 3, 0}));
  // Alternating sum 1 - 2 + 3 - 0 = 2, not 0: no solution.
  CHECK(p.count == 0);
  const PredecessorSet q = predecessors(T(6, {1, 2, 3, 2}));
  CHECK(q.count == 6);
  CHECK(q.solutions.size() == 6);
  for (const Tuple& y : q.solutions) CHECK(ducci_step(y) == T(6, {1, 2, 3, 2}));

  const PredecessorSet capped = predecessors(T(6, {1, 2, 3, 2}), 5);
  CHECK(capped.count == 6);
  CHECK_FALSE(capped.listed);
  CHECK(capped.solutions.empty());
}

TEST_CASE("solver equals the exhaustive inverse image") {
  for (std::uint64_t m = 2; m <= 12; ++m) {
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto all = oracle::all_tuples(m, n);
      if (all.size() > 100'000) continue;
      std::map<oracle::Vec, std::vector<oracle::Vec>> inverse;
      for (const auto& y : all) inverse[oracle::step(y, m)].push_back(y);
      for (const auto& x : all) {
        const PredecessorSet p = predecessors(oracle::to_tuple(x, m), 1'000'000);
        const auto& want = inverse[x];  // lexicographic by construction
        REQUIRE(p.count == want.size());
        REQUIRE(p.solutions.size() == want.size());
        for (std::size_t i = 0; i < want.size(); ++i) {
          REQUIRE(oracle::entries(p.solutions[i]) == want[i]);
        }
      }
    }
  }
}

TEST_CASE("theorem harness") {
  for (auto [m, n] : {std::pair<std::uint64_t, std::size_t>{4, 3}, {2, 5}, {6, 3}, {3, 3}, {5, 3},
                      {8, 3}, {6, 4}}) {
    const PredecessorReport r = verify_predecessor_theorems(Modulus(m), n, 1u << 20);
    CAPTURE(m);
    CAPTURE(n);
    CHECK(r.ok());
    CHECK(r.tuples_checked == space_size(Modulus(m), n));
    CHECK(r.total_predecessors == r.tuples_checked);
    if (m % 2 == 0) CHECK(r.even_sum_measured == r.even_sum_formula);
  }
  const PredecessorReport over = verify_predecessor_theorems(Modulus(10), 7, 1000);
  CHECK(over.budget_exceeded);
  CHECK_FALSE(over.ok());
}

}  // TEST_SUITE
