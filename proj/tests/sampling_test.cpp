#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "dynpr/ranked_id_set.hpp"
#include "dynpr/sampling.hpp"

using namespace dynpr;

TEST_CASE("binomial draws have the right mean and variance") {
  Rng rng(3);
  struct Case {
    std::uint64_t n;
    double p;
  };
  for (Case c : {Case{1, 0.5}, Case{10, 0.1}, Case{200, 0.05}, Case{1000, 0.3},
                 Case{50, 0.9}, Case{100000, 0.001}}) {
    const int draws = 40000;
    double sum = 0, sq = 0;
    for (int k = 0; k < draws; ++k) {
      const double x = static_cast<double>(draw_binomial(c.n, c.p, rng));
      CHECK(x <= c.n);
      sum += x;
      sq += x * x;
    }
    const double mean = sum / draws;
    const double var = sq / draws - mean * mean;
    const double want_mean = c.n * c.p;
    const double want_var = c.n * c.p * (1 - c.p);
    CHECK(std::abs(mean - want_mean) < 5 * std::sqrt(want_var / draws));
    CHECK(var == doctest::Approx(want_var).epsilon(0.05));
  }
  CHECK(draw_binomial(0, 0.5, rng) == 0);
  CHECK(draw_binomial(7, 0.0, rng) == 0);
  CHECK(draw_binomial(7, 1.0, rng) == 7);
}

TEST_CASE("Binomial(1, 1/2) fires half the time") {
  Rng rng(9);
  int hits = 0;
  for (int k = 0; k < 100000; ++k) hits += static_cast<int>(draw_binomial(1, 0.5, rng));
  CHECK(std::abs(hits / 100000.0 - 0.5) < 0.01);
}

TEST_CASE("distinct ranks are distinct, in range and uniform") {
  Rng rng(5);
  std::vector<int> seen(11, 0);
  for (int k = 0; k < 20000; ++k) {
    auto ranks = draw_distinct_ranks(10, 3, rng);
    REQUIRE(ranks.size() == 3);
    std::set<std::uint64_t> unique(ranks.begin(), ranks.end());
    CHECK(unique.size() == 3);
    for (auto r : ranks) {
      CHECK(r >= 1);
      CHECK(r <= 10);
      ++seen[r];
    }
  }
  // each rank appears with probability 3/10 per draw
  for (int r = 1; r <= 10; ++r) CHECK(std::abs(seen[r] / 20000.0 - 0.3) < 0.02);
  CHECK(draw_distinct_ranks(4, 9, rng).size() == 4);
  CHECK(draw_distinct_ranks(4, 0, rng).empty());
  auto huge = draw_distinct_ranks(1ULL << 40, 5, rng);
  CHECK(std::set<std::uint64_t>(huge.begin(), huge.end()).size() == 5);
}

TEST_CASE("ranked id set selects by rank") {
  RankedIdSet set;
  for (std::uint32_t id : {9u, 3u, 7u}) set.insert(id);
  CHECK(set.size() == 3);
  CHECK(set.select(2) == 7);
  set.erase(7);
  CHECK(set.select(2) == 9);
  CHECK_THROWS_AS(set.select(3), std::out_of_range);
  CHECK_THROWS_AS(set.select(0), std::out_of_range);
  RankedIdSet single;
  single.insert(42);
  CHECK(single.select(1) == 42);
}

TEST_CASE("operation counter counts tree calls, not elements") {
  RankedIdSet set;
  Rng rng(1);
  for (std::uint32_t id = 0; id < 1 << 16; ++id) set.insert(id * 2654435761u);
  const auto before = RankedIdSet::operation_count();
  std::uniform_int_distribution<std::size_t> pick(1, set.size());
  for (int k = 0; k < 1000; ++k) set.select(pick(rng));
  CHECK(RankedIdSet::operation_count() - before == 1000);
}
