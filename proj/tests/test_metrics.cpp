#include <cmath>
#include <random>

#include "doctest.h"
#include "fairmatch/metrics.hpp"
#include "fairmatch/reference.hpp"
#include "support.hpp"

using namespace fairmatch;

namespace {

RecommendationMatrix recs_of(std::int32_t m, std::int32_t n, std::int32_t l,
                             std::vector<std::vector<std::int32_t>> picks) {
  return RecommendationMatrix(m, n, l, std::move(picks));
}

}  // namespace

TEST_CASE("precision: direct counting") {
  const auto recs = recs_of(1, 4, 2, {{1, 2}});
  CHECK(precision(recs, {{2}}, 2) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("precision: zero hits") {
  const auto recs = recs_of(2, 4, 2, {{0, 1}, {2}});
  CHECK(precision(recs, {{3}, {3}}, 2) == 0.0);
}

TEST_CASE("precision averages over probe users only") {
  // Per-user precisions 0.5 and 0.0; the probe-less third user is excluded.
  const auto recs = recs_of(3, 4, 2, {{0, 1}, {2, 3}, {0, 1}});
  CHECK(precision(recs, {{1}, {0}, {}}, 2) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("precision with an empty probe set is an error") {
  const auto recs = recs_of(1, 4, 2, {{0}});
  CHECK_THROWS_AS(precision(recs, {{}}, 2), EvalError);
}

TEST_CASE("aggregate diversity counts covered items") {
  CHECK(aggregate_diversity(recs_of(3, 4, 2, {{0, 1}, {1}, {0}})) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(aggregate_diversity(recs_of(2, 4, 2, {{}, {}})) == 0.0);
  CHECK(aggregate_diversity(recs_of(2, 2, 1, {{0}, {1}})) == 1.0);
}

TEST_CASE("exposure fairness extremes and the hand case") {
  // Uniform counts: G = 1 exactly.
  CHECK(exposure_fairness(recs_of(3, 3, 1, {{0}, {1}, {2}})) == 1.0);
  // Total concentration: G = 0 exactly.
  CHECK(exposure_fairness(recs_of(3, 3, 1, {{1}, {1}, {1}})) == 0.0);
  // Counts (1,1,2) -> 0.75.
  CHECK(exposure_fairness(recs_of(2, 3, 2, {{0, 2}, {1, 2}})) ==
        doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("exposure fairness needs two items and one pick") {
  CHECK_THROWS_AS(exposure_fairness(recs_of(1, 1, 1, {{0}})), EvalError);
  CHECK_THROWS_AS(exposure_fairness(recs_of(1, 3, 1, {{}})), EvalError);
}

TEST_CASE("score gini hand cases") {
  const auto ds = InteractionDataset::from_pairs(1, 3, {});
  SUBCASE("equal in-list scores are perfectly fair") {
    ScoreMatrix scores(1, 3, {{{0, 0.2}, {1, 0.2}, {2, 0.2}}});
    CHECK(score_gini(recs_of(1, 3, 3, {{0, 1, 2}}), scores) == 1.0);
  }
  SUBCASE("scores (1,1,2) give 0.75") {
    ScoreMatrix scores(1, 3, {{{0, 1.0}, {1, 1.0}, {2, 2.0}}});
    CHECK(score_gini(recs_of(1, 3, 3, {{0, 1, 2}}), scores) ==
          doctest::Approx(0.75).epsilon(1e-15));
  }
  SUBCASE("a single pick is a one-element distribution") {
    ScoreMatrix scores(1, 3, {{{1, 0.4}}});
    CHECK(score_gini(recs_of(1, 3, 1, {{1}}), scores) == 1.0);
  }
  SUBCASE("all-zero collected scores are an error") {
    ScoreMatrix scores(1, 3, {{{0, 0.5}}});
    CHECK_THROWS_AS(score_gini(recs_of(1, 3, 2, {{1, 2}}), scores), EvalError);
  }
}

TEST_CASE("rank formula agrees with the mean-absolute-difference form") {
  std::mt19937_64 rng(55);
  for (int round = 0; round < 200; ++round) {
    const auto n = testsupport::uniform_int(rng, 2, 60);
    std::vector<double> masses(static_cast<std::size_t>(n));
    bool positive = false;
    for (auto& x : masses) {
      x = std::floor(testsupport::uniform01(rng) * 20.0);
      positive |= x > 0.0;
    }
    if (!positive) masses[0] = 1.0;
    const double by_rank = gini_complement(masses);
    const double by_mad = reference::gini_complement_mad(masses);
    CHECK(std::abs(by_rank - by_mad) < 1e-9);
  }
}

TEST_CASE("exposure fairness is invariant to item relabeling and count scaling") {
  std::mt19937_64 rng(56);
  for (int round = 0; round < 50; ++round) {
    const auto n = testsupport::uniform_int(rng, 2, 30);
    std::vector<double> masses(static_cast<std::size_t>(n));
    bool positive = false;
    for (auto& x : masses) {
      x = std::floor(testsupport::uniform01(rng) * 10.0);
      positive |= x > 0.0;
    }
    if (!positive) masses[0] = 2.0;

    auto shuffled = masses;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(gini_complement(shuffled) ==
          doctest::Approx(gini_complement(masses)).epsilon(1e-12));

    auto scaled = masses;
    for (auto& x : scaled) x *= 7.0;
    CHECK(gini_complement(scaled) ==
          doctest::Approx(gini_complement(masses)).epsilon(1e-12));
  }
}

TEST_CASE("all metrics stay within [0,1] on random matching output") {
  std::mt19937_64 rng(57);
  for (int round = 0; round < 100; ++round) {
    const auto inst = testsupport::random_instance(rng);
    const auto recs = greedy_match(inst.normalized, inst.dataset,
                                   inst.list_length, inst.stocks);
    if (recs.pick_count() == 0 || recs.item_count() < 2) continue;
    const auto g = exposure_fairness(recs);
    CHECK(g >= 0.0);
    CHECK(g <= 1.0);
    const auto d = aggregate_diversity(recs);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
    std::vector<std::vector<std::int32_t>> probe(
        static_cast<std::size_t>(recs.user_count()));
    probe[0].push_back(0);
    const auto p = precision(recs, probe, inst.list_length);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
}
