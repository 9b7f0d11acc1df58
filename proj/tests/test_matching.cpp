#include <random>
#include <sstream>

#include "doctest.h"
#include "fairmatch/matching.hpp"
#include "support.hpp"

using namespace fairmatch;

TEST_CASE("top-l picks the single candidate") {
  const auto ds = InteractionDataset::from_pairs(1, 3, {{0, 0}, {0, 1}});
  ScoreMatrix scores(1, 3, {{{2, 0.25}}});
  const auto recs = unconstrained_topl(scores, ds, 1);
  REQUIRE(recs.fill(0) == 1);
  CHECK(recs.picks(0)[0] == 2);
}

TEST_CASE("top-l breaks score ties by ascending item index") {
  const auto ds = InteractionDataset::from_pairs(1, 3, {});
  ScoreMatrix scores(1, 3, {{{0, 0.5}, {1, 0.5}, {2, 0.1}}});
  const auto recs = unconstrained_topl(scores, ds, 2);
  REQUIRE(recs.fill(0) == 2);
  CHECK(recs.picks(0)[0] == 0);
  CHECK(recs.picks(0)[1] == 1);

  // Cross-check against a stable-sort oracle on a tie-heavy row.
  std::mt19937_64 rng(9);
  std::vector<ScoreEntry> row;
  for (std::int32_t j = 0; j < 12; ++j) {
    row.push_back({j, 0.1 + 0.5 * std::floor(testsupport::uniform01(rng) * 4)});
  }
  const auto ds12 = InteractionDataset::from_pairs(1, 12, {{0, 0}});
  // Item 0 is interacted; give it no score.
  std::vector<ScoreEntry> masked(row.begin() + 1, row.end());
  ScoreMatrix wideMasked(1, 12, {masked});
  const auto picked = unconstrained_topl(wideMasked, ds12, 5);
  std::stable_sort(masked.begin(), masked.end(),
                   [](const ScoreEntry& a, const ScoreEntry& b) {
                     return a.value > b.value;  // stable keeps index order
                   });
  for (std::int32_t k = 0; k < 5; ++k) {
    CHECK(picked.picks(0)[static_cast<std::size_t>(k)] ==
          masked[static_cast<std::size_t>(k)].item);
  }
}

TEST_CASE("top-l truncates when candidates run out") {
  const auto ds = InteractionDataset::from_pairs(1, 4, {{0, 0}});
  ScoreMatrix scores(1, 4, {{{1, 0.3}, {3, 0.2}}});
  const auto recs = unconstrained_topl(scores, ds, 3);
  CHECK(recs.fill(0) == 2);
  CHECK(recs.underfill_total() == 1);
}

TEST_CASE("greedy hand trace: contested item goes to the larger score") {
  // u1: A=0.6 B=0.5; u2: A=0.55 B=0.05; l=1, stocks (1,1).
  const auto ds = InteractionDataset::from_pairs(2, 2, {});
  ScoreMatrix scores(2, 2, {{{0, 0.6}, {1, 0.5}}, {{0, 0.55}, {1, 0.05}}});
  StockVector stocks{{1, 1}, 2, 1};
  const auto recs = greedy_match(scores, ds, 1, stocks);
  REQUIRE(recs.fill(0) == 1);
  REQUIRE(recs.fill(1) == 1);
  CHECK(recs.picks(0)[0] == 0);  // u1 takes A
  CHECK(recs.picks(1)[0] == 1);  // u2 falls back to B
  const double total = scores.value_at(0, recs.picks(0)[0]) +
                       scores.value_at(1, recs.picks(1)[0]);
  CHECK(total == doctest::Approx(0.65).epsilon(1e-12));
}

TEST_CASE("greedy with slack stocks reduces to top-l") {
  const auto ds = InteractionDataset::from_pairs(1, 3, {});
  ScoreMatrix scores(1, 3, {{{0, 0.7}, {1, 0.2}, {2, 0.1}}});
  StockVector stocks{{5, 5, 5}, 1, 2};
  const auto greedy = greedy_match(scores, ds, 2, stocks);
  const auto topl = unconstrained_topl(scores, ds, 2);
  REQUIRE(greedy.fill(0) == 2);
  CHECK(greedy.picks(0)[0] == topl.picks(0)[0]);
  CHECK(greedy.picks(0)[1] == topl.picks(0)[1]);
}

TEST_CASE("greedy with zero stocks reports full underfill") {
  const auto ds = InteractionDataset::from_pairs(2, 2, {});
  ScoreMatrix scores(2, 2, {{{0, 0.6}}, {{1, 0.4}}});
  StockVector stocks{{0, 0}, 2, 1};
  const auto recs = greedy_match(scores, ds, 1, stocks);
  CHECK(recs.pick_count() == 0);
  CHECK(recs.underfill_total() == 2);
}

TEST_CASE("greedy respects both constraint families") {
  std::mt19937_64 rng(15);
  for (int round = 0; round < 300; ++round) {
    const auto inst = testsupport::random_instance(rng);
    const auto recs = greedy_match(inst.normalized, inst.dataset,
                                   inst.list_length, inst.stocks);
    for (std::int32_t i = 0; i < recs.user_count(); ++i) {
      CHECK(recs.fill(i) <= inst.list_length);
      // No duplicates, no interacted items.
      auto picks = recs.picks(i);
      for (std::size_t a = 0; a < picks.size(); ++a) {
        CHECK(!inst.dataset.has_interaction(i, picks[a]));
        for (std::size_t b = a + 1; b < picks.size(); ++b) {
          CHECK(picks[a] != picks[b]);
        }
      }
    }
    const auto counts = recs.item_counts();
    for (std::size_t j = 0; j < counts.size(); ++j) {
      CHECK(counts[j] <= inst.stocks.q[j]);
    }
  }
}

TEST_CASE("greedy equals top-l row-by-row under slack stocks") {
  std::mt19937_64 rng(16);
  for (int round = 0; round < 100; ++round) {
    const auto inst = testsupport::random_instance(rng);
    StockVector slack;
    slack.user_count = inst.stocks.user_count;
    slack.list_length = inst.list_length;
    slack.q.assign(inst.stocks.q.size(),
                   static_cast<std::int64_t>(inst.dataset.user_count()) *
                       inst.list_length);
    const auto greedy =
        greedy_match(inst.normalized, inst.dataset, inst.list_length, slack);
    const auto topl =
        unconstrained_topl(inst.normalized, inst.dataset, inst.list_length);
    for (std::int32_t i = 0; i < greedy.user_count(); ++i) {
      REQUIRE(greedy.fill(i) == topl.fill(i));
      const auto a = greedy.picks(i);
      const auto b = topl.picks(i);
      CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
    }
  }
}

TEST_CASE("greedy is deterministic") {
  std::mt19937_64 rng(17);
  const auto inst = testsupport::random_instance(rng);
  const auto a = greedy_match(inst.normalized, inst.dataset, inst.list_length,
                              inst.stocks);
  const auto b = greedy_match(inst.normalized, inst.dataset, inst.list_length,
                              inst.stocks);
  for (std::int32_t i = 0; i < a.user_count(); ++i) {
    const auto pa = a.picks(i);
    const auto pb = b.picks(i);
    CHECK(std::equal(pa.begin(), pa.end(), pb.begin(), pb.end()));
  }
}

TEST_CASE("recommendation export uses external ids") {
  const auto ds = InteractionDataset::from_pairs(2, 2, {}, {700, 800}, {41, 42});
  ScoreMatrix scores(2, 2, {{{0, 0.9}, {1, 0.4}}, {{1, 0.8}}});
  const auto recs = unconstrained_topl(scores, ds, 2);
  std::ostringstream out;
  write_recommendations(recs, ds, out);
  CHECK(out.str() == "700: 41,42\n800: 42\n");
}
