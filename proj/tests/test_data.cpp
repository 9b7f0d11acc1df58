#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fairmatch/data.hpp"
#include "support.hpp"

using namespace fairmatch;

TEST_CASE("parse_ratings reads tab-separated lines") {
  std::istringstream in("1\t32\t4\t978300760\n");
  const auto events = parse_ratings(in, RatingFormat::kTab);
  REQUIRE(events.size() == 1);
  CHECK(events[0].user == 1);
  CHECK(events[0].item == 32);
  CHECK(events[0].rating == 4);
  CHECK(events[0].timestamp == 978300760);
}

TEST_CASE("parse_ratings reads double-colon lines") {
  std::istringstream in("1::32::4::978300760\n");
  const auto events = parse_ratings(in, RatingFormat::kDoubleColon);
  REQUIRE(events.size() == 1);
  CHECK(events[0].user == 1);
  CHECK(events[0].item == 32);
  CHECK(events[0].rating == 4);
  CHECK(events[0].timestamp == 978300760);
}

TEST_CASE("parse_ratings on an empty stream yields an empty list") {
  std::istringstream in("");
  CHECK(parse_ratings(in, RatingFormat::kTab).empty());
}

TEST_CASE("parse_ratings rejects malformed lines with the line number") {
  SUBCASE("wrong field count") {
    std::istringstream in("1\t2\t3\t4\n1\t2\t3\n");
    try {
      parse_ratings(in, RatingFormat::kTab);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line_number() == 2);
    }
  }
  SUBCASE("non-integer field") {
    std::istringstream in("1\tabc\t3\t4\n");
    CHECK_THROWS_AS(parse_ratings(in, RatingFormat::kTab), ParseError);
  }
  SUBCASE("rating out of range") {
    std::istringstream in("1\t2\t9\t4\n");
    CHECK_THROWS_AS(parse_ratings(in, RatingFormat::kTab), ParseError);
  }
}

TEST_CASE("build_interactions collapses duplicates") {
  const std::vector<RatingEvent> events = {
      {1, 7, 5, 10}, {1, 7, 4, 20}};
  const auto ds = build_interactions(events, 3);
  CHECK(ds.user_count() == 1);
  CHECK(ds.item_count() == 1);
  CHECK(ds.interaction_count() == 1);
  CHECK(ds.has_interaction(0, 0));
}

TEST_CASE("build_interactions drops sub-threshold ratings and can empty out") {
  const std::vector<RatingEvent> events = {{1, 7, 2, 10}};
  CHECK_THROWS_AS(build_interactions(events, 3), DataError);
}

TEST_CASE("build_interactions computes degrees") {
  const std::vector<RatingEvent> events = {
      {1, 100, 3, 0}, {1, 200, 5, 1}, {2, 200, 4, 2}};
  const auto ds = build_interactions(events, 3);
  REQUIRE(ds.user_count() == 2);
  REQUIRE(ds.item_count() == 2);
  const auto u1 = *ds.lookup_user(1);
  const auto u2 = *ds.lookup_user(2);
  const auto v2 = *ds.lookup_item(200);
  CHECK(ds.user_degrees()[u1] == 2);
  CHECK(ds.user_degrees()[u2] == 1);
  CHECK(ds.item_degrees()[v2] == 2);
}

TEST_CASE("temporal_split takes the early fraction") {
  std::vector<RatingEvent> events;
  for (int t = 10; t >= 1; --t) events.push_back({t, t, 5, t});
  const auto [train, probe] = temporal_split(events, 0.8);
  REQUIRE(train.size() == 8);
  REQUIRE(probe.size() == 2);
  for (std::size_t k = 0; k < train.size(); ++k) {
    CHECK(train[k].timestamp == static_cast<std::int64_t>(k + 1));
  }
  CHECK(probe[0].timestamp == 9);
  CHECK(probe[1].timestamp == 10);
}

TEST_CASE("temporal_split floors the train count") {
  std::vector<RatingEvent> events;
  for (int t = 1; t <= 5; ++t) events.push_back({t, t, 5, t});
  const auto [train, probe] = temporal_split(events, 0.8);
  CHECK(train.size() == 4);
  CHECK(probe.size() == 1);
}

TEST_CASE("temporal_split breaks timestamp ties by input order") {
  std::vector<RatingEvent> events;
  for (int k = 0; k < 10; ++k) events.push_back({k, k, 5, 42});
  const auto [train, probe] = temporal_split(events, 0.8);
  REQUIRE(train.size() == 8);
  for (int k = 0; k < 8; ++k) CHECK(train[static_cast<std::size_t>(k)].user == k);
  CHECK(probe[0].user == 8);
  CHECK(probe[1].user == 9);

  // Any permutation of equal-timestamp events keeps its own input order.
  std::mt19937_64 rng(5);
  std::shuffle(events.begin(), events.end(), rng);
  const auto [train2, probe2] = temporal_split(events, 0.8);
  for (std::size_t k = 0; k < train2.size(); ++k) {
    CHECK(train2[k].user == events[k].user);
  }
}

TEST_CASE("temporal_split rejects undersized input and bad ratios") {
  std::vector<RatingEvent> one = {{1, 1, 5, 1}};
  CHECK_THROWS_AS(temporal_split(one, 0.8), DataError);
  std::vector<RatingEvent> two = {{1, 1, 5, 1}, {2, 2, 5, 2}};
  CHECK_THROWS_AS(temporal_split(two, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(temporal_split(two, 1.0), std::invalid_argument);
}

TEST_CASE("split partitions: sizes add up and time ordering holds") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 20; ++round) {
    std::vector<RatingEvent> events;
    const int count = 2 + static_cast<int>(rng() % 50);
    for (int k = 0; k < count; ++k) {
      events.push_back({k, k, 5, static_cast<std::int64_t>(rng() % 100)});
    }
    const auto [train, probe] = temporal_split(events, 0.8);
    CHECK(train.size() + probe.size() == events.size());
    if (!train.empty() && !probe.empty()) {
      CHECK(train.back().timestamp <= probe.front().timestamp);
    }
  }
}

TEST_CASE("degree sums both equal the interaction count") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 20; ++round) {
    const auto inst = testsupport::random_instance(rng);
    const auto& ds = inst.dataset;
    std::int64_t user_sum = 0, item_sum = 0;
    for (auto d : ds.user_degrees()) user_sum += d;
    for (auto d : ds.item_degrees()) item_sum += d;
    CHECK(user_sum == ds.interaction_count());
    CHECK(item_sum == ds.interaction_count());
    for (std::int32_t i = 0; i < ds.user_count(); ++i) {
      CHECK(std::ssize(ds.items_of(i)) == ds.user_degrees()[static_cast<std::size_t>(i)]);
    }
  }
}

TEST_CASE("ratings round trip reproduces the adjacency") {
  const std::vector<RatingEvent> events = {
      {5, 100, 4, 1}, {5, 300, 3, 2}, {9, 100, 5, 3}, {2, 200, 4, 4}};
  const auto ds = build_interactions(events, 3);

  std::ostringstream serialized;
  serialize_as_ratings(ds, serialized);
  std::istringstream in(serialized.str());
  const auto rebuilt = build_interactions(parse_ratings(in, RatingFormat::kTab), 3);

  REQUIRE(rebuilt.user_count() == ds.user_count());
  REQUIRE(rebuilt.item_count() == ds.item_count());
  for (std::int32_t i = 0; i < ds.user_count(); ++i) {
    for (std::int32_t v : ds.items_of(i)) {
      const auto ru = rebuilt.lookup_user(ds.user_id(i));
      const auto rv = rebuilt.lookup_item(ds.item_id(v));
      REQUIRE(ru.has_value());
      REQUIRE(rv.has_value());
      CHECK(rebuilt.has_interaction(*ru, *rv));
    }
  }
  CHECK(rebuilt.interaction_count() == ds.interaction_count());
}

TEST_CASE("dataset cache round trip") {
  std::mt19937_64 rng(31);
  const auto inst = testsupport::random_instance(rng);
  std::ostringstream cache;
  write_dataset_cache(inst.dataset, cache);
  std::istringstream in(cache.str());
  const auto rebuilt = read_dataset_cache(in);
  REQUIRE(rebuilt.user_count() == inst.dataset.user_count());
  REQUIRE(rebuilt.item_count() == inst.dataset.item_count());
  CHECK(rebuilt.interaction_count() == inst.dataset.interaction_count());
  for (std::int32_t i = 0; i < rebuilt.user_count(); ++i) {
    const auto a = rebuilt.items_of(i);
    const auto b = inst.dataset.items_of(i);
    CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
  }
}

TEST_CASE("make_corpus keeps probe-only users in the id space") {
  std::vector<RatingEvent> events = {
      {1, 10, 5, 1}, {1, 11, 4, 2}, {2, 10, 4, 3}, {2, 11, 5, 4},
      {3, 12, 5, 100},  // late: probe-only user and item
  };
  const auto corpus = make_corpus(events, 3, 0.8);
  CHECK(corpus.train.user_count() == 3);
  CHECK(corpus.train.item_count() == 3);
  const auto u3 = corpus.train.lookup_user(3);
  REQUIRE(u3.has_value());
  CHECK(corpus.train.user_degrees()[static_cast<std::size_t>(*u3)] == 0);
  CHECK(corpus.probe_items[static_cast<std::size_t>(*u3)].size() == 1);
  CHECK(corpus.probe_pairs == 1);
}

TEST_CASE("make_corpus collapses duplicates to the earliest timestamp") {
  // The duplicate pair (1,10) reappears late; collapsing to the earliest
  // timestamp must keep it in train, not probe.
  std::vector<RatingEvent> events = {
      {1, 10, 5, 1},  {2, 11, 4, 2},  {1, 11, 4, 3},  {2, 10, 3, 4},
      {1, 12, 4, 5},  {1, 10, 4, 999},
  };
  const auto corpus = make_corpus(events, 3, 0.8);
  // 5 unique pairs -> 4 train, 1 probe.
  CHECK(corpus.train.interaction_count() == 4);
  CHECK(corpus.probe_pairs == 1);
  const auto u1 = *corpus.train.lookup_user(1);
  const auto v10 = *corpus.train.lookup_item(10);
  CHECK(corpus.train.has_interaction(u1, v10));
}
