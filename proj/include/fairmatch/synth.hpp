#pragma once

#include <cstdint>
#include <iosfwd>

namespace fairmatch::synth {

// Knobs for the synthetic rating log. Defaults approximate a ~100K-event
// movie-rating corpus: power-law item popularity, genre-clustered user
// tastes, and a per-user drift from popular toward niche items over time so
// the temporal probe period is less popularity-concentrated than training.
struct CorpusConfig {
  std::int32_t users = 943;
  std::int32_t items = 1682;
  std::int64_t events = 100000;
  std::int32_t genres = 12;
  double item_zipf = 0.95;        // popularity weight ~ 1/rank^item_zipf
  double user_zipf = 0.55;        // activity weight ~ 1/rank^user_zipf
  double early_pop_bias = 1.3;    // popularity exponent at a user's first pick
  double late_pop_bias = 0.25;    // ... and at the last pick
  double genre_loyalty = 0.86;    // chance a pick comes from a preferred genre
  std::int64_t horizon = 86400 * 365;  // timestamp range in seconds
  std::uint64_t seed = 411;
};

// Emits tab-separated "user item rating timestamp" lines, deterministically
// for a given config.
void generate_ratings(const CorpusConfig& config, std::ostream& out);

}  // namespace fairmatch::synth
