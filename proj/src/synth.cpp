#include "fairmatch/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <random>
#include <vector>

namespace fairmatch::synth {

namespace {

// Distribution transforms are hand-rolled on top of the raw engine so a
// given seed yields the same corpus on every standard library.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::int64_t uniform_below(std::mt19937_64& rng, std::int64_t bound) {
  return static_cast<std::int64_t>(uniform01(rng) * static_cast<double>(bound));
}

// Samples an index from cumulative weights via inverse transform.
std::int32_t sample_cdf(std::mt19937_64& rng, const std::vector<double>& cdf) {
  const double u = uniform01(rng) * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<std::int32_t>(std::min<std::ptrdiff_t>(
      it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
}

std::vector<double> zipf_weights(std::int32_t count, double exponent,
                                 std::mt19937_64& rng) {
  std::vector<double> weights(static_cast<std::size_t>(count));
  for (std::int32_t r = 0; r < count; ++r) {
    weights[static_cast<std::size_t>(r)] = 1.0 / std::pow(static_cast<double>(r + 1), exponent);
  }
  // Shuffle so ids do not encode the popularity rank.
  for (std::int32_t k = count - 1; k > 0; --k) {
    const auto other = static_cast<std::int32_t>(uniform_below(rng, k + 1));
    std::swap(weights[static_cast<std::size_t>(k)], weights[static_cast<std::size_t>(other)]);
  }
  return weights;
}

}  // namespace

void generate_ratings(const CorpusConfig& config, std::ostream& out) {
  std::mt19937_64 rng(config.seed);
  const std::int32_t m = config.users;
  const std::int32_t n = config.items;
  const std::int32_t genres = std::max(1, config.genres);

  const auto popularity = zipf_weights(n, config.item_zipf, rng);
  std::vector<std::int32_t> item_genre(static_cast<std::size_t>(n));
  for (std::int32_t j = 0; j < n; ++j) {
    item_genre[static_cast<std::size_t>(j)] =
        static_cast<std::int32_t>(uniform_below(rng, genres));
  }
  std::vector<std::vector<std::int32_t>> genre_items(static_cast<std::size_t>(genres));
  for (std::int32_t j = 0; j < n; ++j) {
    genre_items[static_cast<std::size_t>(item_genre[static_cast<std::size_t>(j)])].push_back(j);
  }

  // Per-user activity: Zipf weights normalized to the requested event count.
  const auto activity = zipf_weights(m, config.user_zipf, rng);
  const double activity_sum = std::accumulate(activity.begin(), activity.end(), 0.0);
  std::vector<std::int32_t> events_per_user(static_cast<std::size_t>(m));
  for (std::int32_t i = 0; i < m; ++i) {
    const double share = activity[static_cast<std::size_t>(i)] / activity_sum *
                         static_cast<double>(config.events);
    events_per_user[static_cast<std::size_t>(i)] =
        std::max<std::int32_t>(3, static_cast<std::int32_t>(std::llround(share)));
  }

  std::vector<char> rated(static_cast<std::size_t>(n), 0);
  std::vector<std::int32_t> rated_items;
  std::vector<double> cdf;
  char line[96];

  for (std::int32_t i = 0; i < m; ++i) {
    // Three preferred genres with descending affinity.
    std::int32_t pref[3];
    pref[0] = static_cast<std::int32_t>(uniform_below(rng, genres));
    pref[1] = static_cast<std::int32_t>(uniform_below(rng, genres));
    pref[2] = static_cast<std::int32_t>(uniform_below(rng, genres));
    const double pref_cut[2] = {0.60, 0.87};

    const std::int32_t count = std::min<std::int32_t>(
        events_per_user[static_cast<std::size_t>(i)], n - 1);
    for (std::int32_t k = 0; k < count; ++k) {
      const double progress =
          count > 1 ? static_cast<double>(k) / static_cast<double>(count - 1) : 0.0;
      // Popularity pull decays over a user's own timeline: early picks chase
      // blockbusters, later ones drift into the niche catalog.
      const double pop_bias = config.early_pop_bias +
                              (config.late_pop_bias - config.early_pop_bias) * progress;

      std::int32_t genre;
      bool in_pref = uniform01(rng) < config.genre_loyalty;
      if (in_pref) {
        const double which = uniform01(rng);
        genre = which < pref_cut[0] ? pref[0] : (which < pref_cut[1] ? pref[1] : pref[2]);
      } else {
        genre = static_cast<std::int32_t>(uniform_below(rng, genres));
      }
      const auto& pool = genre_items[static_cast<std::size_t>(genre)];
      if (pool.empty()) continue;

      cdf.clear();
      double acc = 0.0;
      for (std::int32_t j : pool) {
        if (!rated[static_cast<std::size_t>(j)]) {
          acc += std::pow(popularity[static_cast<std::size_t>(j)], pop_bias);
        }
        cdf.push_back(acc);
      }
      if (acc <= 0.0) continue;  // genre exhausted for this user

      const auto pick_pos = sample_cdf(rng, cdf);
      const std::int32_t item = pool[static_cast<std::size_t>(pick_pos)];
      if (rated[static_cast<std::size_t>(item)]) continue;
      rated[static_cast<std::size_t>(item)] = 1;
      rated_items.push_back(item);

      // Preferred-genre picks rate high; off-genre picks are noisier.
      const double roll = uniform01(rng);
      int rating;
      if (in_pref) {
        rating = roll < 0.38 ? 5 : (roll < 0.72 ? 4 : (roll < 0.92 ? 3 : (roll < 0.98 ? 2 : 1)));
      } else {
        rating = roll < 0.15 ? 5 : (roll < 0.40 ? 4 : (roll < 0.70 ? 3 : (roll < 0.90 ? 2 : 1)));
      }

      // A user's k-th pick lands at the matching fraction of the horizon,
      // jittered, so the temporal split cuts late-period activity globally.
      const double when = std::clamp(progress + (uniform01(rng) - 0.5) * 0.12, 0.0, 1.0);
      const auto timestamp = static_cast<std::int64_t>(
          when * static_cast<double>(config.horizon - 1));

      std::snprintf(line, sizeof line, "%d\t%d\t%d\t%lld\n", i + 1, item + 1, rating,
                    static_cast<long long>(timestamp));
      out << line;
    }
    for (std::int32_t j : rated_items) rated[static_cast<std::size_t>(j)] = 0;
    rated_items.clear();
  }
}

}  // namespace fairmatch::synth
