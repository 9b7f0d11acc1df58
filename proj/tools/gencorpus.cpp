// Deterministic synthetic rating-log generator: power-law item popularity,
// genre-clustered users, and a popular-to-niche drift over each user's
// timeline. Used to exercise the pipeline at movie-corpus scale without
// shipping a corpus.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fairmatch/synth.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic tab-separated rating log"};

  fairmatch::synth::CorpusConfig config;
  std::string out_path = "ratings.dat";
  app.add_option("--users", config.users)->check(CLI::PositiveNumber);
  app.add_option("--items", config.items)->check(CLI::PositiveNumber);
  app.add_option("--events", config.events)->check(CLI::PositiveNumber);
  app.add_option("--genres", config.genres)->check(CLI::PositiveNumber);
  app.add_option("--item-zipf", config.item_zipf);
  app.add_option("--user-zipf", config.user_zipf);
  app.add_option("--seed", config.seed);
  app.add_option("--out", out_path, "output file");

  CLI11_PARSE(app, argc, argv);

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot open " << out_path << '\n';
    return 2;
  }
  fairmatch::synth::generate_ratings(config, out);
  std::cout << "wrote " << out_path << '\n';
  return 0;
}
