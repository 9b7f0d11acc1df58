#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fairmatch/data.hpp"
#include "fairmatch/metrics.hpp"

namespace fairmatch {

enum class Algo { kP3, kRp3 };
enum class Strategy { kRegular, kGreedy, kMcmf };

const char* to_string(Algo a);
const char* to_string(Strategy s);

struct ExperimentConfig {
  std::string input_path;    // rating log; empty when running from a cache
  std::string cache_stem;    // ingest output stem, alternative to input_path
  RatingFormat format = RatingFormat::kTab;
  int threshold = 3;
  double ratio = 0.8;
  std::int32_t list_length = 20;
  Algo algo = Algo::kP3;
  Strategy strategy = Strategy::kRegular;
  double theta = 1.0;   // greedy only
  double lambda = 0.0;  // rp3 only
  std::string dataset_id;
  std::string recs_path;  // optional recommendation dump
  std::uint64_t seed = 0; // reserved; the pipeline is deterministic
};

struct ExperimentResult {
  ExperimentConfig config;
  MetricsReport metrics;
  std::int64_t underfill = 0;
};

// Loads the corpus named by the config (rating log or cache stem).
Corpus load_corpus(const ExperimentConfig& config);

// score -> (normalize ->) match -> evaluate on a prepared corpus. Writes the
// recommendation dump when recs_path is set.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const Corpus& corpus);
// Convenience overload that loads the corpus first.
ExperimentResult run_experiment(const ExperimentConfig& config);

// One run per grid point on the inclusive grid from..to with the given step.
// The corpus and raw scores are shared across points; grid points execute
// concurrently and results come back in grid order.
std::vector<ExperimentResult> sweep_theta(const ExperimentConfig& config,
                                          const Corpus& corpus, double from,
                                          double to, double step);
std::vector<ExperimentResult> sweep_lambda(const ExperimentConfig& config,
                                           const Corpus& corpus, double from,
                                           double to, double step);

// CSV report. Header:
// dataset,algo,strategy,theta,lambda,l,precision,aggregate_diversity,exposure_fairness,score_gini,underfill_count
// Floats carry 6 significant digits.
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const ExperimentResult& result);

// Index of the row with maximal precision (first on ties).
std::size_t argmax_precision(const std::vector<ExperimentResult>& results);

}  // namespace fairmatch
