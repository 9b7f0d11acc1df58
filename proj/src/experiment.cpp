#include "fairmatch/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fairmatch/constraints.hpp"
#include "fairmatch/diffusion.hpp"
#include "fairmatch/flow.hpp"
#include "fairmatch/matching.hpp"

namespace fairmatch {

const char* to_string(Algo a) {
  switch (a) {
    case Algo::kP3: return "p3";
    case Algo::kRp3: return "rp3";
  }
  return "?";
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::kRegular: return "regular";
    case Strategy::kGreedy: return "greedy";
    case Strategy::kMcmf: return "mcmf";
  }
  return "?";
}

namespace {

[[noreturn]] void fail_stage(const char* stage, const std::exception& e) {
  throw DataError(std::string("stage ") + stage + ": " + e.what());
}

Corpus load_from_ratings(const ExperimentConfig& config) {
  std::ifstream in(config.input_path);
  if (!in) {
    throw DataError("cannot open rating log: " + config.input_path);
  }
  auto events = parse_ratings(in, config.format);
  return make_corpus(std::move(events), config.threshold, config.ratio);
}

Corpus load_from_cache(const ExperimentConfig& config) {
  const auto& stem = config.cache_stem;
  std::ifstream train_in(stem + ".train.txt");
  std::ifstream probe_in(stem + ".probe.txt");
  std::ifstream users_in(stem + ".users.txt");
  std::ifstream items_in(stem + ".items.txt");
  if (!train_in || !probe_in || !users_in || !items_in) {
    throw DataError("cache files missing for stem: " + stem);
  }
  auto train = read_dataset_cache(train_in);
  auto probe = read_dataset_cache(probe_in);
  auto user_ids = read_id_map(users_in);
  auto item_ids = read_id_map(items_in);

  if (probe.user_count() != train.user_count() ||
      probe.item_count() != train.item_count()) {
    throw DataError("cached probe shape does not match train shape");
  }
  std::vector<std::pair<std::int32_t, std::int32_t>> train_pairs;
  train_pairs.reserve(static_cast<std::size_t>(train.interaction_count()));
  for (std::int32_t u = 0; u < train.user_count(); ++u) {
    for (std::int32_t v : train.items_of(u)) train_pairs.emplace_back(u, v);
  }
  Corpus corpus;
  corpus.train = InteractionDataset::from_pairs(
      train.user_count(), train.item_count(), std::move(train_pairs),
      std::move(user_ids), std::move(item_ids));
  corpus.probe_items.assign(static_cast<std::size_t>(train.user_count()), {});
  for (std::int32_t u = 0; u < probe.user_count(); ++u) {
    const auto row = probe.items_of(u);
    corpus.probe_items[static_cast<std::size_t>(u)].assign(row.begin(), row.end());
    corpus.probe_pairs += std::ssize(row);
  }
  return corpus;
}

ScoreMatrix score_corpus(const ExperimentConfig& config, const Corpus& corpus) {
  ScoreMatrix raw = p3_scores(corpus.train);
  if (config.algo == Algo::kRp3) {
    raw = rp3_rescale(raw, corpus.train.item_degrees(), config.lambda);
  }
  return raw;
}

RecommendationMatrix match(const ExperimentConfig& config, const Corpus& corpus,
                           const ScoreMatrix& raw, std::int64_t* underfill) {
  const auto l = config.list_length;
  RecommendationMatrix recs;
  switch (config.strategy) {
    case Strategy::kRegular: {
      recs = unconstrained_topl(raw, corpus.train, l);
      break;
    }
    case Strategy::kGreedy: {
      const auto normalized = normalize_rows(raw, config.theta);
      const auto stocks = stock_volumes(corpus.train.item_degrees(),
                                        corpus.train.user_count(), l);
      recs = greedy_match(normalized, corpus.train, l, stocks);
      break;
    }
    case Strategy::kMcmf: {
      const auto normalized = normalize_rows(raw, 1.0);
      const auto stocks = stock_volumes(corpus.train.item_degrees(),
                                        corpus.train.user_count(), l);
      auto net = build_matching_network(normalized, corpus.train, l, stocks);
      min_cost_max_flow(net);
      recs = extract_recommendations(net, corpus.train, normalized, l);
      break;
    }
  }
  if (underfill) *underfill = recs.underfill_total();
  return recs;
}

void format_float(std::ostream& out, double value) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  out << buf;
}

}  // namespace

Corpus load_corpus(const ExperimentConfig& config) {
  try {
    return config.cache_stem.empty() ? load_from_ratings(config)
                                     : load_from_cache(config);
  } catch (const ParseError&) {
    throw;
  } catch (const DataError& e) {
    fail_stage("ingest", e);
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const Corpus& corpus) {
  ExperimentResult result;
  result.config = config;

  ScoreMatrix raw;
  try {
    raw = score_corpus(config, corpus);
  } catch (const std::exception& e) {
    fail_stage("scoring", e);
  }

  RecommendationMatrix recs;
  try {
    recs = match(config, corpus, raw, &result.underfill);
  } catch (const std::exception& e) {
    fail_stage("matching", e);
  }

  try {
    result.metrics.precision = precision(recs, corpus.probe_items, config.list_length);
    result.metrics.aggregate_diversity = aggregate_diversity(recs);
    result.metrics.exposure_fairness = exposure_fairness(recs);
    result.metrics.score_gini = score_gini(recs, raw);
  } catch (const EvalError& e) {
    throw EvalError(std::string("stage evaluation: ") + e.what());
  }

  if (!config.recs_path.empty()) {
    std::ofstream out(config.recs_path);
    if (!out) {
      throw DataError("cannot open recommendation dump: " + config.recs_path);
    }
    write_recommendations(recs, corpus.train, out);
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const Corpus corpus = load_corpus(config);
  return run_experiment(config, corpus);
}

namespace {

std::vector<double> inclusive_grid(double from, double to, double step) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("sweep step must be positive");
  }
  if (from < 0.0 || to > 1.0 || from > to) {
    throw std::invalid_argument("sweep bounds must satisfy 0 <= from <= to <= 1");
  }
  std::vector<double> grid;
  for (int k = 0;; ++k) {
    const double value = from + step * k;
    if (value > to + 1e-12) break;
    grid.push_back(std::min(value, to));
  }
  return grid;
}

template <typename Apply>
std::vector<ExperimentResult> sweep(const ExperimentConfig& config,
                                    const Corpus& corpus, double from, double to,
                                    double step, Apply apply) {
  const auto grid = inclusive_grid(from, to, step);
  std::vector<ExperimentResult> results(grid.size());
  std::exception_ptr error;

  // Grid points are independent pipelines over shared immutable inputs.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (std::int64_t k = 0; k < std::ssize(grid); ++k) {
    try {
      ExperimentConfig point = config;
      apply(point, grid[static_cast<std::size_t>(k)]);
      results[static_cast<std::size_t>(k)] = run_experiment(point, corpus);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace

std::vector<ExperimentResult> sweep_theta(const ExperimentConfig& config,
                                          const Corpus& corpus, double from,
                                          double to, double step) {
  ExperimentConfig base = config;
  base.strategy = Strategy::kGreedy;
  return sweep(base, corpus, from, to, step,
               [](ExperimentConfig& point, double value) { point.theta = value; });
}

std::vector<ExperimentResult> sweep_lambda(const ExperimentConfig& config,
                                           const Corpus& corpus, double from,
                                           double to, double step) {
  ExperimentConfig base = config;
  base.algo = Algo::kRp3;
  return sweep(base, corpus, from, to, step,
               [](ExperimentConfig& point, double value) { point.lambda = value; });
}

void write_csv_header(std::ostream& out) {
  out << "dataset,algo,strategy,theta,lambda,l,precision,aggregate_diversity,"
         "exposure_fairness,score_gini,underfill_count\n";
}

void write_csv_row(std::ostream& out, const ExperimentResult& result) {
  const auto& c = result.config;
  out << c.dataset_id << ',' << to_string(c.algo) << ',' << to_string(c.strategy)
      << ',';
  format_float(out, c.theta);
  out << ',';
  format_float(out, c.lambda);
  out << ',' << c.list_length << ',';
  format_float(out, result.metrics.precision);
  out << ',';
  format_float(out, result.metrics.aggregate_diversity);
  out << ',';
  format_float(out, result.metrics.exposure_fairness);
  out << ',';
  format_float(out, result.metrics.score_gini);
  out << ',' << result.underfill << '\n';
}

std::size_t argmax_precision(const std::vector<ExperimentResult>& results) {
  if (results.empty()) {
    throw std::invalid_argument("argmax over empty result set");
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < results.size(); ++k) {
    if (results[k].metrics.precision > results[best].metrics.precision) best = k;
  }
  return best;
}

}  // namespace fairmatch
