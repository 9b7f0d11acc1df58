// Command-line front end for the constrained-recommendation pipeline.
//
// Subcommands:
//   ingest        parse + filter + split a rating log into workdir caches
//   run           one experiment (algo x strategy), CSV report + optional dump
//   sweep-theta   greedy strategy over a theta grid
//   sweep-lambda  rp3 over a lambda grid
//   dump-network  write the matching flow network as an edge list
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 evaluation error.

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairmatch/constraints.hpp"
#include "fairmatch/diffusion.hpp"
#include "fairmatch/errors.hpp"
#include "fairmatch/experiment.hpp"
#include "fairmatch/flow.hpp"

namespace {

namespace fm = fairmatch;
namespace fs = std::filesystem;

struct CommonOpts {
  std::string input;
  std::string cache_stem;
  std::string format = "tab";
  std::string workdir = ".";
  int threshold = 3;
  double ratio = 0.8;
  int list_length = 20;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool need_source) {
  auto* input = cmd->add_option("--input", opts.input, "rating log file");
  auto* cache = cmd->add_option("--cache", opts.cache_stem,
                                "ingested cache stem (alternative to --input)");
  if (need_source) {
    input->excludes(cache);
  }
  cmd->add_option("--format", opts.format, "input delimiter: tab or colons")
      ->check(CLI::IsMember({"tab", "colons"}));
  cmd->add_option("--workdir", opts.workdir, "directory for outputs and caches");
  cmd->add_option("--threshold", opts.threshold, "minimum rating kept")
      ->check(CLI::Range(1, 5));
  cmd->add_option("--ratio", opts.ratio, "temporal train fraction")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--list-length", opts.list_length, "recommendation list length")
      ->check(CLI::PositiveNumber);
}

fm::ExperimentConfig to_config(const CommonOpts& opts) {
  if (opts.input.empty() && opts.cache_stem.empty()) {
    throw std::invalid_argument("one of --input or --cache is required");
  }
  fm::ExperimentConfig config;
  config.input_path = opts.input;
  config.cache_stem = opts.cache_stem;
  config.format = opts.format == "colons" ? fm::RatingFormat::kDoubleColon
                                          : fm::RatingFormat::kTab;
  config.threshold = opts.threshold;
  config.ratio = opts.ratio;
  config.list_length = opts.list_length;
  const std::string& source = opts.input.empty() ? opts.cache_stem : opts.input;
  config.dataset_id = fs::path(source).stem().string();
  return config;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw fm::DataError("cannot open output file: " + path.string());
  }
  return out;
}

int cmd_ingest(const CommonOpts& opts) {
  auto config = to_config(opts);
  const fm::Corpus corpus = fm::load_corpus(config);

  fs::create_directories(opts.workdir);
  const fs::path stem = fs::path(opts.workdir) / config.dataset_id;

  auto train = open_out(stem.string() + ".train.txt");
  fm::write_dataset_cache(corpus.train, train);

  // The probe shares the train id space, so it reuses the same cache format.
  std::vector<std::pair<std::int32_t, std::int32_t>> probe_pairs;
  for (std::int32_t u = 0; u < corpus.train.user_count(); ++u) {
    for (std::int32_t v : corpus.probe_items[static_cast<std::size_t>(u)]) {
      probe_pairs.emplace_back(u, v);
    }
  }
  auto probe_ds = fm::InteractionDataset::from_pairs(
      corpus.train.user_count(), corpus.train.item_count(), std::move(probe_pairs));
  auto probe = open_out(stem.string() + ".probe.txt");
  fm::write_dataset_cache(probe_ds, probe);

  std::vector<std::int64_t> user_ids(static_cast<std::size_t>(corpus.train.user_count()));
  for (std::int32_t i = 0; i < corpus.train.user_count(); ++i) {
    user_ids[static_cast<std::size_t>(i)] = corpus.train.user_id(i);
  }
  std::vector<std::int64_t> item_ids(static_cast<std::size_t>(corpus.train.item_count()));
  for (std::int32_t j = 0; j < corpus.train.item_count(); ++j) {
    item_ids[static_cast<std::size_t>(j)] = corpus.train.item_id(j);
  }
  auto users = open_out(stem.string() + ".users.txt");
  fm::write_id_map(user_ids, users);
  auto items = open_out(stem.string() + ".items.txt");
  fm::write_id_map(item_ids, items);

  std::cout << "ingested " << config.dataset_id << ": " << corpus.train.user_count()
            << " users, " << corpus.train.item_count() << " items, "
            << corpus.train.interaction_count() << " train / " << corpus.probe_pairs
            << " probe interactions\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fairness-constrained top-l recommendation via stock-limited "
               "user-item matching"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string algo = "p3";
  std::string strategy = "regular";
  double theta = 1.0;
  double lambda = 0.0;
  double from = 0.0, to = 1.0, step = 0.1;
  std::string report = "report.csv";
  std::string recs_path;

  auto* ingest = app.add_subcommand("ingest", "cache a dataset split under the workdir");
  add_common(ingest, opts, true);

  auto* run = app.add_subcommand("run", "run one experiment and append a CSV row");
  add_common(run, opts, true);
  run->add_option("--algo", algo, "scoring algorithm")
      ->check(CLI::IsMember({"p3", "rp3"}));
  run->add_option("--strategy", strategy, "matching strategy")
      ->check(CLI::IsMember({"regular", "greedy", "mcmf"}));
  run->add_option("--theta", theta, "greedy normalization exponent")
      ->check(CLI::Range(0.0, 1.0));
  run->add_option("--lambda", lambda, "rp3 popularity exponent")
      ->check(CLI::Range(0.0, 1.0));
  run->add_option("--report", report, "CSV report path (relative to workdir)");
  run->add_option("--dump-recs", recs_path, "write recommendation lists here");

  auto* sweep_t = app.add_subcommand("sweep-theta", "greedy strategy over a theta grid");
  add_common(sweep_t, opts, true);
  sweep_t->add_option("--algo", algo)->check(CLI::IsMember({"p3", "rp3"}));
  sweep_t->add_option("--lambda", lambda)->check(CLI::Range(0.0, 1.0));
  sweep_t->add_option("--from", from)->check(CLI::Range(0.0, 1.0));
  sweep_t->add_option("--to", to)->check(CLI::Range(0.0, 1.0));
  sweep_t->add_option("--step", step)->check(CLI::PositiveNumber);
  sweep_t->add_option("--report", report);

  auto* sweep_l = app.add_subcommand("sweep-lambda", "rp3 over a lambda grid");
  add_common(sweep_l, opts, true);
  sweep_l->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"regular", "greedy", "mcmf"}));
  sweep_l->add_option("--theta", theta)->check(CLI::Range(0.0, 1.0));
  sweep_l->add_option("--from", from)->check(CLI::Range(0.0, 1.0));
  sweep_l->add_option("--to", to)->check(CLI::Range(0.0, 1.0));
  sweep_l->add_option("--step", step)->check(CLI::PositiveNumber);
  sweep_l->add_option("--report", report);

  auto* dump = app.add_subcommand("dump-network",
                                  "write the matching flow network edge list");
  add_common(dump, opts, true);
  std::string network_out = "network.txt";
  dump->add_option("--out", network_out, "edge list path (relative to workdir)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) return cmd_ingest(opts);

    auto config = to_config(opts);
    config.algo = algo == "rp3" ? fm::Algo::kRp3 : fm::Algo::kP3;
    config.theta = theta;
    config.lambda = lambda;
    fs::create_directories(opts.workdir);

    if (run->parsed()) {
      config.strategy = strategy == "greedy"  ? fm::Strategy::kGreedy
                        : strategy == "mcmf" ? fm::Strategy::kMcmf
                                             : fm::Strategy::kRegular;
      if (!recs_path.empty()) {
        config.recs_path = (fs::path(opts.workdir) / recs_path).string();
      }
      const auto result = fm::run_experiment(config);
      auto out = open_out(fs::path(opts.workdir) / report);
      fm::write_csv_header(out);
      fm::write_csv_row(out, result);
      fm::write_csv_row(std::cout, result);
      return 0;
    }

    if (sweep_t->parsed() || sweep_l->parsed()) {
      const fm::Corpus corpus = fm::load_corpus(config);
      std::vector<fm::ExperimentResult> results;
      if (sweep_t->parsed()) {
        results = fm::sweep_theta(config, corpus, from, to, step);
      } else {
        config.strategy = strategy == "greedy"  ? fm::Strategy::kGreedy
                          : strategy == "mcmf" ? fm::Strategy::kMcmf
                                               : fm::Strategy::kRegular;
        results = fm::sweep_lambda(config, corpus, from, to, step);
      }
      auto out = open_out(fs::path(opts.workdir) / report);
      fm::write_csv_header(out);
      for (const auto& r : results) fm::write_csv_row(out, r);
      const auto best = fm::argmax_precision(results);
      const auto& b = results[best];
      std::cout << "best precision " << b.metrics.precision << " at "
                << (sweep_t->parsed() ? "theta=" : "lambda=")
                << (sweep_t->parsed() ? b.config.theta : b.config.lambda)
                << " (row " << best + 1 << " of " << results.size() << ")\n";
      return 0;
    }

    if (dump->parsed()) {
      const fm::Corpus corpus = fm::load_corpus(config);
      auto raw = fm::p3_scores(corpus.train);
      if (config.algo == fm::Algo::kRp3) {
        raw = fm::rp3_rescale(raw, corpus.train.item_degrees(), config.lambda);
      }
      const auto normalized = fm::normalize_rows(raw, 1.0);
      const auto stocks = fm::stock_volumes(corpus.train.item_degrees(),
                                            corpus.train.user_count(),
                                            config.list_length);
      const auto net = fm::build_matching_network(normalized, corpus.train,
                                                  config.list_length, stocks);
      auto out = open_out(fs::path(opts.workdir) / network_out);
      fm::dump_network(net, out);
      std::cout << "wrote " << net.arc_count() / 2 << " edges\n";
      return 0;
    }
  } catch (const fm::ParseError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const fm::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const fm::EvalError& e) {
    std::cerr << "evaluation error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
