// toca: corpus-to-corpus caption synthesis.
//
// Subcommands cover the pipeline stages: deconstruct a corpus into a model,
// sample slotted prompts, complete and filter them into a dataset, compare
// the dataset against a target corpus, and report the diversity bound.
// `run` chains all stages from one config file.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "toca/acceptor.hpp"
#include "toca/corpus_model.hpp"
#include "toca/error.hpp"
#include "toca/io.hpp"
#include "toca/llm.hpp"
#include "toca/metrics.hpp"
#include "toca/sampler.hpp"
#include "toca/tagger.hpp"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;
constexpr int kExitIo = 3;

struct StageFailure {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& stage,
                       const std::string& message) {
  throw StageFailure{code, stage + ": " + message};
}

std::unique_ptr<toca::Tagger> make_tagger(bool pretagged,
                                          const std::string& lexicon_path) {
  if (pretagged) return toca::make_pretagged_tagger();
  if (!lexicon_path.empty()) return toca::make_lexicon_tagger(lexicon_path);
  return toca::make_builtin_tagger();
}

std::vector<toca::TaggedSentence> tag_file(const std::string& stage,
                                           const std::string& path,
                                           bool pretagged,
                                           const std::string& lexicon_path,
                                           int jobs) {
  try {
    auto tagger = make_tagger(pretagged, lexicon_path);
    return toca::tag_corpus(toca::read_lines(path), *tagger, jobs);
  } catch (const toca::BackendUnavailableError& e) {
    fail(kExitIo, stage, e.what());
  } catch (const toca::TagFormatError& e) {
    fail(kExitIo, stage, e.what());
  } catch (const toca::IoError& e) {
    fail(kExitIo, stage, e.what());
  }
}

json read_json_file(const std::string& stage, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(kExitIo, stage, "cannot open file: " + path);
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) fail(kExitIo, stage, "file is not valid JSON: " + path);
  return doc;
}

// ---------------------------------------------------------------------------
// deconstruct

struct DeconstructArgs {
  std::string corpus;
  bool pretagged = false;
  std::string lexicon;
  std::string extra_pairs;
  std::string out;
  int jobs = 1;
};

toca::CorpusModel build_from_args(const DeconstructArgs& args) {
  auto sentences =
      tag_file("deconstruct", args.corpus, args.pretagged, args.lexicon, args.jobs);
  toca::CorpusModel model = toca::build_model_parallel(sentences, args.jobs);
  if (!args.extra_pairs.empty()) {
    try {
      model = toca::merge_models(model, toca::compile_extra_pairs(args.extra_pairs));
    } catch (const toca::Error& e) {
      fail(kExitIo, "deconstruct", e.what());
    }
  }
  return model;
}

int run_deconstruct(const DeconstructArgs& args) {
  toca::CorpusModel model = build_from_args(args);
  try {
    toca::persist_model(model, args.out);
  } catch (const toca::IoError& e) {
    fail(kExitIo, "deconstruct", e.what());
  }
  std::cout << "deconstruct: " << model.sentence_count << " sentences, "
            << model.templates.size() << " templates, " << model.unigrams.size()
            << " lexical words\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sample

struct SampleArgs {
  std::string model;
  uint64_t count = 0;
  std::string tau = "inf";
  uint64_t seed = 0;
  uint64_t budget = 0;
  std::string out;
  int jobs = 1;
};

toca::CorpusModel load_model_or_fail(const std::string& stage,
                                     const std::string& path) {
  try {
    return toca::load_model(path);
  } catch (const toca::Error& e) {
    fail(kExitIo, stage, e.what());
  }
}

int run_sample(const SampleArgs& args) {
  toca::CorpusModel model = load_model_or_fail("sample", args.model);
  toca::Tau tau = toca::Tau::parse(args.tau);
  toca::SamplerIndex index(model);
  std::vector<toca::SlottedPrompt> prompts;
  bool shortfall = false;
  try {
    prompts = toca::generate_prompts(index, args.count, tau, args.seed,
                                     args.jobs, args.budget);
  } catch (const toca::EmptyModelError& e) {
    fail(kExitUsage, "sample", e.what());
  } catch (const toca::BudgetExhaustedError& e) {
    // Keep what the stream would have produced so reruns stay composable.
    std::cerr << "sample: warning: " << e.what() << "\n";
    shortfall = true;
    toca::PromptStream stream(index, tau, args.seed);
    while (auto p = stream.next()) prompts.push_back(std::move(*p));
  }
  try {
    toca::write_prompts(prompts, args.out);
  } catch (const toca::IoError& e) {
    fail(kExitIo, "sample", e.what());
  }
  std::cout << "sample: wrote " << prompts.size() << " prompts\n";
  return shortfall ? kExitBudget : kExitOk;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  std::string prompts;
  std::string mock;
  std::string endpoint_config;
  uint64_t m = 0;
  uint64_t budget = 0;
  bool strict_order = false;
  uint64_t max_words = 50;
  std::string out;
  std::string records;
  int jobs = 0;  // 0: mock runs single-threaded, endpoints use max_in_flight
};

toca::EndpointConfig endpoint_from_args(const std::string& stage,
                                        const std::string& path, int jobs) {
  toca::EndpointConfig cfg;
  if (!path.empty()) {
    try {
      cfg = toca::endpoint_config_from_json(read_json_file(stage, path));
    } catch (const toca::ConfigError& e) {
      fail(kExitUsage, stage, e.what());
    }
  }
  if (jobs > 0) cfg.max_in_flight = jobs;
  return cfg;
}

int finish_synth(const std::string& stage, const toca::SynthesisRun& run,
                 const std::string& out, const std::string& records) {
  try {
    toca::write_dataset(run.dataset, out);
    if (!records.empty()) toca::write_records(run.records, records);
  } catch (const toca::IoError& e) {
    fail(kExitIo, stage, e.what());
  }
  std::cout << stage << ": accepted " << run.accepted_count << "/"
            << run.target_m << " captions in " << run.attempted_count
            << " attempts\n";
  if (run.budget_exhausted) {
    std::cerr << stage << ": warning: budget exhausted, dataset is partial\n";
    return kExitBudget;
  }
  return kExitOk;
}

int run_synth(const SynthArgs& args) {
  std::vector<toca::SlottedPrompt> prompts;
  try {
    prompts = toca::load_prompts(args.prompts);
  } catch (const toca::Error& e) {
    fail(kExitIo, "synth", e.what());
  }
  toca::SynthesisConfig cfg;
  cfg.target_m = args.m;
  cfg.budget = args.budget;
  cfg.limits.strict_order = args.strict_order;
  cfg.limits.max_words = args.max_words;

  toca::VectorPromptSource source(std::move(prompts));
  toca::SynthesisRun run;
  if (!args.mock.empty()) {
    cfg.jobs = std::max(args.jobs, 1);
    toca::MockMode mode = toca::mock_mode_from(args.mock);
    run = toca::synthesize_dataset(
        source, cfg, [mode](const toca::SlottedPrompt& p) {
          return toca::mock_fill(p, mode);
        });
  } else {
    auto client = std::make_shared<toca::CompletionClient>(
        endpoint_from_args("synth", args.endpoint_config, args.jobs));
    cfg.jobs = client->config().max_in_flight;
    try {
      run = toca::synthesize_dataset(
          source, cfg, [client](const toca::SlottedPrompt& p) {
            return client->complete(p);
          });
    } catch (const toca::Error& e) {
      fail(kExitIo, "synth", e.what());
    }
  }
  return finish_synth("synth", run, args.out, args.records);
}

// ---------------------------------------------------------------------------
// metrics / bound

struct MetricsArgs {
  std::string dataset;
  std::string target;
  bool pretagged = false;
  std::string lexicon;
  std::string model;
  std::string report;
};

int run_metrics(const MetricsArgs& args) {
  auto d_corpus = tag_file("metrics", args.dataset, false, args.lexicon, 1);
  auto t_corpus =
      tag_file("metrics", args.target, args.pretagged, args.lexicon, 1);
  toca::MetricsRow token_row, structure_row;
  try {
    token_row =
        toca::distribution_stats(d_corpus, t_corpus, toca::Granularity::Token);
    structure_row = toca::distribution_stats(d_corpus, t_corpus,
                                             toca::Granularity::Structure);
  } catch (const toca::EmptyModelError& e) {
    fail(kExitUsage, "metrics", e.what());
  }
  std::optional<toca::BoundReport> bound;
  if (!args.model.empty())
    bound = toca::upper_bound(load_model_or_fail("metrics", args.model));
  std::cout << toca::metrics_table(token_row, structure_row);
  if (!args.report.empty()) {
    try {
      toca::write_text_file(
          toca::metrics_report(token_row, structure_row, bound).dump(2) + "\n",
          args.report);
    } catch (const toca::IoError& e) {
      fail(kExitIo, "metrics", e.what());
    }
  }
  return kExitOk;
}

int run_bound(const std::string& model_path) {
  toca::CorpusModel model = load_model_or_fail("bound", model_path);
  toca::BoundReport report;
  try {
    report = toca::upper_bound(model);
  } catch (const toca::EmptyModelError& e) {
    fail(kExitUsage, "bound", e.what());
  }
  json doc{{"log10_bound", report.log10_bound},
           {"per_template_terms", report.per_template_terms}};
  doc["exact_bound"] =
      report.exact_bound ? json(*report.exact_bound) : json(nullptr);
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// run: the chained pipeline

struct RunConfig {
  std::string corpus_path;
  bool pretagged = false;
  std::string lexicon_path;
  std::string extra_pairs_path;
  std::string model_path = "model.json";
  std::string prompts_path = "prompts.jsonl";
  std::string output_path = "dataset.txt";
  std::string records_path;
  std::string report_path = "report.json";
  std::string target_path;  // empty -> corpus_path
  std::string tau = "inf";
  uint64_t m = 1;
  uint64_t seed = 0;
  uint64_t budget = 0;        // 0 -> 20 * m
  uint64_t prompt_count = 0;  // 0 -> budget
  int jobs = 0;  // 0: single workers, endpoint concurrency from its config
  bool strict_order = false;
  uint64_t max_words = 50;
  std::string mock = "none";
  toca::EndpointConfig endpoint;
};

RunConfig run_config_from_json(const json& j) {
  RunConfig cfg;
  auto get_str = [&](const char* key, std::string& into) {
    if (j.contains(key) && !j[key].is_null()) into = j[key].get<std::string>();
  };
  get_str("corpus_path", cfg.corpus_path);
  get_str("lexicon_path", cfg.lexicon_path);
  get_str("extra_pairs_path", cfg.extra_pairs_path);
  get_str("model_path", cfg.model_path);
  get_str("prompts_path", cfg.prompts_path);
  get_str("output_path", cfg.output_path);
  get_str("records_path", cfg.records_path);
  get_str("report_path", cfg.report_path);
  get_str("target_path", cfg.target_path);
  get_str("mock", cfg.mock);
  if (j.contains("pretagged")) cfg.pretagged = j["pretagged"].get<bool>();
  if (j.contains("strict_order"))
    cfg.strict_order = j["strict_order"].get<bool>();
  if (j.contains("tau")) {
    if (j["tau"].is_string())
      cfg.tau = j["tau"].get<std::string>();
    else
      cfg.tau = std::to_string(j["tau"].get<double>());
  }
  if (j.contains("m")) cfg.m = j["m"].get<uint64_t>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
  if (j.contains("budget")) cfg.budget = j["budget"].get<uint64_t>();
  if (j.contains("prompt_count"))
    cfg.prompt_count = j["prompt_count"].get<uint64_t>();
  if (j.contains("jobs")) cfg.jobs = j["jobs"].get<int>();
  if (j.contains("max_words")) cfg.max_words = j["max_words"].get<uint64_t>();
  if (j.contains("endpoint"))
    cfg.endpoint = toca::endpoint_config_from_json(j["endpoint"]);
  return cfg;
}

json run_config_to_json(const RunConfig& cfg) {
  return json{{"corpus_path", cfg.corpus_path},
              {"pretagged", cfg.pretagged},
              {"lexicon_path", cfg.lexicon_path},
              {"extra_pairs_path", cfg.extra_pairs_path},
              {"model_path", cfg.model_path},
              {"prompts_path", cfg.prompts_path},
              {"output_path", cfg.output_path},
              {"records_path", cfg.records_path},
              {"report_path", cfg.report_path},
              {"target_path", cfg.target_path},
              {"tau", cfg.tau},
              {"m", cfg.m},
              {"seed", cfg.seed},
              {"budget", cfg.budget},
              {"prompt_count", cfg.prompt_count},
              {"jobs", cfg.jobs},
              {"strict_order", cfg.strict_order},
              {"max_words", cfg.max_words},
              {"mock", cfg.mock},
              {"endpoint", toca::endpoint_config_to_json(cfg.endpoint)}};
}

int run_pipeline(const RunConfig& cfg) {
  if (cfg.corpus_path.empty())
    fail(kExitUsage, "run", "config needs corpus_path");
  if (cfg.m == 0) fail(kExitUsage, "run", "config needs m >= 1");

  uint64_t budget = cfg.budget == 0 ? 20 * cfg.m : cfg.budget;
  uint64_t prompt_count = cfg.prompt_count == 0 ? budget : cfg.prompt_count;
  toca::Tau tau = toca::Tau::parse(cfg.tau);

  int workers = std::max(cfg.jobs, 1);

  // Stage 1: deconstruct.
  DeconstructArgs dargs{cfg.corpus_path, cfg.pretagged, cfg.lexicon_path,
                        cfg.extra_pairs_path, cfg.model_path, workers};
  toca::CorpusModel model = build_from_args(dargs);
  try {
    toca::persist_model(model, cfg.model_path);
  } catch (const toca::IoError& e) {
    fail(kExitIo, "run", e.what());
  }

  // Stage 2: sample. A shortfall is reported but does not stop the chain;
  // synth may still reach m with fewer prompts than the generous pool.
  toca::SamplerIndex index(model);
  std::vector<toca::SlottedPrompt> prompts;
  bool prompt_shortfall = false;
  try {
    prompts =
        toca::generate_prompts(index, prompt_count, tau, cfg.seed, workers);
  } catch (const toca::EmptyModelError& e) {
    fail(kExitUsage, "run", e.what());
  } catch (const toca::BudgetExhaustedError&) {
    prompt_shortfall = true;
    toca::PromptStream stream(index, tau, cfg.seed);
    while (auto p = stream.next()) prompts.push_back(std::move(*p));
    std::cerr << "run: warning: model diversity below requested prompt pool ("
              << prompts.size() << "/" << prompt_count << " prompts)\n";
  }
  try {
    toca::write_prompts(prompts, cfg.prompts_path);
  } catch (const toca::IoError& e) {
    fail(kExitIo, "run", e.what());
  }
  size_t prompt_total = prompts.size();

  // Stage 3: synth.
  toca::SynthesisConfig scfg;
  scfg.target_m = cfg.m;
  scfg.budget = budget;
  scfg.limits.strict_order = cfg.strict_order;
  scfg.limits.max_words = cfg.max_words;
  toca::VectorPromptSource source(std::move(prompts));
  toca::SynthesisRun run;
  if (cfg.mock != "none" && !cfg.mock.empty()) {
    scfg.jobs = workers;
    toca::MockMode mode = toca::mock_mode_from(cfg.mock);
    run = toca::synthesize_dataset(
        source, scfg,
        [mode](const toca::SlottedPrompt& p) { return toca::mock_fill(p, mode); });
  } else {
    toca::EndpointConfig ecfg = cfg.endpoint;
    if (cfg.jobs > 0) ecfg.max_in_flight = cfg.jobs;
    scfg.jobs = ecfg.max_in_flight;
    auto client = std::make_shared<toca::CompletionClient>(ecfg);
    try {
      run = toca::synthesize_dataset(
          source, scfg,
          [client](const toca::SlottedPrompt& p) { return client->complete(p); });
    } catch (const toca::Error& e) {
      fail(kExitIo, "run", e.what());
    }
  }
  int synth_code = finish_synth("run", run, cfg.output_path,
                                cfg.records_path.empty() ? std::string()
                                                         : cfg.records_path);

  // Stage 4: metrics against the target corpus (default: the source corpus).
  std::string target =
      cfg.target_path.empty() ? cfg.corpus_path : cfg.target_path;
  auto d_corpus = tag_file("run", cfg.output_path, false, cfg.lexicon_path, 1);
  auto t_corpus = tag_file("run", target, cfg.pretagged, cfg.lexicon_path, 1);
  json report;
  report["config"] = run_config_to_json(cfg);
  report["sample"] =
      json{{"prompts", prompt_total}, {"shortfall", prompt_shortfall}};
  report["synthesis"] = json{{"target_m", run.target_m},
                             {"accepted", run.accepted_count},
                             {"attempted", run.attempted_count},
                             {"budget", run.budget},
                             {"budget_exhausted", run.budget_exhausted}};
  try {
    toca::MetricsRow token_row =
        toca::distribution_stats(d_corpus, t_corpus, toca::Granularity::Token);
    toca::MetricsRow structure_row = toca::distribution_stats(
        d_corpus, t_corpus, toca::Granularity::Structure);
    report["metrics"] =
        toca::metrics_report(token_row, structure_row, toca::upper_bound(model));
    std::cout << toca::metrics_table(token_row, structure_row);
  } catch (const toca::EmptyModelError& e) {
    // An empty dataset has no statistics; the report still records the run.
    report["metrics"] = json{{"error", e.what()}};
  }
  try {
    toca::write_text_file(report.dump(2) + "\n", cfg.report_path);
  } catch (const toca::IoError& e) {
    fail(kExitIo, "run", e.what());
  }
  return synth_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toca: corpus-to-corpus caption text synthesis"};
  app.require_subcommand(1);

  DeconstructArgs dargs;
  auto* deconstruct = app.add_subcommand(
      "deconstruct", "Build a corpus model (templates, unigrams, pairs)");
  deconstruct->add_option("--corpus", dargs.corpus, "corpus file, one caption per line")
      ->required();
  deconstruct->add_flag("--pretagged", dargs.pretagged,
                        "corpus lines are surface_TAG tokens");
  deconstruct->add_option("--lexicon", dargs.lexicon,
                          "lexicon file for the bundled tagger");
  deconstruct->add_option("--extra-pairs", dargs.extra_pairs,
                          "prior pairs file to merge into the model");
  deconstruct->add_option("--out", dargs.out, "model file to write")->required();
  deconstruct->add_option("--jobs", dargs.jobs, "worker count");

  SampleArgs sargs;
  auto* sample = app.add_subcommand("sample", "Sample slotted prompts");
  sample->add_option("--model", sargs.model, "model file")->required();
  sample->add_option("-n,--count", sargs.count, "number of distinct prompts")
      ->required();
  sample->add_option("--tau", sargs.tau, "diversity temperature (number or 'inf')");
  sample->add_option("--seed", sargs.seed, "master RNG seed");
  sample->add_option("--budget", sargs.budget, "attempt budget (default 50*n)");
  sample->add_option("--out", sargs.out, "prompts JSONL to write")->required();
  sample->add_option("--jobs", sargs.jobs, "worker count");

  SynthArgs yargs;
  auto* synth = app.add_subcommand("synth", "Complete prompts and filter");
  synth->add_option("--prompts", yargs.prompts, "prompts JSONL")->required();
  synth->add_option("--mock", yargs.mock, "offline completer: echo|lossy|constant");
  synth->add_option("--endpoint-config", yargs.endpoint_config,
                    "endpoint config JSON file");
  synth->add_option("-m,--target", yargs.m, "accepted captions to collect")
      ->required();
  synth->add_option("--budget", yargs.budget, "attempt budget (default 20*m)");
  synth->add_flag("--strict-order", yargs.strict_order,
                  "require tokens in prompt order");
  synth->add_option("--max-words", yargs.max_words, "completion word limit");
  synth->add_option("--out", yargs.out, "dataset file to write")->required();
  synth->add_option("--records", yargs.records, "records JSONL to write");
  synth->add_option("--jobs", yargs.jobs, "concurrent completions");

  MetricsArgs margs;
  auto* metrics = app.add_subcommand("metrics", "Corpus distance statistics");
  metrics->add_option("--dataset", margs.dataset, "synthesized dataset file")
      ->required();
  metrics->add_option("--target", margs.target, "target corpus file")->required();
  metrics->add_flag("--pretagged", margs.pretagged,
                    "target corpus is pre-tagged");
  metrics->add_option("--lexicon", margs.lexicon, "lexicon for the bundled tagger");
  metrics->add_option("--model", margs.model,
                      "model file; adds the diversity bound to the report");
  metrics->add_option("--report", margs.report, "report JSON to write");

  std::string bound_model;
  auto* bound = app.add_subcommand("bound", "Diversity upper bound of a model");
  bound->add_option("--model", bound_model, "model file")->required();

  std::string run_config_path;
  RunConfig rcfg_overrides;
  auto* run = app.add_subcommand("run", "Chain all stages from a config file");
  run->add_option("--config", run_config_path, "run config JSON")->required();
  auto* o_corpus = run->add_option("--corpus", rcfg_overrides.corpus_path);
  auto* o_m = run->add_option("--m", rcfg_overrides.m);
  auto* o_tau = run->add_option("--tau", rcfg_overrides.tau);
  auto* o_seed = run->add_option("--seed", rcfg_overrides.seed);
  auto* o_jobs = run->add_option("--jobs", rcfg_overrides.jobs);
  auto* o_mock = run->add_option("--mock", rcfg_overrides.mock);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (deconstruct->parsed()) return run_deconstruct(dargs);
    if (sample->parsed()) return run_sample(sargs);
    if (synth->parsed()) {
      if (yargs.mock.empty() && yargs.endpoint_config.empty())
        fail(kExitUsage, "synth", "need --mock or --endpoint-config");
      return run_synth(yargs);
    }
    if (metrics->parsed()) return run_metrics(margs);
    if (bound->parsed()) return run_bound(bound_model);
    if (run->parsed()) {
      RunConfig cfg;
      try {
        cfg = run_config_from_json(read_json_file("run", run_config_path));
      } catch (const json::exception& e) {
        fail(kExitUsage, "run",
             std::string("config has mistyped fields: ") + e.what());
      }
      if (o_corpus->count()) cfg.corpus_path = rcfg_overrides.corpus_path;
      if (o_m->count()) cfg.m = rcfg_overrides.m;
      if (o_tau->count()) cfg.tau = rcfg_overrides.tau;
      if (o_seed->count()) cfg.seed = rcfg_overrides.seed;
      if (o_jobs->count()) cfg.jobs = rcfg_overrides.jobs;
      if (o_mock->count()) cfg.mock = rcfg_overrides.mock;
      return run_pipeline(cfg);
    }
  } catch (const StageFailure& f) {
    std::cerr << f.message << "\n";
    return f.code;
  } catch (const toca::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const toca::BudgetExhaustedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const toca::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
