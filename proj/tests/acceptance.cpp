// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code is the number of
// failed criteria.

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "support/fake_endpoint.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "toca/acceptor.hpp"
#include "toca/corpus_model.hpp"
#include "toca/error.hpp"
#include "toca/io.hpp"
#include "toca/llm.hpp"
#include "toca/metrics.hpp"
#include "toca/rng.hpp"
#include "toca/sampler.hpp"
#include "toca/tagger.hpp"
#include "toca/template.hpp"
#include "toca/text.hpp"

namespace fs = std::filesystem;
using namespace toca;

namespace {

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw CheckFailure(what);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("toca_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  require(static_cast<bool>(in), "cannot read " + p.string());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(TOCA_CLI_PATH) + " " + args + " > " +
                    (work_dir() / "cli_out.txt").string() + " 2> " +
                    (work_dir() / "cli_err.txt").string();
  return WEXITSTATUS(std::system(cmd.c_str()));
}

// Random pre-tagged corpora shared by criteria 1 and 3.
std::vector<std::string> random_pretagged_lines(SplitMix64& rng, size_t n,
                                                size_t max_len) {
  static const std::vector<std::pair<const char*, const char*>> words = {
      {"dog", "NN"},   {"cat", "NN"},     {"man", "NN"},    {"park", "NN"},
      {"ball", "NN"},  {"hat", "NN"},     {"big", "JJ"},    {"red", "JJ"},
      {"fast", "RB"},  {"runs", "VBZ"},   {"sits", "VBZ"},  {"ran", "VBD"},
      {"running", "VBG"}, {"parked", "VBN"}, {"play", "VBP"}, {"go", "VB"},
      {"a", "DT"},     {"the", "DT"},     {"two", "CD"},    {"in", "IN"},
      {"on", "IN"},    {"and", "CC"},     {"while", "IN"},  {".", "."},
      {",", ","}};
  std::vector<std::string> out;
  for (size_t s = 0; s < n; ++s) {
    size_t len = rng.next() % (max_len + 1);
    std::string line;
    for (size_t i = 0; i < len; ++i) {
      const auto& [w, t] = words[rng.next() % words.size()];
      if (!line.empty()) line += ' ';
      line += w;
      line += '_';
      line += t;
    }
    out.push_back(line);
  }
  return out;
}

// --------------------------------------------------------------------------

void criterion1_oracle_equivalence() {
  auto start = std::chrono::steady_clock::now();
  const double kInf = std::numeric_limits<double>::infinity();

  std::vector<std::vector<std::string>> corpora{fixtures::kCorpusA,
                                                fixtures::kCorpusB};
  SplitMix64 rng(20240601);
  for (int i = 0; i < 20; ++i)
    corpora.push_back(random_pretagged_lines(rng, 1 + rng.next() % 10, 9));

  double worst = 0.0;
  for (const auto& lines : corpora) {
    auto tagged = fixtures::tag_pretagged(lines);
    CorpusModel model = build_model(tagged);
    if (model.unigrams.empty()) continue;
    SamplerIndex index(model);
    oracle::Corpus raw = oracle::lexical_view(tagged);

    std::vector<std::vector<LexId>> histories{{}};
    for (const auto& sent : raw)
      for (size_t len = 1; len <= sent.size(); ++len)
        histories.emplace_back(sent.begin(), sent.begin() + len);
    std::vector<LexId> all;
    for (const auto& [id, c] : model.unigrams) all.push_back(id);
    for (int k = 0; k < 4; ++k) {
      std::vector<LexId> h;
      for (size_t j = 0; j < 1 + rng.next() % 3; ++j)
        h.push_back(all[rng.next() % all.size()]);
      histories.push_back(h);
    }

    for (const auto& history : histories) {
      for (double tau_value : {1.0, 2.0, kInf}) {
        Tau tau =
            std::isinf(tau_value) ? Tau::infinite() : Tau::finite(tau_value);
        for (int c = 0; c < kSlotClassCount; ++c) {
          auto cls = static_cast<SlotClass>(c);
          auto got = index.candidate_weights(history, cls, tau);
          auto expected = oracle::weights(raw, history, cls, tau_value);
          require(got.size() == expected.size(),
                  "candidate set mismatch against the oracle");
          auto ig = got.begin();
          auto ie = expected.begin();
          for (; ig != got.end(); ++ig, ++ie) {
            require(ig->first == ie->first, "candidate id mismatch");
            worst = std::max(worst, std::abs(ig->second - ie->second));
          }
        }
      }
    }
  }
  require(worst <= 1e-12,
          "max probability error " + std::to_string(worst) + " > 1e-12");
  double elapsed = seconds_since(start);
  require(elapsed < 5.0,
          "runtime " + std::to_string(elapsed) + "s exceeds 5s");
}

void criterion2_empirical_sampling() {
  auto start = std::chrono::steady_clock::now();
  SamplerIndex index(fixtures::model_from_pretagged(fixtures::kCorpusB));
  std::vector<LexId> history{{"big", SlotClass::J}, {"dog", SlotClass::N}};
  const int kDraws = 100000;

  auto check_dist = [&](Tau tau, uint64_t seed, double p_runs,
                        double p_sleeps) {
    SplitMix64 rng(seed);
    double runs = 0, sleeps = 0;
    for (int i = 0; i < kDraws; ++i) {
      auto tok = index.sample_candidate(history, SlotClass::VBZ, tau, rng);
      require(tok.has_value(), "slot unexpectedly infeasible");
      if (tok->surface == "runs")
        ++runs;
      else if (tok->surface == "sleeps")
        ++sleeps;
      else
        require(false, "sampled a token outside the candidate set");
    }
    double l1 = std::abs(runs / kDraws - p_runs) +
                std::abs(sleeps / kDraws - p_sleeps);
    require(l1 < 0.01, "L1 distance " + std::to_string(l1) + " >= 0.01");
  };
  check_dist(Tau::infinite(), 101, 2.0 / 3.0, 1.0 / 3.0);
  check_dist(Tau::finite(1.0), 102, 0.5, 0.5);
  double elapsed = seconds_since(start);
  require(elapsed < 10.0,
          "runtime " + std::to_string(elapsed) + "s exceeds 10s");
}

void criterion3_count_conservation() {
  SplitMix64 rng(424242);
  auto lines = random_pretagged_lines(rng, 10000, 12);
  auto tagged = fixtures::tag_pretagged(lines);
  CorpusModel model = build_model(tagged);

  uint64_t with_lexical = 0, lexical_tokens = 0, position_pairs = 0;
  for (const auto& s : tagged) {
    uint64_t L = 0;
    for (const auto& tok : s.tokens)
      if (tok.pos_class.is_lexical()) ++L;
    if (L > 0) ++with_lexical;
    lexical_tokens += L;
    position_pairs += L * (L - 1) / 2;
  }
  uint64_t template_mass = 0, unigram_mass = 0, pair_mass = 0;
  for (const auto& [k, v] : model.templates) template_mass += v;
  for (const auto& [k, v] : model.unigrams) unigram_mass += v;
  for (const auto& [h, tails] : model.pairs)
    for (const auto& [t, v] : tails) pair_mass += v;

  require(model.sentence_count == 10000, "sentence count drifted");
  require(template_mass == with_lexical,
          "template mass != sentences with lexical tokens");
  require(unigram_mass == lexical_tokens, "unigram mass != total tokens");
  require(pair_mass == position_pairs, "pair mass != sum L(L-1)/2");
}

void criterion4_data_efficiency() {
  auto start = std::chrono::steady_clock::now();
  auto tagger = make_builtin_tagger();
  auto lines = read_lines(fs::path(TOCA_DATA_DIR) / "fixtures/captions56.txt");
  require(lines.size() == 56, "fixture must hold exactly 56 captions");
  CorpusModel model = build_model(tag_corpus(lines, *tagger));
  SamplerIndex index(model);

  auto prompts = generate_prompts(index, 1000, Tau::infinite(), 2024);
  require(prompts.size() == 1000, "generate_prompts fell short of 1000");
  std::set<std::string> distinct;
  for (const auto& p : prompts) distinct.insert(p.slotted_text);
  require(distinct.size() == 1000, "slotted prompts are not pairwise distinct");
  require(seconds_since(start) < 60.0, "prompt generation exceeded 60s");

  StreamPromptSource source(PromptStream(index, Tau::infinite(), 2024));
  SynthesisConfig cfg;
  cfg.target_m = 1000;
  SynthesisRun run = synthesize_dataset(source, cfg, [](const SlottedPrompt& p) {
    return mock_fill(p, MockMode::Echo);
  });
  require(run.accepted_count == 1000, "echo synthesis fell short of m=1000");
  require(!run.budget_exhausted, "echo synthesis exhausted its budget");
  std::set<std::string> captions;
  for (const auto& c : run.dataset) captions.insert(normalize_caption(c));
  require(captions.size() == 1000, "accepted captions are not deduplicated");
}

void criterion5_filter_fidelity() {
  size_t accepted = 0, mutated_checks = 0;
  for (const auto& row : fixtures::kPublishedExamples) {
    Decision d = accept_completion(row.completion, row.tokens);
    require(d.accepted == row.contains_all,
            std::string("filter disagrees on: ") + row.completion);
    if (!row.contains_all) continue;
    ++accepted;
    for (const std::string& token : row.tokens) {
      std::string mutated = remove_whole_word(row.completion, token);
      Decision md = accept_completion(mutated, row.tokens);
      require(!md.accepted, "mutated completion still accepted: " + mutated);
      require(md.reason == RejectReason::MissingToken,
              "mutation rejected for the wrong reason");
      require(md.missing_token == token,
              "mutation reported the wrong missing token");
      ++mutated_checks;
    }
  }
  require(accepted >= 40, "fixture unexpectedly small");
  require(mutated_checks >= 100, "mutation coverage unexpectedly small");
}

void criterion6_metrics_identity() {
  auto pretagged = fixtures::tag_pretagged(fixtures::kCorpusA);
  for (Granularity g : {Granularity::Token, Granularity::Structure}) {
    MetricsRow row = distribution_stats(pretagged, pretagged, g);
    require(row.p == 1.0 && row.r == 1.0 && row.pw == 1.0 && row.rw == 1.0 &&
                row.cosine == 1.0,
            "stats(X, X) is not exactly all ones");
  }
  auto tagger = make_builtin_tagger();
  auto d = tag_corpus({"dog runs"}, *tagger);
  auto t = tag_corpus({"dog sleeps"}, *tagger);
  MetricsRow row = distribution_stats(d, t, Granularity::Token);
  require(row.p == 0.5 && row.r == 0.5 && row.pw == 0.5 && row.rw == 0.5 &&
              row.cosine == 0.5,
          "two-sentence hand case is not exactly one half");
}

void criterion7_bound() {
  CorpusModel a = fixtures::model_from_pretagged(fixtures::kCorpusA);
  CorpusModel b = fixtures::model_from_pretagged(fixtures::kCorpusB);
  BoundReport ra = upper_bound(a);
  BoundReport rb = upper_bound(b);
  require(ra.exact_bound && *ra.exact_bound == 4, "corpus A bound != 4");
  require(rb.exact_bound && *rb.exact_bound == 4, "corpus B bound != 4");

  oracle::Corpus raw = oracle::lexical_view(fixtures::tag_pretagged(fixtures::kCorpusA));
  auto tmpl = StructureTemplate::parse("[N] [VBZ] .");
  uint64_t fills = oracle::count_full_fills(raw, tmpl->slot_classes());
  require(fills == 3, "corpus A has " + std::to_string(fills) +
                          " feasible fills, expected 3");
  require(fills <= *ra.exact_bound, "enumerated fills exceed the bound");
}

void criterion8_parallel_determinism() {
  fs::path dir = work_dir() / "jobs";
  fs::create_directories(dir);
  fs::path corpus = fs::path(TOCA_DATA_DIR) / "fixtures/captions56.txt";

  auto stage_files = [&](int jobs) {
    std::string tag = std::to_string(jobs);
    fs::path model = dir / ("model_" + tag + ".json");
    fs::path prompts = dir / ("prompts_" + tag + ".jsonl");
    fs::path dataset = dir / ("dataset_" + tag + ".txt");
    fs::path records = dir / ("records_" + tag + ".jsonl");
    require(run_cli("deconstruct --corpus " + corpus.string() + " --jobs " +
                    tag + " --out " + model.string()) == 0,
            "deconstruct failed");
    require(run_cli("sample --model " + model.string() +
                    " -n 500 --tau inf --seed 99 --jobs " + tag + " --out " +
                    prompts.string()) == 0,
            "sample failed");
    require(run_cli("synth --prompts " + prompts.string() +
                    " --mock echo -m 300 --jobs " + tag + " --out " +
                    dataset.string() + " --records " + records.string()) == 0,
            "synth failed");
    return std::tuple{slurp(model), slurp(prompts), slurp(dataset),
                      slurp(records)};
  };

  auto [m1, p1, d1, r1] = stage_files(1);
  auto [m8, p8, d8, r8] = stage_files(8);
  require(m1 == m8, "model files differ between --jobs 1 and --jobs 8");
  require(p1 == p8, "prompts files differ between --jobs 1 and --jobs 8");
  require(d1 == d8, "datasets differ between --jobs 1 and --jobs 8");
  require(r1 == r8, "records differ between --jobs 1 and --jobs 8");
  require(!d1.empty(), "dataset is empty");
}

void criterion9_wire_protocol() {
  using testsupport::FakeEndpoint;
  using testsupport::chat_response;

  // Exact body, golden-file pinned.
  SlottedPrompt prompt;
  prompt.id = 0;
  prompt.slotted_text = "[ ] dog [ ] runs [ ] .";
  prompt.required = {"dog", "runs"};
  EndpointConfig cfg;
  std::string golden = slurp(fs::path(TOCA_GOLDEN_DIR) / "chat_request.json");
  if (!golden.empty() && golden.back() == '\n') golden.pop_back();
  require(render_request(prompt, cfg) == golden,
          "request body differs from the golden file");

  // Two 500s then success: three attempts, one result.
  std::atomic<int> hits{0};
  std::string seen_body;
  std::atomic<int> active{0}, peak{0};
  FakeEndpoint server([&](const httplib::Request& req, httplib::Response& res) {
    int now = ++active;
    int prev = peak.load();
    while (now > prev && !peak.compare_exchange_weak(prev, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    --active;
    int n = ++hits;
    if (n <= 2) {
      res.status = 500;
    } else {
      if (seen_body.empty()) seen_body = req.body;
      res.set_content(chat_response("a dog runs ."), "application/json");
    }
  });
  cfg.base_url = server.base_url();
  cfg.retry_base_delay_s = 0.01;
  cfg.max_in_flight = 2;
  CompletionClient client(cfg);
  Completion first = client.complete(prompt);
  require(first.attempts == 3, "expected 3 attempts after two 500s, got " +
                                   std::to_string(first.attempts));
  require(seen_body == golden, "endpoint received a different body");

  // Eight prompts through a gate of two: the endpoint never sees more than
  // two requests in flight.
  std::vector<std::thread> callers;
  for (int i = 0; i < 8; ++i)
    callers.emplace_back([&client, i] {
      SlottedPrompt p;
      p.id = static_cast<uint64_t>(i);
      p.slotted_text = "[ ] dog [ ] runs [ ] .";
      p.required = {"dog", "runs"};
      client.complete(p);
    });
  for (auto& t : callers) t.join();
  require(peak.load() <= 2, "observed " + std::to_string(peak.load()) +
                                " concurrent requests with max_in_flight=2");
}

void criterion10_report_format() {
  auto tagger = make_builtin_tagger();
  auto d = tag_corpus({"dog runs"}, *tagger);
  auto t = tag_corpus({"dog sleeps"}, *tagger);
  MetricsRow token_row = distribution_stats(d, t, Granularity::Token);
  MetricsRow structure_row = distribution_stats(d, t, Granularity::Structure);
  BoundReport bound = upper_bound(fixtures::model_from_pretagged(fixtures::kCorpusA));
  std::string report =
      metrics_report(token_row, structure_row, bound).dump(2) + "\n";
  std::string golden = slurp(fs::path(TOCA_GOLDEN_DIR) / "metrics_report.json");
  require(report == golden, "metrics report differs from the golden layout");

  // Row/column structure: both granularities, all five statistics, both as
  // fractions and one-decimal percentages.
  auto doc = nlohmann::json::parse(report);
  for (const char* row : {"token", "structure"}) {
    require(doc.contains(row), "report lacks a granularity row");
    for (const char* col : {"p", "r", "p_w", "r_w", "cosine"}) {
      require(doc[row].contains(col), "report row lacks a statistic");
      require(doc[row]["percent"].contains(col),
              "report row lacks a percentage");
    }
  }
  require(doc.contains("bound"), "report lacks the bound block");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void()> fn;
  };
  const std::vector<Criterion> criteria = {
      {1, "sampler oracle equivalence (tau in {1,2,inf}, <=1e-12, <5s)",
       criterion1_oracle_equivalence},
      {2, "empirical sampling of corpus-B slot 2 (L1 < 0.01, <10s)",
       criterion2_empirical_sampling},
      {3, "count conservation on a 10k-line fixture (exact)",
       criterion3_count_conservation},
      {4, "data efficiency: 56 captions -> 1000 distinct prompts and m=1000",
       criterion4_data_efficiency},
      {5, "filter fidelity on published prompt/completion fixtures",
       criterion5_filter_fidelity},
      {6, "metrics identity and two-sentence hand case (exact)",
       criterion6_metrics_identity},
      {7, "bound correctness on corpora A and B (exact_bound 4, fills <= bound)",
       criterion7_bound},
      {8, "determinism under parallelism (--jobs 1 vs 8, byte-identical)",
       criterion8_parallel_determinism},
      {9, "wire-protocol conformance (golden body, retries, in-flight cap)",
       criterion9_wire_protocol},
      {10, "metrics report row/column structure (golden file)",
       criterion10_report_format},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    try {
      c.fn();
      std::printf("PASS  criterion %2d  %s  (%.2fs)\n", c.id, c.name,
                  seconds_since(start));
    } catch (const std::exception& e) {
      ++failures;
      std::printf("FAIL  criterion %2d  %s: %s\n", c.id, c.name, e.what());
    }
    std::fflush(stdout);
  }
  if (failures == 0)
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures;
}
