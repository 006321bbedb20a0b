#include "toca/acceptor.hpp"

#include <atomic>
#include <thread>
#include <unordered_set>

#include "toca/text.hpp"

namespace toca {

std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::None: return "none";
    case RejectReason::MissingToken: return "missing-token";
    case RejectReason::ResidualMask: return "residual-mask";
    case RejectReason::Multiline: return "multiline";
    case RejectReason::TooLong: return "too-long";
    case RejectReason::Duplicate: return "duplicate";
  }
  return "?";
}

Decision accept_completion(std::string_view completion,
                           const std::vector<std::string>& required,
                           const FilterLimits& limits) {
  if (completion.find('\n') != std::string_view::npos ||
      completion.find('\r') != std::string_view::npos)
    return {false, RejectReason::Multiline, {}};
  if (completion.find('[') != std::string_view::npos)
    return {false, RejectReason::ResidualMask, {}};
  if (count_words(completion) > limits.max_words)
    return {false, RejectReason::TooLong, {}};
  size_t from = 0;
  for (const std::string& surface : required) {
    size_t pos = find_whole_word(completion, surface, from);
    if (pos == std::string_view::npos)
      return {false, RejectReason::MissingToken, surface};
    if (limits.strict_order) from = pos + surface.size();
  }
  return {true, RejectReason::None, {}};
}

std::string normalize_caption(std::string_view text) {
  return collapse_whitespace(lowercased(text));
}

SynthesisRun synthesize_dataset(PromptSource& prompts,
                                const SynthesisConfig& cfg,
                                const CompleterFn& complete) {
  SynthesisRun run;
  run.target_m = cfg.target_m;
  run.budget = cfg.budget == 0 ? 20 * cfg.target_m : cfg.budget;

  std::unordered_set<std::string> seen;
  bool source_dry = false;

  while (run.accepted_count < run.target_m &&
         run.attempted_count < run.budget && !source_dry) {
    // Fixed batch geometry: jobs only adds workers, never changes results.
    uint64_t want = std::min<uint64_t>(
        {8, run.budget - run.attempted_count,
         std::max<uint64_t>(run.target_m - run.accepted_count, 1)});
    std::vector<SlottedPrompt> batch;
    batch.reserve(want);
    for (uint64_t i = 0; i < want; ++i) {
      auto p = prompts.next();
      if (!p) {
        source_dry = true;
        break;
      }
      batch.push_back(std::move(*p));
    }
    if (batch.empty()) break;

    std::vector<Completion> done(batch.size());
    int workers = std::clamp<int>(cfg.jobs, 1, static_cast<int>(batch.size()));
    if (workers <= 1) {
      for (size_t i = 0; i < batch.size(); ++i) done[i] = complete(batch[i]);
    } else {
      std::vector<std::thread> pool;
      std::atomic<size_t> cursor{0};
      std::vector<std::exception_ptr> errs(workers);
      for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
          try {
            for (size_t i; (i = cursor.fetch_add(1)) < batch.size();)
              done[i] = complete(batch[i]);
          } catch (...) {
            errs[t] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& err : errs)
        if (err) std::rethrow_exception(err);
    }

    // Filter and dedup strictly in prompt-id order.
    for (size_t i = 0; i < batch.size(); ++i) {
      const SlottedPrompt& p = batch[i];
      SynthesisRecord rec;
      rec.prompt_id = p.id;
      rec.slotted = p.slotted_text;
      rec.completion = done[i].text;
      Decision d = accept_completion(rec.completion, p.required, cfg.limits);
      if (d.accepted && !seen.insert(normalize_caption(rec.completion)).second)
        d = {false, RejectReason::Duplicate, {}};
      rec.accepted = d.accepted;
      rec.reject_reason = d.reason;
      rec.missing_token = d.missing_token;
      if (rec.accepted) {
        run.dataset.push_back(rec.completion);
        ++run.accepted_count;
      }
      ++run.attempted_count;
      run.records.push_back(std::move(rec));
      if (run.accepted_count == run.target_m) break;
    }
  }

  run.budget_exhausted = run.accepted_count < run.target_m;
  return run;
}

}  // namespace toca
