#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "toca/llm.hpp"
#include "toca/sampler.hpp"

namespace toca {

struct FilterLimits {
  bool strict_order = false;  // also require tokens in prompt order
  size_t max_words = 50;
};

enum class RejectReason : uint8_t {
  None,
  MissingToken,
  ResidualMask,
  Multiline,
  TooLong,
  Duplicate,
};

std::string_view to_string(RejectReason r);

struct Decision {
  bool accepted = false;
  RejectReason reason = RejectReason::None;
  std::string missing_token;  // set for MissingToken
};

/// The containment filter: accepted iff every required surface occurs as a
/// case-insensitive whole word, no "[" remains, the completion is a single
/// line and it is not longer than max_words. Total; never throws.
Decision accept_completion(std::string_view completion,
                           const std::vector<std::string>& required,
                           const FilterLimits& limits = {});

struct SynthesisRecord {
  uint64_t prompt_id = 0;
  std::string slotted;
  std::string completion;
  bool accepted = false;
  RejectReason reject_reason = RejectReason::None;
  std::string missing_token;
};

struct SynthesisRun {
  uint64_t target_m = 0;
  uint64_t accepted_count = 0;
  uint64_t attempted_count = 0;
  uint64_t budget = 0;
  bool budget_exhausted = false;
  std::vector<SynthesisRecord> records;  // in prompt-id order
  std::vector<std::string> dataset;      // accepted captions, prompt-id order
};

struct SynthesisConfig {
  uint64_t target_m = 1;
  uint64_t budget = 0;  // completion attempts; 0 means 20 * target_m
  FilterLimits limits;
  int jobs = 1;  // concurrent completions
};

/// Where the synthesis loop draws its prompts from: a live sampler stream
/// or a previously written prompts file.
class PromptSource {
 public:
  virtual ~PromptSource() = default;
  virtual std::optional<SlottedPrompt> next() = 0;
};

class StreamPromptSource final : public PromptSource {
 public:
  explicit StreamPromptSource(PromptStream stream) : stream_(std::move(stream)) {}
  std::optional<SlottedPrompt> next() override { return stream_.next(); }

 private:
  PromptStream stream_;
};

class VectorPromptSource final : public PromptSource {
 public:
  explicit VectorPromptSource(std::vector<SlottedPrompt> prompts)
      : prompts_(std::move(prompts)) {}
  std::optional<SlottedPrompt> next() override {
    if (cursor_ >= prompts_.size()) return std::nullopt;
    return prompts_[cursor_++];
  }

 private:
  std::vector<SlottedPrompt> prompts_;
  size_t cursor_ = 0;
};

using CompleterFn = std::function<Completion(const SlottedPrompt&)>;

/// Draws prompts, completes them (concurrently, up to cfg.jobs at a time),
/// filters, and deduplicates accepted completions by normalized string,
/// until target_m captions are accepted or the attempt budget (or the
/// prompt source) runs out. Records and dataset come out in prompt-id
/// order, so equal inputs give equal outputs for any worker count.
SynthesisRun synthesize_dataset(PromptSource& prompts,
                                const SynthesisConfig& cfg,
                                const CompleterFn& complete);

/// Dedup key: lowercased, whitespace-collapsed.
std::string normalize_caption(std::string_view text);

}  // namespace toca
