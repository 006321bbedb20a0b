#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "toca/alias_table.hpp"
#include "toca/corpus_model.hpp"
#include "toca/rng.hpp"
#include "toca/template.hpp"

namespace toca {

/// Diversity temperature of the tempered conditional sampler. A smaller
/// finite value suppresses high-frequency words harder; infinity disables
/// suppression entirely (the default).
class Tau {
 public:
  static Tau infinite();
  static Tau finite(double value);            // throws ConfigError unless > 0
  static Tau parse(std::string_view text);    // "inf", "infinity" or a number

  bool is_infinite() const;
  double value() const;  // +inf when infinite

  /// Exponent (i-1)/tau on the candidate's unigram count for a history of
  /// i tokens. Zero for infinite tau and for histories shorter than 2.
  double suppress_exponent(size_t history_len) const;

  std::string to_string() const;

 private:
  explicit Tau(double v) : value_(v) {}
  double value_;
};

/// A template with its slots resolved: each slot either carries a sampled
/// token or was dropped because no candidate had positive weight.
struct FilledTemplate {
  StructureTemplate tmpl;
  std::vector<std::pair<size_t, LexId>> fills;  // (slot index, token), in order
  std::vector<size_t> dropped_slots;            // slot indices, in order
};

/// The mask-marked prompt handed to the LLM.
struct SlottedPrompt {
  uint64_t id = 0;
  FilledTemplate filled;
  std::string slotted_text;
  std::vector<std::string> required;  // fill surfaces, in order
};

/// Read-only sampling view of a CorpusModel: per-class vocabularies with
/// alias tables for the static distributions, and pair postings for the
/// conditional weights. Immutable after construction, safe to share across
/// workers.
class SamplerIndex {
 public:
  explicit SamplerIndex(const CorpusModel& model);

  bool has_templates() const { return !templates_.empty(); }
  uint64_t template_count() const { return templates_.size(); }

  /// Draws a template with probability proportional to its corpus count.
  /// Throws EmptyModelError when the model has no templates.
  const StructureTemplate& sample_template(SplitMix64& rng) const;

  /// Normalized candidate distribution for a slot of class `cls` given the
  /// tokens already filled. Empty history weights by unigram counts; a
  /// nonempty history weights by the product of pair counts with every
  /// history token, tempered by tau. An empty map marks an infeasible slot.
  std::map<LexId, double> candidate_weights(const std::vector<LexId>& history,
                                            SlotClass cls, Tau tau) const;

  /// Samples one candidate from exactly the candidate_weights distribution.
  std::optional<LexId> sample_candidate(const std::vector<LexId>& history,
                                        SlotClass cls, Tau tau,
                                        SplitMix64& rng) const;

  /// Walks the slots left to right, sampling each one and dropping slots
  /// with no feasible candidate. Throws AllSlotsDroppedError when nothing
  /// could be filled.
  FilledTemplate fill_slots(const StructureTemplate& tmpl, Tau tau,
                            SplitMix64& rng) const;

 private:
  struct ClassVocab {
    std::vector<LexId> ids;       // sorted
    std::vector<double> counts;   // unigram counts, aligned with ids
    AliasTable pick;              // empty-history draw, weights = counts
  };
  using Postings =
      std::array<std::vector<std::pair<uint32_t, double>>, kSlotClassCount>;

  // Raw (unnormalized) weights over vocab_[cls]; returns their sum.
  double raw_weights(const std::vector<LexId>& history, SlotClass cls, Tau tau,
                     std::vector<double>& w) const;

  std::vector<StructureTemplate> templates_;
  AliasTable template_pick_;
  std::array<ClassVocab, kSlotClassCount> vocab_;
  std::map<LexId, Postings> postings_;  // head token -> tails per class
};

/// Renders the mask-marked prompt: "[ ] " before every retained element,
/// dropped slots leave no trace. The filled template must have >= 1 fill.
SlottedPrompt render_slotted(const FilledTemplate& filled);

/// Emits exactly `count` prompts with pairwise-distinct slotted text, ids
/// 0..count-1. Prompt k is produced from the substream derived from
/// (master_seed, attempt index); duplicates and infeasible attempts are
/// discarded and retried. Throws BudgetExhaustedError when `count` distinct
/// prompts cannot be found within the attempt budget (default 50 * count).
/// Output is identical for any `jobs` value.
std::vector<SlottedPrompt> generate_prompts(const SamplerIndex& index,
                                            uint64_t count, Tau tau,
                                            uint64_t master_seed, int jobs = 1,
                                            uint64_t attempt_budget = 0);

/// Pull-based variant of generate_prompts for the synthesis loop: yields
/// the same prompts in the same order for equal seeds. next() returns
/// nullopt once finding the (k+1)-th distinct prompt would exceed
/// 50 * (k + 1) total attempts. Holds a reference; the index must outlive
/// the stream.
class PromptStream {
 public:
  PromptStream(const SamplerIndex& index, Tau tau, uint64_t master_seed);

  std::optional<SlottedPrompt> next();

  uint64_t emitted() const { return emitted_; }
  uint64_t attempts() const { return attempt_; }

 private:
  const SamplerIndex& index_;
  Tau tau_;
  uint64_t master_seed_;
  uint64_t attempt_ = 0;
  uint64_t emitted_ = 0;
  std::set<std::string> seen_;
};

}  // namespace toca
