#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toca/pos.hpp"
#include "toca/tagger.hpp"

namespace toca {

/// Identity of a lexical word: surface plus slot class. Keying by class
/// keeps "play" the noun apart from "play" the verb.
struct LexId {
  std::string surface;  // lowercase, nonempty
  SlotClass cls = SlotClass::N;

  /// Rendering used for map keys in the model file, e.g. "dog|N".
  std::string key() const;
  static std::optional<LexId> from_key(std::string_view key);

  auto operator<=>(const LexId&) const = default;
};

/// Deconstructed corpus: template distribution, lexical unigram counts and
/// ordered pair counts. Partial models merge by pointwise sum.
struct CorpusModel {
  static constexpr int kFormatVersion = 1;

  int version = kFormatVersion;
  uint64_t sentence_count = 0;
  std::map<std::string, uint64_t> templates;  // canonical form -> occurrences
  std::map<LexId, uint64_t> unigrams;
  std::map<LexId, std::map<LexId, uint64_t>> pairs;  // head -> tail -> count

  /// Counts the sentence, its template (when it has one), its lexical
  /// unigrams and every ordered lexical pair (i < j, per position).
  void add_sentence(const TaggedSentence& sentence);

  bool empty() const { return templates.empty(); }

  bool operator==(const CorpusModel&) const = default;
};

CorpusModel build_model(const std::vector<TaggedSentence>& sentences);

/// Parallel fold: shards across `jobs` workers, combines with merge_models.
/// The result is independent of shard boundaries and worker count.
CorpusModel build_model_parallel(const std::vector<TaggedSentence>& sentences,
                                 int jobs);

/// Pointwise sum of all count maps. Throws VersionMismatchError.
CorpusModel merge_models(const CorpusModel& a, const CorpusModel& b);

/// Canonical serialization: sorted keys, fixed layout; equal models produce
/// byte-identical files. load(persist(m)) == m.
void persist_model(const CorpusModel& model, const std::filesystem::path& path);
CorpusModel load_model(const std::filesystem::path& path);

std::string model_to_string(const CorpusModel& model);
CorpusModel model_from_string(const std::string& text);

/// Compiles a prior-pairs file (`head_surface head_class tail_surface
/// tail_class [count]`, one pair per line) into a pairs-only model:
/// templates stay empty, unigram counts of both sides are raised so the
/// pair invariant (unigram >= pair count) holds after merging.
CorpusModel compile_extra_pairs(const std::filesystem::path& path);

}  // namespace toca
