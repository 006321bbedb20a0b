#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "toca/corpus_model.hpp"
#include "toca/tagger.hpp"

namespace toca {

enum class Granularity : uint8_t { Token, Structure };

std::string_view to_string(Granularity g);

/// One row of the corpus-distance report: precision/recall over the atom
/// vocabularies, their frequency-weighted variants, and the cosine of the
/// two count vectors. All values in [0, 1].
struct MetricsRow {
  Granularity granularity = Granularity::Token;
  double p = 0.0;
  double r = 0.0;
  double pw = 0.0;
  double rw = 0.0;
  double cosine = 0.0;
};

/// Combinatorial ceiling on the number of distinct synthesizable sentences:
/// sum over templates of the product of per-slot class vocabulary sizes.
struct BoundReport {
  double log10_bound = 0.0;  // -inf when the bound is zero
  std::optional<uint64_t> exact_bound;  // present while the sum fits 10^18
  uint64_t per_template_terms = 0;
};

/// Atom counts at the given granularity: lexical (surface, class) ids for
/// Token, canonical template strings for Structure. Function words are
/// excluded from the token universe.
std::map<std::string, uint64_t> atom_counts(
    const std::vector<TaggedSentence>& corpus, Granularity granularity);

/// The five distance statistics between a synthesized corpus and a target
/// corpus. Throws EmptyModelError when either corpus has no atoms at the
/// requested granularity.
MetricsRow distribution_stats(const std::vector<TaggedSentence>& d_corpus,
                              const std::vector<TaggedSentence>& t_corpus,
                              Granularity granularity);

BoundReport upper_bound(const CorpusModel& model);

/// Report document with Table-style rows: fractions plus percentages
/// rounded to one decimal.
nlohmann::json metrics_report(const MetricsRow& token_row,
                              const MetricsRow& structure_row,
                              const std::optional<BoundReport>& bound);

/// Fixed-width text rendering of the two rows (percent values).
std::string metrics_table(const MetricsRow& token_row,
                          const MetricsRow& structure_row);

}  // namespace toca
