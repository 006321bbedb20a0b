#include "toca/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <thread>
#include <unordered_set>

#include "toca/error.hpp"
#include "toca/kernels.hpp"

namespace toca {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Products of pair counts overflow double on long templates; accumulate in
// log space beyond this history length.
constexpr size_t kLogSpaceHistoryLen = 8;

}  // namespace

Tau Tau::infinite() { return Tau(kInf); }

Tau Tau::finite(double value) {
  if (!(value > 0.0) || std::isnan(value))
    throw ConfigError("tau must be a positive real or 'inf'");
  return Tau(value);
}

Tau Tau::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "INF")
    return infinite();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("cannot parse tau value: '" + std::string(text) + "'");
  if (std::isinf(v)) return infinite();
  return finite(v);
}

bool Tau::is_infinite() const { return std::isinf(value_); }

double Tau::value() const { return value_; }

double Tau::suppress_exponent(size_t history_len) const {
  if (is_infinite() || history_len < 2) return 0.0;
  return static_cast<double>(history_len - 1) / value_;
}

std::string Tau::to_string() const {
  if (is_infinite()) return "inf";
  std::string s = std::to_string(value_);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

SamplerIndex::SamplerIndex(const CorpusModel& model) {
  std::vector<double> template_weights;
  templates_.reserve(model.templates.size());
  template_weights.reserve(model.templates.size());
  for (const auto& [canonical, count] : model.templates) {
    auto tmpl = StructureTemplate::parse(canonical);
    if (!tmpl)
      throw CorruptFileError("model contains a malformed template: '" +
                             canonical + "'");
    templates_.push_back(std::move(*tmpl));
    template_weights.push_back(static_cast<double>(count));
  }
  if (!templates_.empty())
    template_pick_ = AliasTable(template_weights);

  // model.unigrams iterates in sorted LexId order, so every class vocabulary
  // comes out sorted as well.
  for (const auto& [id, count] : model.unigrams) {
    ClassVocab& cv = vocab_[static_cast<size_t>(id.cls)];
    cv.ids.push_back(id);
    cv.counts.push_back(static_cast<double>(count));
  }
  std::array<std::map<LexId, uint32_t>, kSlotClassCount> position;
  for (size_t c = 0; c < kSlotClassCount; ++c) {
    ClassVocab& cv = vocab_[c];
    if (!cv.ids.empty()) cv.pick = AliasTable(cv.counts);
    for (uint32_t i = 0; i < cv.ids.size(); ++i) position[c][cv.ids[i]] = i;
  }

  for (const auto& [head, tails] : model.pairs) {
    Postings& row = postings_[head];
    for (const auto& [tail, count] : tails) {
      size_t c = static_cast<size_t>(tail.cls);
      auto it = position[c].find(tail);
      // A pair tail absent from the unigrams would break the class vocab
      // lookup; the model invariant guarantees it is present.
      if (it == position[c].end())
        throw CorruptFileError("pair tail '" + tail.key() +
                               "' missing from unigrams");
      row[c].emplace_back(it->second, static_cast<double>(count));
    }
  }
}

const StructureTemplate& SamplerIndex::sample_template(SplitMix64& rng) const {
  if (templates_.empty())
    throw EmptyModelError("cannot sample a template from an empty model");
  return templates_[template_pick_.sample(rng)];
}

double SamplerIndex::raw_weights(const std::vector<LexId>& history,
                                 SlotClass cls, Tau tau,
                                 std::vector<double>& w) const {
  const ClassVocab& cv = vocab_[static_cast<size_t>(cls)];
  size_t k = cv.ids.size();
  w.assign(k, 0.0);
  if (k == 0) return 0.0;

  if (history.empty()) {
    w = cv.counts;
    return kernels::sum(w.data(), k);
  }

  auto tails_of = [&](const LexId& head) -> const std::vector<std::pair<uint32_t, double>>* {
    auto it = postings_.find(head);
    if (it == postings_.end()) return nullptr;
    return &it->second[static_cast<size_t>(cls)];
  };

  double e = tau.suppress_exponent(history.size());

  if (history.size() <= kLogSpaceHistoryLen) {
    // Dense product of per-history factor arrays.
    std::vector<double> factor(k, 0.0);
    bool first = true;
    for (const LexId& head : history) {
      const auto* tails = tails_of(head);
      if (!tails || tails->empty()) {
        w.assign(k, 0.0);
        return 0.0;  // this head pairs with nothing of this class
      }
      if (first) {
        for (const auto& [idx, count] : *tails) w[idx] = count;
        first = false;
      } else {
        std::fill(factor.begin(), factor.end(), 0.0);
        for (const auto& [idx, count] : *tails) factor[idx] = count;
        kernels::mul_inplace(w.data(), factor.data(), k);
      }
    }
    if (e != 0.0) {
      for (size_t i = 0; i < k; ++i)
        if (w[i] > 0.0) w[i] /= std::pow(cv.counts[i], e);
    }
    return kernels::sum(w.data(), k);
  }

  // Log-space accumulation for long histories.
  std::vector<double> lw(k, 0.0);
  std::vector<double> factor(k, -kInf);
  bool first = true;
  for (const LexId& head : history) {
    const auto* tails = tails_of(head);
    if (!tails || tails->empty()) return 0.0;
    if (first) {
      lw.assign(k, -kInf);
      for (const auto& [idx, count] : *tails) lw[idx] = std::log(count);
      first = false;
    } else {
      std::fill(factor.begin(), factor.end(), -kInf);
      for (const auto& [idx, count] : *tails) factor[idx] = std::log(count);
      kernels::add_inplace(lw.data(), factor.data(), k);
    }
  }
  if (e != 0.0) {
    for (size_t i = 0; i < k; ++i)
      if (lw[i] != -kInf) lw[i] -= e * std::log(cv.counts[i]);
  }
  double peak = kernels::max_value(lw.data(), k);
  if (peak == -kInf) return 0.0;
  for (size_t i = 0; i < k; ++i)
    w[i] = lw[i] == -kInf ? 0.0 : std::exp(lw[i] - peak);
  return kernels::sum(w.data(), k);
}

std::map<LexId, double> SamplerIndex::candidate_weights(
    const std::vector<LexId>& history, SlotClass cls, Tau tau) const {
  std::vector<double> w;
  double total = raw_weights(history, cls, tau, w);
  std::map<LexId, double> out;
  if (!(total > 0.0)) return out;
  kernels::scale(w.data(), 1.0 / total, w.size());
  const ClassVocab& cv = vocab_[static_cast<size_t>(cls)];
  for (size_t i = 0; i < w.size(); ++i)
    if (w[i] > 0.0) out.emplace(cv.ids[i], w[i]);
  return out;
}

std::optional<LexId> SamplerIndex::sample_candidate(
    const std::vector<LexId>& history, SlotClass cls, Tau tau,
    SplitMix64& rng) const {
  const ClassVocab& cv = vocab_[static_cast<size_t>(cls)];
  if (cv.ids.empty()) return std::nullopt;

  if (history.empty()) return cv.ids[cv.pick.sample(rng)];

  std::vector<double> w;
  double total = raw_weights(history, cls, tau, w);
  if (!(total > 0.0)) return std::nullopt;
  double r = rng.next_double() * total;
  double acc = 0.0;
  size_t last = w.size();
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= 0.0) continue;
    acc += w[i];
    last = i;
    if (r < acc) return cv.ids[i];
  }
  // Rounding residue: fall back to the last positive candidate.
  return cv.ids[last];
}

FilledTemplate SamplerIndex::fill_slots(const StructureTemplate& tmpl, Tau tau,
                                        SplitMix64& rng) const {
  FilledTemplate out;
  out.tmpl = tmpl;
  std::vector<LexId> history;
  size_t slot_index = 0;
  for (const TemplateElement& e : tmpl.elements) {
    if (e.kind != TemplateElement::Kind::Slot) continue;
    if (auto token = sample_candidate(history, e.slot, tau, rng)) {
      out.fills.emplace_back(slot_index, *token);
      history.push_back(*token);
    } else {
      out.dropped_slots.push_back(slot_index);
    }
    ++slot_index;
  }
  if (out.fills.empty())
    throw AllSlotsDroppedError("template '" + tmpl.canonical_form() +
                               "' is infeasible under this model");
  return out;
}

SlottedPrompt render_slotted(const FilledTemplate& filled) {
  if (filled.fills.empty())
    throw Error("render_slotted needs at least one filled slot");
  SlottedPrompt out;
  out.filled = filled;

  std::map<size_t, const LexId*> by_slot;
  for (const auto& [slot, id] : filled.fills) by_slot[slot] = &id;

  std::string text;
  size_t slot_index = 0;
  auto append = [&text](std::string_view piece) {
    if (!text.empty()) text += ' ';
    text += "[ ] ";
    text += piece;
  };
  for (const TemplateElement& e : filled.tmpl.elements) {
    if (e.kind == TemplateElement::Kind::Word) {
      append(e.word);
    } else {
      if (auto it = by_slot.find(slot_index); it != by_slot.end()) {
        append(it->second->surface);
        out.required.push_back(it->second->surface);
      }
      ++slot_index;
    }
  }
  out.slotted_text = std::move(text);
  return out;
}

namespace {

std::optional<SlottedPrompt> try_prompt_attempt(const SamplerIndex& index,
                                                Tau tau, uint64_t master_seed,
                                                uint64_t attempt) {
  SplitMix64 rng(derive_stream(master_seed, attempt));
  const StructureTemplate& tmpl = index.sample_template(rng);
  try {
    FilledTemplate filled = index.fill_slots(tmpl, tau, rng);
    return render_slotted(filled);
  } catch (const AllSlotsDroppedError&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<SlottedPrompt> generate_prompts(const SamplerIndex& index,
                                            uint64_t count, Tau tau,
                                            uint64_t master_seed, int jobs,
                                            uint64_t attempt_budget) {
  if (!index.has_templates())
    throw EmptyModelError("cannot generate prompts from an empty model");
  if (attempt_budget == 0) attempt_budget = 50 * count;

  std::vector<SlottedPrompt> out;
  out.reserve(count);
  std::unordered_set<std::string> seen;

  // Attempts are evaluated in fixed-size batches (possibly in parallel) and
  // committed strictly in attempt order, so the result does not depend on
  // the worker count.
  constexpr uint64_t kBatch = 256;
  uint64_t next_attempt = 0;
  while (out.size() < count && next_attempt < attempt_budget) {
    uint64_t batch = std::min(kBatch, attempt_budget - next_attempt);
    std::vector<std::optional<SlottedPrompt>> candidates(batch);
    int workers = std::max(1, jobs);
    if (workers <= 1 || batch < 2) {
      for (uint64_t i = 0; i < batch; ++i)
        candidates[i] =
            try_prompt_attempt(index, tau, master_seed, next_attempt + i);
    } else {
      std::vector<std::thread> pool;
      std::atomic<uint64_t> cursor{0};
      for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
          for (uint64_t i; (i = cursor.fetch_add(1)) < batch;)
            candidates[i] =
                try_prompt_attempt(index, tau, master_seed, next_attempt + i);
        });
      }
      for (auto& t : pool) t.join();
    }
    for (uint64_t i = 0; i < batch && out.size() < count; ++i) {
      if (!candidates[i]) continue;
      SlottedPrompt& p = *candidates[i];
      if (!seen.insert(p.slotted_text).second) continue;
      p.id = out.size();
      out.push_back(std::move(p));
    }
    next_attempt += batch;
  }

  if (out.size() < count)
    throw BudgetExhaustedError(
        "found only " + std::to_string(out.size()) + " of " +
        std::to_string(count) + " distinct prompts within " +
        std::to_string(attempt_budget) + " attempts");
  return out;
}

PromptStream::PromptStream(const SamplerIndex& index, Tau tau,
                           uint64_t master_seed)
    : index_(index), tau_(tau), master_seed_(master_seed) {}

std::optional<SlottedPrompt> PromptStream::next() {
  if (!index_.has_templates()) return std::nullopt;
  while (attempt_ < 50 * (emitted_ + 1)) {
    auto candidate = try_prompt_attempt(index_, tau_, master_seed_, attempt_);
    ++attempt_;
    if (!candidate) continue;
    if (!seen_.insert(candidate->slotted_text).second) continue;
    candidate->id = emitted_++;
    return candidate;
  }
  return std::nullopt;
}

}  // namespace toca
