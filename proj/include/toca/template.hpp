#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toca/pos.hpp"
#include "toca/tagger.hpp"

namespace toca {

/// One element of a structure template: either a function word kept
/// verbatim or a slot to be filled with a lexical word of a given class.
struct TemplateElement {
  enum class Kind : uint8_t { Word, Slot };
  Kind kind;
  std::string word;  // valid when kind == Word
  SlotClass slot;    // valid when kind == Slot

  static TemplateElement make_word(std::string w) {
    return {Kind::Word, std::move(w), SlotClass::N};
  }
  static TemplateElement make_slot(SlotClass c) { return {Kind::Slot, {}, c}; }

  bool operator==(const TemplateElement&) const = default;
};

/// Sentence skeleton: function words interleaved with POS-class slots,
/// e.g. "[N] [VBG] in [N] .". Always contains at least one slot.
struct StructureTemplate {
  std::vector<TemplateElement> elements;

  /// Slots rendered as "[N]", words verbatim, single-space separated.
  /// parse(canonical_form()) round-trips.
  std::string canonical_form() const;

  size_t slot_count() const;
  /// Classes of the slots in template order.
  std::vector<SlotClass> slot_classes() const;
  /// Element index of each slot, in slot order.
  std::vector<size_t> slot_positions() const;

  static std::optional<StructureTemplate> parse(std::string_view canonical);

  bool operator==(const StructureTemplate&) const = default;
};

/// Applies the template function per token: function words kept, lexical
/// words become slots, everything else is omitted. Absent when the result
/// would contain no slot.
std::optional<StructureTemplate> template_of(const TaggedSentence& sentence);

}  // namespace toca
