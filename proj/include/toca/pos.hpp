#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace toca {

/// Slot classes a lexical word can fill. Nouns, adjectives and adverbs are
/// collapsed to one class each; verbs keep their Penn subtag so that e.g.
/// a gerund slot is never filled with a past participle.
enum class SlotClass : uint8_t { N, J, R, VB, VBD, VBG, VBN, VBP, VBZ };

inline constexpr int kSlotClassCount = 9;

std::string_view to_string(SlotClass c);
std::optional<SlotClass> slot_class_from(std::string_view name);

/// Word class of a token: a lexical word (carries a SlotClass), a function
/// word kept verbatim in templates, or dropped from templates entirely.
class PosClass {
 public:
  enum class Kind : uint8_t { Lexical, Function, Dropped };

  static PosClass lexical(SlotClass c) { return PosClass(Kind::Lexical, c); }
  static PosClass function() { return PosClass(Kind::Function, SlotClass::N); }
  static PosClass dropped() { return PosClass(Kind::Dropped, SlotClass::N); }

  Kind kind() const { return kind_; }
  bool is_lexical() const { return kind_ == Kind::Lexical; }
  bool is_function() const { return kind_ == Kind::Function; }
  bool is_dropped() const { return kind_ == Kind::Dropped; }

  /// Valid only when is_lexical().
  SlotClass slot_class() const { return slot_; }

  bool operator==(const PosClass&) const = default;

 private:
  PosClass(Kind k, SlotClass c) : kind_(k), slot_(c) {}
  Kind kind_;
  SlotClass slot_;
};

/// Maps a Penn Treebank tag to its word class. Total: any tag outside the
/// lexical and function sets (DT, PRP, CD, TO, POS, ...) maps to Dropped.
PosClass classify(std::string_view penn_tag);

}  // namespace toca
