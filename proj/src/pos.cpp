#include "toca/pos.hpp"

namespace toca {

std::string_view to_string(SlotClass c) {
  switch (c) {
    case SlotClass::N: return "N";
    case SlotClass::J: return "J";
    case SlotClass::R: return "R";
    case SlotClass::VB: return "VB";
    case SlotClass::VBD: return "VBD";
    case SlotClass::VBG: return "VBG";
    case SlotClass::VBN: return "VBN";
    case SlotClass::VBP: return "VBP";
    case SlotClass::VBZ: return "VBZ";
  }
  return "?";
}

std::optional<SlotClass> slot_class_from(std::string_view name) {
  if (name == "N") return SlotClass::N;
  if (name == "J") return SlotClass::J;
  if (name == "R") return SlotClass::R;
  if (name == "VB") return SlotClass::VB;
  if (name == "VBD") return SlotClass::VBD;
  if (name == "VBG") return SlotClass::VBG;
  if (name == "VBN") return SlotClass::VBN;
  if (name == "VBP") return SlotClass::VBP;
  if (name == "VBZ") return SlotClass::VBZ;
  return std::nullopt;
}

PosClass classify(std::string_view tag) {
  // Lexical set: nouns and adjectives/adverbs collapse, verbs keep subtags.
  if (tag == "NN" || tag == "NNS" || tag == "NNP" || tag == "NNPS")
    return PosClass::lexical(SlotClass::N);
  if (tag == "JJ" || tag == "JJR" || tag == "JJS")
    return PosClass::lexical(SlotClass::J);
  if (tag == "RB" || tag == "RBR" || tag == "RBS")
    return PosClass::lexical(SlotClass::R);
  if (tag == "VB") return PosClass::lexical(SlotClass::VB);
  if (tag == "VBD") return PosClass::lexical(SlotClass::VBD);
  if (tag == "VBG") return PosClass::lexical(SlotClass::VBG);
  if (tag == "VBN") return PosClass::lexical(SlotClass::VBN);
  if (tag == "VBP") return PosClass::lexical(SlotClass::VBP);
  if (tag == "VBZ") return PosClass::lexical(SlotClass::VBZ);

  // Function set: kept verbatim in structure templates.
  if (tag == "CC" || tag == "EX" || tag == "IN" || tag == "MD" ||
      tag == "WDT" || tag == "WP" || tag == "WP$" || tag == "WRB" ||
      tag == "," || tag == ".")
    return PosClass::function();

  return PosClass::dropped();
}

}  // namespace toca
