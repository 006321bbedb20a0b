#include "toca/template.hpp"

namespace toca {

std::string StructureTemplate::canonical_form() const {
  std::string out;
  for (const TemplateElement& e : elements) {
    if (!out.empty()) out += ' ';
    if (e.kind == TemplateElement::Kind::Word) {
      out += e.word;
    } else {
      out += '[';
      out += to_string(e.slot);
      out += ']';
    }
  }
  return out;
}

size_t StructureTemplate::slot_count() const {
  size_t n = 0;
  for (const TemplateElement& e : elements)
    if (e.kind == TemplateElement::Kind::Slot) ++n;
  return n;
}

std::vector<SlotClass> StructureTemplate::slot_classes() const {
  std::vector<SlotClass> out;
  for (const TemplateElement& e : elements)
    if (e.kind == TemplateElement::Kind::Slot) out.push_back(e.slot);
  return out;
}

std::vector<size_t> StructureTemplate::slot_positions() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < elements.size(); ++i)
    if (elements[i].kind == TemplateElement::Kind::Slot) out.push_back(i);
  return out;
}

std::optional<StructureTemplate> StructureTemplate::parse(
    std::string_view canonical) {
  StructureTemplate t;
  size_t i = 0;
  while (i < canonical.size()) {
    size_t end = canonical.find(' ', i);
    if (end == std::string_view::npos) end = canonical.size();
    std::string_view item = canonical.substr(i, end - i);
    if (item.empty()) return std::nullopt;  // double space or stray edge
    if (item.size() >= 3 && item.front() == '[' && item.back() == ']') {
      auto cls = slot_class_from(item.substr(1, item.size() - 2));
      if (!cls) return std::nullopt;
      t.elements.push_back(TemplateElement::make_slot(*cls));
    } else {
      t.elements.push_back(TemplateElement::make_word(std::string(item)));
    }
    i = end + 1;
  }
  if (t.elements.empty() || t.slot_count() == 0) return std::nullopt;
  return t;
}

std::optional<StructureTemplate> template_of(const TaggedSentence& sentence) {
  StructureTemplate t;
  for (const TaggedToken& tok : sentence.tokens) {
    switch (tok.pos_class.kind()) {
      case PosClass::Kind::Function:
        t.elements.push_back(TemplateElement::make_word(tok.surface));
        break;
      case PosClass::Kind::Lexical:
        t.elements.push_back(
            TemplateElement::make_slot(tok.pos_class.slot_class()));
        break;
      case PosClass::Kind::Dropped:
        break;
    }
  }
  if (t.slot_count() == 0) return std::nullopt;
  return t;
}

}  // namespace toca
