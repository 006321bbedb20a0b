#include "toca/io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "toca/error.hpp"

namespace toca {

using json = nlohmann::json;

std::string prompts_to_jsonl(const std::vector<SlottedPrompt>& prompts) {
  std::string out;
  for (const SlottedPrompt& p : prompts) {
    json tokens = json::array();
    for (const auto& [slot, id] : p.filled.fills)
      tokens.push_back(json{{"surface", id.surface},
                            {"class", std::string(to_string(id.cls))}});
    json line;
    line["id"] = p.id;
    line["template"] = p.filled.tmpl.canonical_form();
    line["tokens"] = std::move(tokens);
    line["dropped"] = p.filled.dropped_slots;
    line["slotted"] = p.slotted_text;
    out += line.dump();
    out += '\n';
  }
  return out;
}

void write_prompts(const std::vector<SlottedPrompt>& prompts,
                   const std::filesystem::path& path) {
  write_text_file(prompts_to_jsonl(prompts), path);
}

std::vector<SlottedPrompt> load_prompts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open prompts file: " + path.string());
  std::vector<SlottedPrompt> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json doc = json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.contains("id") || !doc.contains("slotted") ||
        !doc.contains("tokens") || !doc.contains("template"))
      throw CorruptFileError("prompts file line " + std::to_string(lineno) +
                             " is not a valid prompt object");
    SlottedPrompt p;
    try {
      p.id = doc["id"].get<uint64_t>();
      p.slotted_text = doc["slotted"].get<std::string>();
    } catch (const json::exception& e) {
      throw CorruptFileError("prompts file line " + std::to_string(lineno) +
                             " has mistyped fields: " + e.what());
    }
    if (!doc["template"].is_string())
      throw CorruptFileError("prompts file line " + std::to_string(lineno) +
                             " has a mistyped template");
    auto tmpl = StructureTemplate::parse(doc["template"].get<std::string>());
    if (!tmpl)
      throw CorruptFileError("prompts file line " + std::to_string(lineno) +
                             " has a malformed template");
    p.filled.tmpl = std::move(*tmpl);
    if (doc.contains("dropped")) {
      try {
        p.filled.dropped_slots = doc["dropped"].get<std::vector<size_t>>();
      } catch (const json::exception& e) {
        throw CorruptFileError("prompts file line " + std::to_string(lineno) +
                               " has a mistyped dropped list: " + e.what());
      }
    }

    // Fills occupy the slot positions that are not listed as dropped.
    std::vector<size_t> open_slots;
    size_t slot_count = p.filled.tmpl.slot_count();
    for (size_t s = 0; s < slot_count; ++s) {
      bool dropped = false;
      for (size_t d : p.filled.dropped_slots) dropped |= d == s;
      if (!dropped) open_slots.push_back(s);
    }
    const json& tokens = doc["tokens"];
    if (!tokens.is_array() || tokens.size() != open_slots.size())
      throw CorruptFileError("prompts file line " + std::to_string(lineno) +
                             ": tokens do not match the template's open slots");
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (!tokens[i].is_object() || !tokens[i].contains("class") ||
          !tokens[i]["class"].is_string() || !tokens[i].contains("surface") ||
          !tokens[i]["surface"].is_string())
        throw CorruptFileError("prompts file line " + std::to_string(lineno) +
                               ": bad token entry");
      auto cls = slot_class_from(tokens[i]["class"].get<std::string>());
      if (!cls)
        throw CorruptFileError("prompts file line " + std::to_string(lineno) +
                               ": bad token class");
      LexId id{tokens[i]["surface"].get<std::string>(), *cls};
      p.required.push_back(id.surface);
      p.filled.fills.emplace_back(open_slots[i], std::move(id));
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::string records_to_jsonl(const std::vector<SynthesisRecord>& records) {
  std::string out;
  for (const SynthesisRecord& r : records) {
    json line;
    line["prompt_id"] = r.prompt_id;
    line["slotted"] = r.slotted;
    line["completion"] = r.completion;
    line["accepted"] = r.accepted;
    line["reject_reason"] = std::string(to_string(r.reject_reason));
    if (r.reject_reason == RejectReason::MissingToken)
      line["missing_token"] = r.missing_token;
    out += line.dump();
    out += '\n';
  }
  return out;
}

void write_records(const std::vector<SynthesisRecord>& records,
                   const std::filesystem::path& path) {
  write_text_file(records_to_jsonl(records), path);
}

void write_dataset(const std::vector<std::string>& captions,
                   const std::filesystem::path& path) {
  std::string out;
  for (const std::string& line : captions) {
    out += line;
    out += '\n';
  }
  write_text_file(out, path);
}

void write_text_file(const std::string& text,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open file for writing: " + path.string());
  out << text;
  if (!out) throw IoError("failed writing file: " + path.string());
}

}  // namespace toca
