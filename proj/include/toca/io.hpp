#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "toca/acceptor.hpp"
#include "toca/sampler.hpp"

namespace toca {

/// One JSON object per prompt:
///   {"dropped": [...], "id": n, "slotted": "...", "template": "...",
///    "tokens": [{"class": "...", "surface": "..."}, ...]}
std::string prompts_to_jsonl(const std::vector<SlottedPrompt>& prompts);
void write_prompts(const std::vector<SlottedPrompt>& prompts,
                   const std::filesystem::path& path);

/// Reads a prompts file back. Fills id, slotted text, required surfaces and
/// the template; slot positions of the fills are restored from the dropped
/// list. Throws CorruptFileError on malformed lines.
std::vector<SlottedPrompt> load_prompts(const std::filesystem::path& path);

std::string records_to_jsonl(const std::vector<SynthesisRecord>& records);
void write_records(const std::vector<SynthesisRecord>& records,
                   const std::filesystem::path& path);

/// Plain UTF-8, one accepted caption per line.
void write_dataset(const std::vector<std::string>& captions,
                   const std::filesystem::path& path);

void write_text_file(const std::string& text, const std::filesystem::path& path);

}  // namespace toca
