#include "toca/corpus_model.hpp"

#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "toca/error.hpp"
#include "toca/template.hpp"
#include "toca/text.hpp"

namespace toca {

using json = nlohmann::json;

std::string LexId::key() const {
  std::string out = surface;
  out += '|';
  out += to_string(cls);
  return out;
}

std::optional<LexId> LexId::from_key(std::string_view key) {
  size_t sep = key.rfind('|');
  if (sep == std::string_view::npos || sep == 0) return std::nullopt;
  auto cls = slot_class_from(key.substr(sep + 1));
  if (!cls) return std::nullopt;
  return LexId{std::string(key.substr(0, sep)), *cls};
}

void CorpusModel::add_sentence(const TaggedSentence& sentence) {
  ++sentence_count;
  if (auto tmpl = template_of(sentence)) ++templates[tmpl->canonical_form()];

  std::vector<LexId> lexical;
  for (const TaggedToken& tok : sentence.tokens)
    if (tok.pos_class.is_lexical())
      lexical.push_back(LexId{tok.surface, tok.pos_class.slot_class()});

  for (const LexId& id : lexical) ++unigrams[id];
  // Every ordered position pair i < j; repeated surfaces count per position.
  for (size_t i = 0; i < lexical.size(); ++i)
    for (size_t j = i + 1; j < lexical.size(); ++j)
      ++pairs[lexical[i]][lexical[j]];
}

CorpusModel build_model(const std::vector<TaggedSentence>& sentences) {
  CorpusModel m;
  for (const TaggedSentence& s : sentences) m.add_sentence(s);
  return m;
}

CorpusModel build_model_parallel(const std::vector<TaggedSentence>& sentences,
                                 int jobs) {
  size_t n = sentences.size();
  size_t workers = std::min<size_t>(std::max(jobs, 1), std::max<size_t>(n, 1));
  if (workers <= 1) return build_model(sentences);

  std::vector<CorpusModel> parts(workers);
  std::vector<std::thread> pool;
  size_t chunk = (n + workers - 1) / workers;
  for (size_t w = 0; w < workers; ++w) {
    size_t b = w * chunk;
    size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&, w, b, e] {
      for (size_t i = b; i < e; ++i) parts[w].add_sentence(sentences[i]);
    });
  }
  for (auto& t : pool) t.join();

  CorpusModel out;
  for (const CorpusModel& part : parts) out = merge_models(out, part);
  return out;
}

CorpusModel merge_models(const CorpusModel& a, const CorpusModel& b) {
  if (a.version != b.version)
    throw VersionMismatchError("cannot merge models with versions " +
                               std::to_string(a.version) + " and " +
                               std::to_string(b.version));
  CorpusModel out = a;
  out.sentence_count += b.sentence_count;
  for (const auto& [k, v] : b.templates) out.templates[k] += v;
  for (const auto& [k, v] : b.unigrams) out.unigrams[k] += v;
  for (const auto& [head, tails] : b.pairs)
    for (const auto& [tail, v] : tails) out.pairs[head][tail] += v;
  return out;
}

std::string model_to_string(const CorpusModel& model) {
  json doc;
  doc["version"] = model.version;
  doc["sentence_count"] = model.sentence_count;
  doc["templates"] = json::object();
  for (const auto& [k, v] : model.templates) doc["templates"][k] = v;
  doc["unigrams"] = json::object();
  for (const auto& [k, v] : model.unigrams) doc["unigrams"][k.key()] = v;
  doc["pairs"] = json::object();
  for (const auto& [head, tails] : model.pairs) {
    json row = json::object();
    for (const auto& [tail, v] : tails) row[tail.key()] = v;
    doc["pairs"][head.key()] = std::move(row);
  }
  return doc.dump(2) + "\n";
}

namespace {

LexId parse_key_or_throw(const std::string& key, const char* what) {
  auto id = LexId::from_key(key);
  if (!id)
    throw CorruptFileError(std::string("bad ") + what + " key: '" + key + "'");
  return *id;
}

uint64_t positive_count(const json& v, const std::string& key) {
  if (!v.is_number_unsigned() || v.get<uint64_t>() == 0)
    throw CorruptFileError("count for '" + key + "' must be a positive integer");
  return v.get<uint64_t>();
}

}  // namespace

CorpusModel model_from_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw CorruptFileError(std::string("model file is not valid JSON: ") +
                           e.what());
  }
  if (!doc.is_object() || !doc.contains("version") ||
      !doc["version"].is_number_integer())
    throw CorruptFileError("model file has no integer 'version' field");
  int version = doc["version"].get<int>();
  if (version != CorpusModel::kFormatVersion)
    throw VersionMismatchError("model file version " + std::to_string(version) +
                               " is not supported (expected " +
                               std::to_string(CorpusModel::kFormatVersion) + ")");
  for (const char* field : {"sentence_count", "templates", "unigrams", "pairs"})
    if (!doc.contains(field))
      throw CorruptFileError(std::string("model file lacks '") + field + "'");

  CorpusModel m;
  m.version = version;
  try {
    m.sentence_count = doc["sentence_count"].get<uint64_t>();
    for (const auto& [k, v] : doc["templates"].items()) {
      if (!StructureTemplate::parse(k))
        throw CorruptFileError("bad template key: '" + k + "'");
      m.templates[k] = positive_count(v, k);
    }
    for (const auto& [k, v] : doc["unigrams"].items())
      m.unigrams[parse_key_or_throw(k, "unigram")] = positive_count(v, k);
    for (const auto& [hk, tails] : doc["pairs"].items()) {
      LexId head = parse_key_or_throw(hk, "pair head");
      for (const auto& [tk, v] : tails.items())
        m.pairs[head][parse_key_or_throw(tk, "pair tail")] =
            positive_count(v, tk);
    }
  } catch (const json::exception& e) {
    throw CorruptFileError(std::string("model file has mistyped fields: ") +
                           e.what());
  }
  return m;
}

void persist_model(const CorpusModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open model file for writing: " + path.string());
  out << model_to_string(model);
  if (!out) throw IoError("failed writing model file: " + path.string());
}

CorpusModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_string(buf.str());
}

CorpusModel compile_extra_pairs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open extra-pairs file: " + path.string());
  CorpusModel m;
  m.sentence_count = 0;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream row(line);
    std::string head_surface, head_class, tail_surface, tail_class;
    if (!(row >> head_surface)) continue;  // blank line
    if (head_surface[0] == '#') continue;
    uint64_t count = 1;
    if (!(row >> head_class >> tail_surface >> tail_class))
      throw CorruptFileError("extra-pairs line " + std::to_string(lineno) +
                             ": expected 'head class tail class [count]'");
    row >> count;
    auto hc = slot_class_from(head_class);
    auto tc = slot_class_from(tail_class);
    if (!hc || !tc || count == 0)
      throw CorruptFileError("extra-pairs line " + std::to_string(lineno) +
                             ": bad slot class or count");
    LexId head{lowercased(head_surface), *hc};
    LexId tail{lowercased(tail_surface), *tc};
    m.pairs[head][tail] += count;
    // Keep the pair invariant (unigram >= pair count) for the merged model.
    m.unigrams[head] += count;
    m.unigrams[tail] += count;
  }
  return m;
}

}  // namespace toca
