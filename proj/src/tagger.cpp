#include "toca/tagger.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "toca/error.hpp"
#include "toca/text.hpp"

namespace toca {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool detachable(char c) {
  return c == ',' || c == '.' || c == ';' || c == '!' || c == '?';
}

TaggedToken make_token(std::string surface, std::string tag) {
  PosClass cls = classify(tag);
  return TaggedToken{std::move(surface), std::move(tag), cls};
}

class PretaggedTagger final : public Tagger {
 public:
  TaggedSentence tag_line(std::string_view raw_line, size_t idx) const override {
    TaggedSentence out;
    out.source_index = idx;
    for (std::string_view item : split_ws(raw_line)) {
      size_t sep = item.rfind('_');
      if (sep == std::string_view::npos)
        throw TagFormatError("token has no _TAG suffix: '" + std::string(item) +
                             "' (line " + std::to_string(idx) + ")");
      std::string_view surface = item.substr(0, sep);
      std::string_view tag = item.substr(sep + 1);
      if (surface.empty() || tag.empty())
        throw TagFormatError("empty surface or tag in token '" +
                             std::string(item) + "' (line " +
                             std::to_string(idx) + ")");
      out.tokens.push_back(make_token(lowercased(surface), std::string(tag)));
    }
    return out;
  }
};

class LexiconTagger final : public Tagger {
 public:
  explicit LexiconTagger(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      size_t tab = line.find('\t');
      if (tab == std::string::npos) continue;
      lexicon_.emplace(lowercased(line.substr(0, tab)), line.substr(tab + 1));
    }
  }

  TaggedSentence tag_line(std::string_view raw_line, size_t idx) const override {
    TaggedSentence out;
    out.source_index = idx;
    for (const std::string& word : tokenize_raw(raw_line)) {
      std::string lower = lowercased(word);
      out.tokens.push_back(make_token(lower, tag_word(lower)));
    }
    return out;
  }

 private:
  std::string tag_word(const std::string& w) const {
    if (auto it = lexicon_.find(w); it != lexicon_.end()) return it->second;
    if (w == ",") return ",";
    if (w == ".") return ".";
    bool alpha = std::all_of(w.begin(), w.end(), [](unsigned char c) {
      return std::isalpha(c) || c == '\'' || c == '-';
    });
    if (!alpha) {
      bool digits = std::all_of(w.begin(), w.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
      });
      return digits ? "CD" : ":";
    }
    // Suffix rules for out-of-vocabulary words, most specific first.
    auto ends = [&](std::string_view suf) {
      return w.size() > suf.size() + 2 &&
             w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
    };
    if (ends("ing")) return "VBG";
    if (ends("ed")) return "VBN";
    if (ends("ly")) return "RB";
    if (ends("est")) return "JJS";
    if (ends("ful") || ends("ous") || ends("ish")) return "JJ";
    if (w.size() > 3 && w.back() == 's' && w[w.size() - 2] != 's') return "NNS";
    return "NN";
  }

  std::unordered_map<std::string, std::string> lexicon_;
};

}  // namespace

std::vector<std::string> tokenize_raw(std::string_view line) {
  std::vector<std::string> out;
  for (std::string_view item : split_ws(line)) {
    size_t end = item.size();
    size_t punct = 0;
    while (end > 0 && detachable(item[end - 1])) {
      --end;
      ++punct;
    }
    if (end > 0) out.emplace_back(item.substr(0, end));
    for (size_t k = 0; k < punct; ++k) out.emplace_back(1, item[end + k]);
  }
  return out;
}

std::unique_ptr<Tagger> make_pretagged_tagger() {
  return std::make_unique<PretaggedTagger>();
}

std::unique_ptr<Tagger> make_lexicon_tagger(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw BackendUnavailableError("cannot open lexicon file: " + path.string());
  return std::make_unique<LexiconTagger>(in);
}

namespace detail {
const char* builtin_lexicon_tsv();
}

std::unique_ptr<Tagger> make_builtin_tagger() {
  std::istringstream in(detail::builtin_lexicon_tsv());
  return std::make_unique<LexiconTagger>(in);
}

TaggedSentence tokenize_and_tag(std::string_view raw_line, const Tagger& backend,
                                size_t source_index) {
  return backend.tag_line(raw_line, source_index);
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file: " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<TaggedSentence> tag_corpus(const std::vector<std::string>& lines,
                                       const Tagger& backend, int jobs) {
  std::vector<TaggedSentence> out(lines.size());
  size_t n = lines.size();
  size_t workers = std::min<size_t>(std::max(jobs, 1), std::max<size_t>(n, 1));
  auto work = [&](size_t begin, size_t end, std::exception_ptr& err) {
    try {
      for (size_t i = begin; i < end; ++i)
        out[i] = backend.tag_line(lines[i], i);
    } catch (...) {
      err = std::current_exception();
    }
  };
  if (workers <= 1) {
    std::exception_ptr err;
    work(0, n, err);
    if (err) std::rethrow_exception(err);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(workers);
  size_t chunk = (n + workers - 1) / workers;
  for (size_t w = 0; w < workers; ++w) {
    size_t b = w * chunk;
    size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back(work, b, e, std::ref(errs[w]));
  }
  for (auto& t : pool) t.join();
  for (auto& err : errs)
    if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace toca
