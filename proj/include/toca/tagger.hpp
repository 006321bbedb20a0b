#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "toca/pos.hpp"

namespace toca {

struct TaggedToken {
  std::string surface;   // lowercased, never empty, no whitespace
  std::string penn_tag;
  PosClass pos_class;    // always equals classify(penn_tag)
};

struct TaggedSentence {
  std::vector<TaggedToken> tokens;
  size_t source_index = 0;  // line number in the corpus

  bool empty() const { return tokens.empty(); }
};

/// Tagger backend. Stateless after construction; one instance may be used
/// from any number of workers concurrently.
class Tagger {
 public:
  virtual ~Tagger() = default;
  virtual TaggedSentence tag_line(std::string_view raw_line,
                                  size_t source_index) const = 0;
};

/// Backend (a): reads `surface_TAG` tokens produced by an offline tagger.
/// Throws TagFormatError when a token has no tag or an empty surface.
std::unique_ptr<Tagger> make_pretagged_tagger();

/// Backend (b): whitespace tokenizer plus lexicon lookup with suffix rules
/// for out-of-vocabulary words. Throws BackendUnavailableError when the
/// lexicon file cannot be read.
std::unique_ptr<Tagger> make_lexicon_tagger(const std::filesystem::path& lexicon);

/// Backend (b) with the lexicon that ships compiled into the library.
std::unique_ptr<Tagger> make_builtin_tagger();

TaggedSentence tokenize_and_tag(std::string_view raw_line, const Tagger& backend,
                                size_t source_index = 0);

/// Splits on whitespace and detaches trailing `,` `.` `;` `!` `?` as
/// separate tokens. No other punctuation handling.
std::vector<std::string> tokenize_raw(std::string_view line);

/// Reads a whole corpus file, one caption per line. Throws IoError.
std::vector<std::string> read_lines(const std::filesystem::path& path);

/// Tags every line; lines are sharded across `jobs` workers. The result is
/// identical for any worker count.
std::vector<TaggedSentence> tag_corpus(const std::vector<std::string>& lines,
                                       const Tagger& backend, int jobs = 1);

}  // namespace toca
