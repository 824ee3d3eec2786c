#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "morphtok/corpus.hpp"
#include "morphtok/segmenter.hpp"
#include "morphtok/vocabulary.hpp"

namespace morphtok {

/// Maps words to vocabulary tokens: a word whose marked form is itself a
/// token stays whole; otherwise its morphs are looked up one by one, the
/// first one marked, and every missing fragment becomes [UNK]. Adjacent
/// [UNK]s are kept separate so the token count always equals the fragment
/// count.
class Tokenizer {
 public:
  Tokenizer(Vocabulary vocab, SegmentationProvider provider, CleanConfig clean = {});

  const Vocabulary& vocab() const { return vocab_; }

  std::vector<std::string> tokenize_word(std::string_view word) const;

  /// Cleans `text`, splits it on whitespace and maps every token to its id.
  std::vector<std::int64_t> tokenize_text(std::string_view text) const;

  /// Marked tokens open a new word (marker stripped), unmarked tokens extend
  /// the current one, and a leading unmarked token also opens a word.
  /// [UNK] renders as `unk_placeholder`.
  std::string detokenize(const std::vector<std::string>& tokens,
                         std::string_view unk_placeholder = "\xEF\xBF\xBD") const;

 private:
  Vocabulary vocab_;
  SegmentationProvider provider_;
  CleanConfig clean_;
  std::string unk_;
};

}  // namespace morphtok
