#include "morphtok/tokenizer.hpp"

#include <sstream>

#include "morphtok/error.hpp"

namespace morphtok {

Tokenizer::Tokenizer(Vocabulary vocab, SegmentationProvider provider, CleanConfig clean)
    : vocab_(std::move(vocab)),
      provider_(std::move(provider)),
      clean_(std::move(clean)),
      unk_(kUnkToken) {
  vocab_.unk_id();  // throws when missing
}

std::vector<std::string> Tokenizer::tokenize_word(std::string_view word) const {
  const std::string& marker = vocab_.marker();
  std::string whole = marker;
  whole += word;
  if (vocab_.contains(whole)) return {whole};
  if (is_punctuation_word(word, clean_)) {
    return {vocab_.contains(word) ? std::string(word) : unk_};
  }

  const Morphs morphs = provider_.segment(word);
  std::vector<std::string> out;
  out.reserve(morphs.size());
  for (std::size_t i = 0; i < morphs.size(); ++i) {
    std::string tok = i == 0 ? marker + morphs[i] : morphs[i];
    out.push_back(vocab_.contains(tok) ? std::move(tok) : unk_);
  }
  return out;
}

std::vector<std::int64_t> Tokenizer::tokenize_text(std::string_view text) const {
  std::vector<std::int64_t> ids;
  std::istringstream in{clean_line(text, clean_)};
  const std::int64_t unk = vocab_.unk_id();
  for (std::string word; in >> word;) {
    for (const auto& tok : tokenize_word(word)) ids.push_back(vocab_.id(tok).value_or(unk));
  }
  return ids;
}

std::string Tokenizer::detokenize(const std::vector<std::string>& tokens,
                                  std::string_view unk_placeholder) const {
  const std::string& marker = vocab_.marker();
  std::string out;
  bool first = true;
  for (const auto& tok : tokens) {
    std::string_view piece = tok;
    bool starts_word = first;
    if (piece.starts_with(marker)) {
      piece.remove_prefix(marker.size());
      starts_word = true;
    }
    if (tok == unk_) piece = unk_placeholder;
    if (starts_word && !first) out.push_back(' ');
    out += piece;
    first = false;
  }
  return out;
}

}  // namespace morphtok
