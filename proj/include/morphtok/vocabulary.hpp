#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "morphtok/corpus.hpp"
#include "morphtok/segmenter.hpp"

namespace morphtok {

inline constexpr std::string_view kDefaultMarker = "\xC4\xA0";  // U+0120 'Ġ'
inline constexpr std::string_view kUnkToken = "[UNK]";

std::vector<std::string> default_specials();  // [PAD] [UNK] [CLS] [SEP] [MASK]

struct VocabEntry {
  std::string token;
  double freq = 0;

  friend bool operator==(const VocabEntry&, const VocabEntry&) = default;
};

/// Token inventory with contiguous ids. Specials take ids 0..k-1 in order;
/// every other token follows by descending corpus frequency, ties by token.
class Vocabulary {
 public:
  Vocabulary() = default;
  /// `entries` must list tokens in id order. Throws DataError when tokens
  /// repeat or the specials are not the leading entries.
  Vocabulary(std::string marker, std::vector<std::string> specials,
             std::vector<VocabEntry> entries);

  /// Orders `freqs` (which must not contain specials) after the specials.
  static Vocabulary from_frequencies(std::string marker, std::vector<std::string> specials,
                                     const std::map<std::string, double>& freqs);

  const std::string& marker() const { return marker_; }
  const std::vector<std::string>& specials() const { return specials_; }
  const std::vector<VocabEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  std::optional<std::int64_t> id(std::string_view token) const;
  const std::string& token(std::int64_t id) const;
  bool contains(std::string_view token) const { return id(token).has_value(); }
  /// Id of [UNK]; throws DataError when the vocabulary has none.
  std::int64_t unk_id() const;
  /// Frequencies of the non-special tokens.
  std::map<std::string, double> token_freqs() const;
  bool is_special(std::string_view token) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.marker_ == b.marker_ && a.specials_ == b.specials_ && a.entries_ == b.entries_;
  }

 private:
  std::string marker_;
  std::vector<std::string> specials_;
  std::vector<VocabEntry> entries_;
  std::map<std::string, std::int64_t, std::less<>> ids_;
};

struct VocabConfig {
  std::int64_t min_count_exclusive = 30;
  std::optional<std::int64_t> keep_frequent_threshold;  // inclusive: count >= threshold
  std::string marker = std::string(kDefaultMarker);
  std::vector<std::string> specials = default_specials();
  CleanConfig clean;  // its punctuation class enters the vocabulary unmarked

  /// Throws UsageError on negative thresholds or a keep-frequent threshold
  /// not above the minimum count.
  void validate() const;
};

/// Builds a vocabulary from every word with count > min_count_exclusive.
/// Frequent words (count >= keep_frequent_threshold) become one marked
/// token; other words are segmented and their first morph is marked.
/// Punctuation words bypass segmentation and appear unmarked; every
/// configured punctuation character is present, with frequency 0 if unseen.
Vocabulary build_vocab(const SegmentationProvider& provider, const WordCounts& counts,
                       const VocabConfig& cfg = {});

struct DiffReport {
  std::size_t only_a = 0;
  std::size_t only_b = 0;
  std::size_t common = 0;
  /// Tokens of A∖B that are marker + w for a corpus word w with
  /// count(w) < word_threshold.
  std::size_t only_a_infrequent_words = 0;
};

/// Throws DataError when the markers differ.
DiffReport vocab_diff(const Vocabulary& a, const Vocabulary& b, const WordCounts& counts,
                      std::int64_t word_threshold = 1700);

}  // namespace morphtok
