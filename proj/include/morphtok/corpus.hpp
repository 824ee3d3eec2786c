#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace morphtok {

/// Text cleaning rules applied before counting and tokenization.
///
/// Rules, in order, per input line:
///  1. decode UTF-8; invalid bytes become `invalid_replacement` or are dropped
///  2. remove whitespace-delimited tokens that look like URLs: a
///     `scheme://...` prefix (scheme = letter followed by letters, digits,
///     `+`, `.`, `-`) or a `www.` prefix, case-insensitively
///  3. lowercase ASCII letters when `lowercase` is set
///  4. split every character of `punctuation` off into its own token
///  5. replace every character outside the alphabet (ASCII letters, digits,
///     `word_extra`, `punctuation`, `extra_alphabet`) by a space
///  6. collapse whitespace runs to one space and trim both ends
struct CleanConfig {
  bool lowercase = true;
  std::u32string word_extra = U"'-";
  std::u32string punctuation = U".,!?;:\"()";
  std::u32string extra_alphabet;
  std::optional<char32_t> invalid_replacement;  // default: drop
};

/// Cleans one line of text (no newline in the input or the output).
std::string clean_line(std::string_view line, const CleanConfig& cfg = {});

/// Cleans a stream line by line; the output has one line per input line.
void clean_text(std::istream& in, std::ostream& out,
                const CleanConfig& cfg = {});

/// True when every character of `word` is one of `cfg.punctuation`.
bool is_punctuation_word(std::string_view word, const CleanConfig& cfg = {});

/// Multiset of surface words. Keys are non-empty and whitespace free,
/// counts are positive; the cached total always equals the sum of counts.
class WordCounts {
 public:
  using Map = std::map<std::string, std::int64_t, std::less<>>;

  WordCounts() = default;
  /// Validates every entry; throws DataError on an empty key, a key with
  /// whitespace or a count < 1.
  explicit WordCounts(Map entries);

  void add(std::string_view word, std::int64_t count = 1);

  const Map& entries() const { return entries_; }
  std::int64_t total() const { return total_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool contains(std::string_view word) const;
  /// 0 for absent words.
  std::int64_t count(std::string_view word) const;

  /// Entries by descending count, ties by ascending word.
  std::vector<std::pair<std::string, std::int64_t>> sorted() const;

  friend bool operator==(const WordCounts&, const WordCounts&) = default;

 private:
  Map entries_;
  std::int64_t total_ = 0;
};

/// Counts whitespace-delimited words of already cleaned text.
WordCounts count_words(std::istream& clean);
WordCounts count_words(std::string_view clean);

/// Keeps exactly the entries with count > min_exclusive.
WordCounts filter_counts(const WordCounts& counts, std::int64_t min_exclusive = 30);

/// `word<TAB>count` lines sorted by descending count then word.
void write_counts(std::ostream& out, const WordCounts& counts);
WordCounts read_counts(std::istream& in);

}  // namespace morphtok
