#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "morphtok/corpus.hpp"

namespace morphtok {

using Morphs = std::vector<std::string>;

/// word -> ordered morphs. Every entry's morphs are non-empty and
/// concatenate to the word.
class SegmentationLexicon {
 public:
  using Map = std::map<std::string, Morphs, std::less<>>;

  SegmentationLexicon() = default;
  /// Throws DataError on any entry violating the invariants.
  explicit SegmentationLexicon(Map entries);

  /// Returns false (and leaves the lexicon unchanged) when the entry is
  /// invalid or the word is already present.
  bool insert(std::string word, Morphs morphs);

  const Map& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool contains(std::string_view word) const;
  /// nullptr when absent.
  const Morphs* find(std::string_view word) const;

  friend bool operator==(const SegmentationLexicon&, const SegmentationLexicon&) = default;

 private:
  Map entries_;
};

/// True when morphs is non-empty, has no empty morph, and joins to word.
bool is_valid_segmentation(std::string_view word, const Morphs& morphs);

std::string join(const Morphs& morphs, std::string_view sep = "");

struct RejectedLine {
  std::size_t line;
  std::string reason;
};

struct GoldParse {
  SegmentationLexicon lexicon;
  std::vector<RejectedLine> rejects;
  std::size_t duplicates = 0;
};

/// Reads `word<TAB>segmentation[<TAB>...]`. Every occurrence of
/// `morph_separator` in the segmentation column is replaced by a space and
/// the result is split on whitespace, so both "un @@do" (SIGMORPHON style)
/// and "un do" parse as [un, do]. Lines with fewer than two columns or
/// whose morphs do not join to the word are rejected and reported. Repeated
/// words keep their first analysis. Throws DataError when more than half of
/// the non-empty lines are rejected.
GoldParse parse_gold(std::istream& in, std::string_view morph_separator = "@@");
GoldParse parse_gold_file(const std::string& path, std::string_view morph_separator = "@@");

/// Canonical lexicon TSV: `word<TAB>morph1 morph2 ...`, sorted by word.
void write_lexicon(std::ostream& out, const SegmentationLexicon& lex);

/// Sampling distribution over candidate words, proportional to
/// character length times frequency.
class AnnotationSampler {
 public:
  const std::map<std::string, double, std::less<>>& weights() const { return weights_; }

  friend AnnotationSampler sampling_weights(const WordCounts& counts,
                                            const std::vector<std::string>& candidates);

 private:
  std::map<std::string, double, std::less<>> weights_;
};

/// p_w = len(w) * count(w) / sum_i len(i) * count(i), with len in code
/// points. Throws DataError for an empty candidate set or a candidate
/// without a count.
AnnotationSampler sampling_weights(const WordCounts& counts,
                                   const std::vector<std::string>& candidates);

/// Draws k distinct words from (sampler domain ∩ gold domain) without
/// replacement, each draw proportional to p_w renormalized over the words
/// not yet drawn, and returns their gold segmentations. Deterministic in
/// `seed`. Throws DataError when k exceeds the number of candidates.
SegmentationLexicon sample_annotations(const AnnotationSampler& sampler,
                                       const SegmentationLexicon& gold, std::size_t k,
                                       std::uint64_t seed);

struct SegScores {
  double boundary_precision = 0;
  double boundary_recall = 0;
  double boundary_f1 = 0;
  double exact_match_rate = 0;
  std::size_t evaluated_words = 0;
  std::size_t gold_only_words = 0;
  std::size_t pred_only_words = 0;
};

/// Internal split positions (code point offsets 1..len-1) of a segmentation.
std::vector<std::size_t> boundary_positions(const Morphs& morphs);

/// Micro-averaged boundary precision/recall/F1 and exact-match rate over
/// the words present in both lexicons. Throws DataError when the
/// intersection is empty.
SegScores score_segmentation(const SegmentationLexicon& pred,
                             const SegmentationLexicon& gold);

}  // namespace morphtok
