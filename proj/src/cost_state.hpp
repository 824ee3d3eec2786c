#pragma once

// Incrementally maintained sufficient statistics of the description length,
// with an undo journal so that speculative changes can be rolled back to
// bit-identical state.

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "morphtok/morfessor.hpp"

namespace morphtok::detail {

class CostState {
 public:
  struct Checkpoint {
    std::size_t morph_journal;
    std::size_t char_journal;
    double corpus_tokens, sum_clogc, sum_nlogn, annot_matched, annot_missing;
    std::int64_t total_chars, distinct_morphs;
  };

  CostState(double alpha, double beta) : alpha_(alpha), beta_(beta) {}

  /// Registers gold morph weights of one annotated word. Must be called
  /// before any morph counts are added.
  void add_annotation(const Morphs& morphs, double weight);

  /// Adds `delta` (possibly negative) to the count of `morph`.
  void apply(const std::string& morph, double delta);

  Checkpoint checkpoint() const;
  void rollback(const Checkpoint& cp);
  /// Forgets the journal; rollback to earlier checkpoints becomes invalid.
  void commit();

  CostBreakdown breakdown() const;
  double total() const { return breakdown().total; }

  double count(const std::string& morph) const;
  const std::unordered_map<std::string, double>& counts() const { return counts_; }
  double corpus_tokens() const { return corpus_tokens_; }
  const std::unordered_map<char32_t, std::int64_t>& char_counts() const { return char_counts_; }
  std::int64_t total_chars() const { return total_chars_; }

 private:
  struct MorphUndo {
    std::string morph;
    double old;
    bool existed;
  };
  struct CharUndo {
    char32_t ch;
    std::int64_t old;
  };

  void add_chars(const std::string& morph, int sign);

  double alpha_, beta_;
  std::unordered_map<std::string, double> counts_;
  std::unordered_map<char32_t, std::int64_t> char_counts_;
  std::unordered_map<std::string, double> annot_weight_;
  double annot_total_ = 0;

  double corpus_tokens_ = 0;   // N
  double sum_clogc_ = 0;       // sum_m c_m log2 c_m
  double sum_nlogn_ = 0;       // sum_ch n_ch log2 n_ch over distinct morphs
  double annot_matched_ = 0;   // sum_{m: c_m > 0} A_m log2 c_m
  double annot_missing_ = 0;   // sum_{m: c_m = 0} A_m
  std::int64_t total_chars_ = 0;
  std::int64_t distinct_morphs_ = 0;

  std::vector<MorphUndo> morph_journal_;
  std::vector<CharUndo> char_journal_;
};

}  // namespace morphtok::detail
