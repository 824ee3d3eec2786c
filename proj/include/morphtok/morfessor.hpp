#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "morphtok/annotations.hpp"
#include "morphtok/corpus.hpp"

namespace morphtok {

enum class FrequencyMode { type, token };

/// How raw corpus counts become learner weights: `type` maps every count
/// to 1, `token` maps c to log_base(c + 1).
struct FrequencyTransform {
  FrequencyMode mode = FrequencyMode::type;
  double base = 30.0;

  double apply(std::int64_t count) const;
};

using WeightedWords = std::map<std::string, double, std::less<>>;

/// Applies `t` to every entry. Throws DataError on empty counts.
WeightedWords transform_counts(const WordCounts& counts, const FrequencyTransform& t);

struct MorfessorParams {
  double alpha = 1.0;             // corpus likelihood weight, > 0
  double beta = 0.0;              // annotation likelihood weight, >= 0
  double epsilon_converge = 0.005;
  int max_epochs = 20;
  std::uint64_t seed = 0;

  /// Throws UsageError when a field is out of range.
  void validate() const;

  friend bool operator==(const MorfessorParams&, const MorfessorParams&) = default;
};

/// Description length in bits. total = lexicon + alpha*corpus + beta*annotation.
struct CostBreakdown {
  double lexicon_cost = 0;
  double corpus_cost = 0;
  double annotation_cost = 0;
  double total = 0;
};

/// Bits charged for each token of an annotation morph that has no corpus
/// count, on top of log2 of the corpus size.
inline constexpr double kMissingAnnotationMorphBits = 16.0;

/// Binary splitting tree of one word. Leaves are morphs; an internal node's
/// text is the concatenation of its children's texts.
class SplitTree {
 public:
  SplitTree() = default;
  static SplitTree leaf(std::string text);
  static SplitTree node(SplitTree left, SplitTree right);
  /// Right-branching tree over the given morphs (at least one).
  static SplitTree chain(const Morphs& morphs);

  bool is_leaf() const { return children_.empty(); }
  const std::string& text() const { return text_; }
  const SplitTree& left() const { return children_.at(0); }
  const SplitTree& right() const { return children_.at(1); }

  Morphs leaves() const;

  friend bool operator==(const SplitTree&, const SplitTree&) = default;

 private:
  void collect(Morphs& out) const;

  std::string text_;
  std::vector<SplitTree> children_;
};

struct Annotation {
  double weight = 1.0;
  Morphs morphs;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

/// A trained morph lexicon with per-word splitting trees.
///
/// Coding scheme (all costs in bits):
///  - corpus: -sum_m c_m log2(c_m / N), c_m the weighted morph count and
///    N = sum_m c_m
///  - lexicon: every distinct morph spelled out character by character at
///    -log2 p(ch), p the character distribution over the distinct morphs,
///    plus one end marker per morph at log2(1 + average morph length)
///  - annotation: for each annotated word, weight * sum over its gold morphs
///    of -log2(c_m / N); a gold morph without corpus count costs
///    log2 N + kMissingAnnotationMorphBits
class MorfessorModel {
 public:
  using CountMap = std::map<std::string, double, std::less<>>;

  /// Rebuilds a model from its defining parts, recomputing morph counts from
  /// the trees. Throws DataError when a tree does not spell its word, a
  /// weighted word has no tree, or a weight is not positive.
  static MorfessorModel assemble(MorfessorParams params, WeightedWords word_weights,
                                 std::map<std::string, Annotation, std::less<>> annotations,
                                 std::map<std::string, SplitTree, std::less<>> split_trees);

  const MorfessorParams& params() const { return params_; }
  const WeightedWords& word_weights() const { return word_weights_; }
  const std::map<std::string, Annotation, std::less<>>& annotations() const {
    return annotations_;
  }
  const std::map<std::string, SplitTree, std::less<>>& split_trees() const {
    return split_trees_;
  }
  const CountMap& morph_counts() const { return morph_counts_; }
  double total_morph_tokens() const { return total_morph_tokens_; }
  /// 0 for unknown morphs.
  double morph_count(std::string_view morph) const;

  /// Per-character code length (bits) under the lexicon's character
  /// distribution, keyed by the UTF-8 character.
  std::map<std::string, double> alphabet() const;

  /// Leaves of the training-time split tree, or nullptr for unseen words.
  const SplitTree* tree(std::string_view word) const;

  CostBreakdown cost() const;

 private:
  MorfessorParams params_;
  WeightedWords word_weights_;
  std::map<std::string, Annotation, std::less<>> annotations_;
  std::map<std::string, SplitTree, std::less<>> split_trees_;
  CountMap morph_counts_;
  double total_morph_tokens_ = 0;
};

/// Diagnostics gathered while training.
struct TrainTrace {
  bool check_invariants = false;   // verify count conservation and spelling after every epoch
  std::vector<double> accepted_costs;  // total cost after every accepted resplit
  std::vector<double> epoch_costs;     // total cost at the end of every epoch (index 0: initial)
  int epochs = 0;
  std::size_t rejected = 0;
};

/// Greedy recursive-split MDL training.
///
/// Every word starts unsplit (annotated words start, and stay, at their gold
/// split). Each epoch visits the words in a seeded shuffled order; a word's
/// contribution is removed, the best of keep-whole and every binary split is
/// taken with both parts re-evaluated recursively, and the result is kept
/// only when the total cost does not increase. Training stops when an
/// epoch improves the cost by less than epsilon_converge relatively, or
/// after max_epochs.
///
/// Annotation words absent from `weighted` only contribute annotation cost,
/// with weight 1.
MorfessorModel train(const WeightedWords& weighted, const SegmentationLexicon& annotations,
                     const MorfessorParams& params, TrainTrace* trace = nullptr);

struct TuneResult {
  MorfessorParams params;
  double dev_f1 = 0;
  std::vector<std::pair<MorfessorParams, double>> grid_scores;  // deduplicated, grid order
  std::size_t dev_annotation_overlap = 0;
};

/// alpha in {0.5, 1}, beta in {0, 100, 500, 1000, 2500}.
std::vector<std::pair<double, double>> default_weight_grid();

/// Trains one model per distinct (alpha, beta), segments the dev words with
/// Viterbi, and returns the point with the best micro boundary F1; ties go
/// to the smaller beta, then the smaller alpha. Grid points train in
/// parallel. Throws UsageError on an empty grid and DataError on empty dev.
TuneResult tune_weights(const WeightedWords& weighted, const SegmentationLexicon& annotations,
                        const SegmentationLexicon& dev,
                        const std::vector<std::pair<double, double>>& grid,
                        const MorfessorParams& base);

}  // namespace morphtok
