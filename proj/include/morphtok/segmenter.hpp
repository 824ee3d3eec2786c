#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "morphtok/annotations.hpp"
#include "morphtok/error.hpp"
#include "morphtok/morfessor.hpp"

namespace morphtok {

struct ViterbiOptions {
  std::size_t max_morph_length = 30;  // code points; the whole word is always a candidate
  std::optional<double> oov_char_penalty;  // bits per character; default: see below
};

struct ViterbiResult {
  Morphs morphs;
  double cost = 0;
};

/// Minimum-cost segmentation under a trained model.
///
/// A known morph costs -log2(c_m / N); an unknown substring costs its
/// length times the per-character penalty, which defaults to the cost of
/// the most expensive known morph plus one bit. Among equal-cost
/// segmentations the one with fewer morphs wins, then the one whose morph
/// lengths are lexicographically largest (leftmost-longest).
class ViterbiSegmenter {
 public:
  explicit ViterbiSegmenter(const MorfessorModel& model, ViterbiOptions options = {});

  /// Throws DataError for an empty word.
  ViterbiResult segment(std::string_view word) const;

  /// Cost of a single morph as used by the search.
  double morph_cost(std::string_view morph) const;

  double oov_char_penalty() const { return oov_char_penalty_; }
  const MorfessorModel& model() const { return *model_; }

 private:
  const MorfessorModel* model_;
  ViterbiOptions options_;
  double log2_total_ = 0;
  double oov_char_penalty_ = 1;
};

ViterbiResult viterbi_segment(const MorfessorModel& model, std::string_view word,
                              const ViterbiOptions& options = {});

/// Thrown by a lexicon-only provider for words it does not cover.
class WordNotFound : public DataError {
 public:
  explicit WordNotFound(const std::string& word)
      : DataError("word not in segmentation lexicon: '" + word + "'") {}
};

enum class ProviderKind { model, lexicon, lexicon_then_model };

/// Routes words to a lexicon, a model, or a lexicon with model fallback.
/// Lexicon entries are checked at lookup time; entries whose morphs do not
/// spell the word are treated as absent and counted.
class SegmentationProvider {
 public:
  static SegmentationProvider from_model(std::shared_ptr<const MorfessorModel> model,
                                         ViterbiOptions options = {});
  static SegmentationProvider from_lexicon(SegmentationLexicon::Map lexicon);
  static SegmentationProvider from_lexicon_then_model(
      SegmentationLexicon::Map lexicon, std::shared_ptr<const MorfessorModel> model,
      ViterbiOptions options = {});

  ProviderKind kind() const { return kind_; }

  /// Morphs of `word`, always spelling it. Throws DataError on an empty
  /// word and WordNotFound for a lexicon-only provider.
  Morphs segment(std::string_view word) const;

  std::size_t corrupt_lookups() const { return corrupt_->load(); }

 private:
  SegmentationProvider() = default;

  ProviderKind kind_ = ProviderKind::model;
  std::shared_ptr<const MorfessorModel> model_;
  std::shared_ptr<const ViterbiSegmenter> viterbi_;
  std::shared_ptr<const SegmentationLexicon::Map> lexicon_;
  std::shared_ptr<std::atomic<std::size_t>> corrupt_ =
      std::make_shared<std::atomic<std::size_t>>(0);
};

}  // namespace morphtok
