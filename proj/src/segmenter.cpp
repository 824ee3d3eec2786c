#include "morphtok/segmenter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "morphtok/utf8.hpp"

namespace morphtok {

ViterbiSegmenter::ViterbiSegmenter(const MorfessorModel& model, ViterbiOptions options)
    : model_(&model), options_(options) {
  if (options_.max_morph_length == 0) throw UsageError("max morph length must be >= 1");
  const double total = model.total_morph_tokens();
  log2_total_ = total > 0 ? std::log2(total) : 0.0;
  if (options_.oov_char_penalty) {
    if (!(*options_.oov_char_penalty > 0)) throw UsageError("OOV penalty must be > 0");
    oov_char_penalty_ = *options_.oov_char_penalty;
  } else {
    double worst = 0;
    for (const auto& [morph, c] : model.morph_counts()) {
      if (c > 0) worst = std::max(worst, log2_total_ - std::log2(c));
    }
    oov_char_penalty_ = worst + 1.0;
  }
}

double ViterbiSegmenter::morph_cost(std::string_view morph) const {
  const double c = model_->morph_count(morph);
  if (c > 0) return log2_total_ - std::log2(c);
  return static_cast<double>(utf8::length(morph)) * oov_char_penalty_;
}

ViterbiResult ViterbiSegmenter::segment(std::string_view word) const {
  if (word.empty()) throw DataError("cannot segment an empty word");
  const auto bounds = utf8::boundaries(word);
  const std::size_t n = bounds.size() - 1;

  // best[i]: optimal segmentation of the suffix starting at code point i.
  struct Cell {
    double cost = std::numeric_limits<double>::infinity();
    std::size_t morphs = 0;
    std::size_t next = 0;
  };
  std::vector<Cell> best(n + 1);
  best[n] = {0.0, 0, n};
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t last = std::min(n, i + options_.max_morph_length);
    auto consider = [&](std::size_t j) {
      const double cost =
          morph_cost(word.substr(bounds[i], bounds[j] - bounds[i])) + best[j].cost;
      const std::size_t count = best[j].morphs + 1;
      Cell& cell = best[i];
      // j only grows, so ties on (cost, count) prefer the longer morph.
      if (cost < cell.cost || (cost == cell.cost && count <= cell.morphs)) {
        cell = {cost, count, j};
      }
    };
    for (std::size_t j = i + 1; j <= last; ++j) consider(j);
    if (i == 0 && last < n) consider(n);
  }

  ViterbiResult result;
  result.cost = best[0].cost;
  for (std::size_t i = 0; i < n; i = best[i].next) {
    result.morphs.emplace_back(word.substr(bounds[i], bounds[best[i].next] - bounds[i]));
  }
  return result;
}

ViterbiResult viterbi_segment(const MorfessorModel& model, std::string_view word,
                              const ViterbiOptions& options) {
  return ViterbiSegmenter(model, options).segment(word);
}

SegmentationProvider SegmentationProvider::from_model(
    std::shared_ptr<const MorfessorModel> model, ViterbiOptions options) {
  if (!model) throw UsageError("model provider needs a model");
  SegmentationProvider p;
  p.kind_ = ProviderKind::model;
  p.viterbi_ = std::make_shared<ViterbiSegmenter>(*model, options);
  p.model_ = std::move(model);
  return p;
}

SegmentationProvider SegmentationProvider::from_lexicon(SegmentationLexicon::Map lexicon) {
  SegmentationProvider p;
  p.kind_ = ProviderKind::lexicon;
  p.lexicon_ = std::make_shared<const SegmentationLexicon::Map>(std::move(lexicon));
  return p;
}

SegmentationProvider SegmentationProvider::from_lexicon_then_model(
    SegmentationLexicon::Map lexicon, std::shared_ptr<const MorfessorModel> model,
    ViterbiOptions options) {
  SegmentationProvider p = from_model(std::move(model), options);
  p.kind_ = ProviderKind::lexicon_then_model;
  p.lexicon_ = std::make_shared<const SegmentationLexicon::Map>(std::move(lexicon));
  return p;
}

Morphs SegmentationProvider::segment(std::string_view word) const {
  if (word.empty()) throw DataError("cannot segment an empty word");
  if (lexicon_) {
    if (auto it = lexicon_->find(word); it != lexicon_->end()) {
      if (is_valid_segmentation(word, it->second)) return it->second;
      corrupt_->fetch_add(1, std::memory_order_relaxed);
    }
    if (kind_ == ProviderKind::lexicon) throw WordNotFound(std::string(word));
  }
  return viterbi_->segment(word).morphs;
}

}  // namespace morphtok
