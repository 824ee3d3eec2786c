#include "cost_state.hpp"

#include <algorithm>
#include <cmath>

#include "morphtok/error.hpp"
#include "morphtok/utf8.hpp"

namespace morphtok::detail {

namespace {

// Counts at or below this are treated as exhausted.
constexpr double kZeroCount = 1e-9;

double xlogx(double x) { return x > 0 ? x * std::log2(x) : 0.0; }

}  // namespace

void CostState::add_annotation(const Morphs& morphs, double weight) {
  for (const auto& m : morphs) {
    annot_weight_[m] += weight;
    annot_total_ += weight;
    annot_missing_ += weight;
  }
}

void CostState::add_chars(const std::string& morph, int sign) {
  for (char32_t ch : utf8::decode(morph)) {
    auto& n = char_counts_[ch];
    char_journal_.push_back({ch, n});
    sum_nlogn_ -= xlogx(static_cast<double>(n));
    n += sign;
    sum_nlogn_ += xlogx(static_cast<double>(n));
    total_chars_ += sign;
  }
}

void CostState::apply(const std::string& morph, double delta) {
  auto it = counts_.find(morph);
  const bool existed = it != counts_.end();
  const double old = existed ? it->second : 0.0;
  double updated = old + delta;
  if (updated < -kZeroCount) {
    throw std::logic_error("morph count for '" + morph + "' would become negative");
  }
  if (updated <= kZeroCount) updated = 0.0;

  morph_journal_.push_back({morph, old, existed});
  corpus_tokens_ += updated - old;
  sum_clogc_ += xlogx(updated) - xlogx(old);

  if (auto a = annot_weight_.find(morph); a != annot_weight_.end()) {
    const double w = a->second;
    if (old > 0) annot_matched_ -= w * std::log2(old); else annot_missing_ -= w;
    if (updated > 0) annot_matched_ += w * std::log2(updated); else annot_missing_ += w;
  }

  if (!existed && updated > 0) {
    counts_.emplace(morph, updated);
    ++distinct_morphs_;
    add_chars(morph, +1);
  } else if (existed && updated == 0) {
    counts_.erase(it);
    --distinct_morphs_;
    add_chars(morph, -1);
  } else if (existed) {
    it->second = updated;
  }
}

CostState::Checkpoint CostState::checkpoint() const {
  return {morph_journal_.size(), char_journal_.size(), corpus_tokens_, sum_clogc_,
          sum_nlogn_, annot_matched_, annot_missing_, total_chars_, distinct_morphs_};
}

void CostState::rollback(const Checkpoint& cp) {
  while (morph_journal_.size() > cp.morph_journal) {
    auto& u = morph_journal_.back();
    if (u.existed) {
      counts_[u.morph] = u.old;
    } else {
      counts_.erase(u.morph);
    }
    morph_journal_.pop_back();
  }
  while (char_journal_.size() > cp.char_journal) {
    auto& u = char_journal_.back();
    if (u.old == 0) {
      char_counts_.erase(u.ch);
    } else {
      char_counts_[u.ch] = u.old;
    }
    char_journal_.pop_back();
  }
  corpus_tokens_ = cp.corpus_tokens;
  sum_clogc_ = cp.sum_clogc;
  sum_nlogn_ = cp.sum_nlogn;
  annot_matched_ = cp.annot_matched;
  annot_missing_ = cp.annot_missing;
  total_chars_ = cp.total_chars;
  distinct_morphs_ = cp.distinct_morphs;
}

void CostState::commit() {
  morph_journal_.clear();
  char_journal_.clear();
  // Drop characters whose count fell to zero.
  std::erase_if(char_counts_, [](const auto& kv) { return kv.second == 0; });
}

double CostState::count(const std::string& morph) const {
  auto it = counts_.find(morph);
  return it == counts_.end() ? 0.0 : it->second;
}

CostBreakdown CostState::breakdown() const {
  CostBreakdown b;
  const double n = corpus_tokens_;
  if (n > 0) b.corpus_cost = std::max(0.0, xlogx(n) - sum_clogc_);
  if (total_chars_ > 0) {
    const double t = static_cast<double>(total_chars_);
    const double m = static_cast<double>(distinct_morphs_);
    b.lexicon_cost = std::max(0.0, xlogx(t) - sum_nlogn_ + m * std::log2(1.0 + t / m));
  }
  if (annot_total_ > 0 && n > 0) {
    b.annotation_cost = std::max(0.0, annot_total_ * std::log2(n) - annot_matched_ +
                                          kMissingAnnotationMorphBits * annot_missing_);
  }
  b.total = b.lexicon_cost + alpha_ * b.corpus_cost + beta_ * b.annotation_cost;
  return b;
}

}  // namespace morphtok::detail
