#include "morphtok/morfessor.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <unordered_map>
#include <stdexcept>

#include "cost_state.hpp"
#include "morphtok/error.hpp"
#include "morphtok/random.hpp"
#include "morphtok/segmenter.hpp"
#include "morphtok/utf8.hpp"

namespace morphtok {

double FrequencyTransform::apply(std::int64_t count) const {
  if (mode == FrequencyMode::type) return 1.0;
  return std::log(static_cast<double>(count) + 1.0) / std::log(base);
}

WeightedWords transform_counts(const WordCounts& counts, const FrequencyTransform& t) {
  if (counts.empty()) throw DataError("cannot transform empty word counts");
  if (t.mode == FrequencyMode::token && !(t.base > 1.0)) {
    throw UsageError("log base for token weighting must be > 1");
  }
  WeightedWords out;
  for (const auto& [word, count] : counts.entries()) out.emplace_hint(out.end(), word, t.apply(count));
  return out;
}

void MorfessorParams::validate() const {
  if (!std::isfinite(alpha) || alpha <= 0) throw UsageError("alpha must be finite and > 0");
  if (!std::isfinite(beta) || beta < 0) throw UsageError("beta must be finite and >= 0");
  if (!std::isfinite(epsilon_converge) || epsilon_converge <= 0) {
    throw UsageError("convergence threshold must be > 0");
  }
  if (max_epochs < 1) throw UsageError("max_epochs must be >= 1");
}

SplitTree SplitTree::leaf(std::string text) {
  SplitTree t;
  t.text_ = std::move(text);
  return t;
}

SplitTree SplitTree::node(SplitTree left, SplitTree right) {
  SplitTree t;
  t.text_ = left.text_ + right.text_;
  t.children_.reserve(2);
  t.children_.push_back(std::move(left));
  t.children_.push_back(std::move(right));
  return t;
}

SplitTree SplitTree::chain(const Morphs& morphs) {
  if (morphs.empty()) throw std::invalid_argument("SplitTree::chain needs at least one morph");
  SplitTree t = leaf(morphs.back());
  for (auto it = morphs.rbegin() + 1; it != morphs.rend(); ++it) {
    t = node(leaf(*it), std::move(t));
  }
  return t;
}

Morphs SplitTree::leaves() const {
  Morphs out;
  collect(out);
  return out;
}

void SplitTree::collect(Morphs& out) const {
  if (is_leaf()) {
    out.push_back(text_);
    return;
  }
  children_[0].collect(out);
  children_[1].collect(out);
}

MorfessorModel MorfessorModel::assemble(
    MorfessorParams params, WeightedWords word_weights,
    std::map<std::string, Annotation, std::less<>> annotations,
    std::map<std::string, SplitTree, std::less<>> split_trees) {
  MorfessorModel m;
  for (const auto& [word, weight] : word_weights) {
    if (!(weight > 0) || !std::isfinite(weight)) {
      throw DataError("word '" + word + "' has a non-positive weight");
    }
    auto it = split_trees.find(word);
    if (it == split_trees.end()) throw DataError("word '" + word + "' has no split tree");
    const Morphs leaves = it->second.leaves();
    if (!is_valid_segmentation(word, leaves)) {
      throw DataError("split tree of '" + word + "' does not spell the word");
    }
    for (const auto& leaf : leaves) m.morph_counts_[leaf] += weight;
  }
  if (split_trees.size() != word_weights.size()) {
    throw DataError("split trees present for words without weights");
  }
  for (const auto& [word, a] : annotations) {
    if (!is_valid_segmentation(word, a.morphs)) {
      throw DataError("annotation of '" + word + "' does not spell the word");
    }
  }
  for (const auto& [morph, c] : m.morph_counts_) m.total_morph_tokens_ += c;
  m.params_ = params;
  m.word_weights_ = std::move(word_weights);
  m.annotations_ = std::move(annotations);
  m.split_trees_ = std::move(split_trees);
  return m;
}

double MorfessorModel::morph_count(std::string_view morph) const {
  auto it = morph_counts_.find(morph);
  return it == morph_counts_.end() ? 0.0 : it->second;
}

const SplitTree* MorfessorModel::tree(std::string_view word) const {
  auto it = split_trees_.find(word);
  return it == split_trees_.end() ? nullptr : &it->second;
}

std::map<std::string, double> MorfessorModel::alphabet() const {
  std::map<std::string, std::int64_t> counts;
  std::int64_t total = 0;
  for (const auto& [morph, c] : morph_counts_) {
    for (auto& ch : utf8::chars(morph)) {
      ++counts[ch];
      ++total;
    }
  }
  std::map<std::string, double> out;
  for (const auto& [ch, n] : counts) {
    out.emplace(ch, -std::log2(static_cast<double>(n) / static_cast<double>(total)));
  }
  return out;
}

CostBreakdown MorfessorModel::cost() const {
  if (morph_counts_.empty()) throw DataError("cost of an empty model");
  detail::CostState state(params_.alpha, params_.beta);
  for (const auto& [word, a] : annotations_) state.add_annotation(a.morphs, a.weight);
  for (const auto& [morph, c] : morph_counts_) state.apply(morph, c);
  return state.breakdown();
}

namespace {

// Shared splitting-tree nodes: every construction (word or part of one)
// has one node whose count is the total weight flowing through it, so
// re-analysing a construction re-analyses every word that contains it.
// Annotated words bypass the nodes and add their gold morphs straight to
// the leaf counts, so no later re-analysis can alter them.
class Trainer {
 public:
  Trainer(const WeightedWords& weighted, const SegmentationLexicon& annotations,
          const MorfessorParams& params)
      : weighted_(weighted), params_(params), state_(params.alpha, params.beta) {
    for (const auto& [word, morphs] : annotations.entries()) {
      auto it = weighted.find(word);
      const double weight = it == weighted.end() ? 1.0 : it->second;
      annotations_.emplace(word, Annotation{weight, morphs});
      state_.add_annotation(morphs, weight);
    }
    for (const auto& [word, weight] : weighted) {
      if (!(weight > 0) || !std::isfinite(weight)) {
        throw DataError("word '" + word + "' has a non-positive weight");
      }
      if (const Morphs* gold = annotations.find(word)) {
        for (const auto& m : *gold) state_.apply(m, weight);
      } else {
        modify(word, weight);
        free_words_.push_back(word);
      }
    }
    commit();
  }

  MorfessorModel run(TrainTrace* trace) {
    double cost = state_.total();
    if (trace) trace->epoch_costs.push_back(cost);
    for (int epoch = 0; epoch < params_.max_epochs; ++epoch) {
      std::vector<std::string> order = free_words_;
      Rng rng(params_.seed + static_cast<std::uint64_t>(epoch));
      shuffle(order, rng);
      for (const auto& word : order) optimize_word(word, trace);

      const double next = state_.total();
      if (trace) {
        trace->epoch_costs.push_back(next);
        trace->epochs = epoch + 1;
        if (trace->check_invariants) check_invariants();
      }
      const double improvement = cost > 0 ? (cost - next) / cost : 0.0;
      cost = next;
      if (improvement < params_.epsilon_converge) break;
    }

    std::map<std::string, SplitTree, std::less<>> trees;
    for (const auto& [word, weight] : weighted_) trees.emplace(word, expand_word(word));
    return MorfessorModel::assemble(params_, weighted_, std::move(annotations_),
                                    std::move(trees));
  }

 private:
  struct Node {
    double count = 0;
    std::size_t split = 0;  // byte offset of the split, 0 for a leaf
  };
  struct NodeUndo {
    std::string key;
    bool existed;
    Node old;
  };
  struct Checkpoint {
    detail::CostState::Checkpoint state;
    std::size_t nodes;
  };

  Checkpoint checkpoint() const { return {state_.checkpoint(), node_journal_.size()}; }

  void rollback(const Checkpoint& cp) {
    state_.rollback(cp.state);
    while (node_journal_.size() > cp.nodes) {
      auto& u = node_journal_.back();
      if (u.existed) {
        nodes_[u.key] = u.old;
      } else {
        nodes_.erase(u.key);
      }
      node_journal_.pop_back();
    }
  }

  void commit() {
    state_.commit();
    node_journal_.clear();
  }

  void set_node(const std::string& key, const Node* value) {
    auto it = nodes_.find(key);
    node_journal_.push_back({key, it != nodes_.end(), it != nodes_.end() ? it->second : Node{}});
    if (value == nullptr) {
      if (it != nodes_.end()) nodes_.erase(it);
    } else if (it == nodes_.end()) {
      nodes_.emplace(key, *value);
    } else {
      it->second = *value;
    }
  }

  // Adds `delta` to a construction, routing it through its current analysis
  // down to the leaves. A construction whose count is exhausted is dropped
  // together with its analysis.
  void modify(const std::string& construction, double delta) {
    auto it = nodes_.find(construction);
    Node node = it == nodes_.end() ? Node{} : it->second;
    node.count += delta;
    const bool gone = node.count <= 1e-9;
    set_node(construction, gone ? nullptr : &node);
    if (node.split == 0) {
      state_.apply(construction, delta);
    } else {
      modify(construction.substr(0, node.split), delta);
      modify(construction.substr(node.split), delta);
    }
  }

  void optimize_word(const std::string& word, TrainTrace* trace) {
    if (word.size() < 2) return;
    const double before = state_.total();
    const auto cp = checkpoint();
    resplit(word);
    const double after = state_.total();
    if (after <= before) {
      if (trace) trace->accepted_costs.push_back(after);
    } else {
      rollback(cp);
      if (trace) ++trace->rejected;
    }
    commit();
  }

  // Re-analyses an existing construction: removes its whole count, picks the
  // cheapest of keeping it whole or any binary split (parts routed through
  // their own analyses), then recurses into the chosen parts.
  void resplit(const std::string& construction) {
    const auto bounds = utf8::boundaries(construction);
    const std::size_t n = bounds.size() - 1;
    if (n < 2) return;
    const double count = nodes_.at(construction).count;
    modify(construction, -count);

    auto cp = checkpoint();
    modify(construction, count);
    double best = state_.total();
    rollback(cp);

    std::size_t best_split = 0;
    for (std::size_t i = 1; i < n; ++i) {
      const std::string prefix = construction.substr(0, bounds[i]);
      const std::string suffix = construction.substr(bounds[i]);
      cp = checkpoint();
      modify(prefix, count);
      modify(suffix, count);
      const double cost = state_.total();
      rollback(cp);
      if (cost < best) {
        best = cost;
        best_split = bounds[i];
      }
    }

    if (best_split == 0) {
      modify(construction, count);
      return;
    }
    const Node node{count, best_split};
    set_node(construction, &node);
    const std::string prefix = construction.substr(0, best_split);
    const std::string suffix = construction.substr(best_split);
    modify(prefix, count);
    modify(suffix, count);
    resplit(prefix);
    if (suffix != prefix) resplit(suffix);
  }

  SplitTree expand(const std::string& construction) const {
    auto it = nodes_.find(construction);
    if (it == nodes_.end() || it->second.split == 0) return SplitTree::leaf(construction);
    return SplitTree::node(expand(construction.substr(0, it->second.split)),
                           expand(construction.substr(it->second.split)));
  }

  SplitTree expand_word(const std::string& word) const {
    if (auto it = annotations_.find(word); it != annotations_.end()) {
      return SplitTree::chain(it->second.morphs);
    }
    return expand(word);
  }

  void check_invariants() const {
    std::map<std::string, double> recomputed;
    for (const auto& [word, weight] : weighted_) {
      const Morphs leaves = expand_word(word).leaves();
      if (!is_valid_segmentation(word, leaves)) {
        throw std::logic_error("split tree of '" + word + "' does not spell the word");
      }
      for (const auto& leaf : leaves) recomputed[leaf] += weight;
    }
    if (recomputed.size() != state_.counts().size()) {
      throw std::logic_error("morph inventory diverged from split trees");
    }
    for (const auto& [morph, c] : recomputed) {
      const double stored = state_.count(morph);
      if (std::abs(stored - c) > 1e-6 * std::max(1.0, std::abs(c))) {
        throw std::logic_error("morph count of '" + morph + "' diverged from split trees");
      }
    }
  }

  const WeightedWords& weighted_;
  MorfessorParams params_;
  detail::CostState state_;
  std::map<std::string, Annotation, std::less<>> annotations_;
  std::unordered_map<std::string, Node> nodes_;
  std::vector<NodeUndo> node_journal_;
  std::vector<std::string> free_words_;
};

}  // namespace

MorfessorModel train(const WeightedWords& weighted, const SegmentationLexicon& annotations,
                     const MorfessorParams& params, TrainTrace* trace) {
  params.validate();
  if (weighted.empty()) throw DataError("no training words");
  return Trainer(weighted, annotations, params).run(trace);
}

std::vector<std::pair<double, double>> default_weight_grid() {
  std::vector<std::pair<double, double>> grid;
  for (double alpha : {0.5, 1.0}) {
    for (double beta : {0.0, 100.0, 500.0, 1000.0, 2500.0}) grid.emplace_back(alpha, beta);
  }
  return grid;
}

TuneResult tune_weights(const WeightedWords& weighted, const SegmentationLexicon& annotations,
                        const SegmentationLexicon& dev,
                        const std::vector<std::pair<double, double>>& grid,
                        const MorfessorParams& base) {
  if (grid.empty()) throw UsageError("empty weight grid");
  if (dev.empty()) throw DataError("empty development set");

  std::vector<std::pair<double, double>> points;
  for (const auto& p : grid) {
    if (std::find(points.begin(), points.end(), p) == points.end()) points.push_back(p);
  }

  TuneResult result;
  for (const auto& [word, morphs] : dev.entries()) {
    if (annotations.contains(word)) ++result.dev_annotation_overlap;
  }

  std::vector<std::future<double>> scores;
  for (const auto& [alpha, beta] : points) {
    MorfessorParams p = base;
    p.alpha = alpha;
    p.beta = beta;
    p.validate();
    scores.push_back(std::async(std::launch::async, [&weighted, &annotations, &dev, p] {
      const MorfessorModel model = train(weighted, annotations, p);
      const ViterbiSegmenter segmenter(model);
      SegmentationLexicon pred;
      for (const auto& [word, morphs] : dev.entries()) {
        pred.insert(word, segmenter.segment(word).morphs);
      }
      return score_segmentation(pred, dev).boundary_f1;
    }));
  }

  bool have_best = false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    MorfessorParams p = base;
    p.alpha = points[i].first;
    p.beta = points[i].second;
    const double f1 = scores[i].get();
    result.grid_scores.emplace_back(p, f1);
    const bool better =
        !have_best || f1 > result.dev_f1 ||
        (f1 == result.dev_f1 &&
         (p.beta < result.params.beta ||
          (p.beta == result.params.beta && p.alpha < result.params.alpha)));
    if (better) {
      result.params = p;
      result.dev_f1 = f1;
      have_best = true;
    }
  }
  return result;
}

}  // namespace morphtok
