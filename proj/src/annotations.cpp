#include "morphtok/annotations.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "morphtok/error.hpp"
#include "morphtok/random.hpp"
#include "morphtok/utf8.hpp"

namespace morphtok {

bool is_valid_segmentation(std::string_view word, const Morphs& morphs) {
  if (morphs.empty()) return false;
  std::size_t pos = 0;
  for (const auto& m : morphs) {
    if (m.empty() || word.compare(pos, m.size(), m) != 0) return false;
    pos += m.size();
  }
  return pos == word.size();
}

std::string join(const Morphs& morphs, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < morphs.size(); ++i) {
    if (i > 0) out += sep;
    out += morphs[i];
  }
  return out;
}

SegmentationLexicon::SegmentationLexicon(Map entries) : entries_(std::move(entries)) {
  for (const auto& [word, morphs] : entries_) {
    if (!is_valid_segmentation(word, morphs)) {
      throw DataError("segmentation of '" + word + "' does not concatenate to the word");
    }
  }
}

bool SegmentationLexicon::insert(std::string word, Morphs morphs) {
  if (!is_valid_segmentation(word, morphs)) return false;
  return entries_.emplace(std::move(word), std::move(morphs)).second;
}

bool SegmentationLexicon::contains(std::string_view word) const {
  return entries_.find(word) != entries_.end();
}

const Morphs* SegmentationLexicon::find(std::string_view word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

GoldParse parse_gold(std::istream& in, std::string_view morph_separator) {
  GoldParse result;
  std::string line;
  std::size_t lineno = 0;
  std::size_t nonempty = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++nonempty;

    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      result.rejects.push_back({lineno, "expected at least 2 tab-separated columns"});
      continue;
    }
    const std::string word = line.substr(0, tab);
    const auto tab2 = line.find('\t', tab + 1);
    std::string seg = line.substr(tab + 1, tab2 == std::string::npos ? std::string::npos
                                                                     : tab2 - tab - 1);
    if (!morph_separator.empty()) {
      for (auto pos = seg.find(morph_separator); pos != std::string::npos;
           pos = seg.find(morph_separator, pos + 1)) {
        seg.replace(pos, morph_separator.size(), " ");
      }
    }
    Morphs morphs;
    std::istringstream ss(seg);
    for (std::string m; ss >> m;) morphs.push_back(std::move(m));

    if (word.empty() || !is_valid_segmentation(word, morphs)) {
      result.rejects.push_back(
          {lineno, "morphs '" + join(morphs, " ") + "' do not concatenate to '" + word + "'"});
      continue;
    }
    if (!result.lexicon.insert(word, std::move(morphs))) ++result.duplicates;
  }
  if (in.bad()) throw DataError("failed reading gold segmentations");
  if (nonempty > 0 && 2 * result.rejects.size() > nonempty) {
    throw DataError("rejected " + std::to_string(result.rejects.size()) + " of " +
                    std::to_string(nonempty) +
                    " gold lines; is the morph separator right?");
  }
  return result;
}

GoldParse parse_gold_file(const std::string& path, std::string_view morph_separator) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return parse_gold(in, morph_separator);
}

void write_lexicon(std::ostream& out, const SegmentationLexicon& lex) {
  for (const auto& [word, morphs] : lex.entries()) {
    out << word << '\t' << join(morphs, " ") << '\n';
  }
}

AnnotationSampler sampling_weights(const WordCounts& counts,
                                   const std::vector<std::string>& candidates) {
  if (candidates.empty()) throw DataError("empty candidate set for annotation sampling");
  AnnotationSampler s;
  double total = 0;
  for (const auto& w : candidates) {
    const auto c = counts.count(w);
    if (c == 0) throw DataError("sampling candidate '" + w + "' has no count");
    const double score = static_cast<double>(utf8::length(w)) * static_cast<double>(c);
    if (s.weights_.emplace(w, score).second) total += score;
  }
  for (auto& [w, p] : s.weights_) p /= total;
  return s;
}

SegmentationLexicon sample_annotations(const AnnotationSampler& sampler,
                                       const SegmentationLexicon& gold, std::size_t k,
                                       std::uint64_t seed) {
  std::vector<std::pair<std::string_view, double>> candidates;
  for (const auto& [w, p] : sampler.weights()) {
    if (gold.contains(w)) candidates.emplace_back(w, p);
  }
  if (k > candidates.size()) {
    throw DataError("requested " + std::to_string(k) + " annotations but only " +
                    std::to_string(candidates.size()) + " candidates are available");
  }

  // Exponential-key sampling: keep the k largest log(u)/p. This selects the
  // same distribution over ordered draws as successive proportional draws
  // renormalized over the remaining words.
  Rng rng(seed);
  std::vector<std::pair<double, std::size_t>> keys;
  keys.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    double u = uniform01(rng);
    while (u == 0.0) u = uniform01(rng);
    keys.emplace_back(std::log(u) / candidates[i].second, i);
  }
  std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(k), keys.end(),
                    [](const auto& a, const auto& b) {
                      return a.first > b.first || (a.first == b.first && a.second < b.second);
                    });

  SegmentationLexicon out;
  for (std::size_t i = 0; i < k; ++i) {
    const auto word = candidates[keys[i].second].first;
    out.insert(std::string(word), *gold.find(word));
  }
  return out;
}

std::vector<std::size_t> boundary_positions(const Morphs& morphs) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i + 1 < morphs.size(); ++i) {
    pos += utf8::length(morphs[i]);
    out.push_back(pos);
  }
  return out;
}

SegScores score_segmentation(const SegmentationLexicon& pred,
                             const SegmentationLexicon& gold) {
  SegScores s;
  std::size_t matched = 0, n_pred = 0, n_gold = 0, exact = 0;
  for (const auto& [word, gold_morphs] : gold.entries()) {
    const Morphs* p = pred.find(word);
    if (p == nullptr) {
      ++s.gold_only_words;
      continue;
    }
    ++s.evaluated_words;
    const auto pb = boundary_positions(*p);
    const auto gb = boundary_positions(gold_morphs);
    std::vector<std::size_t> common;
    std::set_intersection(pb.begin(), pb.end(), gb.begin(), gb.end(),
                          std::back_inserter(common));
    matched += common.size();
    n_pred += pb.size();
    n_gold += gb.size();
    if (*p == gold_morphs) ++exact;
  }
  s.pred_only_words = pred.size() - s.evaluated_words;
  if (s.evaluated_words == 0) {
    throw DataError("predicted and gold segmentations share no words");
  }
  // A side with no boundaries at all agrees perfectly when the other side
  // has none either.
  s.boundary_precision = n_pred == 0 ? (n_gold == 0 ? 1.0 : 0.0)
                                     : static_cast<double>(matched) / n_pred;
  s.boundary_recall = n_gold == 0 ? (n_pred == 0 ? 1.0 : 0.0)
                                  : static_cast<double>(matched) / n_gold;
  const double pr = s.boundary_precision + s.boundary_recall;
  s.boundary_f1 = pr > 0 ? 2 * s.boundary_precision * s.boundary_recall / pr : 0.0;
  s.exact_match_rate = static_cast<double>(exact) / s.evaluated_words;
  return s;
}

}  // namespace morphtok
