#include "morphtok/vocabulary.hpp"

#include <algorithm>
#include <set>

#include "morphtok/error.hpp"
#include "morphtok/utf8.hpp"

namespace morphtok {

std::vector<std::string> default_specials() {
  return {"[PAD]", std::string(kUnkToken), "[CLS]", "[SEP]", "[MASK]"};
}

Vocabulary::Vocabulary(std::string marker, std::vector<std::string> specials,
                       std::vector<VocabEntry> entries)
    : marker_(std::move(marker)), specials_(std::move(specials)), entries_(std::move(entries)) {
  if (specials_.size() > entries_.size()) throw DataError("vocabulary lacks its specials");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i < specials_.size() && entries_[i].token != specials_[i]) {
      throw DataError("special token '" + specials_[i] + "' is not at id " + std::to_string(i));
    }
    if (!ids_.emplace(entries_[i].token, static_cast<std::int64_t>(i)).second) {
      throw DataError("duplicate vocabulary token '" + entries_[i].token + "'");
    }
  }
}

Vocabulary Vocabulary::from_frequencies(std::string marker, std::vector<std::string> specials,
                                        const std::map<std::string, double>& freqs) {
  std::vector<VocabEntry> entries;
  entries.reserve(specials.size() + freqs.size());
  for (const auto& s : specials) entries.push_back({s, 0.0});
  std::vector<VocabEntry> rest;
  for (const auto& [token, f] : freqs) {
    if (std::find(specials.begin(), specials.end(), token) != specials.end()) {
      throw DataError("token '" + token + "' collides with a special token");
    }
    rest.push_back({token, f});
  }
  // freqs is already sorted by token, so a stable sort keeps ties lexicographic.
  std::stable_sort(rest.begin(), rest.end(),
                   [](const VocabEntry& a, const VocabEntry& b) { return a.freq > b.freq; });
  entries.insert(entries.end(), rest.begin(), rest.end());
  return Vocabulary(std::move(marker), std::move(specials), std::move(entries));
}

std::optional<std::int64_t> Vocabulary::id(std::string_view token) const {
  auto it = ids_.find(token);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocabulary::token(std::int64_t id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= entries_.size()) {
    throw DataError("token id out of range: " + std::to_string(id));
  }
  return entries_[static_cast<std::size_t>(id)].token;
}

std::int64_t Vocabulary::unk_id() const {
  auto i = id(kUnkToken);
  if (!i) throw DataError("vocabulary has no [UNK] token");
  return *i;
}

std::map<std::string, double> Vocabulary::token_freqs() const {
  std::map<std::string, double> out;
  for (std::size_t i = specials_.size(); i < entries_.size(); ++i) {
    out.emplace(entries_[i].token, entries_[i].freq);
  }
  return out;
}

bool Vocabulary::is_special(std::string_view token) const {
  return std::find(specials_.begin(), specials_.end(), token) != specials_.end();
}

void VocabConfig::validate() const {
  if (min_count_exclusive < 0) throw UsageError("minimum count must be >= 0");
  if (keep_frequent_threshold) {
    if (*keep_frequent_threshold < 0) throw UsageError("keep-frequent threshold must be >= 0");
    if (*keep_frequent_threshold <= min_count_exclusive) {
      throw UsageError("keep-frequent threshold must exceed the minimum count");
    }
  }
  if (marker.empty()) throw UsageError("word-initial marker must not be empty");
}

Vocabulary build_vocab(const SegmentationProvider& provider, const WordCounts& counts,
                       const VocabConfig& cfg) {
  cfg.validate();
  if (counts.empty()) throw DataError("cannot build a vocabulary from empty counts");

  std::map<std::string, double> freqs;
  for (char32_t p : cfg.clean.punctuation) freqs.emplace(utf8::encode(std::u32string(1, p)), 0.0);

  for (const auto& [word, count] : counts.entries()) {
    if (count <= cfg.min_count_exclusive) continue;
    const auto c = static_cast<double>(count);
    if (is_punctuation_word(word, cfg.clean)) {
      freqs[word] += c;
      continue;
    }
    if (cfg.keep_frequent_threshold && count >= *cfg.keep_frequent_threshold) {
      freqs[cfg.marker + word] += c;
      continue;
    }
    const Morphs morphs = provider.segment(word);
    for (std::size_t i = 0; i < morphs.size(); ++i) {
      freqs[i == 0 ? cfg.marker + morphs[i] : morphs[i]] += c;
    }
  }
  for (const auto& s : cfg.specials) freqs.erase(s);
  return Vocabulary::from_frequencies(cfg.marker, cfg.specials, freqs);
}

DiffReport vocab_diff(const Vocabulary& a, const Vocabulary& b, const WordCounts& counts,
                      std::int64_t word_threshold) {
  if (a.marker() != b.marker()) throw DataError("vocabularies use different word markers");
  DiffReport r;
  const std::string& marker = a.marker();
  for (const auto& e : a.entries()) {
    if (b.contains(e.token)) {
      ++r.common;
      continue;
    }
    ++r.only_a;
    if (e.token.starts_with(marker)) {
      const std::string_view word = std::string_view(e.token).substr(marker.size());
      const auto c = counts.count(word);
      if (c > 0 && c < word_threshold) ++r.only_a_infrequent_words;
    }
  }
  for (const auto& e : b.entries()) {
    if (!a.contains(e.token)) ++r.only_b;
  }
  return r;
}

}  // namespace morphtok
