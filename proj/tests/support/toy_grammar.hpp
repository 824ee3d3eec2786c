#pragma once

// Seeded stem x suffix word generator used as the ground-truth oracle for
// the learner tests.

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "morphtok/annotations.hpp"
#include "morphtok/corpus.hpp"
#include "morphtok/random.hpp"

namespace morphtok::testing {

struct ToyGrammar {
  std::vector<std::string> stems;
  std::vector<std::string> suffixes;
  WordCounts counts;
  SegmentationLexicon truth;
};

inline std::vector<std::string> default_suffixes() {
  // The empty suffix puts bare stems into the corpus.
  return {"", "s", "ed", "ing", "er", "ly", "ness", "ment", "able", "ful"};
}

/// Stems are 4-7 letters of alternating consonant/vowel shape. Word counts
/// follow a Zipf law over stem rank times suffix rank:
/// count = floor(scale / (stem_rank * suffix_rank)) + min_count.
inline ToyGrammar make_toy_grammar(std::uint64_t seed, std::size_t n_stems = 40,
                                   std::vector<std::string> suffixes = default_suffixes(),
                                   double scale = 20000.0, std::int64_t min_count = 31) {
  static const std::string consonants = "bcdfghjklmnprstvwz";
  static const std::string vowels = "aeiou";
  Rng rng(seed);
  ToyGrammar g;
  g.suffixes = std::move(suffixes);
  std::set<std::string> seen_stems;
  while (g.stems.size() < n_stems) {
    const std::size_t len = 4 + uniform_index(rng, 4);
    std::string stem;
    bool consonant = uniform_index(rng, 2) == 0;
    for (std::size_t i = 0; i < len; ++i, consonant = !consonant) {
      const std::string& pool = consonant ? consonants : vowels;
      stem.push_back(pool[uniform_index(rng, pool.size())]);
    }
    if (seen_stems.insert(stem).second) g.stems.push_back(stem);
  }

  WordCounts::Map counts;
  for (std::size_t s = 0; s < g.stems.size(); ++s) {
    for (std::size_t x = 0; x < g.suffixes.size(); ++x) {
      const std::string word = g.stems[s] + g.suffixes[x];
      const auto count = static_cast<std::int64_t>(
                             std::floor(scale / (static_cast<double>(s + 1) * (x + 1)))) +
                         min_count;
      if (!counts.emplace(word, count).second) continue;  // accidental collision
      Morphs morphs{g.stems[s]};
      if (!g.suffixes[x].empty()) morphs.push_back(g.suffixes[x]);
      g.truth.insert(word, morphs);
    }
  }
  g.counts = WordCounts(std::move(counts));
  return g;
}

struct CompoundFixture {
  WordCounts counts;
  SegmentationLexicon annotations;  // bare compounds, unsplit
  SegmentationLexicon dev;          // inflected compounds, [compound, suffix]
};

/// Frequent unannotated "pieces" (with ten inflections each) plus rarer
/// compounds of two pieces that are single morphs in the gold standard.
/// Bare compounds are annotated; their inflected forms form the dev set.
/// Unsupervised, the inflected compounds are mis-segmented because the
/// pieces dominate the statistics.
inline CompoundFixture make_compound_fixture(std::uint64_t seed,
                                             std::int64_t piece_count = 1000000) {
  const auto pieces = make_toy_grammar(seed, 12, {""}).stems;
  const std::vector<std::string> inflections = default_suffixes();
  CompoundFixture f;
  WordCounts::Map counts;
  for (const auto& p : pieces) {
    for (const auto& s : inflections) counts[p + s] = piece_count;
  }
  std::size_t made = 0;
  for (std::size_t i = 0; i < pieces.size() && made < 30; ++i) {
    for (std::size_t j = 0; j < pieces.size() && made < 30; ++j) {
      if (i == j || (i * 7 + j) % 3 != 0) continue;
      const std::string stem = pieces[i] + pieces[j];
      ++made;
      counts[stem] = 31;
      f.annotations.insert(stem, {stem});
      for (std::string s : {"s", "ed", "ing"}) {
        counts[stem + s] = 31;
        f.dev.insert(stem + s, {stem, s});
      }
    }
  }
  f.counts = WordCounts(std::move(counts));
  return f;
}

}  // namespace morphtok::testing
