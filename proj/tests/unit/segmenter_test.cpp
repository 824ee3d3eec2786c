#include "morphtok/segmenter.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "morphtok/random.hpp"
#include "morphtok/utf8.hpp"
#include "toy_grammar.hpp"

namespace morphtok {
namespace {

MorfessorModel model_of(const std::map<std::string, Morphs>& segs, const WeightedWords& weights) {
  std::map<std::string, SplitTree, std::less<>> trees;
  for (const auto& [w, m] : segs) trees.emplace(w, SplitTree::chain(m));
  return MorfessorModel::assemble({}, weights, {}, std::move(trees));
}

const MorfessorModel& toy_model() {
  static const MorfessorModel m = [] {
    const auto g = testing::make_toy_grammar(21);
    return train(transform_counts(g.counts, {FrequencyMode::token, 30.0}), {}, {});
  }();
  return m;
}

// Sum of morph costs taken right to left, the order the search accumulates.
double sum_cost(const ViterbiSegmenter& v, const Morphs& morphs) {
  double c = 0;
  for (auto it = morphs.rbegin(); it != morphs.rend(); ++it) c += v.morph_cost(*it);
  return c;
}

double brute_force_min(const ViterbiSegmenter& v, const std::string& word) {
  const auto chars = utf8::chars(word);
  const std::size_t n = chars.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (1ull << (n - 1)); ++mask) {
    Morphs seg{chars[0]};
    for (std::size_t i = 1; i < n; ++i) {
      if (mask & (1ull << (i - 1))) seg.emplace_back();
      seg.back() += chars[i];
    }
    best = std::min(best, sum_cost(v, seg));
  }
  return best;
}

TEST(ViterbiTest, DominantWholeWordStaysUnsplit) {
  const auto m = model_of({{"cats", {"cats"}}, {"cat", {"cat"}}, {"s", {"s"}}},
                          {{"cats", 100.0}, {"cat", 1.0}, {"s", 1.0}});
  EXPECT_EQ((Morphs{"cats"}), viterbi_segment(m, "cats").morphs);
}

TEST(ViterbiTest, UnseenCharactersStayInOneSegment) {
  const auto m = model_of({{"ab", {"ab"}}}, {{"ab", 3.0}});
  const ViterbiSegmenter v(m);
  const auto r = v.segment("qqq");
  EXPECT_EQ((Morphs{"qqq"}), r.morphs);
  EXPECT_DOUBLE_EQ(3 * v.oov_char_penalty(), r.cost);
}

TEST(ViterbiTest, DefaultPenaltyExceedsEveryKnownMorph) {
  const auto m = model_of({{"ab", {"ab"}}, {"cd", {"cd"}}}, {{"ab", 3.0}, {"cd", 1.0}});
  const ViterbiSegmenter v(m);
  EXPECT_DOUBLE_EQ(v.morph_cost("cd") + 1.0, v.oov_char_penalty());
  ViterbiOptions o;
  o.oov_char_penalty = 7.5;
  EXPECT_EQ(7.5, ViterbiSegmenter(m, o).oov_char_penalty());
  EXPECT_EQ(7.5 * 3, ViterbiSegmenter(m, o).morph_cost("xyz"));
}

TEST(ViterbiTest, KnownMorphCost) {
  const auto m = model_of({{"ab", {"ab"}}, {"cd", {"cd"}}}, {{"ab", 3.0}, {"cd", 1.0}});
  const ViterbiSegmenter v(m);
  EXPECT_NEAR(-std::log2(3.0 / 4.0), v.morph_cost("ab"), 1e-12);
  EXPECT_NEAR(2.0, v.morph_cost("cd"), 1e-12);
}

TEST(ViterbiTest, TiesPreferFewerMorphsThenLeftmostLongest) {
  // Every known morph has the same cost; "abc" can be [ab, c] or [a, bc].
  const auto m = model_of({{"ab", {"ab"}}, {"c", {"c"}}, {"a", {"a"}}, {"bc", {"bc"}}},
                          {{"ab", 1.0}, {"c", 1.0}, {"a", 1.0}, {"bc", 1.0}});
  EXPECT_EQ((Morphs{"ab", "c"}), viterbi_segment(m, "abc").morphs);
  // N = 16: cost(ab) = 4 bits = cost(a) + cost(b).
  const auto m2 = model_of({{"a", {"a"}}, {"b", {"b"}}, {"ab", {"ab"}}, {"c", {"c"}}},
                           {{"a", 4.0}, {"b", 4.0}, {"ab", 1.0}, {"c", 7.0}});
  EXPECT_EQ((Morphs{"ab"}), viterbi_segment(m2, "ab").morphs);
}

TEST(ViterbiTest, MatchesBruteForceOnRandomWords) {
  const ViterbiSegmenter v(toy_model());
  Rng rng(99);
  const std::string alphabet = "abdegiklmnorstuz";
  for (int i = 0; i < 300; ++i) {
    std::string word;
    const auto n = 1 + uniform_index(rng, 10);
    for (std::uint64_t k = 0; k < n; ++k) word.push_back(alphabet[uniform_index(rng, alphabet.size())]);
    const auto r = v.segment(word);
    EXPECT_EQ(brute_force_min(v, word), r.cost) << word;
    EXPECT_EQ(sum_cost(v, r.morphs), r.cost) << word;
    EXPECT_EQ(word, join(r.morphs));
  }
}

TEST(ViterbiTest, WholeWordBeyondLengthCapIsStillCandidate) {
  const std::string longword(40, 'x');
  const auto m = model_of({{longword, {longword}}}, {{longword, 5.0}});
  const auto r = viterbi_segment(m, longword);
  EXPECT_EQ((Morphs{longword}), r.morphs);
  EXPECT_EQ(0.0, r.cost);
}

TEST(ViterbiTest, MultibyteCharactersAreAtomic) {
  const auto m = model_of({{"\xC3\xA9t\xC3\xA9", {"\xC3\xA9", "t\xC3\xA9"}}}, {{"\xC3\xA9t\xC3\xA9", 4.0}});
  EXPECT_EQ((Morphs{"\xC3\xA9", "t\xC3\xA9"}), viterbi_segment(m, "\xC3\xA9t\xC3\xA9").morphs);
}

TEST(ViterbiTest, EmptyWordIsDataError) {
  EXPECT_THROW(viterbi_segment(toy_model(), ""), DataError);
}

TEST(ProviderTest, LexiconLookup) {
  const auto p = SegmentationProvider::from_lexicon({{"undo", {"un", "do"}}});
  EXPECT_EQ(ProviderKind::lexicon, p.kind());
  EXPECT_EQ((Morphs{"un", "do"}), p.segment("undo"));
  EXPECT_THROW(p.segment("redo"), WordNotFound);
  EXPECT_THROW(p.segment(""), DataError);
}

TEST(ProviderTest, FallbackEqualsViterbi) {
  auto model = std::make_shared<const MorfessorModel>(toy_model());
  const auto p = SegmentationProvider::from_lexicon_then_model({{"undo", {"un", "do"}}}, model);
  EXPECT_EQ((Morphs{"un", "do"}), p.segment("undo"));
  for (const auto& w : {"redo", "zamoking", "q"}) {
    EXPECT_EQ(viterbi_segment(*model, w).morphs, p.segment(w)) << w;
  }
  const auto only_model = SegmentationProvider::from_model(model);
  EXPECT_EQ(viterbi_segment(*model, "undo").morphs, only_model.segment("undo"));
}

TEST(ProviderTest, CorruptEntryFallsBackAndIsCounted) {
  auto model = std::make_shared<const MorfessorModel>(toy_model());
  const auto p = SegmentationProvider::from_lexicon_then_model({{"redo", {"re", "da"}}}, model);
  EXPECT_EQ(0u, p.corrupt_lookups());
  EXPECT_EQ(viterbi_segment(*model, "redo").morphs, p.segment("redo"));
  EXPECT_EQ(1u, p.corrupt_lookups());
  p.segment("redo");
  EXPECT_EQ(2u, p.corrupt_lookups());

  const auto lex_only = SegmentationProvider::from_lexicon({{"redo", {"re", "da"}}});
  EXPECT_THROW(lex_only.segment("redo"), WordNotFound);
  EXPECT_EQ(1u, lex_only.corrupt_lookups());
}

TEST(ViterbiTest, NeverWorseThanUnsplitAndDeterministic) {
  const ViterbiSegmenter v(toy_model());
  const auto g = testing::make_toy_grammar(22);
  for (const auto& [w, c] : g.counts.entries()) {
    const auto r = v.segment(w);
    EXPECT_LE(r.cost, v.morph_cost(w)) << w;
    EXPECT_EQ(r.morphs, v.segment(w).morphs);
  }
}

TEST(ProviderTest, EveryKindSpellsTheWord) {
  auto model = std::make_shared<const MorfessorModel>(toy_model());
  const auto g = testing::make_toy_grammar(23);
  SegmentationLexicon::Map lex;
  std::size_t i = 0;
  for (const auto& [w, m] : g.truth.entries()) {
    if (i++ % 3 == 0) lex.emplace(w, m);
  }
  lex.emplace(g.truth.entries().rbegin()->first, Morphs{"bogus"});
  const std::vector<SegmentationProvider> providers{
      SegmentationProvider::from_model(model), SegmentationProvider::from_lexicon(lex),
      SegmentationProvider::from_lexicon_then_model(lex, model)};
  for (const auto& p : providers) {
    for (const auto& [w, c] : g.counts.entries()) {
      try {
        EXPECT_EQ(w, join(p.segment(w))) << w;
      } catch (const WordNotFound&) {
        EXPECT_EQ(ProviderKind::lexicon, p.kind());
      }
    }
  }
}

}  // namespace
}  // namespace morphtok
