// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "morphtok/analysis.hpp"
#include "morphtok/annotations.hpp"
#include "morphtok/morfessor.hpp"
#include "morphtok/random.hpp"
#include "morphtok/segmenter.hpp"
#include "morphtok/tokenizer.hpp"
#include "morphtok/utf8.hpp"
#include "morphtok/vocabulary.hpp"
#include "toy_grammar.hpp"

namespace {

using namespace morphtok;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome frequency_transform() {
  const FrequencyTransform token{FrequencyMode::token, 30.0};
  const FrequencyTransform type{FrequencyMode::type, 30.0};
  const double e29 = std::abs(token.apply(29) - 1.0);
  const double e899 = std::abs(token.apply(899) - 2.0);
  bool type_ok = true;
  for (std::int64_t c = 1; c < 100000; c = c * 3 + 1) type_ok = type_ok && type.apply(c) == 1.0;
  return {e29 < 1e-12 && e899 < 1e-12 && type_ok,
          "|f(29)-1|=" + fmt("%.1e", e29) + " |f(899)-2|=" + fmt("%.1e", e899) +
              (type_ok ? " type=1" : " type!=1")};
}

Outcome sampler() {
  const auto t0 = Clock::now();
  Rng rng(2024);
  double worst = 0;
  for (int table = 0; table < 10000; ++table) {
    WordCounts::Map m;
    std::vector<std::string> words;
    const auto n = 1 + uniform_index(rng, 40);
    for (std::uint64_t i = 0; i < n; ++i) {
      std::string w(1 + uniform_index(rng, 12), static_cast<char>('a' + uniform_index(rng, 26)));
      w += std::to_string(i);
      m[w] = static_cast<std::int64_t>(1 + uniform_index(rng, 1000000));
      words.push_back(w);
    }
    double sum = 0;
    const AnnotationSampler s = sampling_weights(WordCounts(m), words);
    for (const auto& [w, p] : s.weights()) sum += p;
    worst = std::max(worst, std::abs(sum - 1.0));
  }

  const WordCounts counts({{"ab", 7}, {"cde", 3}, {"fghij", 11}, {"k", 40}, {"lmno", 2}});
  std::vector<std::string> words;
  SegmentationLexicon gold;
  for (const auto& [w, c] : counts.entries()) {
    words.push_back(w);
    gold.insert(w, {w});
  }
  const auto s = sampling_weights(counts, words);
  double len_count = 0;
  for (const auto& [w, c] : counts.entries()) len_count += static_cast<double>(w.size() * c);
  const int trials = 100000;
  std::map<std::string, int> hits;
  for (int seed = 0; seed < trials; ++seed) {
    hits[sample_annotations(s, gold, 1, static_cast<std::uint64_t>(seed)).entries().begin()->first]++;
  }
  double worst_z = 0;
  for (const auto& [w, c] : counts.entries()) {
    const double p = static_cast<double>(w.size() * c) / len_count;  // independent of the sampler
    const double sigma = std::sqrt(p * (1 - p) / trials);
    worst_z = std::max(worst_z, std::abs(hits[w] / static_cast<double>(trials) - p) / sigma);
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-9 && worst_z <= 3 && secs < 10,
          "max|sum-1|=" + fmt("%.1e", worst) + " max z=" + fmt("%.2f", worst_z) + " " +
              fmt("%.1fs", secs)};
}

Outcome learner() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (auto mode : {FrequencyMode::type, FrequencyMode::token}) {
    const auto g = testing::make_toy_grammar(42);
    TrainTrace trace;
    trace.check_invariants = true;
    MorfessorParams p;
    p.seed = 42;
    const auto m = train(transform_counts(g.counts, {mode, 30.0}), {}, p, &trace);
    SegmentationLexicon pred;
    for (const auto& [w, t] : m.split_trees()) pred.insert(w, t.leaves());
    const double f1 = score_segmentation(pred, g.truth).boundary_f1;
    bool monotone = true;
    for (std::size_t i = 1; i < trace.accepted_costs.size(); ++i) {
      monotone = monotone && trace.accepted_costs[i] <= trace.accepted_costs[i - 1];
    }
    ok = ok && f1 >= 0.8 && monotone;
    detail += std::string(mode == FrequencyMode::type ? "type" : "token") + " F1=" +
              fmt("%.3f", f1) + (monotone ? " monotone" : " NOT monotone") + " (" +
              std::to_string(trace.accepted_costs.size()) + " accepted); ";
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 60, detail + fmt("%.1fs", secs)};
}

Outcome viterbi() {
  const auto t0 = Clock::now();
  const auto g = testing::make_toy_grammar(7);
  const auto m = train(transform_counts(g.counts, {FrequencyMode::token, 30.0}), {}, {});
  const ViterbiSegmenter v(m);
  Rng rng(500);
  // Letters the model knows plus two it has never seen.
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
  int mismatches = 0;
  for (int i = 0; i < 500; ++i) {
    std::string word;
    const auto n = 1 + uniform_index(rng, 10);
    for (std::uint64_t k = 0; k < n; ++k) word.push_back(alphabet[uniform_index(rng, alphabet.size())]);
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 0; mask < (1ull << (n - 1)); ++mask) {
      Morphs seg{word.substr(0, 1)};
      for (std::size_t k = 1; k < n; ++k) {
        if (mask & (1ull << (k - 1))) seg.emplace_back();
        seg.back() += word[k];
      }
      double c = 0;
      for (auto it = seg.rbegin(); it != seg.rend(); ++it) c += v.morph_cost(*it);
      best = std::min(best, c);
    }
    mismatches += v.segment(word).cost != best;
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 30,
          std::to_string(mismatches) + "/500 mismatches " + fmt("%.1fs", secs)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cli_determinism() {
  const fs::path dir = fs::temp_directory_path() / "morphtok_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "counts.tsv");
    for (const auto& [w, c] : testing::make_toy_grammar(3).counts.sorted()) out << w << '\t' << c << '\n';
  }
  const std::string cli = std::string("'") + MORPHTOK_CLI + "' ";
  const auto p = [&](const std::string& name) { return "'" + (dir / name).string() + "'"; };
  const std::vector<std::pair<std::string, std::function<std::string(int)>>> steps{
      {"train", [&](int i) {
         return "train --counts " + p("counts.tsv") + " --mode token --seed 9 --output " +
                p("model" + std::to_string(i) + ".json");
       }},
      {"build-vocab", [&](int i) {
         return "build-vocab --mode frequent --model " + p("model0.json") + " --counts " +
                p("counts.tsv") + " --output " + p("vocab" + std::to_string(i) + ".json");
       }},
      {"analyze", [&](int i) {
         return "analyze --vocab " + p("vocab0.json") + " --recompute --model " + p("model0.json") +
                " --counts " + p("counts.tsv") + " --output " + p("report" + std::to_string(i) + ".json") +
                " --histogram-csv " + p("hist" + std::to_string(i) + ".csv");
       }},
  };
  bool ok = true;
  std::string detail;
  for (const auto& [name, cmd] : steps) {
    bool same = true;
    for (int i = 0; i < 3; ++i) {
      const int status = std::system((cli + cmd(i) + " 2>/dev/null").c_str());
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) same = false;
    }
    const std::string stem = name == "train" ? "model" : name == "build-vocab" ? "vocab" : "report";
    const std::string first = slurp(dir / (stem + "0.json"));
    same = same && !first.empty();
    for (int i = 1; i < 3; ++i) {
      same = same && first == slurp(dir / (stem + std::to_string(i) + ".json"));
      if (name == "analyze") same = same && slurp(dir / "hist0.csv") == slurp(dir / ("hist" + std::to_string(i) + ".csv"));
    }
    ok = ok && same;
    detail += name + (same ? " identical; " : " DIFFERS; ");
  }
  fs::remove_all(dir);
  return {ok, detail + "3 runs each"};
}

Outcome marker_and_unk() {
  const auto g = testing::make_toy_grammar(11);
  auto model = std::make_shared<const MorfessorModel>(
      train(transform_counts(g.counts, {FrequencyMode::type, 30.0}), {}, {}));
  const auto provider = SegmentationProvider::from_model(model);
  VocabConfig cfg;
  cfg.keep_frequent_threshold = 1700;
  // Only the more frequent half of the words contribute tokens, so the rarer
  // words exercise [UNK].
  WordCounts::Map frequent;
  for (const auto& [w, c] : g.counts.entries()) {
    if (c >= 200) frequent.emplace(w, c);
  }
  const Tokenizer t(build_vocab(provider, WordCounts(frequent), cfg), provider);
  const Vocabulary& v = t.vocab();
  const std::string G = v.marker();

  std::vector<std::pair<std::string, std::int64_t>> words(g.counts.entries().begin(),
                                                          g.counts.entries().end());
  for (const std::string extra : {"qxqx", "zzzyx", "xylophone"}) words.emplace_back(extra, 1);

  std::size_t whole = 0, unks = 0, roundtrips = 0, violations = 0;
  for (const auto& [w, c] : words) {
    const auto toks = t.tokenize_word(w);
    if (c >= 1700) {
      ++whole;
      violations += toks != std::vector<std::string>{G + w};
      continue;
    }
    std::vector<std::string> expect;
    if (v.contains(G + w)) {
      expect = {G + w};
    } else {
      const Morphs morphs = provider.segment(w);
      for (std::size_t i = 0; i < morphs.size(); ++i) {
        const std::string frag = i == 0 ? G + morphs[i] : morphs[i];
        expect.push_back(v.contains(frag) ? frag : std::string(kUnkToken));
      }
    }
    violations += toks != expect;
    const bool has_unk = std::find(toks.begin(), toks.end(), kUnkToken) != toks.end();
    unks += has_unk;
    if (!has_unk) {
      ++roundtrips;
      violations += t.detokenize(toks) != w;
    }
  }
  return {violations == 0 && whole > 0 && unks > 0,
          std::to_string(words.size()) + " words, " + std::to_string(whole) + " kept whole, " +
              std::to_string(unks) + " with [UNK], " + std::to_string(roundtrips) +
              " round trips, " + std::to_string(violations) + " violations"};
}

Outcome entropy() {
  const auto t0 = Clock::now();
  FreqMap uniform;
  for (int i = 0; i < 512; ++i) uniform["t" + std::to_string(i)] = 3;
  const double h512 = shannon_entropy(uniform);
  Rng rng(77);
  double worst = 0;
  bool conserved = true;
  std::vector<FreqMap> fixtures{uniform};
  for (int d = 0; d < 100; ++d) {
    FreqMap f;
    const auto n = 2 + uniform_index(rng, 300);
    for (std::uint64_t i = 0; i < n; ++i) {
      f["t" + std::to_string(i)] = std::floor(std::pow(10.0, uniform01(rng) * 6));
    }
    const double h = shannon_entropy(f);
    worst = std::max({worst, std::abs(renyi_entropy(f, 1 - 1e-4) - h),
                      std::abs(renyi_entropy(f, 1 + 1e-4) - h)});
    fixtures.push_back(std::move(f));
  }
  for (const auto& f : fixtures) {
    std::size_t positive = 0, bucketed = 0;
    for (const auto& [t, v] : f) positive += v > 0;
    for (const auto& b : frequency_histogram(f)) bucketed += b.tokens;
    conserved = conserved && positive == bucketed;
  }
  const double secs = seconds_since(t0);
  return {std::abs(h512 - 9.0) <= 1e-9 && worst <= 1e-3 && conserved && secs < 5,
          "H(uniform512)=" + fmt("%.12f", h512) + " max|Renyi(1+-1e-4)-H|=" + fmt("%.2e", worst) +
              (conserved ? " histograms conserve" : " histogram MISMATCH") + " " + fmt("%.2fs", secs)};
}

Outcome annotation_constraint() {
  const auto g = testing::make_toy_grammar(13);
  SegmentationLexicon ann;
  std::size_t i = 0;
  for (const auto& [w, m] : g.truth.entries()) {
    if (i++ % 2 == 0) ann.insert(w, m);
    if (ann.size() == 200) break;
  }
  std::size_t agree = 0;
  std::string detail;
  bool ok = ann.size() == 200;
  for (auto mode : {FrequencyMode::type, FrequencyMode::token}) {
    MorfessorParams p;
    p.beta = 1;
    const auto m = train(transform_counts(g.counts, {mode, 30.0}), ann, p);
    agree = 0;
    for (const auto& [w, gold] : ann.entries()) agree += m.tree(w) && m.tree(w)->leaves() == gold;
    ok = ok && agree == ann.size();
    detail += std::string(mode == FrequencyMode::type ? "type " : "token ") + std::to_string(agree) +
              "/" + std::to_string(ann.size()) + "; ";
  }
  return {ok, detail + "trees equal gold"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Outcome (*)()>> criteria{
      {"frequency transform exactness", frequency_transform},
      {"annotation sampler weights and draws", sampler},
      {"MDL learner on synthetic grammar", learner},
      {"Viterbi optimality vs brute force", viterbi},
      {"CLI determinism (train, build-vocab, analyze)", cli_determinism},
      {"word marker and [UNK] contract", marker_and_unk},
      {"entropy oracles", entropy},
      {"annotation constraint on 200 words", annotation_constraint},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
