#include "morphtok/analysis.hpp"

#include <cmath>

#include "morphtok/error.hpp"

namespace morphtok {

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

std::vector<double> probabilities(const FreqMap& freqs) {
  std::vector<double> positive;
  positive.reserve(freqs.size());
  for (const auto& [token, f] : freqs) {
    if (f < 0 || !std::isfinite(f)) throw DataError("invalid frequency for '" + token + "'");
    if (f > 0) positive.push_back(f);
  }
  if (positive.empty()) throw DataError("entropy needs at least one positive frequency");
  const double total = pairwise_sum(positive);
  for (double& p : positive) p /= total;
  return positive;
}

}  // namespace

double shannon_entropy(const FreqMap& freqs) {
  std::vector<double> terms = probabilities(freqs);
  for (double& p : terms) p = -p * std::log2(p);
  return std::max(0.0, pairwise_sum(terms));
}

double renyi_entropy(const FreqMap& freqs, double alpha) {
  if (!(alpha > 0) || alpha == 1.0 || !std::isfinite(alpha)) {
    throw UsageError("Renyi order must be > 0 and != 1");
  }
  std::vector<double> terms = probabilities(freqs);
  for (double& p : terms) p = std::pow(p, alpha);
  return std::max(0.0, std::log2(pairwise_sum(terms)) / (1.0 - alpha));
}

std::vector<HistogramBucket> frequency_histogram(const FreqMap& freqs) {
  std::vector<HistogramBucket> buckets;
  for (const auto& [token, f] : freqs) {
    if (!(f > 0)) continue;
    std::size_t k = 0;
    double upper = 10;
    while (f >= upper) {
      upper *= 10;
      ++k;
    }
    while (buckets.size() <= k) {
      buckets.push_back({std::pow(10.0, static_cast<double>(buckets.size())), 0});
    }
    ++buckets[k].tokens;
  }
  return buckets;
}

FreqMap recompute_token_freqs(const Tokenizer& tokenizer, const WordCounts& counts,
                              std::int64_t min_count_exclusive, bool type_weighted) {
  FreqMap freqs = tokenizer.vocab().token_freqs();
  for (auto& [token, f] : freqs) f = 0;
  for (const auto& [word, count] : counts.entries()) {
    if (count <= min_count_exclusive) continue;
    const double w = type_weighted ? 1.0 : static_cast<double>(count);
    for (const auto& tok : tokenizer.tokenize_word(word)) freqs[tok] += w;
  }
  return freqs;
}

AnalysisReport report_from_freqs(const FreqMap& freqs, std::size_t vocab_size,
                                 const std::vector<double>& renyi_alphas) {
  AnalysisReport r;
  r.vocab_size = vocab_size;
  r.shannon_bits = shannon_entropy(freqs);
  for (double a : renyi_alphas) r.renyi[a] = renyi_entropy(freqs, a);
  r.histogram = frequency_histogram(freqs);
  std::vector<double> values;
  for (const auto& [token, f] : freqs) {
    if (f > 0) values.push_back(f);
  }
  r.total_token_occurrences = pairwise_sum(values);
  return r;
}

AnalysisReport analyze(const Vocabulary& vocab, const WordCounts& counts,
                       const Tokenizer& tokenizer, const AnalysisOptions& options) {
  if (vocab.size() == 0) throw DataError("cannot analyze an empty vocabulary");
  FreqMap freqs = vocab.token_freqs();
  bool stored = false;
  for (const auto& [token, f] : freqs) stored = stored || f > 0;
  if (options.recompute || options.type_weighted || !stored) {
    freqs = recompute_token_freqs(tokenizer, counts, options.min_count_exclusive,
                                  options.type_weighted);
  }
  return report_from_freqs(freqs, vocab.size(), options.renyi_alphas);
}

}  // namespace morphtok
