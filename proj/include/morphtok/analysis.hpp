#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "morphtok/corpus.hpp"
#include "morphtok/tokenizer.hpp"
#include "morphtok/vocabulary.hpp"

namespace morphtok {

using FreqMap = std::map<std::string, double>;

/// Pairwise (cascade) summation with a split fixed by index, so the
/// result depends only on the order of `values`.
double pairwise_sum(std::span<const double> values);

/// Base-2 Shannon entropy of the normalized frequencies, ignoring zeros.
/// Throws DataError when no frequency is positive.
double shannon_entropy(const FreqMap& freqs);

/// H_a = log2(sum p^a) / (1 - a). Throws UsageError for a <= 0 or a == 1
/// and DataError when no frequency is positive.
double renyi_entropy(const FreqMap& freqs, double alpha);

struct HistogramBucket {
  double lower = 1;  // 10^k
  std::size_t tokens = 0;

  friend bool operator==(const HistogramBucket&, const HistogramBucket&) = default;
};

/// Buckets [10^k, 10^(k+1)) for k = 0 .. needed maximum; frequencies in
/// (0, 1) land in the first bucket and zero frequencies are skipped.
std::vector<HistogramBucket> frequency_histogram(const FreqMap& freqs);

struct AnalysisReport {
  double shannon_bits = 0;
  std::map<double, double> renyi;  // alpha -> bits
  std::vector<HistogramBucket> histogram;
  std::size_t vocab_size = 0;
  double total_token_occurrences = 0;

  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

struct AnalysisOptions {
  std::vector<double> renyi_alphas = {2.0, 2.5};
  std::int64_t min_count_exclusive = 30;
  /// Weight each token once per word type instead of by word counts.
  bool type_weighted = false;
  /// Retokenize the corpus even when the vocabulary carries frequencies.
  bool recompute = false;
};

/// Token occurrence frequencies obtained by tokenizing every word with
/// count > min_count_exclusive, weighted by its count (or by 1 when
/// `type_weighted`). Every non-special vocabulary token is present, [UNK]
/// hits are included.
FreqMap recompute_token_freqs(const Tokenizer& tokenizer, const WordCounts& counts,
                              std::int64_t min_count_exclusive, bool type_weighted = false);

AnalysisReport report_from_freqs(const FreqMap& freqs, std::size_t vocab_size,
                                 const std::vector<double>& renyi_alphas);

/// Uses the vocabulary's stored frequencies unless `recompute` or
/// `type_weighted` is requested (or no stored frequency is positive), in
/// which case frequencies come from retokenizing `counts`.
AnalysisReport analyze(const Vocabulary& vocab, const WordCounts& counts,
                       const Tokenizer& tokenizer, const AnalysisOptions& options = {});

}  // namespace morphtok
