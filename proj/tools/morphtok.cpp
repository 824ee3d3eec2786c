// morphtok command line: corpus preparation, model training, vocabulary
// construction, tokenization and analysis as file-to-file subcommands.

#include <fstream>
#include <functional>
#include <iterator>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "morphtok/analysis.hpp"
#include "morphtok/annotations.hpp"
#include "morphtok/corpus.hpp"
#include "morphtok/error.hpp"
#include "morphtok/json_io.hpp"
#include "morphtok/morfessor.hpp"
#include "morphtok/segmenter.hpp"
#include "morphtok/tokenizer.hpp"
#include "morphtok/vocabulary.hpp"

namespace {

using namespace morphtok;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

// "-" selects stdin/stdout.
class Input {
 public:
  explicit Input(const std::string& path) {
    if (path == "-") return;
    file_.open(path, std::ios::binary);
    if (!file_) throw DataError("cannot open " + path);
  }
  std::istream& get() { return file_.is_open() ? file_ : std::cin; }

 private:
  std::ifstream file_;
};

class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {
    if (path == "-") return;
    file_.open(path, std::ios::binary);
    if (!file_) throw DataError("cannot write " + path);
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }
  void close() {
    get().flush();
    if (!get()) throw DataError("failed writing " + path_);
  }

 private:
  std::string path_;
  std::ofstream file_;
};

void write_json(const std::string& path, const Json& j) {
  Output out(path);
  out.get() << canonical_dump(j);
  out.close();
}

WordCounts load_counts(const std::string& path) {
  Input in(path);
  try {
    return read_counts(in.get());
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

SegmentationLexicon load_lexicon(const std::string& path, const std::string& separator) {
  GoldParse g = parse_gold_file(path, separator);
  for (const auto& r : g.rejects) {
    std::cerr << path << ":" << r.line << ": skipped: " << r.reason << "\n";
  }
  if (g.duplicates > 0) {
    std::cerr << path << ": " << g.duplicates << " repeated words kept their first analysis\n";
  }
  return std::move(g.lexicon);
}

std::shared_ptr<const MorfessorModel> load_model(const std::string& path) {
  try {
    return std::make_shared<const MorfessorModel>(model_from_json(read_json_file(path)));
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

Vocabulary load_vocab(const std::string& path) {
  try {
    return vocab_from_json(read_json_file(path));
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

// Words the learner and the vocabulary builder see.
WordCounts trainable_words(const WordCounts& counts, std::int64_t min_count) {
  WordCounts::Map kept;
  const WordCounts filtered = filter_counts(counts, min_count);
  for (const auto& [w, c] : filtered.entries()) {
    if (!is_punctuation_word(w)) kept.emplace(w, c);
  }
  if (kept.empty()) throw DataError("no words above the minimum count");
  return WordCounts(std::move(kept));
}

FrequencyMode frequency_mode(const std::string& mode) {
  return mode == "token" ? FrequencyMode::token : FrequencyMode::type;
}

// Flags shared by subcommands that segment words.
struct ProviderFlags {
  std::string mode = "type";
  std::string model;
  std::string lexicon;
  std::string separator = "@@";

  void add(CLI::App* cmd, bool mode_flag = true) {
    if (mode_flag) {
      cmd->add_option("--mode", mode, "Tokenizer variant")
          ->check(CLI::IsMember({"type", "token", "frequent", "neural-lexicon"}))
          ->capture_default_str();
    }
    cmd->add_option("--model", model, "Trained model JSON (fallback in neural-lexicon mode)");
    cmd->add_option("--lexicon", lexicon, "Segmentation lexicon TSV (neural-lexicon mode)");
    cmd->add_option("--separator", separator, "Morph separator in the lexicon TSV")
        ->capture_default_str();
  }

  SegmentationProvider build() const {
    if (mode == "neural-lexicon") {
      if (lexicon.empty()) throw UsageError("--lexicon is required in neural-lexicon mode");
      auto lex = load_lexicon(lexicon, separator).entries();
      if (model.empty()) return SegmentationProvider::from_lexicon(std::move(lex));
      return SegmentationProvider::from_lexicon_then_model(std::move(lex), load_model(model));
    }
    if (model.empty()) throw UsageError("--model is required in " + mode + " mode");
    return SegmentationProvider::from_model(load_model(model));
  }
};

// Flags shared by train and tune.
struct TrainFlags {
  std::string counts;
  std::string mode = "type";
  std::string annotations;
  std::string separator = "@@";
  double alpha = 1.0;
  double beta = 0.0;
  double epsilon = 0.005;
  int max_epochs = 20;
  std::uint64_t seed = 0;
  double base = 30.0;
  std::int64_t min_count = 30;

  void add(CLI::App* cmd) {
    cmd->add_option("--counts", counts, "Word counts TSV")->required();
    cmd->add_option("--mode", mode, "Frequency handling: type, token, or frequent (= type)")
        ->check(CLI::IsMember({"type", "token", "frequent"}))
        ->capture_default_str();
    cmd->add_option("--annotations", annotations, "Annotated segmentations TSV");
    cmd->add_option("--separator", separator, "Morph separator in the annotations TSV")
        ->capture_default_str();
    cmd->add_option("--epsilon", epsilon, "Relative improvement that ends training")
        ->capture_default_str();
    cmd->add_option("--max-epochs", max_epochs, "Epoch limit")->capture_default_str();
    cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    cmd->add_option("--base", base, "Logarithm base of the token-mode transform")
        ->capture_default_str();
    cmd->add_option("--min-count", min_count, "Keep words seen more than this many times")
        ->capture_default_str();
  }

  MorfessorParams params() const {
    MorfessorParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.epsilon_converge = epsilon;
    p.max_epochs = max_epochs;
    p.seed = seed;
    p.validate();
    return p;
  }

  WeightedWords weighted() const {
    if (!(base > 1)) throw UsageError("--base must be > 1");
    if (min_count < 0) throw UsageError("--min-count must be >= 0");
    return transform_counts(trainable_words(load_counts(counts), min_count),
                            {frequency_mode(mode), base});
  }

  SegmentationLexicon gold() const {
    return annotations.empty() ? SegmentationLexicon{} : load_lexicon(annotations, separator);
  }
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError("not a number: '" + item + "'");
    }
  }
  return out;
}

std::vector<std::pair<double, double>> parse_grid(const std::string& text) {
  std::vector<std::pair<double, double>> grid;
  std::stringstream ss(text);
  for (std::string point; std::getline(ss, point, ',');) {
    const auto colon = point.find(':');
    if (colon == std::string::npos) throw UsageError("grid points look like alpha:beta");
    const auto a = parse_list(point.substr(0, colon));
    const auto b = parse_list(point.substr(colon + 1));
    if (a.size() != 1 || b.size() != 1) throw UsageError("bad grid point '" + point + "'");
    grid.emplace_back(a[0], b[0]);
  }
  if (grid.empty()) throw UsageError("empty grid");
  return grid;
}

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  return {std::istream_iterator<std::string>(in), {}};
}

void register_preprocess(CLI::App& app, std::function<void()>& run) {
  auto* cmd = app.add_subcommand("preprocess", "Clean raw text: strip URLs, lowercase, split punctuation");
  static std::string input = "-", output = "-";
  static bool keep_case = false;
  cmd->add_option("--input", input, "Raw text file, - for stdin")->capture_default_str();
  cmd->add_option("--output", output, "Cleaned text file, - for stdout")->capture_default_str();
  cmd->add_flag("--keep-case", keep_case, "Do not lowercase");
  cmd->callback([&run] {
    run = [] {
      CleanConfig cfg;
      cfg.lowercase = !keep_case;
      Input in(input);
      Output out(output);
      clean_text(in.get(), out.get(), cfg);
      out.close();
    };
  });
}

void register_count(CLI::App& app, std::function<void()>& run) {
  auto* cmd = app.add_subcommand("count", "Count words of cleaned text");
  static std::string input = "-", output = "-";
  static std::int64_t min_count = 0;
  cmd->add_option("--input", input, "Cleaned text file, - for stdin")->capture_default_str();
  cmd->add_option("--output", output, "Counts TSV, - for stdout")->capture_default_str();
  cmd->add_option("--min-count", min_count, "Keep words seen more than this many times")
      ->capture_default_str();
  cmd->callback([&run] {
    run = [] {
      if (min_count < 0) throw UsageError("--min-count must be >= 0");
      Input in(input);
      const WordCounts counts = filter_counts(count_words(in.get()), min_count);
      Output out(output);
      write_counts(out.get(), counts);
      out.close();
    };
  });
}

void register_sample(CLI::App& app, std::function<void()>& run) {
  auto* cmd = app.add_subcommand("sample", "Draw annotated words by length-times-frequency");
  static std::string counts, gold, output = "-", separator = "@@";
  static std::size_t k = 3000;
  static std::uint64_t seed = 0;
  static std::int64_t min_count = 30;
  cmd->add_option("--counts", counts, "Word counts TSV")->required();
  cmd->add_option("--gold", gold, "Gold segmentations TSV")->required();
  cmd->add_option("--k", k, "Number of words to draw")->capture_default_str();
  cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  cmd->add_option("--min-count", min_count, "Keep words seen more than this many times")
      ->capture_default_str();
  cmd->add_option("--separator", separator, "Morph separator in the gold TSV")
      ->capture_default_str();
  cmd->add_option("--output", output, "Sampled lexicon TSV, - for stdout")->capture_default_str();
  cmd->callback([&run] {
    run = [] {
      const WordCounts words = trainable_words(load_counts(counts), min_count);
      const SegmentationLexicon lex = load_lexicon(gold, separator);
      std::vector<std::string> candidates;
      for (const auto& [w, c] : words.entries()) {
        if (lex.contains(w)) candidates.push_back(w);
      }
      if (candidates.empty()) throw DataError("no counted word has a gold segmentation");
      const auto sample = sample_annotations(sampling_weights(words, candidates), lex, k, seed);
      Output out(output);
      write_lexicon(out.get(), sample);
      out.close();
    };
  });
}

void register_train(CLI::App& app, std::function<void()>& run) {
  auto* cmd = app.add_subcommand("train", "Train a segmentation model");
  static TrainFlags flags;
  static std::string output, params_file;
  flags.add(cmd);
  cmd->add_option("--alpha", flags.alpha, "Corpus cost weight")->capture_default_str();
  cmd->add_option("--beta", flags.beta, "Annotation cost weight")->capture_default_str();
  cmd->add_option("--params", params_file,
                  "Tuned weights JSON; explicit --alpha/--beta take precedence");
  cmd->add_option("--output", output, "Model JSON")->required();
  cmd->callback([cmd, &run] {
    const bool alpha_set = cmd->count("--alpha") > 0;
    const bool beta_set = cmd->count("--beta") > 0;
    run = [alpha_set, beta_set] {
      if (!params_file.empty()) {
        const Json j = read_json_file(params_file);
        try {
          const Json& p = j.contains("params") ? j.at("params") : j;
          if (!alpha_set) flags.alpha = p.at("alpha").get<double>();
          if (!beta_set) flags.beta = p.at("beta").get<double>();
        } catch (const Json::exception& e) {
          throw DataError(params_file + ": " + e.what());
        }
      }
      const MorfessorParams params = flags.params();
      const MorfessorModel model = train(flags.weighted(), flags.gold(), params);
      write_json(output, to_json(model));
    };
  });
}

void register_tune(CLI::App& app, std::function<void()>& run) {
  auto* cmd = app.add_subcommand("tune", "Pick corpus/annotation weights on a dev set");
  static TrainFlags flags;
  static std::string dev, grid, output = "-", model_output;
  flags.add(cmd);
  cmd->add_option("--dev", dev, "Dev segmentations TSV")->required();
  cmd->add_option("--grid", grid,
                  "Comma separated alpha:beta points (default: alpha 0.5,1 x beta "
                  "0,100,500,1000,2500)");
  cmd->add_option("--output", output, "Result JSON, - for stdout")->capture_default_str();
  cmd->add_option("--model-output", model_output, "Also write the model of the best point");
  cmd->callback([&run] {
    run = [] {
      const auto points = grid.empty() ? default_weight_grid() : parse_grid(grid);
      const WeightedWords weighted = flags.weighted();
      const SegmentationLexicon annotations = flags.gold();
      const SegmentationLexicon dev_lex = load_lexicon(dev, flags.separator);
      const TuneResult r = tune_weights(weighted, annotations, dev_lex, points, flags.params());
      if (r.dev_annotation_overlap > 0) {
        std::cerr << "warning: " << r.dev_annotation_overlap
                  << " dev words are also annotated\n";
      }
      Json scores = Json::array();
      for (const auto& [p, f1] : r.grid_scores) {
        scores.push_back(Json{{"alpha", p.alpha}, {"beta", p.beta}, {"f1", f1}});
      }
      write_json(output, Json{{"params", to_json(r.params)},
                              {"dev_f1", r.dev_f1},
                              {"grid", std::move(scores)},
                              {"dev_annotation_overlap", r.dev_annotation_overlap}});
      if (!model_output.empty()) {
        write_json(model_output, to_json(train(weighted, annotations, r.params)));
      }
    };
  });
}

void register_build_vocab(CLI::App& app, std::function<void()>& run) {
  auto* cmd = app.add_subcommand("build-vocab", "Build a vocabulary from counts and a segmenter");
  static ProviderFlags provider;
  static std::string counts, output;
  static std::int64_t min_count = 30;
  static std::int64_t keep_frequent = 0;
  provider.add(cmd);
  cmd->add_option("--counts", counts, "Word counts TSV")->required();
  cmd->add_option("--min-count", min_count, "Keep words seen more than this many times")
      ->capture_default_str();
  cmd->add_option("--keep-frequent", keep_frequent,
                  "Keep words seen at least this often whole (default 1700 in frequent mode, "
                  "off otherwise; 0 disables)");
  cmd->add_option("--output", output, "Vocabulary JSON")->required();
  cmd->callback([cmd, &run] {
    const bool keep_set = cmd->count("--keep-frequent") > 0;
    run = [keep_set] {
      VocabConfig cfg;
      cfg.min_count_exclusive = min_count;
      const std::int64_t threshold = keep_set ? keep_frequent
                                     : provider.mode == "frequent" ? 1700
                                                                   : 0;
      if (threshold < 0) throw UsageError("--keep-frequent must be >= 0");
      if (threshold > 0) cfg.keep_frequent_threshold = threshold;
      cfg.validate();
      const SegmentationProvider p = provider.build();
      const Vocabulary vocab = build_vocab(p, load_counts(counts), cfg);
      if (p.corrupt_lookups() > 0) {
        std::cerr << "warning: " << p.corrupt_lookups()
                  << " lexicon entries did not spell their word and were ignored\n";
      }
      write_json(output, to_json(vocab));
    };
  });
}

void register_tokenize(CLI::App& app, std::function<void()>& run) {
  auto* cmd = app.add_subcommand("tokenize", "Tokenize text, one output line per input line");
  static ProviderFlags provider;
  static std::string vocab, input = "-", output = "-";
  static bool strings = false;
  provider.add(cmd);
  cmd->add_option("--vocab", vocab, "Vocabulary JSON")->required();
  cmd->add_option("--input", input, "Text file, - for stdin")->capture_default_str();
  cmd->add_option("--output", output, "Token file, - for stdout")->capture_default_str();
  cmd->add_flag("--strings", strings, "Write token strings instead of ids");
  cmd->callback([&run] {
    run = [] {
      const Tokenizer t(load_vocab(vocab), provider.build());
      Input in(input);
      Output out(output);
      for (std::string line; std::getline(in.get(), line);) {
        bool first = true;
        auto emit = [&](const std::string& s) {
          if (!first) out.get() << ' ';
          out.get() << s;
          first = false;
        };
        if (strings) {
          for (const auto& w : split_words(clean_line(line))) {
            for (const auto& tok : t.tokenize_word(w)) emit(tok);
          }
        } else {
          for (auto id : t.tokenize_text(line)) emit(std::to_string(id));
        }
        out.get() << '\n';
      }
      out.close();
    };
  });
}

void register_detokenize(CLI::App& app, std::function<void()>& run) {
  auto* cmd = app.add_subcommand("detokenize", "Turn token lines back into text");
  static std::string vocab, input = "-", output = "-";
  static bool strings = false;
  cmd->add_option("--vocab", vocab, "Vocabulary JSON")->required();
  cmd->add_option("--input", input, "Token file, - for stdin")->capture_default_str();
  cmd->add_option("--output", output, "Text file, - for stdout")->capture_default_str();
  cmd->add_flag("--strings", strings, "Input holds token strings instead of ids");
  cmd->callback([&run] {
    run = [] {
      const Vocabulary v = load_vocab(vocab);
      const Tokenizer t(v, SegmentationProvider::from_lexicon({}));
      Input in(input);
      Output out(output);
      std::size_t line_no = 0;
      for (std::string line; std::getline(in.get(), line);) {
        ++line_no;
        std::vector<std::string> tokens = split_words(line);
        if (!strings) {
          for (auto& tok : tokens) {
            try {
              std::size_t used = 0;
              const long long id = std::stoll(tok, &used);
              if (used != tok.size()) throw std::invalid_argument(tok);
              tok = v.token(id);
            } catch (const std::logic_error&) {
              throw DataError(input + ":" + std::to_string(line_no) + ": bad token id '" + tok + "'");
            }
          }
        }
        out.get() << t.detokenize(tokens) << '\n';
      }
      out.close();
    };
  });
}

void register_analyze(CLI::App& app, std::function<void()>& run) {
  auto* cmd = app.add_subcommand("analyze", "Entropy and frequency profile of a vocabulary");
  static ProviderFlags provider;
  static std::string vocab, counts, output = "-", histogram_csv, renyi = "2,2.5";
  static std::int64_t min_count = 30;
  static bool type_weighted = false, recompute = false;
  provider.add(cmd);
  cmd->add_option("--vocab", vocab, "Vocabulary JSON")->required();
  cmd->add_option("--counts", counts, "Word counts TSV (needed to retokenize)");
  cmd->add_option("--renyi", renyi, "Comma separated Renyi orders")->capture_default_str();
  cmd->add_option("--min-count", min_count, "Words retokenized: count above this")
      ->capture_default_str();
  cmd->add_flag("--type-weighted", type_weighted, "Count each word type once when retokenizing");
  cmd->add_flag("--recompute", recompute, "Retokenize the corpus instead of stored frequencies");
  cmd->add_option("--output", output, "Report JSON, - for stdout")->capture_default_str();
  cmd->add_option("--histogram-csv", histogram_csv, "Also write the histogram as CSV");
  cmd->callback([&run] {
    run = [] {
      const Vocabulary v = load_vocab(vocab);
      AnalysisOptions opts;
      opts.renyi_alphas = parse_list(renyi);
      opts.min_count_exclusive = min_count;
      opts.type_weighted = type_weighted;
      opts.recompute = recompute;
      bool stored = false;
      for (const auto& [tok, f] : v.token_freqs()) stored = stored || f > 0;
      const bool retokenize = recompute || type_weighted || !stored;
      WordCounts words;
      SegmentationProvider p = SegmentationProvider::from_lexicon({});
      if (retokenize) {
        if (counts.empty()) throw UsageError("--counts is required to retokenize");
        words = load_counts(counts);
        p = provider.build();
      }
      const AnalysisReport r = analyze(v, words, Tokenizer(v, p), opts);
      write_json(output, to_json(r));
      if (!histogram_csv.empty()) {
        Output csv(histogram_csv);
        csv.get() << "bucket_lower,tokens\n";
        for (const auto& b : r.histogram) csv.get() << Json(b.lower).dump() << ',' << b.tokens << '\n';
        csv.close();
      }
    };
  });
}

void register_diff(CLI::App& app, std::function<void()>& run) {
  auto* cmd = app.add_subcommand("diff", "Compare two vocabularies");
  static std::string a, b, counts, output = "-";
  static std::int64_t word_threshold = 1700;
  cmd->add_option("--a", a, "First vocabulary JSON")->required();
  cmd->add_option("--b", b, "Second vocabulary JSON")->required();
  cmd->add_option("--counts", counts, "Word counts TSV for the infrequent-word tally");
  cmd->add_option("--word-threshold", word_threshold, "Infrequent means count below this")
      ->capture_default_str();
  cmd->add_option("--output", output, "Report JSON, - for stdout")->capture_default_str();
  cmd->callback([&run] {
    run = [] {
      const WordCounts words = counts.empty() ? WordCounts{} : load_counts(counts);
      write_json(output, to_json(vocab_diff(load_vocab(a), load_vocab(b), words, word_threshold)));
    };
  });
}

void register_eval_seg(CLI::App& app, std::function<void()>& run) {
  auto* cmd = app.add_subcommand("eval-seg", "Score predicted segmentations against gold");
  static std::string pred, gold, output = "-", separator = "@@";
  cmd->add_option("--pred", pred, "Predicted segmentations TSV")->required();
  cmd->add_option("--gold", gold, "Gold segmentations TSV")->required();
  cmd->add_option("--separator", separator, "Morph separator in both files")->capture_default_str();
  cmd->add_option("--output", output, "Scores JSON, - for stdout")->capture_default_str();
  cmd->callback([&run] {
    run = [] {
      const SegScores s =
          score_segmentation(load_lexicon(pred, separator), load_lexicon(gold, separator));
      write_json(output, to_json(s));
    };
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Morphology-aware subword tokenizer toolkit"};
  app.require_subcommand(1);
  std::function<void()> run;
  register_preprocess(app, run);
  register_count(app, run);
  register_sample(app, run);
  register_train(app, run);
  register_tune(app, run);
  register_build_vocab(app, run);
  register_tokenize(app, run);
  register_detokenize(app, run);
  register_analyze(app, run);
  register_diff(app, run);
  register_eval_seg(app, run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    run();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
