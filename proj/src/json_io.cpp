#include "morphtok/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "morphtok/error.hpp"

namespace morphtok {

namespace {

void check_version(const Json& j, const char* what) {
  if (!j.is_object() || j.value("version", -1) != kFormatVersion) {
    throw DataError(std::string("unsupported or missing version in ") + what);
  }
}

std::string alpha_key(double alpha) { return Json(alpha).dump(); }

}  // namespace

Json to_json(const MorfessorParams& p) {
  return Json{{"alpha", p.alpha},
              {"beta", p.beta},
              {"epsilon_converge", p.epsilon_converge},
              {"max_epochs", p.max_epochs},
              {"seed", p.seed}};
}

MorfessorParams params_from_json(const Json& j) {
  MorfessorParams p;
  p.alpha = j.at("alpha").get<double>();
  p.beta = j.at("beta").get<double>();
  p.epsilon_converge = j.at("epsilon_converge").get<double>();
  p.max_epochs = j.at("max_epochs").get<int>();
  p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

Json to_json(const SplitTree& tree) {
  if (tree.is_leaf()) return tree.text();
  return Json::array({to_json(tree.left()), to_json(tree.right())});
}

SplitTree tree_from_json(const Json& j) {
  if (j.is_string()) return SplitTree::leaf(j.get<std::string>());
  if (j.is_array() && j.size() == 2) {
    return SplitTree::node(tree_from_json(j[0]), tree_from_json(j[1]));
  }
  throw DataError("malformed split tree: " + j.dump());
}

Json to_json(const MorfessorModel& model) {
  Json j;
  j["version"] = kFormatVersion;
  j["params"] = to_json(model.params());
  j["seed"] = model.params().seed;
  j["alphabet"] = model.alphabet();
  j["morph_counts"] = model.morph_counts();
  j["word_weights"] = model.word_weights();
  Json trees = Json::object();
  for (const auto& [word, tree] : model.split_trees()) trees[word] = to_json(tree);
  j["split_trees"] = std::move(trees);
  Json annotations = Json::object();
  for (const auto& [word, a] : model.annotations()) {
    annotations[word] = Json{{"weight", a.weight}, {"morphs", a.morphs}};
  }
  j["annotations"] = std::move(annotations);
  return j;
}

MorfessorModel model_from_json(const Json& j) {
  check_version(j, "model file");
  try {
    MorfessorParams params = params_from_json(j.at("params"));
    auto weights = j.at("word_weights").get<WeightedWords>();
    std::map<std::string, SplitTree, std::less<>> trees;
    for (const auto& [word, t] : j.at("split_trees").items()) trees.emplace(word, tree_from_json(t));
    std::map<std::string, Annotation, std::less<>> annotations;
    for (const auto& [word, a] : j.at("annotations").items()) {
      annotations.emplace(word, Annotation{a.at("weight").get<double>(),
                                           a.at("morphs").get<Morphs>()});
    }
    MorfessorModel model = MorfessorModel::assemble(params, std::move(weights),
                                                    std::move(annotations), std::move(trees));
    const auto stored = j.at("morph_counts").get<std::map<std::string, double>>();
    if (stored.size() != model.morph_counts().size()) {
      throw DataError("model morph_counts do not match its split trees");
    }
    for (const auto& [morph, c] : stored) {
      const double expected = model.morph_count(morph);
      if (std::abs(expected - c) > 1e-6 * std::max(1.0, std::abs(expected))) {
        throw DataError("model morph count of '" + morph + "' does not match its split trees");
      }
    }
    return model;
  } catch (const Json::exception& e) {
    throw DataError(std::string("malformed model file: ") + e.what());
  }
}

Json to_json(const Vocabulary& vocab) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < vocab.entries().size(); ++i) {
    const auto& e = vocab.entries()[i];
    entries.push_back(Json{{"token", e.token}, {"id", i}, {"freq", e.freq}});
  }
  return Json{{"version", kFormatVersion},
              {"marker", vocab.marker()},
              {"specials", vocab.specials()},
              {"entries", std::move(entries)}};
}

Vocabulary vocab_from_json(const Json& j) {
  check_version(j, "vocabulary file");
  try {
    std::vector<VocabEntry> entries;
    for (const auto& e : j.at("entries")) {
      if (e.at("id").get<std::size_t>() != entries.size()) {
        throw DataError("vocabulary ids are not contiguous");
      }
      entries.push_back({e.at("token").get<std::string>(), e.at("freq").get<double>()});
    }
    return Vocabulary(j.at("marker").get<std::string>(),
                      j.at("specials").get<std::vector<std::string>>(), std::move(entries));
  } catch (const Json::exception& e) {
    throw DataError(std::string("malformed vocabulary file: ") + e.what());
  }
}

Json to_json(const AnalysisReport& r) {
  Json renyi = Json::object();
  for (const auto& [alpha, bits] : r.renyi) renyi[alpha_key(alpha)] = bits;
  Json hist = Json::array();
  for (const auto& b : r.histogram) hist.push_back(Json{{"lower", b.lower}, {"tokens", b.tokens}});
  return Json{{"version", kFormatVersion},
              {"shannon_bits", r.shannon_bits},
              {"renyi", std::move(renyi)},
              {"histogram", std::move(hist)},
              {"vocab_size", r.vocab_size},
              {"total_token_occurrences", r.total_token_occurrences}};
}

AnalysisReport report_from_json(const Json& j) {
  check_version(j, "analysis report");
  try {
    AnalysisReport r;
    r.shannon_bits = j.at("shannon_bits").get<double>();
    for (const auto& [key, bits] : j.at("renyi").items()) r.renyi[std::stod(key)] = bits.get<double>();
    for (const auto& b : j.at("histogram")) {
      r.histogram.push_back({b.at("lower").get<double>(), b.at("tokens").get<std::size_t>()});
    }
    r.vocab_size = j.at("vocab_size").get<std::size_t>();
    r.total_token_occurrences = j.at("total_token_occurrences").get<double>();
    return r;
  } catch (const Json::exception& e) {
    throw DataError(std::string("malformed analysis report: ") + e.what());
  }
}

Json to_json(const DiffReport& d) {
  return Json{{"only_a", d.only_a},
              {"only_b", d.only_b},
              {"common", d.common},
              {"only_a_infrequent_words", d.only_a_infrequent_words}};
}

Json to_json(const SegScores& s) {
  return Json{{"boundary_precision", s.boundary_precision},
              {"boundary_recall", s.boundary_recall},
              {"boundary_f1", s.boundary_f1},
              {"exact_match_rate", s.exact_match_rate},
              {"evaluated_words", s.evaluated_words},
              {"gold_only_words", s.gold_only_words},
              {"pred_only_words", s.pred_only_words}};
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << canonical_dump(j);
  if (!out) throw DataError("failed writing " + path);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw DataError("cannot parse " + path + ": " + e.what());
  }
}

}  // namespace morphtok
