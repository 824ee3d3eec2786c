#pragma once

#include <string>

#include "json.hpp"
#include "morphtok/analysis.hpp"
#include "morphtok/morfessor.hpp"
#include "morphtok/vocabulary.hpp"

namespace morphtok {

using Json = nlohmann::json;

// Every file is written as sorted-key JSON (objects are std::map backed),
// two-space indent, shortest round-trip doubles and a trailing newline, so
// equal values always serialize to equal bytes.

inline constexpr int kFormatVersion = 1;

Json to_json(const MorfessorParams& params);
MorfessorParams params_from_json(const Json& j);

Json to_json(const SplitTree& tree);
SplitTree tree_from_json(const Json& j);

/// Fields: version, params, seed, alphabet, morph_counts, split_trees,
/// word_weights, annotations.
Json to_json(const MorfessorModel& model);
/// Reassembles the model and checks the stored morph counts against the
/// ones implied by the trees (1e-6 relative). Throws DataError.
MorfessorModel model_from_json(const Json& j);

/// Fields: version, marker, specials, entries [{token, id, freq}] by id.
Json to_json(const Vocabulary& vocab);
Vocabulary vocab_from_json(const Json& j);

Json to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const Json& j);

Json to_json(const DiffReport& diff);
Json to_json(const SegScores& scores);

std::string canonical_dump(const Json& j);
void write_json_file(const std::string& path, const Json& j);
/// Throws DataError naming the path when it is missing or unparsable.
Json read_json_file(const std::string& path);

}  // namespace morphtok
