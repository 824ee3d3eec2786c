#include "morphtok/corpus.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "morphtok/error.hpp"
#include "morphtok/utf8.hpp"

namespace morphtok {

namespace {

bool ascii_alpha(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z');
}

bool ascii_alnum(char32_t c) { return ascii_alpha(c) || (c >= U'0' && c <= U'9'); }

bool contains(const std::u32string& set, char32_t c) {
  return set.find(c) != std::u32string::npos;
}

bool starts_with_ci(std::u32string_view s, std::u32string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char32_t c = s[i];
    if (c >= U'A' && c <= U'Z') c += 32;
    if (c != prefix[i]) return false;
  }
  return true;
}

bool looks_like_url(std::u32string_view tok) {
  if (starts_with_ci(tok, U"www.")) return true;
  if (tok.empty() || !ascii_alpha(tok[0])) return false;
  std::size_t i = 1;
  while (i < tok.size() &&
         (ascii_alnum(tok[i]) || tok[i] == U'+' || tok[i] == U'.' || tok[i] == U'-')) {
    ++i;
  }
  return tok.substr(i, 3) == U"://" && tok.size() > i + 3;
}

std::vector<std::u32string_view> split_ws(std::u32string_view s) {
  std::vector<std::u32string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && utf8::is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !utf8::is_space(s[j])) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

void validate_word(std::string_view word) {
  if (word.empty()) throw DataError("empty word in counts");
  for (char32_t c : utf8::decode(word)) {
    if (utf8::is_space(c)) {
      throw DataError("word contains whitespace: '" + std::string(word) + "'");
    }
  }
}

}  // namespace

std::string clean_line(std::string_view line, const CleanConfig& cfg) {
  const std::u32string text = utf8::decode(line, cfg.invalid_replacement);

  std::u32string kept;
  kept.reserve(text.size() + 8);
  for (std::u32string_view tok : split_ws(text)) {
    if (looks_like_url(tok)) continue;
    kept.append(tok);
    kept.push_back(U' ');
  }

  std::u32string mapped;
  mapped.reserve(kept.size() * 2);
  for (char32_t c : kept) {
    if (cfg.lowercase && c >= U'A' && c <= U'Z') c += 32;
    if (contains(cfg.punctuation, c)) {
      mapped.push_back(U' ');
      mapped.push_back(c);
      mapped.push_back(U' ');
    } else if (ascii_alnum(c) || contains(cfg.word_extra, c) ||
               contains(cfg.extra_alphabet, c)) {
      mapped.push_back(c);
    } else {
      mapped.push_back(U' ');
    }
  }

  std::u32string out;
  for (std::u32string_view tok : split_ws(mapped)) {
    if (!out.empty()) out.push_back(U' ');
    out.append(tok);
  }
  return utf8::encode(out);
}

void clean_text(std::istream& in, std::ostream& out, const CleanConfig& cfg) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out << clean_line(line, cfg) << '\n';
  }
  if (in.bad()) throw DataError("failed reading input text");
}

bool is_punctuation_word(std::string_view word, const CleanConfig& cfg) {
  if (word.empty()) return false;
  for (char32_t c : utf8::decode(word)) {
    if (!contains(cfg.punctuation, c)) return false;
  }
  return true;
}

WordCounts::WordCounts(Map entries) : entries_(std::move(entries)) {
  for (const auto& [word, count] : entries_) {
    validate_word(word);
    if (count < 1) throw DataError("non-positive count for '" + word + "'");
    total_ += count;
  }
}

void WordCounts::add(std::string_view word, std::int64_t count) {
  validate_word(word);
  if (count < 1) throw DataError("non-positive count for '" + std::string(word) + "'");
  auto it = entries_.find(word);
  if (it == entries_.end()) {
    entries_.emplace(std::string(word), count);
  } else {
    it->second += count;
  }
  total_ += count;
}

bool WordCounts::contains(std::string_view word) const {
  return entries_.find(word) != entries_.end();
}

std::int64_t WordCounts::count(std::string_view word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, std::int64_t>> WordCounts::sorted() const {
  std::vector<std::pair<std::string, std::int64_t>> out(entries_.begin(), entries_.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  return out;
}

WordCounts count_words(std::istream& clean) {
  WordCounts::Map m;
  std::string word;
  while (clean >> word) ++m[word];
  if (clean.bad()) throw DataError("failed reading cleaned text");
  return WordCounts(std::move(m));
}

WordCounts count_words(std::string_view clean) {
  std::istringstream in{std::string(clean)};
  return count_words(in);
}

WordCounts filter_counts(const WordCounts& counts, std::int64_t min_exclusive) {
  if (min_exclusive < 0) throw UsageError("frequency threshold must be >= 0");
  WordCounts::Map m;
  for (const auto& [word, count] : counts.entries()) {
    if (count > min_exclusive) m.emplace(word, count);
  }
  return WordCounts(std::move(m));
}

void write_counts(std::ostream& out, const WordCounts& counts) {
  for (const auto& [word, count] : counts.sorted()) {
    out << word << '\t' << count << '\n';
  }
}

WordCounts read_counts(std::istream& in) {
  WordCounts::Map m;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError("counts line " + std::to_string(lineno) + ": missing tab");
    }
    const std::string word = line.substr(0, tab);
    std::int64_t count = 0;
    try {
      std::size_t used = 0;
      count = std::stoll(line.substr(tab + 1), &used);
      if (used != line.size() - tab - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw DataError("counts line " + std::to_string(lineno) + ": bad count");
    }
    if (!m.emplace(word, count).second) {
      throw DataError("counts line " + std::to_string(lineno) + ": duplicate word '" +
                      word + "'");
    }
  }
  return WordCounts(std::move(m));
}

}  // namespace morphtok
