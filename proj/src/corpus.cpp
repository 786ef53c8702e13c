#include "stylekit/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "stylekit/common.hpp"
#include "stylekit/rng.hpp"
#include "stylekit/utf8.hpp"

namespace stylekit {

void Corpus::recount() {
  token_count = 0;
  for (const auto& u : utterances) token_count += u.tokens.size();
}

StopwordList StopwordList::load(const std::string& path) {
  StopwordList list;
  for (const auto& line : read_lines(path)) {
    if (line.empty() || line[0] == '#') continue;
    list.words.insert(line);
  }
  return list;
}

EmbeddingTable EmbeddingTable::load(const std::string& path) {
  EmbeddingTable table;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_ws(line);
    if (fields.size() < 2) {
      throw validation_error(path + ":" + std::to_string(line_no) + ": embedding record needs a key and values");
    }
    std::vector<double> vec;
    vec.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      double v = parse_double(fields[i], "embedding value");
      if (!std::isfinite(v)) {
        throw validation_error(path + ":" + std::to_string(line_no) + ": non-finite embedding value");
      }
      vec.push_back(v);
    }
    if (table.dimension == 0) table.dimension = vec.size();
    if (vec.size() != table.dimension) {
      throw validation_error(path + ":" + std::to_string(line_no) + ": dimension " +
                             std::to_string(vec.size()) + " != " + std::to_string(table.dimension));
    }
    if (!table.entries.emplace(fields[0], std::move(vec)).second) {
      throw validation_error(path + ":" + std::to_string(line_no) + ": duplicate key \"" + fields[0] + "\"");
    }
  }
  return table;
}

const std::vector<double>* EmbeddingTable::find(const std::string& key) const {
  auto it = entries.find(key);
  return it == entries.end() ? nullptr : &it->second;
}

const std::vector<double>& EmbeddingTable::at(const std::string& key) const {
  const auto* v = find(key);
  if (!v) throw validation_error("no embedding for key \"" + key + "\"");
  return *v;
}

Corpus load_corpus(const std::string& path, const std::string& character) {
  Corpus corpus;
  corpus.character = character;
  std::set<std::string> seen_ids;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 3 && fields.size() != 4) {
      throw validation_error(path + ":" + std::to_string(line_no) +
                             ": expected 3 or 4 tab-separated fields, got " + std::to_string(fields.size()));
    }
    Utterance utt;
    utt.id = fields[0];
    utt.character = fields[1];
    utt.context_id = fields.size() == 4 ? fields[2] : "";
    utt.tokens = split_ws(fields.back());
    if (utt.id.empty() || utt.character.empty() || utt.tokens.empty()) {
      throw validation_error(path + ":" + std::to_string(line_no) + ": record missing id, character, or tokens");
    }
    if (!character.empty() && utt.character != character) {
      throw validation_error(path + ":" + std::to_string(line_no) + ": record for character \"" +
                             utt.character + "\" in corpus of \"" + character + "\"");
    }
    if (!seen_ids.insert(utt.id).second) {
      throw validation_error(path + ":" + std::to_string(line_no) + ": duplicate utterance id \"" + utt.id + "\"");
    }
    corpus.utterances.push_back(std::move(utt));
  }
  if (corpus.utterances.empty()) throw validation_error(path + ": empty corpus");
  corpus.recount();
  return corpus;
}

void write_corpus(const Corpus& corpus, const std::string& path) {
  std::string out;
  for (const auto& u : corpus.utterances) {
    out += u.id;
    out += '\t';
    out += u.character;
    if (!u.context_id.empty()) {
      out += '\t';
      out += u.context_id;
    }
    out += '\t';
    out += join(u.tokens, " ");
    out += '\n';
  }
  write_file(path, out);
}

Corpus filter_tokens(const Corpus& corpus, const StopwordList& stopwords, bool drop_punctuation,
                     FilterReport* report) {
  Corpus result;
  result.character = corpus.character;
  FilterReport local;
  for (const auto& u : corpus.utterances) {
    Utterance kept = u;
    kept.tokens.clear();
    for (const auto& token : u.tokens) {
      if (stopwords.contains(token) || (drop_punctuation && utf8::all_punctuation(token))) {
        ++local.removed_tokens;
        continue;
      }
      kept.tokens.push_back(token);
    }
    if (kept.tokens.empty()) {
      ++local.dropped_utterances;
      continue;
    }
    result.utterances.push_back(std::move(kept));
  }
  result.recount();
  if (report) *report = local;
  return result;
}

std::vector<Corpus> balance_corpora(const std::vector<Corpus>& corpora,
                                    const std::vector<double>& ratios, std::uint64_t seed) {
  if (corpora.size() != ratios.size()) {
    throw validation_error("balance_corpora: " + std::to_string(corpora.size()) + " corpora but " +
                           std::to_string(ratios.size()) + " ratios");
  }
  for (std::size_t i = 0; i < corpora.size(); ++i) {
    if (!(ratios[i] > 0.0)) {
      throw validation_error("balance_corpora: ratio for corpus \"" + corpora[i].character +
                             "\" must be positive");
    }
    if (corpora[i].token_count == 0) {
      throw validation_error("balance_corpora: corpus \"" + corpora[i].character +
                             "\" is too small to satisfy its ratio (no tokens)");
    }
  }

  // Largest common scale that never up-samples: c = min_i tokens_i / ratio_i.
  double scale = 0.0;
  bool first = true;
  for (std::size_t i = 0; i < corpora.size(); ++i) {
    const double s = static_cast<double>(corpora[i].token_count) / ratios[i];
    if (first || s < scale) {
      scale = s;
      first = false;
    }
  }

  std::vector<Corpus> balanced;
  balanced.reserve(corpora.size());
  for (std::size_t i = 0; i < corpora.size(); ++i) {
    const auto& corpus = corpora[i];
    const double target = scale * ratios[i];
    if (target >= static_cast<double>(corpus.token_count)) {
      balanced.push_back(corpus);
      continue;
    }
    std::vector<std::size_t> order(corpus.utterances.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    Rng rng = derive_rng(seed, i);
    rng.shuffle(order);

    std::vector<std::size_t> picked;
    std::size_t tokens = 0;
    for (std::size_t idx : order) {
      if (static_cast<double>(tokens) >= target) break;
      picked.push_back(idx);
      tokens += corpus.utterances[idx].tokens.size();
    }
    std::sort(picked.begin(), picked.end());

    Corpus down;
    down.character = corpus.character;
    down.utterances.reserve(picked.size());
    for (std::size_t idx : picked) down.utterances.push_back(corpus.utterances[idx]);
    down.recount();
    balanced.push_back(std::move(down));
  }
  return balanced;
}

}  // namespace stylekit
