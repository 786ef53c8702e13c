#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace stylekit {

struct Utterance {
  std::string id;
  std::vector<std::string> tokens;
  std::string context_id;  // empty when the record carries no context
  std::string character;
};

struct Corpus {
  std::string character;
  std::vector<Utterance> utterances;
  std::size_t token_count = 0;

  void recount();
};

struct StopwordList {
  std::set<std::string> words;

  static StopwordList load(const std::string& path);
  bool contains(const std::string& token) const { return words.count(token) > 0; }
};

struct EmbeddingTable {
  std::size_t dimension = 0;
  std::map<std::string, std::vector<double>> entries;

  static EmbeddingTable load(const std::string& path);
  const std::vector<double>* find(const std::string& key) const;
  // Throws validation_error naming the key when absent.
  const std::vector<double>& at(const std::string& key) const;
};

// Corpus file: one record per line, tab-separated:
//   id <TAB> character [<TAB> context_id] <TAB> tokens separated by spaces
// Every record must belong to `character`.
Corpus load_corpus(const std::string& path, const std::string& character);
void write_corpus(const Corpus& corpus, const std::string& path);

struct FilterReport {
  std::size_t dropped_utterances = 0;
  std::size_t removed_tokens = 0;
};

Corpus filter_tokens(const Corpus& corpus, const StopwordList& stopwords, bool drop_punctuation,
                     FilterReport* report = nullptr);

// Down-samples utterances (uniform, without replacement, seeded) so realized
// token counts match `ratios` up to one utterance's tokens. Never up-samples;
// utterance order within each corpus is preserved.
std::vector<Corpus> balance_corpora(const std::vector<Corpus>& corpora,
                                    const std::vector<double>& ratios, std::uint64_t seed);

}  // namespace stylekit
