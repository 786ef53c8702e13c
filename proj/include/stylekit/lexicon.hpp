#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "stylekit/corpus.hpp"

namespace stylekit {

struct UnigramDistribution {
  std::map<std::string, std::size_t> counts;
  std::size_t total = 0;

  void add(const std::string& token, std::size_t n = 1);
  std::size_t count(const std::string& token) const;
  double probability(const std::string& token) const;  // 0 when absent

  static UnigramDistribution from_corpus(const Corpus& corpus);
};

// Pooled unigram counts over all corpora ("the global corpus"). The caller is
// expected to balance corpora first. Throws on an empty pool.
UnigramDistribution global_distribution(const std::vector<Corpus>& corpora);

// log2( P(token | style) / P(token) ), in bits. The token must be present in
// both distributions.
double pmi(const std::string& token, const UnigramDistribution& style,
           const UnigramDistribution& global);

// (1 + ln count_style(token)) × pmi(token).
double tf_pmi_score(const std::string& token, const UnigramDistribution& style,
                    const UnigramDistribution& global);

struct TfPmiEntry {
  std::string token;
  std::size_t count_in_style = 0;
  double pmi = 0.0;
  double score = 0.0;
};

struct TfPmiLexicon {
  std::string character;
  std::vector<TfPmiEntry> entries;  // score desc, ties by count desc then token
  std::size_t capacity = 25;
  bool empty_warning = false;

  std::vector<std::string> tokens() const;
};

struct LexiconParams {
  double max_global_prob = 0.10;    // drop tokens with P(w) > this
  double min_style_prob = 0.0001;   // drop tokens with P(w|t) < this
  std::size_t capacity = 25;
};

TfPmiLexicon build_lexicon(const Corpus& style, const UnigramDistribution& global,
                           const LexiconParams& params = {});

// One record per line: rank, token, count, pmi, score; tab-separated, 6dp.
void write_lexicon(const TfPmiLexicon& lexicon, const std::string& path);

}  // namespace stylekit
