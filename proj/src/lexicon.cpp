#include "stylekit/lexicon.hpp"

#include <algorithm>
#include <cmath>

#include "stylekit/common.hpp"

namespace stylekit {

void UnigramDistribution::add(const std::string& token, std::size_t n) {
  if (n == 0) return;
  counts[token] += n;
  total += n;
}

std::size_t UnigramDistribution::count(const std::string& token) const {
  auto it = counts.find(token);
  return it == counts.end() ? 0 : it->second;
}

double UnigramDistribution::probability(const std::string& token) const {
  if (total == 0) return 0.0;
  return static_cast<double>(count(token)) / static_cast<double>(total);
}

UnigramDistribution UnigramDistribution::from_corpus(const Corpus& corpus) {
  UnigramDistribution dist;
  for (const auto& u : corpus.utterances) {
    for (const auto& token : u.tokens) dist.add(token);
  }
  return dist;
}

UnigramDistribution global_distribution(const std::vector<Corpus>& corpora) {
  UnigramDistribution pooled;
  for (const auto& corpus : corpora) {
    for (const auto& u : corpus.utterances) {
      for (const auto& token : u.tokens) pooled.add(token);
    }
  }
  if (pooled.total == 0) throw validation_error("global_distribution: empty corpus pool");
  return pooled;
}

double pmi(const std::string& token, const UnigramDistribution& style,
           const UnigramDistribution& global) {
  const std::size_t style_count = style.count(token);
  if (style_count == 0) throw validation_error("pmi: token \"" + token + "\" absent from style corpus");
  const std::size_t global_count = global.count(token);
  if (global_count == 0) {
    throw validation_error("pmi: token \"" + token + "\" absent from global corpus");
  }
  const double p_style = static_cast<double>(style_count) / static_cast<double>(style.total);
  const double p_global = static_cast<double>(global_count) / static_cast<double>(global.total);
  return std::log2(p_style / p_global);
}

double tf_pmi_score(const std::string& token, const UnigramDistribution& style,
                    const UnigramDistribution& global) {
  const double i = pmi(token, style, global);
  // PMI is in bits, the TF factor uses the natural log; the mixed bases are
  // intentional and match the scoring scheme exactly.
  return (1.0 + std::log(static_cast<double>(style.count(token)))) * i;
}

TfPmiLexicon build_lexicon(const Corpus& style, const UnigramDistribution& global,
                           const LexiconParams& params) {
  TfPmiLexicon lexicon;
  lexicon.character = style.character;
  lexicon.capacity = params.capacity;

  const UnigramDistribution style_dist = UnigramDistribution::from_corpus(style);
  std::vector<TfPmiEntry> candidates;
  for (const auto& [token, count] : style_dist.counts) {
    if (global.probability(token) > params.max_global_prob) continue;  // overly common
    if (style_dist.probability(token) < params.min_style_prob) continue;  // rare noise
    TfPmiEntry entry;
    entry.token = token;
    entry.count_in_style = count;
    entry.pmi = pmi(token, style_dist, global);
    entry.score = tf_pmi_score(token, style_dist, global);
    candidates.push_back(std::move(entry));
  }

  std::sort(candidates.begin(), candidates.end(), [](const TfPmiEntry& a, const TfPmiEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.count_in_style != b.count_in_style) return a.count_in_style > b.count_in_style;
    return a.token < b.token;
  });
  if (candidates.size() > params.capacity) candidates.resize(params.capacity);
  lexicon.entries = std::move(candidates);
  lexicon.empty_warning = lexicon.entries.empty();
  return lexicon;
}

std::vector<std::string> TfPmiLexicon::tokens() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.token);
  return out;
}

void write_lexicon(const TfPmiLexicon& lexicon, const std::string& path) {
  std::string out;
  std::size_t rank = 0;
  for (const auto& e : lexicon.entries) {
    ++rank;
    out += std::to_string(rank);
    out += '\t';
    out += e.token;
    out += '\t';
    out += std::to_string(e.count_in_style);
    out += '\t';
    out += format_fixed(e.pmi);
    out += '\t';
    out += format_fixed(e.score);
    out += '\n';
  }
  write_file(path, out);
}

}  // namespace stylekit
