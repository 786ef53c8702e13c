#include "stylekit/style_vector.hpp"

#include <algorithm>
#include <cmath>

#include "stylekit/common.hpp"
#include "stylekit/rng.hpp"

namespace stylekit {

bool StructuredStyleVector::empty_style() const {
  return lexicon.entries.empty() && syntactic.empty_flag && pragmatic.entries.empty();
}

StructuredStyleVector assemble(const TfPmiLexicon& lexicon, const SyntacticVector& syntactic,
                               const StyleProfile& pragmatic) {
  if (lexicon.character != pragmatic.character) {
    throw validation_error("assemble: lexicon character \"" + lexicon.character +
                           "\" does not match profile character \"" + pragmatic.character + "\"");
  }
  StructuredStyleVector s;
  s.character = lexicon.character;
  s.lexicon = lexicon;
  s.syntactic = syntactic;
  s.pragmatic = pragmatic;
  return s;
}

std::string serialize_style_vector(const StructuredStyleVector& s) {
  std::string out;
  out += "character\t" + s.character + "\n";
  out += "[lexicon]\n";
  for (const auto& e : s.lexicon.entries) {
    out += e.token;
    out += '\t';
    out += std::to_string(e.count_in_style);
    out += '\t';
    out += format_fixed(e.pmi);
    out += '\t';
    out += format_fixed(e.score);
    out += '\n';
  }
  out += "[syntactic]\n";
  for (std::size_t i = 0; i < s.syntactic.values.size(); ++i) {
    out += s.syntactic.dimension_names[i];
    out += '\t';
    out += format_fixed(s.syntactic.values[i]);
    out += '\n';
  }
  out += "[pragmatic]\n";
  for (const auto& [label, rate] : s.pragmatic.entries) {
    out += label;
    out += '\t';
    out += format_fixed(rate);
    out += '\n';
  }
  return out;
}

StructuredStyleVector parse_style_vector(const std::string& document) {
  StructuredStyleVector s;
  enum class Section { header, lexicon, syntactic, pragmatic };
  Section section = Section::header;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < document.size()) {
    std::size_t end = document.find('\n', start);
    if (end == std::string::npos) end = document.size();
    std::string line = document.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line == "[lexicon]") {
      section = Section::lexicon;
      continue;
    }
    if (line == "[syntactic]") {
      section = Section::syntactic;
      continue;
    }
    if (line == "[pragmatic]") {
      section = Section::pragmatic;
      continue;
    }
    auto fields = split(line, '\t');
    switch (section) {
      case Section::header:
        if (fields.size() != 2 || fields[0] != "character") {
          throw validation_error("style vector line " + std::to_string(line_no) +
                                 ": expected \"character<TAB>name\"");
        }
        s.character = fields[1];
        break;
      case Section::lexicon: {
        if (fields.size() != 4) {
          throw validation_error("style vector line " + std::to_string(line_no) +
                                 ": lexicon entry needs 4 fields");
        }
        TfPmiEntry e;
        e.token = fields[0];
        e.count_in_style = static_cast<std::size_t>(parse_integer(fields[1], "lexicon count"));
        e.pmi = parse_double(fields[2], "lexicon pmi");
        e.score = parse_double(fields[3], "lexicon score");
        s.lexicon.entries.push_back(std::move(e));
        break;
      }
      case Section::syntactic:
        if (fields.size() != 2) {
          throw validation_error("style vector line " + std::to_string(line_no) +
                                 ": syntactic entry needs 2 fields");
        }
        s.syntactic.dimension_names.push_back(fields[0]);
        s.syntactic.values.push_back(parse_double(fields[1], "syntactic value"));
        break;
      case Section::pragmatic:
        if (fields.size() != 2) {
          throw validation_error("style vector line " + std::to_string(line_no) +
                                 ": pragmatic entry needs 2 fields");
        }
        s.pragmatic.entries.emplace_back(fields[0], parse_double(fields[1], "pragmatic rate"));
        break;
    }
  }
  s.lexicon.character = s.character;
  s.pragmatic.character = s.character;
  double mass = 0.0;
  for (double v : s.syntactic.values) mass += v;
  s.syntactic.empty_flag = mass == 0.0;
  s.lexicon.empty_warning = s.lexicon.entries.empty();
  s.pragmatic.empty_flag = s.pragmatic.entries.empty();
  return s;
}

std::vector<double> centroid_of(const std::vector<std::string>& keys, const EmbeddingTable& table) {
  if (keys.empty()) throw validation_error("centroid_of: no keys given");
  std::vector<std::string> missing;
  for (const auto& key : keys) {
    if (!table.find(key)) missing.push_back(key);
  }
  if (!missing.empty()) {
    throw validation_error("centroid_of: missing embeddings for: " + join(missing, ", "));
  }
  std::vector<double> mean(table.dimension, 0.0);
  for (const auto& key : keys) {
    const auto& v = table.at(key);
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += v[i];
  }
  for (auto& x : mean) x /= static_cast<double>(keys.size());
  return mean;
}

namespace {

std::optional<double> component_centroid_similarity(const std::vector<std::string>& a,
                                                    const std::vector<std::string>& b,
                                                    const EmbeddingTable& table) {
  if (a.empty() || b.empty()) return std::nullopt;
  return try_cosine(centroid_of(a, table), centroid_of(b, table));
}

}  // namespace

SimilarityBreakdown composite_similarity(const StructuredStyleVector& sample,
                                         const StructuredStyleVector& reference,
                                         const EmbeddingTable& embeddings,
                                         const CompositeWeights& weights) {
  SimilarityBreakdown out;

  if (auto sim = component_centroid_similarity(sample.lexicon.tokens(), reference.lexicon.tokens(),
                                               embeddings)) {
    out.lexical_sim = *sim;
    out.lexical_valid = true;
  }
  if (auto sim = component_centroid_similarity(sample.pragmatic.label_names(),
                                               reference.pragmatic.label_names(), embeddings)) {
    out.pragmatic_sim = *sim;
    out.pragmatic_valid = true;
  }
  if (sample.syntactic.values.size() != reference.syntactic.values.size()) {
    throw validation_error("composite_similarity: syntactic dimensions differ (" +
                           std::to_string(sample.syntactic.values.size()) + " vs " +
                           std::to_string(reference.syntactic.values.size()) + ")");
  }
  if (auto sim = try_cosine(sample.syntactic.values, reference.syntactic.values)) {
    out.syntactic_sim = *sim;
    out.syntactic_valid = true;
  }

  double weighted = 0.0;
  double weight_sum = 0.0;
  if (out.lexical_valid) {
    weighted += weights.lexical * out.lexical_sim;
    weight_sum += weights.lexical;
  }
  if (out.pragmatic_valid) {
    weighted += weights.pragmatic * out.pragmatic_sim;
    weight_sum += weights.pragmatic;
  }
  if (out.syntactic_valid) {
    weighted += weights.syntactic * out.syntactic_sim;
    weight_sum += weights.syntactic;
  }
  out.composite = weight_sum == 0.0 ? 0.0 : weighted / weight_sum;
  return out;
}

void StabilityData::validate() const {
  if (productions.size() != tokens.size() || decisions.size() != tokens.size()) {
    throw validation_error("StabilityData: per-utterance arrays must be aligned (" +
                           std::to_string(tokens.size()) + " tokens, " +
                           std::to_string(productions.size()) + " productions, " +
                           std::to_string(decisions.size()) + " decisions)");
  }
}

StructuredStyleVector extract_style_vector(const StabilityData& data,
                                           const std::vector<std::size_t>& indices,
                                           const StabilityParams& params,
                                           const std::string& character) {
  data.validate();
  if (indices.empty()) throw validation_error("extract_style_vector: empty sample");

  Corpus sampled;
  sampled.character = character;
  ProductionTable table;
  std::vector<std::size_t> fires(params.labels.size(), 0);
  for (std::size_t idx : indices) {
    if (idx >= data.size()) throw validation_error("extract_style_vector: index out of range");
    Utterance u;
    u.character = character;
    u.tokens = data.tokens[idx];
    if (!u.tokens.empty()) sampled.utterances.push_back(std::move(u));
    for (const auto& rule : data.productions[idx]) table.add(rule);
    const auto& dec = data.decisions[idx];
    if (dec.size() != params.labels.size()) {
      throw validation_error("extract_style_vector: decision width mismatch");
    }
    for (std::size_t l = 0; l < dec.size(); ++l) fires[l] += dec[l];
  }
  sampled.recount();

  StructuredStyleVector s;
  s.character = character;
  if (sampled.token_count > 0) {
    s.lexicon = build_lexicon(sampled, params.global, params.lexicon);
  } else {
    s.lexicon.empty_warning = true;
  }
  s.lexicon.character = character;
  s.syntactic = map_to_style_vector(table, params.mapping);

  std::vector<std::pair<std::string, double>> rates;
  for (std::size_t l = 0; l < fires.size(); ++l) {
    if (fires[l] == 0) continue;
    rates.emplace_back(params.labels.labels[l],
                       static_cast<double>(fires[l]) / static_cast<double>(indices.size()));
  }
  std::sort(rates.begin(), rates.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (rates.size() > params.profile_top_k) rates.resize(params.profile_top_k);
  s.pragmatic.character = character;
  s.pragmatic.entries = std::move(rates);
  s.pragmatic.empty_flag = s.pragmatic.entries.empty();
  return s;
}

StabilityCurve nshot_stability(const StabilityData& data, const std::vector<std::size_t>& sizes,
                               const StructuredStyleVector& reference,
                               const EmbeddingTable& embeddings, const StabilityParams& params,
                               std::uint64_t seed, std::size_t trials) {
  data.validate();
  if (sizes.empty()) throw validation_error("nshot_stability: no sample sizes given");
  if (trials == 0) throw validation_error("nshot_stability: trials must be positive");
  std::vector<std::size_t> ordered = sizes;
  std::sort(ordered.begin(), ordered.end());
  for (std::size_t n : ordered) {
    if (n == 0 || n > data.size()) {
      throw validation_error("nshot_stability: sample size " + std::to_string(n) +
                             " outside [1, " + std::to_string(data.size()) + "]");
    }
  }

  StabilityCurve curve;
  std::uint64_t stream = 0;
  for (std::size_t n : ordered) {
    SimilarityBreakdown mean;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      Rng rng = derive_rng(seed, stream++);
      const auto indices = rng.sample_without_replacement(data.size(), n);
      const auto sample = extract_style_vector(data, indices, params, reference.character);
      const auto breakdown = composite_similarity(sample, reference, embeddings, params.weights);
      mean.lexical_sim += breakdown.lexical_sim;
      mean.pragmatic_sim += breakdown.pragmatic_sim;
      mean.syntactic_sim += breakdown.syntactic_sim;
      mean.composite += breakdown.composite;
      mean.lexical_valid = mean.lexical_valid || breakdown.lexical_valid;
      mean.pragmatic_valid = mean.pragmatic_valid || breakdown.pragmatic_valid;
      mean.syntactic_valid = mean.syntactic_valid || breakdown.syntactic_valid;
    }
    const double denom = static_cast<double>(trials);
    mean.lexical_sim /= denom;
    mean.pragmatic_sim /= denom;
    mean.syntactic_sim /= denom;
    mean.composite /= denom;
    curve.points.push_back(StabilityPoint{n, mean});
  }

  const double final_composite = curve.points.back().breakdown.composite;
  for (const auto& point : curve.points) {
    if (std::fabs(point.breakdown.composite - final_composite) <= params.convergence_delta) {
      curve.convergence_n = point.n;
      break;
    }
  }
  return curve;
}

void write_stability_curve(const StabilityCurve& curve, const std::string& path) {
  std::string out = "N,lexical,pragmatic,syntactic,composite\n";
  for (const auto& point : curve.points) {
    out += std::to_string(point.n);
    out += ',';
    out += format_fixed(point.breakdown.lexical_sim);
    out += ',';
    out += format_fixed(point.breakdown.pragmatic_sim);
    out += ',';
    out += format_fixed(point.breakdown.syntactic_sim);
    out += ',';
    out += format_fixed(point.breakdown.composite);
    out += '\n';
  }
  write_file(path, out);
}

}  // namespace stylekit
