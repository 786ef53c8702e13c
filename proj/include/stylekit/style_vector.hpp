#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stylekit/corpus.hpp"
#include "stylekit/lexicon.hpp"
#include "stylekit/refiner.hpp"
#include "stylekit/syntax.hpp"

namespace stylekit {

// S = [lexical lexicon, syntactic vector, pragmatic profile].
struct StructuredStyleVector {
  std::string character;
  TfPmiLexicon lexicon;
  SyntacticVector syntactic;
  StyleProfile pragmatic;

  bool empty_style() const;
};

// All three components must carry the same character.
StructuredStyleVector assemble(const TfPmiLexicon& lexicon, const SyntacticVector& syntactic,
                               const StyleProfile& pragmatic);

std::string serialize_style_vector(const StructuredStyleVector& s);
StructuredStyleVector parse_style_vector(const std::string& document);

// Arithmetic mean of the vectors behind `keys`; errors list every missing key.
std::vector<double> centroid_of(const std::vector<std::string>& keys, const EmbeddingTable& table);

struct CompositeWeights {
  double lexical = 1.0;
  double pragmatic = 1.0;
  double syntactic = 1.0;
};

struct SimilarityBreakdown {
  double lexical_sim = 0.0;
  double pragmatic_sim = 0.0;
  double syntactic_sim = 0.0;
  double composite = 0.0;
  bool lexical_valid = false;
  bool pragmatic_valid = false;
  bool syntactic_valid = false;
};

// Lexical and pragmatic components compare embedding centroids of their
// token/label sets; the syntactic component compares the vectors directly.
// Zero-norm or empty components are flagged invalid and excluded from the
// weighted composite.
SimilarityBreakdown composite_similarity(const StructuredStyleVector& sample,
                                         const StructuredStyleVector& reference,
                                         const EmbeddingTable& embeddings,
                                         const CompositeWeights& weights = {});

// Per-utterance inputs for style extraction, aligned by index: filtered
// tokens, productions from the utterance's parse, and refiner decisions.
struct StabilityData {
  std::vector<std::vector<std::string>> tokens;
  std::vector<std::vector<Production>> productions;
  std::vector<std::vector<std::uint8_t>> decisions;

  std::size_t size() const { return tokens.size(); }
  void validate() const;
};

struct StabilityParams {
  UnigramDistribution global;
  RuleMapping mapping;
  LexiconParams lexicon;
  LabelSet labels = LabelSet::builtin();
  std::size_t profile_top_k = 5;
  CompositeWeights weights;
  double convergence_delta = 0.005;
};

// Builds a full S from the selected utterances. Order-invariant in `indices`.
StructuredStyleVector extract_style_vector(const StabilityData& data,
                                           const std::vector<std::size_t>& indices,
                                           const StabilityParams& params,
                                           const std::string& character);

struct StabilityPoint {
  std::size_t n = 0;
  SimilarityBreakdown breakdown;
};

struct StabilityCurve {
  std::vector<StabilityPoint> points;
  std::optional<std::size_t> convergence_n;
};

// For each N: sample N utterances without replacement (`trials` seeded
// resamples, breakdown averaged), extract S, compare against the reference.
StabilityCurve nshot_stability(const StabilityData& data, const std::vector<std::size_t>& sizes,
                               const StructuredStyleVector& reference,
                               const EmbeddingTable& embeddings, const StabilityParams& params,
                               std::uint64_t seed, std::size_t trials);

// CSV: N, lexical, pragmatic, syntactic, composite.
void write_stability_curve(const StabilityCurve& curve, const std::string& path);

}  // namespace stylekit
