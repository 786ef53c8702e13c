#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stylekit/treebank.hpp"

namespace stylekit {

struct PcfgModel {
  std::map<Production, double> probabilities;
  std::map<std::string, std::size_t> lhs_totals;

  double probability(const Production& rule) const;  // 0 when absent
};

// Relative-frequency estimate P(A→α) = Count(A→α) / Σ_β Count(A→β).
PcfgModel pcfg_probabilities(const ProductionTable& table);

// P_style(rule) / P_base(rule); a baseline probability of zero is floored at
// epsilon so the ratio stays finite and sortable. `floored`, when given,
// reports whether the floor was hit.
double probability_ratio(const PcfgModel& style, const PcfgModel& base, const Production& rule,
                         double epsilon = 1e-8, bool* floored = nullptr);

struct LlrInputs {
  std::size_t k1 = 0;  // rule count in the style corpus
  std::size_t n1 = 0;  // total productions in the style corpus
  std::size_t k2 = 0;  // rule count in the baseline
  std::size_t n2 = 0;  // total productions in the baseline
  double mu = 0.0;     // reference rate in (0,1)

  // Dunning construction: mu = (k1+k2)/(n1+n2), which makes LLR vanish at
  // equal rates and stay non-negative.
  static LlrInputs pooled(std::size_t k1, std::size_t n1, std::size_t k2, std::size_t n2);
};

// 2[ k1 ln(k1/(n1 mu)) + k2 ln(k2/(n2 mu)) ], zero-count terms contribute 0.
double log_likelihood_ratio(const LlrInputs& in);

struct RankedRule {
  Production rule;
  std::size_t freq = 0;  // style-corpus count
  double p = 0.0;        // style-corpus PCFG probability
  double pr = 0.0;       // probability ratio vs baseline
  bool pr_floored = false;
  double llr = 0.0;
};

// All style-corpus rules scored against the baseline, ordered by LLR desc,
// then frequency desc, then rule text; truncated to top_k.
std::vector<RankedRule> rank_rules(const ProductionTable& style, const ProductionTable& base,
                                   std::size_t top_k);

struct RuleMapping {
  std::vector<std::string> dimension_names;
  std::map<Production, std::vector<std::size_t>> rule_to_dims;

  // File format: canonical rule text <TAB> dimension name, one pair per line.
  // Vector length follows the number of distinct dimension names in the file.
  static RuleMapping load(const std::string& path);
  std::size_t dimension_count() const { return dimension_names.size(); }
};

struct SyntacticVector {
  std::vector<std::string> dimension_names;
  std::vector<double> values;
  bool empty_flag = false;  // no mapped rule observed
};

// v_i = Σ_{r∈D_i} Count(r) / Σ_j Σ_{r∈D_j} Count(r). Rules mapped to several
// dimensions contribute to each; unmapped rules are excluded entirely.
SyntacticVector map_to_style_vector(const ProductionTable& table, const RuleMapping& mapping);

struct CoverageReport {
  std::size_t total_rules = 0;   // production occurrences in the corpus
  std::size_t mapped_rules = 0;  // occurrences of productions in the mapping
  double coverage_pct = 0.0;
  bool empty = false;
};

CoverageReport make_coverage(std::size_t total, std::size_t mapped);
CoverageReport coverage(const ProductionTable& table, const RuleMapping& mapping);

void write_ranked_rules(const std::vector<RankedRule>& rules, const std::string& path);
void write_syntactic_vector(const SyntacticVector& vec, const std::string& path);

}  // namespace stylekit
