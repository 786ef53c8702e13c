#include "stylekit/syntax.hpp"

#include <algorithm>
#include <cmath>

#include "stylekit/common.hpp"

namespace stylekit {

double PcfgModel::probability(const Production& rule) const {
  auto it = probabilities.find(rule);
  return it == probabilities.end() ? 0.0 : it->second;
}

PcfgModel pcfg_probabilities(const ProductionTable& table) {
  if (table.empty()) throw validation_error("pcfg_probabilities: empty production table");
  PcfgModel model;
  for (const auto& [rule, count] : table.counts) model.lhs_totals[rule.lhs] += count;
  for (const auto& [rule, count] : table.counts) {
    model.probabilities[rule] =
        static_cast<double>(count) / static_cast<double>(model.lhs_totals[rule.lhs]);
  }
  return model;
}

double probability_ratio(const PcfgModel& style, const PcfgModel& base, const Production& rule,
                         double epsilon, bool* floored) {
  const double p_style = style.probability(rule);
  if (p_style == 0.0) {
    throw validation_error("probability_ratio: rule \"" + rule.text() + "\" absent from style model");
  }
  double p_base = base.probability(rule);
  bool hit_floor = false;
  if (p_base < epsilon) {
    p_base = epsilon;
    hit_floor = true;
  }
  if (floored) *floored = hit_floor;
  return p_style / p_base;
}

LlrInputs LlrInputs::pooled(std::size_t k1, std::size_t n1, std::size_t k2, std::size_t n2) {
  LlrInputs in;
  in.k1 = k1;
  in.n1 = n1;
  in.k2 = k2;
  in.n2 = n2;
  if (n1 + n2 == 0) throw validation_error("log_likelihood_ratio: empty totals");
  in.mu = static_cast<double>(k1 + k2) / static_cast<double>(n1 + n2);
  return in;
}

double log_likelihood_ratio(const LlrInputs& in) {
  if (in.n1 == 0 || in.n2 == 0) {
    throw validation_error("log_likelihood_ratio: totals must be positive");
  }
  if (in.k1 > in.n1 || in.k2 > in.n2) {
    throw validation_error("log_likelihood_ratio: count exceeds total");
  }
  if (!(in.mu > 0.0) || !(in.mu < 1.0)) {
    // mu outside (0,1) only happens for all-or-nothing rules; both limits
    // yield LLR = 0 under the x log x convention.
    if (in.mu == 0.0 || in.mu == 1.0) return 0.0;
    throw validation_error("log_likelihood_ratio: mu must lie in (0,1)");
  }
  auto term = [&](std::size_t k, std::size_t n) {
    if (k == 0) return 0.0;  // lim x→0 of x log x
    const double kd = static_cast<double>(k);
    return kd * std::log(kd / (static_cast<double>(n) * in.mu));
  };
  return 2.0 * (term(in.k1, in.n1) + term(in.k2, in.n2));
}

std::vector<RankedRule> rank_rules(const ProductionTable& style, const ProductionTable& base,
                                   std::size_t top_k) {
  if (style.empty() || base.empty()) {
    throw validation_error("rank_rules: both production tables must be non-empty");
  }
  const PcfgModel style_model = pcfg_probabilities(style);
  const PcfgModel base_model = pcfg_probabilities(base);

  std::vector<RankedRule> rows;
  rows.reserve(style.counts.size());
  for (const auto& [rule, count] : style.counts) {
    RankedRule row;
    row.rule = rule;
    row.freq = count;
    row.p = style_model.probability(rule);
    row.pr = probability_ratio(style_model, base_model, rule, 1e-8, &row.pr_floored);
    row.llr = log_likelihood_ratio(
        LlrInputs::pooled(count, style.total, base.count(rule), base.total));
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const RankedRule& a, const RankedRule& b) {
    if (a.llr != b.llr) return a.llr > b.llr;
    if (a.freq != b.freq) return a.freq > b.freq;
    return a.rule < b.rule;
  });
  if (rows.size() > top_k) rows.resize(top_k);
  return rows;
}

RuleMapping RuleMapping::load(const std::string& path) {
  RuleMapping mapping;
  std::map<std::string, std::size_t> name_index;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw validation_error(path + ":" + std::to_string(line_no) +
                             ": expected \"rule<TAB>dimension\"");
    }
    Production rule = parse_production(fields[0]);
    auto [it, inserted] = name_index.emplace(fields[1], mapping.dimension_names.size());
    if (inserted) mapping.dimension_names.push_back(fields[1]);
    auto& dims = mapping.rule_to_dims[rule];
    if (std::find(dims.begin(), dims.end(), it->second) == dims.end()) {
      dims.push_back(it->second);
    }
  }
  if (mapping.dimension_names.empty()) {
    throw validation_error(path + ": mapping file has no entries");
  }
  for (auto& [rule, dims] : mapping.rule_to_dims) std::sort(dims.begin(), dims.end());
  return mapping;
}

SyntacticVector map_to_style_vector(const ProductionTable& table, const RuleMapping& mapping) {
  SyntacticVector vec;
  vec.dimension_names = mapping.dimension_names;
  vec.values.assign(mapping.dimension_count(), 0.0);

  std::vector<std::size_t> mass(mapping.dimension_count(), 0);
  std::size_t denominator = 0;
  for (const auto& [rule, count] : table.counts) {
    auto it = mapping.rule_to_dims.find(rule);
    if (it == mapping.rule_to_dims.end()) continue;
    for (std::size_t dim : it->second) {
      mass[dim] += count;
      denominator += count;  // double-sum denominator: once per mapped dimension
    }
  }
  if (denominator == 0) {
    vec.empty_flag = true;
    return vec;
  }
  for (std::size_t i = 0; i < mass.size(); ++i) {
    vec.values[i] = static_cast<double>(mass[i]) / static_cast<double>(denominator);
  }
  return vec;
}

CoverageReport make_coverage(std::size_t total, std::size_t mapped) {
  CoverageReport report;
  report.total_rules = total;
  report.mapped_rules = mapped;
  if (total == 0) {
    report.empty = true;
    report.coverage_pct = 0.0;
  } else {
    report.coverage_pct = 100.0 * static_cast<double>(mapped) / static_cast<double>(total);
  }
  return report;
}

CoverageReport coverage(const ProductionTable& table, const RuleMapping& mapping) {
  std::size_t mapped = 0;
  for (const auto& [rule, count] : table.counts) {
    if (mapping.rule_to_dims.count(rule)) mapped += count;
  }
  return make_coverage(table.total, mapped);
}

void write_ranked_rules(const std::vector<RankedRule>& rules, const std::string& path) {
  std::string out = "rule\tfreq\tp\tpr\tllr\n";
  for (const auto& row : rules) {
    out += row.rule.text();
    out += '\t';
    out += std::to_string(row.freq);
    out += '\t';
    out += format_fixed(row.p);
    out += '\t';
    out += format_fixed(row.pr);
    if (row.pr_floored) out += '*';  // baseline probability floored
    out += '\t';
    out += format_fixed(row.llr);
    out += '\n';
  }
  write_file(path, out);
}

void write_syntactic_vector(const SyntacticVector& vec, const std::string& path) {
  std::string out;
  for (std::size_t i = 0; i < vec.values.size(); ++i) {
    out += vec.dimension_names[i];
    out += '\t';
    out += format_fixed(vec.values[i]);
    out += '\n';
  }
  write_file(path, out);
}

}  // namespace stylekit
