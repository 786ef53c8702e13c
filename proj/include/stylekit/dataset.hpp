#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "stylekit/style_vector.hpp"

namespace stylekit {

// One (Neutral, Stylized) training record; strictly one neutral text and one
// stylized text per record.
struct TrainingPair {
  std::string character;
  std::string neutral;
  std::string stylized;
  std::string cot_trace;  // optional, at most 100 Unicode scalars
  std::vector<std::string> pragmatic_labels;
};

struct NeutralRecord {
  std::string id;
  std::string text;
};

struct StylizedRecord {
  std::string id;
  std::string neutral_id;  // alignment key
  std::string character;
  std::string text;
  std::string cot_trace;
  std::vector<std::string> labels;
};

struct BuildReport {
  std::vector<std::string> unaligned_neutral_ids;
};

// Pairs every stylized record with its aligned neutral. Duplicate neutral
// ids, duplicate alignments, or stylized records without a neutral are hard
// errors; neutrals nobody rewrote are reported.
std::vector<TrainingPair> build_pairs(const std::vector<NeutralRecord>& neutrals,
                                      const std::vector<StylizedRecord>& stylized,
                                      BuildReport* report = nullptr);

struct OversamplePlan {
  std::map<std::string, std::size_t> targets;  // character -> pair count
};

struct OversampleReport {
  std::map<std::string, double> rates;  // target / source per character
  double overall_rate = 1.0;
  std::size_t before = 0;
  std::size_t after = 0;
};

// Duplicates whole pairs until each character reaches its planned count.
// Duplicates cycle round-robin over a seeded permutation of the character's
// pairs. When focus_labels is non-empty, only pairs whose pragmatic_labels
// intersect it are eligible for duplication.
std::vector<TrainingPair> oversample_pairs(const std::vector<TrainingPair>& pairs,
                                           const OversamplePlan& plan, std::uint64_t seed,
                                           OversampleReport* report = nullptr,
                                           const std::set<std::string>& focus_labels = {});

struct PromptMask {
  bool lexical = false;
  bool syntactic = false;
  bool pragmatic = false;
};

// Instructional prompt for style-conditioned rewriting. Field lines, in
// order: Target Character, Pragmatic Styles, Lexical Keywords, Syntactic
// Patterns, Neutral Content. Masked components are omitted entirely.
// `template_text`, when non-empty, overrides the default template; lines
// whose placeholder is masked are dropped.
std::string render_instruction_prompt(const StructuredStyleVector& s, const std::string& neutral,
                                      const PromptMask& mask = {},
                                      const std::string& template_text = {});

struct RenderedTarget {
  std::string text;
  bool empty_trace = false;
};

// "<think>" + trace + "</think>\n" + stylized. The trace is limited to 100
// Unicode scalar values.
RenderedTarget render_cot_target(const std::string& trace, const std::string& stylized);

struct DatasetViolation {
  std::size_t record_index = 0;
  std::string kind;
  std::string detail;
};

std::vector<DatasetViolation> validate_dataset(const std::vector<TrainingPair>& pairs);

// Dataset file: header + one tab-separated record per line with fields
// character, neutral, stylized, cot, labels (comma-separated).
void write_dataset(const std::vector<TrainingPair>& pairs, const std::string& path);
std::vector<TrainingPair> read_dataset(const std::string& path);

// Neutral file: id <TAB> text. Stylized file: id <TAB> neutral_id <TAB>
// character <TAB> text [<TAB> cot [<TAB> labels]].
std::vector<NeutralRecord> load_neutrals(const std::string& path);
std::vector<StylizedRecord> load_stylized(const std::string& path);

}  // namespace stylekit
