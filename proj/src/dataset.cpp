#include "stylekit/dataset.hpp"

#include <algorithm>
#include <map>

#include "stylekit/common.hpp"
#include "stylekit/rng.hpp"
#include "stylekit/utf8.hpp"

namespace stylekit {

namespace {

constexpr std::size_t kMaxCotScalars = 100;

const char* kDefaultPromptTemplate =
    "Target Character: {character}\n"
    "Pragmatic Styles: {pragmatic}\n"
    "Lexical Keywords: {lexical}\n"
    "Syntactic Patterns: {syntactic}\n"
    "Neutral Content: {neutral}\n";

std::string escape_field(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_field(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '\\' || i + 1 == text.size()) {
      out += text[i];
      continue;
    }
    ++i;
    switch (text[i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      default:
        out += '\\';
        out += text[i];
    }
  }
  return out;
}

std::vector<std::string> parse_label_list(const std::string& field) {
  std::vector<std::string> labels;
  for (auto& item : split(field, ',')) {
    if (!item.empty()) labels.push_back(item);
  }
  return labels;
}

}  // namespace

std::vector<TrainingPair> build_pairs(const std::vector<NeutralRecord>& neutrals,
                                      const std::vector<StylizedRecord>& stylized,
                                      BuildReport* report) {
  std::map<std::string, const NeutralRecord*> by_id;
  for (const auto& n : neutrals) {
    if (!by_id.emplace(n.id, &n).second) {
      throw validation_error("build_pairs: duplicate neutral id \"" + n.id + "\"");
    }
  }
  std::map<std::string, const StylizedRecord*> claimed;
  std::vector<TrainingPair> pairs;
  pairs.reserve(stylized.size());
  for (const auto& s : stylized) {
    auto it = by_id.find(s.neutral_id);
    if (it == by_id.end()) {
      throw validation_error("build_pairs: stylized record \"" + s.id +
                             "\" references unknown neutral \"" + s.neutral_id + "\"");
    }
    if (!claimed.emplace(s.neutral_id, &s).second) {
      throw validation_error("build_pairs: duplicate alignment — neutral \"" + s.neutral_id +
                             "\" is claimed by more than one stylized record");
    }
    TrainingPair pair;
    pair.character = s.character;
    pair.neutral = it->second->text;
    pair.stylized = s.text;
    pair.cot_trace = s.cot_trace;
    pair.pragmatic_labels = s.labels;
    pairs.push_back(std::move(pair));
  }
  if (report) {
    report->unaligned_neutral_ids.clear();
    for (const auto& n : neutrals) {
      if (!claimed.count(n.id)) report->unaligned_neutral_ids.push_back(n.id);
    }
  }
  return pairs;
}

std::vector<TrainingPair> oversample_pairs(const std::vector<TrainingPair>& pairs,
                                           const OversamplePlan& plan, std::uint64_t seed,
                                           OversampleReport* report,
                                           const std::set<std::string>& focus_labels) {
  std::map<std::string, std::vector<std::size_t>> by_character;
  for (std::size_t i = 0; i < pairs.size(); ++i) by_character[pairs[i].character].push_back(i);

  OversampleReport local;
  local.before = pairs.size();
  std::vector<TrainingPair> out = pairs;

  std::size_t stream = 0;
  for (const auto& [character, target] : plan.targets) {
    auto it = by_character.find(character);
    const std::size_t source = it == by_character.end() ? 0 : it->second.size();
    if (target < source || source == 0) {
      throw validation_error("oversample_pairs: target " + std::to_string(target) +
                             " below source count " + std::to_string(source) + " for character \"" +
                             character + "\"");
    }
    local.rates[character] = static_cast<double>(target) / static_cast<double>(source);

    std::vector<std::size_t> pool;
    if (focus_labels.empty()) {
      pool = it->second;
    } else {
      for (std::size_t idx : it->second) {
        for (const auto& label : pairs[idx].pragmatic_labels) {
          if (focus_labels.count(label)) {
            pool.push_back(idx);
            break;
          }
        }
      }
    }
    const std::size_t extras = target - source;
    if (extras > 0 && pool.empty()) {
      throw validation_error("oversample_pairs: no pair of character \"" + character +
                             "\" carries a focus label, cannot reach target");
    }
    Rng rng = derive_rng(seed, stream++);
    rng.shuffle(pool);
    for (std::size_t k = 0; k < extras; ++k) out.push_back(pairs[pool[k % pool.size()]]);
  }

  local.after = out.size();
  local.overall_rate = local.before == 0
                           ? 1.0
                           : static_cast<double>(local.after) / static_cast<double>(local.before);
  if (report) *report = local;
  return out;
}

std::string render_instruction_prompt(const StructuredStyleVector& s, const std::string& neutral,
                                      const PromptMask& mask, const std::string& template_text) {
  std::vector<std::string> profile_labels = s.pragmatic.label_names();
  std::vector<std::string> keywords = s.lexicon.tokens();

  // Syntactic summary: top-5 dimensions by weight as name:value pairs.
  std::vector<std::pair<std::string, double>> dims;
  for (std::size_t i = 0; i < s.syntactic.values.size(); ++i) {
    if (s.syntactic.values[i] > 0.0) dims.emplace_back(s.syntactic.dimension_names[i], s.syntactic.values[i]);
  }
  std::sort(dims.begin(), dims.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (dims.size() > 5) dims.resize(5);
  std::vector<std::string> dim_parts;
  for (const auto& [name, value] : dims) dim_parts.push_back(name + ":" + format_fixed(value, 4));

  const std::string tmpl = template_text.empty() ? kDefaultPromptTemplate : template_text;
  std::string out;
  std::size_t start = 0;
  while (start < tmpl.size()) {
    std::size_t end = tmpl.find('\n', start);
    if (end == std::string::npos) end = tmpl.size();
    std::string line = tmpl.substr(start, end - start);
    start = end + 1;
    const bool masked = (mask.lexical && line.find("{lexical}") != std::string::npos) ||
                        (mask.syntactic && line.find("{syntactic}") != std::string::npos) ||
                        (mask.pragmatic && line.find("{pragmatic}") != std::string::npos);
    if (masked) continue;
    auto substitute = [&line](const std::string& key, const std::string& value) {
      std::size_t pos;
      while ((pos = line.find(key)) != std::string::npos) line.replace(pos, key.size(), value);
    };
    substitute("{character}", s.character);
    substitute("{pragmatic}", join(profile_labels, ", "));
    substitute("{lexical}", join(keywords, ", "));
    substitute("{syntactic}", join(dim_parts, ", "));
    substitute("{neutral}", neutral);
    out += line;
    out += '\n';
  }
  return out;
}

RenderedTarget render_cot_target(const std::string& trace, const std::string& stylized) {
  const std::size_t scalars = utf8::length(trace);
  if (scalars > kMaxCotScalars) {
    throw validation_error("render_cot_target: trace is " + std::to_string(scalars) +
                           " characters, limit is " + std::to_string(kMaxCotScalars));
  }
  RenderedTarget target;
  target.empty_trace = trace.empty();
  target.text = "<think>" + trace + "</think>\n" + stylized;
  return target;
}

std::vector<DatasetViolation> validate_dataset(const std::vector<TrainingPair>& pairs) {
  std::vector<DatasetViolation> violations;
  std::map<std::pair<std::string, std::string>, std::size_t> seen;  // (character, neutral)
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    if (p.neutral.empty()) violations.push_back({i, "empty_neutral", p.character});
    if (p.stylized.empty()) violations.push_back({i, "empty_stylized", p.character});
    if (!p.cot_trace.empty() && utf8::length(p.cot_trace) > kMaxCotScalars) {
      violations.push_back({i, "cot_over_length",
                            std::to_string(utf8::length(p.cot_trace)) + " > " +
                                std::to_string(kMaxCotScalars)});
    }
    auto key = std::make_pair(p.character, p.neutral);
    auto it = seen.find(key);
    if (it != seen.end() && !p.neutral.empty()) {
      violations.push_back({i, "one_to_one_break",
                            "neutral already stylized at record " + std::to_string(it->second)});
    } else {
      seen.emplace(std::move(key), i);
    }
  }
  return violations;
}

void write_dataset(const std::vector<TrainingPair>& pairs, const std::string& path) {
  std::string out = "character\tneutral\tstylized\tcot\tlabels\n";
  for (const auto& p : pairs) {
    out += escape_field(p.character);
    out += '\t';
    out += escape_field(p.neutral);
    out += '\t';
    out += escape_field(p.stylized);
    out += '\t';
    out += escape_field(p.cot_trace);
    out += '\t';
    out += join(p.pragmatic_labels, ",");
    out += '\n';
  }
  write_file(path, out);
}

std::vector<TrainingPair> read_dataset(const std::string& path) {
  std::vector<TrainingPair> pairs;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("character\t", 0) == 0) continue;  // header
    auto fields = split(line, '\t');
    if (fields.size() != 5) {
      throw validation_error(path + ":" + std::to_string(line_no) + ": expected 5 fields, got " +
                             std::to_string(fields.size()));
    }
    TrainingPair p;
    p.character = unescape_field(fields[0]);
    p.neutral = unescape_field(fields[1]);
    p.stylized = unescape_field(fields[2]);
    p.cot_trace = unescape_field(fields[3]);
    p.pragmatic_labels = parse_label_list(fields[4]);
    pairs.push_back(std::move(p));
  }
  return pairs;
}

std::vector<NeutralRecord> load_neutrals(const std::string& path) {
  std::vector<NeutralRecord> records;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 2 || fields[0].empty()) {
      throw validation_error(path + ":" + std::to_string(line_no) + ": expected \"id<TAB>text\"");
    }
    records.push_back({fields[0], unescape_field(fields[1])});
  }
  return records;
}

std::vector<StylizedRecord> load_stylized(const std::string& path) {
  std::vector<StylizedRecord> records;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() < 4 || fields.size() > 6) {
      throw validation_error(path + ":" + std::to_string(line_no) +
                             ": expected \"id<TAB>neutral_id<TAB>character<TAB>text[<TAB>cot[<TAB>labels]]\"");
    }
    StylizedRecord r;
    r.id = fields[0];
    r.neutral_id = fields[1];
    r.character = fields[2];
    r.text = unescape_field(fields[3]);
    if (fields.size() >= 5) r.cot_trace = unescape_field(fields[4]);
    if (fields.size() == 6) r.labels = parse_label_list(fields[5]);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace stylekit
