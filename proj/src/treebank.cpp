#include "stylekit/treebank.hpp"

#include "stylekit/common.hpp"

namespace stylekit {

namespace {

constexpr const char* kArrow = "→";  // →

struct TreeParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                                 text[pos] == '\r')) {
      ++pos;
    }
  }

  bool at_symbol_char() const {
    if (pos >= text.size()) return false;
    const char c = text[pos];
    return c != '(' && c != ')' && c != ' ' && c != '\t' && c != '\n' && c != '\r';
  }

  std::string read_symbol() {
    const std::size_t start = pos;
    while (at_symbol_char()) ++pos;
    return std::string(text.substr(start, pos - start));
  }

  ParseTree parse_node() {
    skip_ws();
    if (pos >= text.size() || text[pos] != '(') {
      throw tree_parse_error("expected '('", pos);
    }
    const std::size_t open = pos;
    ++pos;
    skip_ws();
    ParseTree node;
    node.label = read_symbol();
    if (node.label.empty()) {
      throw tree_parse_error("constituent without a label", pos);
    }
    skip_ws();
    if (pos < text.size() && text[pos] == '(') {
      while (pos < text.size() && text[pos] == '(') {
        node.children.push_back(parse_node());
        skip_ws();
      }
    } else if (at_symbol_char()) {
      node.token = read_symbol();
      skip_ws();
      if (at_symbol_char()) {
        throw tree_parse_error("preterminal \"" + node.label + "\" has more than one token", pos);
      }
    } else {
      throw tree_parse_error("empty constituent \"" + node.label + "\"", open);
    }
    skip_ws();
    if (pos >= text.size()) {
      throw tree_parse_error("unbalanced parentheses: missing ')'", text.size());
    }
    if (text[pos] != ')') {
      throw tree_parse_error("expected ')'", pos);
    }
    ++pos;
    return node;
  }
};

void serialize_into(const ParseTree& tree, std::string& out) {
  out += '(';
  out += tree.label;
  if (tree.is_leaf()) {
    out += ' ';
    out += tree.token;
  } else {
    for (const auto& child : tree.children) {
      out += ' ';
      serialize_into(child, out);
    }
  }
  out += ')';
}

void extract_into(const ParseTree& tree, bool include_lexical, std::vector<Production>& out) {
  if (tree.is_leaf()) {
    if (include_lexical) out.push_back(Production{tree.label, {tree.token}});
    return;
  }
  Production rule;
  rule.lhs = tree.label;
  rule.rhs.reserve(tree.children.size());
  for (const auto& child : tree.children) rule.rhs.push_back(child.label);
  out.push_back(std::move(rule));
  for (const auto& child : tree.children) extract_into(child, include_lexical, out);
}

}  // namespace

ParseTree parse_bracketed_tree(std::string_view text) {
  TreeParser parser{text};
  parser.skip_ws();
  ParseTree tree = parser.parse_node();
  parser.skip_ws();
  if (parser.pos != text.size()) {
    throw tree_parse_error("trailing garbage after tree", parser.pos);
  }
  return tree;
}

std::string serialize_tree(const ParseTree& tree) {
  std::string out;
  serialize_into(tree, out);
  return out;
}

std::string Production::text() const {
  std::string out = lhs;
  out += ' ';
  out += kArrow;
  for (const auto& symbol : rhs) {
    out += ' ';
    out += symbol;
  }
  return out;
}

Production parse_production(const std::string& canonical) {
  auto fields = split_ws(canonical);
  if (fields.size() < 3 || (fields[1] != kArrow && fields[1] != "->")) {
    throw validation_error("malformed production \"" + canonical + "\" (expected \"LHS → RHS...\")");
  }
  Production rule;
  rule.lhs = fields[0];
  rule.rhs.assign(fields.begin() + 2, fields.end());
  return rule;
}

std::vector<Production> extract_productions(const ParseTree& tree, bool include_lexical) {
  std::vector<Production> out;
  extract_into(tree, include_lexical, out);
  return out;
}

void ProductionTable::add(const Production& rule, std::size_t n) {
  if (n == 0) return;
  counts[rule] += n;
  total += n;
}

std::size_t ProductionTable::count(const Production& rule) const {
  auto it = counts.find(rule);
  return it == counts.end() ? 0 : it->second;
}

ProductionTable count_productions(const std::vector<ParseTree>& trees, bool include_lexical) {
  ProductionTable table;
  for (const auto& tree : trees) {
    for (const auto& rule : extract_productions(tree, include_lexical)) table.add(rule);
  }
  return table;
}

std::vector<ParseTree> load_treebank(const std::string& path) {
  std::vector<ParseTree> trees;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    bool blank = true;
    for (char c : line) {
      if (c != ' ' && c != '\t') {
        blank = false;
        break;
      }
    }
    if (blank) continue;
    try {
      trees.push_back(parse_bracketed_tree(line));
    } catch (const tree_parse_error& e) {
      throw validation_error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return trees;
}

}  // namespace stylekit
