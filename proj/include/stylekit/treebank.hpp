#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace stylekit {

// Constituency tree node. A leaf is a preterminal carrying exactly one
// terminal token; internal nodes carry children and no token.
struct ParseTree {
  std::string label;
  std::vector<ParseTree> children;
  std::string token;

  bool is_leaf() const { return children.empty(); }
};

// Parses one bracketed tree, e.g. "(TOP (IP (VP (VV 走))))". Whitespace
// between symbols is free-form. Throws tree_parse_error with a byte offset.
ParseTree parse_bracketed_tree(std::string_view text);

std::string serialize_tree(const ParseTree& tree);

struct Production {
  std::string lhs;
  std::vector<std::string> rhs;

  // Canonical form "LHS → S1 S2" with single spaces.
  std::string text() const;
  auto operator<=>(const Production&) const = default;
};

// Inverse of Production::text(); accepts "->" as an ASCII fallback.
Production parse_production(const std::string& canonical);

// One production per internal node, pre-order, children left to right. With
// include_lexical, preterminal→terminal rules are emitted at their leaves.
std::vector<Production> extract_productions(const ParseTree& tree, bool include_lexical = false);

struct ProductionTable {
  std::map<Production, std::size_t> counts;
  std::size_t total = 0;

  void add(const Production& rule, std::size_t n = 1);
  std::size_t count(const Production& rule) const;
  bool empty() const { return counts.empty(); }
};

ProductionTable count_productions(const std::vector<ParseTree>& trees, bool include_lexical = false);

// One bracketed tree per line; blank lines are ignored.
std::vector<ParseTree> load_treebank(const std::string& path);

}  // namespace stylekit
