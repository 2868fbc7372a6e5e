#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "spanparse/token.hpp"

namespace spanparse {

/// Half-open word-boundary span (i, j), 0 <= i < j <= n.
struct Span {
  int i = 0;
  int j = 0;
  bool operator==(const Span& o) const { return i == o.i && j == o.j; }
  bool operator<(const Span& o) const {
    return i != o.i ? i < o.i : j < o.j;
  }
  int width() const { return j - i; }
};

/// A labeled span <X, i, j>. The label is a single nonterminal symbol,
/// never a joined chain.
struct Bracket {
  std::string label;
  int i = 0;
  int j = 0;

  Span span() const { return {i, j}; }
  bool operator==(const Bracket& o) const {
    return i == o.i && j == o.j && label == o.label;
  }
  bool operator<(const Bracket& o) const {
    if (i != o.i) return i < o.i;
    if (j != o.j) return j < o.j;
    return label < o.label;
  }
};

/// Set of brackets with set semantics (no duplicates), kept sorted.
class BracketSet {
 public:
  BracketSet() = default;
  explicit BracketSet(std::vector<Bracket> items);

  /// Inserts; duplicates are ignored.
  void insert(const Bracket& b);
  bool contains(const Bracket& b) const;
  bool contains_span(int i, int j) const;
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  const std::vector<Bracket>& items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  std::size_t intersection_size(const BracketSet& other) const;
  bool operator==(const BracketSet& o) const { return items_ == o.items_; }
  bool operator!=(const BracketSet& o) const { return !(*this == o); }

  /// True iff every pair of member spans is nested or disjoint.
  bool non_crossing() const;

 private:
  std::vector<Bracket> items_;  // sorted, unique
};

/// N-ary constituency tree node. A leaf is a preterminal: its label is the
/// POS tag and it carries the token. Internal labels may be collapsed unary
/// chains joined with '-' (e.g. "S-VP").
class Tree {
 public:
  Tree(std::string label, std::vector<Tree> children);
  explicit Tree(Token token);

  bool is_leaf() const { return token_.has_value(); }
  const std::string& label() const { return label_; }
  const std::vector<Tree>& children() const { return children_; }
  std::vector<Tree>& children() { return children_; }
  const Token& token() const { return *token_; }

  int begin() const { return span_.i; }
  int end() const { return span_.j; }
  Span span() const { return span_; }

  void set_label(std::string label) { label_ = std::move(label); }

  /// Recomputes spans for the whole subtree; `start` is the index of the
  /// first word. Returns the boundary one past the last word.
  int assign_spans(int start);

  /// Number of words under this node.
  int num_leaves() const;

  std::vector<Token> tokens() const;

  bool structurally_equal(const Tree& o) const;

 private:
  std::string label_;
  std::vector<Tree> children_;
  std::optional<Token> token_;
  Span span_;
};

/// Splits a collapsed chain label "S-VP" into its parts, top-down.
std::vector<std::string> split_chain(const std::string& chain);
std::string join_chain(const std::vector<std::string>& parts);

// ---------------------------------------------------------------------------
// Reading and writing

/// Parses one or more bracketed trees from text. Whitespace-insensitive;
/// preterminals have the form (TAG word). Throws TreeParseError with
/// line/column on unbalanced or empty input.
std::vector<Tree> read_trees(const std::string& text);

/// Single-line bracketed form. Chain labels are expanded back into nested
/// unary nodes, so the output round-trips through read_trees + collapse.
std::string write_tree(const Tree& tree);

// ---------------------------------------------------------------------------
// Normalization

struct NormalizationRules {
  std::string null_tag = "-NONE-";   // preterminals with this tag are traces
  std::string root_wrapper = "TOP";  // singleton root label to drop
  bool strip_function_tags = true;   // NP-SBJ=2 -> NP (leading '-' escapes)
};

/// Removes trace subtrees, strips function annotations, drops the root
/// wrapper. Throws DataError if nothing remains.
Tree normalize(const Tree& tree, const NormalizationRules& rules = {});

/// Merges every maximal nonterminal-over-nonterminal unary chain into one
/// node labeled with the parts joined top-down by '-'. Preterminals never
/// join a chain.
Tree collapse_unaries(const Tree& tree);

// ---------------------------------------------------------------------------
// Bracket conversions

/// Emits <X1,i,j>..<Xm,i,j> for every internal node with chain label
/// X1-...-Xm. Duplicates collapse under set semantics.
BracketSet tree_to_brackets(const Tree& tree);

/// Ordered label chains per span, outermost first. This is what a parser's
/// label-action record supplies; a plain BracketSet cannot order same-span
/// labels.
using SpanChains = std::map<Span, std::vector<std::string>>;

SpanChains tree_to_span_chains(const Tree& tree);

/// Rebuilds the tree from per-span chains plus the token sequence. Requires
/// a chain on (0, n); throws DataError on crossing spans or a missing root.
Tree assemble_tree(const SpanChains& chains, const std::vector<Token>& tokens);

/// Convenience overload: same-span labels are ordered lexicographically
/// (chain order is not recoverable from a set).
Tree brackets_to_tree(const BracketSet& brackets,
                      const std::vector<Token>& tokens);

// ---------------------------------------------------------------------------
// Label inventory

/// Distinct label actions (single nonterminals and joined chains) in
/// first-seen order over a post-order walk, which matches the order the
/// static oracle emits label actions.
class LabelInventory {
 public:
  LabelInventory() = default;

  /// Returns the id, inserting if unseen.
  int add(const std::string& label);
  /// Returns the id or -1.
  int id_of(const std::string& label) const;
  const std::string& label_of(int id) const { return labels_.at(id); }
  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> ids_;
};

/// Inventory over a collapsed corpus. Throws DataError on an empty corpus.
LabelInventory build_label_inventory(const std::vector<Tree>& corpus);

}  // namespace spanparse
