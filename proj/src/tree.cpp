#include "spanparse/tree.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "spanparse/error.hpp"

namespace spanparse {

// ---------------------------------------------------------------------------
// BracketSet

BracketSet::BracketSet(std::vector<Bracket> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

void BracketSet::insert(const Bracket& b) {
  auto it = std::lower_bound(items_.begin(), items_.end(), b);
  if (it != items_.end() && *it == b) return;
  items_.insert(it, b);
}

bool BracketSet::contains(const Bracket& b) const {
  return std::binary_search(items_.begin(), items_.end(), b);
}

bool BracketSet::contains_span(int i, int j) const {
  auto it = std::lower_bound(
      items_.begin(), items_.end(), Span{i, j},
      [](const Bracket& b, const Span& s) {
        return b.i != s.i ? b.i < s.i : b.j < s.j;
      });
  return it != items_.end() && it->i == i && it->j == j;
}

std::size_t BracketSet::intersection_size(const BracketSet& other) const {
  std::size_t count = 0;
  auto a = items_.begin();
  auto b = other.items_.begin();
  while (a != items_.end() && b != other.items_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

bool BracketSet::non_crossing() const {
  for (std::size_t a = 0; a < items_.size(); ++a) {
    for (std::size_t b = a + 1; b < items_.size(); ++b) {
      const Bracket& x = items_[a];
      const Bracket& y = items_[b];
      bool nested = (x.i <= y.i && y.j <= x.j) || (y.i <= x.i && x.j <= y.j);
      bool disjoint = x.j <= y.i || y.j <= x.i;
      if (!nested && !disjoint) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Tree

Tree::Tree(std::string label, std::vector<Tree> children)
    : label_(std::move(label)), children_(std::move(children)) {
  assert(!children_.empty());
}

Tree::Tree(Token token) : label_(token.tag), token_(std::move(token)) {}

int Tree::assign_spans(int start) {
  span_.i = start;
  if (is_leaf()) {
    span_.j = start + 1;
    return span_.j;
  }
  int pos = start;
  for (Tree& child : children_) pos = child.assign_spans(pos);
  span_.j = pos;
  return pos;
}

int Tree::num_leaves() const {
  if (is_leaf()) return 1;
  int total = 0;
  for (const Tree& child : children_) total += child.num_leaves();
  return total;
}

std::vector<Token> Tree::tokens() const {
  std::vector<Token> out;
  if (is_leaf()) {
    out.push_back(*token_);
    return out;
  }
  for (const Tree& child : children_) {
    auto sub = child.tokens();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

bool Tree::structurally_equal(const Tree& o) const {
  if (is_leaf() != o.is_leaf() || label_ != o.label_) return false;
  if (is_leaf()) return token() == o.token();
  if (children_.size() != o.children_.size()) return false;
  for (std::size_t k = 0; k < children_.size(); ++k)
    if (!children_[k].structurally_equal(o.children_[k])) return false;
  return true;
}

std::vector<std::string> split_chain(const std::string& chain) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t dash = chain.find('-', start);
    if (dash == std::string::npos) {
      parts.push_back(chain.substr(start));
      return parts;
    }
    parts.push_back(chain.substr(start, dash - start));
    start = dash + 1;
  }
}

std::string join_chain(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += '-';
    out += parts[k];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reading

namespace {

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  explicit Lexer(const std::string& t) : text(t) {}

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      advance();
  }

  bool eof() {
    skip_space();
    return pos >= text.size();
  }

  char peek() const { return text[pos]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw TreeParseError(msg, line, col);
  }

  std::string atom() {
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
           !std::isspace(static_cast<unsigned char>(text[pos])))
      advance();
    return text.substr(start, pos - start);
  }
};

Tree parse_node(Lexer& lx) {
  lx.skip_space();
  if (lx.pos >= lx.text.size() || lx.peek() != '(') lx.fail("expected '('");
  lx.advance();  // consume '('
  lx.skip_space();
  if (lx.pos >= lx.text.size()) lx.fail("unbalanced parentheses");

  std::string label;
  if (lx.peek() != '(') label = lx.atom();  // empty-label roots: "( (S ..))"

  std::vector<Tree> children;
  std::string word;
  bool saw_word = false;
  while (true) {
    lx.skip_space();
    if (lx.pos >= lx.text.size()) lx.fail("unbalanced parentheses");
    char c = lx.peek();
    if (c == ')') {
      lx.advance();
      break;
    }
    if (c == '(') {
      if (saw_word) lx.fail("mixed word and subtree under one node");
      children.push_back(parse_node(lx));
    } else {
      if (saw_word || !children.empty())
        lx.fail("mixed word and subtree under one node");
      word = lx.atom();
      saw_word = true;
    }
  }

  if (saw_word) {
    if (label.empty()) lx.fail("preterminal with empty tag");
    return Tree(Token{word, label, {}});
  }
  if (children.empty()) lx.fail("empty tree");
  return Tree(std::move(label), std::move(children));
}

}  // namespace

std::vector<Tree> read_trees(const std::string& text) {
  Lexer lx(text);
  std::vector<Tree> trees;
  while (!lx.eof()) {
    Tree t = parse_node(lx);
    t.assign_spans(0);
    trees.push_back(std::move(t));
  }
  return trees;
}

// ---------------------------------------------------------------------------
// Writing

namespace {

void write_node(const Tree& t, std::string& out) {
  if (t.is_leaf()) {
    out += '(';
    out += t.token().tag;
    out += ' ';
    out += t.token().word;
    out += ')';
    return;
  }
  auto parts = split_chain(t.label());
  for (const auto& part : parts) {
    out += '(';
    out += part;
    out += ' ';
  }
  for (std::size_t k = 0; k < t.children().size(); ++k) {
    if (k) out += ' ';
    write_node(t.children()[k], out);
  }
  out.append(parts.size(), ')');
}

}  // namespace

std::string write_tree(const Tree& tree) {
  std::string out;
  write_node(tree, out);
  return out;
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

std::string strip_function_tag(const std::string& label) {
  if (label.empty() || label[0] == '-') return label;  // -LRB- and friends
  std::size_t cut = label.find_first_of("-=");
  return cut == std::string::npos ? label : label.substr(0, cut);
}

// Returns nullopt when the subtree vanishes (trace or emptied node).
std::optional<Tree> normalize_node(const Tree& t, const NormalizationRules& r) {
  if (t.is_leaf()) {
    if (t.token().tag == r.null_tag) return std::nullopt;
    return t;
  }
  std::vector<Tree> kids;
  for (const Tree& child : t.children()) {
    auto kept = normalize_node(child, r);
    if (kept) kids.push_back(std::move(*kept));
  }
  if (kids.empty()) return std::nullopt;
  std::string label =
      r.strip_function_tags ? strip_function_tag(t.label()) : t.label();
  return Tree(std::move(label), std::move(kids));
}

}  // namespace

Tree normalize(const Tree& tree, const NormalizationRules& rules) {
  auto result = normalize_node(tree, rules);
  if (!result) throw DataError("tree is empty after normalization");
  // Drop a singleton root wrapper (configured label or the empty label that
  // PTB-style "( (S ...))" roots produce).
  while (!result->is_leaf() && result->children().size() == 1 &&
         (result->label() == rules.root_wrapper || result->label().empty()) &&
         !result->children()[0].is_leaf()) {
    Tree inner = result->children()[0];
    result = std::move(inner);
  }
  result->assign_spans(0);
  return *result;
}

Tree collapse_unaries(const Tree& tree) {
  if (tree.is_leaf()) return tree;
  std::string label = tree.label();
  const Tree* node = &tree;
  while (node->children().size() == 1 && !node->children()[0].is_leaf()) {
    node = &node->children()[0];
    label += '-';
    label += node->label();
  }
  std::vector<Tree> kids;
  kids.reserve(node->children().size());
  for (const Tree& child : node->children())
    kids.push_back(collapse_unaries(child));
  Tree out(std::move(label), std::move(kids));
  out.assign_spans(tree.begin());
  return out;
}

// ---------------------------------------------------------------------------
// Bracket conversions

namespace {

void collect_brackets(const Tree& t, BracketSet& out) {
  if (t.is_leaf()) return;
  for (const auto& part : split_chain(t.label()))
    out.insert(Bracket{part, t.begin(), t.end()});
  for (const Tree& child : t.children()) collect_brackets(child, out);
}

void collect_chains(const Tree& t, SpanChains& out) {
  if (t.is_leaf()) return;
  auto parts = split_chain(t.label());
  auto& chain = out[t.span()];
  chain.insert(chain.end(), parts.begin(), parts.end());
  for (const Tree& child : t.children()) collect_chains(child, out);
}

}  // namespace

BracketSet tree_to_brackets(const Tree& tree) {
  BracketSet out;
  collect_brackets(tree, out);
  return out;
}

SpanChains tree_to_span_chains(const Tree& tree) {
  SpanChains out;
  collect_chains(tree, out);
  return out;
}

namespace {

struct SpanEntry {
  Span span;
  const std::vector<std::string>* chain;
};

// Builds the subtree covering entries[begin..) nested inside `cover`,
// consuming tokens for uncovered positions.
std::vector<Tree> build_children(const std::vector<SpanEntry>& entries,
                                 std::size_t& next, Span cover,
                                 const std::vector<Token>& tokens) {
  std::vector<Tree> kids;
  int pos = cover.i;
  while (pos < cover.j) {
    if (next < entries.size() && entries[next].span.i == pos &&
        entries[next].span.j <= cover.j) {
      SpanEntry e = entries[next];
      ++next;
      std::vector<Tree> inner = build_children(entries, next, e.span, tokens);
      Tree node(join_chain(*e.chain), std::move(inner));
      node.assign_spans(e.span.i);
      kids.push_back(std::move(node));
      pos = e.span.j;
    } else {
      if (next < entries.size() && entries[next].span.i < pos)
        throw DataError("crossing brackets");
      kids.push_back(Tree(tokens[pos]));
      ++pos;
    }
  }
  return kids;
}

}  // namespace

Tree assemble_tree(const SpanChains& chains, const std::vector<Token>& tokens) {
  const int n = static_cast<int>(tokens.size());
  if (n == 0) throw DataError("cannot assemble a tree over zero tokens");
  auto root_it = chains.find(Span{0, n});
  if (root_it == chains.end())
    throw DataError("no bracket covers the whole sentence");

  std::vector<SpanEntry> entries;
  entries.reserve(chains.size());
  for (const auto& [span, chain] : chains) {
    if (span.i < 0 || span.j > n || span.i >= span.j)
      throw DataError("bracket span out of range");
    if (chain.empty()) continue;
    entries.push_back(SpanEntry{span, &chain});
  }
  // Sort outermost-first: by left boundary, wider spans first.
  std::sort(entries.begin(), entries.end(),
            [](const SpanEntry& a, const SpanEntry& b) {
              if (a.span.i != b.span.i) return a.span.i < b.span.i;
              return a.span.j > b.span.j;
            });
  for (std::size_t a = 0; a + 1 < entries.size(); ++a) {
    const Span x = entries[a].span;
    const Span y = entries[a + 1].span;
    bool nested = x.i <= y.i && y.j <= x.j;
    bool disjoint = y.i >= x.j;
    if (!nested && !disjoint) throw DataError("crossing brackets");
  }

  std::size_t next = 0;
  SpanEntry root = entries[next];
  ++next;
  std::vector<Tree> kids = build_children(entries, next, root.span, tokens);
  Tree out(join_chain(*root.chain), std::move(kids));
  out.assign_spans(0);
  return out;
}

Tree brackets_to_tree(const BracketSet& brackets,
                      const std::vector<Token>& tokens) {
  SpanChains chains;
  for (const Bracket& b : brackets) chains[b.span()].push_back(b.label);
  for (auto& [span, chain] : chains) std::sort(chain.begin(), chain.end());
  return assemble_tree(chains, tokens);
}

// ---------------------------------------------------------------------------
// Label inventory

int LabelInventory::add(const std::string& label) {
  auto it = ids_.find(label);
  if (it != ids_.end()) return it->second;
  int id = static_cast<int>(labels_.size());
  labels_.push_back(label);
  ids_.emplace(label, id);
  return id;
}

int LabelInventory::id_of(const std::string& label) const {
  auto it = ids_.find(label);
  return it == ids_.end() ? -1 : it->second;
}

namespace {

void add_labels_postorder(const Tree& t, LabelInventory& inv) {
  if (t.is_leaf()) return;
  for (const Tree& child : t.children()) add_labels_postorder(child, inv);
  inv.add(t.label());
}

}  // namespace

LabelInventory build_label_inventory(const std::vector<Tree>& corpus) {
  if (corpus.empty()) throw DataError("empty corpus");
  LabelInventory inv;
  for (const Tree& t : corpus) add_labels_postorder(t, inv);
  return inv;
}

}  // namespace spanparse
