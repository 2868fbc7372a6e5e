#pragma once

#include <optional>
#include <vector>

#include "spanparse/transition.hpp"
#include "spanparse/tree.hpp"

namespace spanparse {

/// Gold brackets with parent links and per-boundary start lists, the
/// structure behind the amortized-constant-time next-bracket maintenance.
///
/// Parent of a bracket is the smallest gold bracket strictly encompassing
/// its span; within a same-span chain the inner member's parent is the
/// outer one, so parent tracing walks inner-to-outer then outward.
class GoldTreeIndex {
 public:
  struct Node {
    Bracket bracket;
    int parent = -1;      // index into nodes(), -1 for the root
    int chain_depth = 0;  // 0 = outermost label on this span
  };

  /// Builds from a normalized, collapsed gold tree.
  explicit GoldTreeIndex(const Tree& gold);

  /// Builds from per-span ordered chains (outermost first).
  GoldTreeIndex(const SpanChains& chains, int n);

  /// Builds from a plain bracket set; same-span labels are ordered
  /// lexicographically. Throws DataError on crossing brackets or a
  /// missing (0, n) root span.
  GoldTreeIndex(const BracketSet& gold, int n);

  int n() const { return n_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const BracketSet& brackets() const { return gold_; }

  /// Ordered label chain at (i, j), or nullptr when the span is unlabeled.
  const std::vector<std::string>* chain_at(int i, int j) const;

  /// Node ids of brackets whose span starts at boundary p, innermost
  /// first (narrower spans first, chain-inner before chain-outer).
  const std::vector<int>& starting_at(int p) const {
    return left_boundary_index_[p];
  }

  /// Innermost node on the root's ancestor chain of the whole sentence,
  /// i.e. the innermost label of the (0, n) chain.
  int root_node() const { return root_inner_; }

 private:
  void build(const SpanChains& chains, int n);

  std::vector<Node> nodes_;
  BracketSet gold_;
  SpanChains chains_;
  std::vector<std::vector<int>> left_boundary_index_;
  int root_inner_ = -1;
  int n_ = 0;
};

/// Reachable gold brackets (left ∪ right) for a configuration:
/// left(c) are gold brackets encompassing the top span (strictly at even z,
/// non-strictly at odd z) whose left boundary lies on the stack; right(c)
/// are gold brackets entirely at or beyond the top boundary. Brackets
/// already in c.t are excluded. For the initial configuration this is the
/// whole gold set.
BracketSet reach(const Configuration& c, const GoldTreeIndex& idx);

/// t*(c) = c.t ∪ reach(c): the best tree obtainable from c.
BracketSet t_star(const Configuration& c, const GoldTreeIndex& idx);

/// Per-trajectory cursor for next(c) maintenance. The cursor advances
/// along parent links only when its candidate has been crossed, labeled,
/// or otherwise invalidated; dead nodes keep a skip pointer so repeated
/// queries never rewalk a compressed path. traversal_count counts every
/// link followed and stays within |gold| + steps per trajectory.
class OracleState {
 public:
  /// Attach to a trajectory at configuration c (usually the initial one).
  OracleState(const GoldTreeIndex& idx, const Configuration& c);

  /// Smallest bracket of left(c) under the encompassing order, for the
  /// current top span at even z. Throws Error when left(c) is empty,
  /// which signals that all remaining gold brackets are on the queue.
  Bracket next_bracket(const Configuration& c);

  long traversal_count() const { return traversal_count_; }
  const GoldTreeIndex& index() const { return *idx_; }

 private:
  bool valid(int node, const Configuration& c) const;
  int trace_up(int node, const Configuration& c);

  const GoldTreeIndex* idx_;
  int cursor_ = -1;
  std::vector<int> skip_;   // dead node -> last known live ancestor
  long traversal_count_ = 0;
};

/// Structural dynamic oracle (even z). With <X,p,q> = next(c):
/// {shift} if p = i and q > j; {combine} if p < i and q = j; both if
/// p < i and q > j; intersected with the legal actions. The initial
/// configuration maps to {shift}.
LegalActions dyna_structural(const Configuration& c, OracleState& state);

/// Reach-based variant used for verification: recomputes next(c) from
/// scratch instead of using a cursor.
LegalActions dyna_structural_direct(const Configuration& c,
                                    const GoldTreeIndex& idx);

/// Label dynamic oracle (odd z): the full gold chain at the top span if
/// one exists, otherwise nolabel. At the forced final step a gold tree
/// always has a root chain; the fallback label guards corrupt input.
Action dyna_label(const Configuration& c, const GoldTreeIndex& idx);

/// Full oracle action set at c, as a list (tie order: shift, combine,
/// label, nolabel).
std::vector<Action> dyna(const Configuration& c, OracleState& state);

/// Static oracle: the unique 4n-2 action sequence under the short-stack
/// rule (combine as soon as both structural actions stay on the gold
/// path). Replaying it reproduces tree_to_brackets(gold) exactly.
std::vector<Action> static_oracle(const Tree& gold);

}  // namespace spanparse
