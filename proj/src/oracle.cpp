#include "spanparse/oracle.hpp"

#include <algorithm>
#include <cassert>

#include "spanparse/error.hpp"

namespace spanparse {

// ---------------------------------------------------------------------------
// GoldTreeIndex

GoldTreeIndex::GoldTreeIndex(const Tree& gold) {
  build(tree_to_span_chains(gold), gold.num_leaves());
}

GoldTreeIndex::GoldTreeIndex(const SpanChains& chains, int n) {
  build(chains, n);
}

GoldTreeIndex::GoldTreeIndex(const BracketSet& gold, int n) {
  if (!gold.non_crossing()) throw DataError("crossing gold brackets");
  SpanChains chains;
  for (const Bracket& b : gold) chains[b.span()].push_back(b.label);
  for (auto& [span, chain] : chains) std::sort(chain.begin(), chain.end());
  build(chains, n);
}

void GoldTreeIndex::build(const SpanChains& chains, int n) {
  n_ = n;
  chains_ = chains;
  if (!chains_.count(Span{0, n}))
    throw DataError("gold brackets lack a root span (0, n)");

  // One node per bracket; chains expand outer-to-inner.
  for (const auto& [span, chain] : chains_) {
    for (std::size_t d = 0; d < chain.size(); ++d) {
      Node node;
      node.bracket = Bracket{chain[d], span.i, span.j};
      node.chain_depth = static_cast<int>(d);
      nodes_.push_back(node);
      gold_.insert(node.bracket);
    }
  }
  if (!gold_.non_crossing()) throw DataError("crossing gold brackets");

  // Parent links: chain-inner to chain-outer on the same span, then the
  // innermost label of the smallest strictly encompassing gold span.
  for (std::size_t a = 0; a < nodes_.size(); ++a) {
    Node& node = nodes_[a];
    if (node.chain_depth > 0) {
      node.parent = static_cast<int>(a) - 1;  // chains are contiguous
      continue;
    }
    int best = -1;
    for (std::size_t b = 0; b < nodes_.size(); ++b) {
      if (a == b) continue;
      const Bracket& cand = nodes_[b].bracket;
      const Bracket& self = node.bracket;
      bool strict = cand.i <= self.i && self.j <= cand.j &&
                    !(cand.i == self.i && cand.j == self.j);
      if (!strict) continue;
      if (best < 0) {
        best = static_cast<int>(b);
        continue;
      }
      const Bracket& cur = nodes_[best].bracket;
      bool narrower = cand.j - cand.i < cur.j - cur.i;
      bool same_span_deeper = cand.i == cur.i && cand.j == cur.j &&
                              nodes_[b].chain_depth > nodes_[best].chain_depth;
      if (narrower || same_span_deeper) best = static_cast<int>(b);
    }
    node.parent = best;
  }

  left_boundary_index_.assign(n + 1, {});
  for (std::size_t a = 0; a < nodes_.size(); ++a)
    left_boundary_index_[nodes_[a].bracket.i].push_back(static_cast<int>(a));
  for (auto& list : left_boundary_index_) {
    std::sort(list.begin(), list.end(), [this](int a, int b) {
      const Bracket& x = nodes_[a].bracket;
      const Bracket& y = nodes_[b].bracket;
      if (x.j != y.j) return x.j < y.j;
      return nodes_[a].chain_depth > nodes_[b].chain_depth;  // inner first
    });
  }

  const auto& root_chain = chains_.at(Span{0, n});
  for (std::size_t a = 0; a < nodes_.size(); ++a) {
    const Node& node = nodes_[a];
    if (node.bracket.i == 0 && node.bracket.j == n &&
        node.chain_depth == static_cast<int>(root_chain.size()) - 1)
      root_inner_ = static_cast<int>(a);
  }
}

const std::vector<std::string>* GoldTreeIndex::chain_at(int i, int j) const {
  auto it = chains_.find(Span{i, j});
  return it == chains_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// reach / t_star

namespace {

bool on_stack(const std::vector<int>& sigma, int p) {
  return std::binary_search(sigma.begin(), sigma.end(), p);
}

}  // namespace

BracketSet reach(const Configuration& c, const GoldTreeIndex& idx) {
  BracketSet out;
  if (!c.has_top_span()) {
    for (const Bracket& b : idx.brackets())
      if (!c.t.contains(b)) out.insert(b);
    return out;
  }
  const Span top = c.top_span();
  const bool strict = c.z % 2 == 0;
  for (const Bracket& b : idx.brackets()) {
    if (c.t.contains(b)) continue;
    if (b.i >= top.j) {  // right(c): entirely on the queue
      out.insert(b);
      continue;
    }
    bool encompasses = b.i <= top.i && top.j <= b.j;
    if (strict && b.i == top.i && b.j == top.j) encompasses = false;
    if (encompasses && on_stack(c.sigma, b.i)) out.insert(b);
  }
  return out;
}

BracketSet t_star(const Configuration& c, const GoldTreeIndex& idx) {
  BracketSet out = c.t;
  for (const Bracket& b : reach(c, idx)) out.insert(b);
  return out;
}

// ---------------------------------------------------------------------------
// OracleState: lazy next(c) with parent tracing and path compression

namespace {

// Innermost member of left(c) at even z, computed from scratch.
int direct_next(const Configuration& c, const GoldTreeIndex& idx) {
  if (!c.has_top_span()) return -1;
  const Span top = c.top_span();
  int best = -1;
  const auto& nodes = idx.nodes();
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    const Bracket& b = nodes[a].bracket;
    bool strict = b.i <= top.i && top.j <= b.j && !(b.i == top.i && b.j == top.j);
    if (!strict || !on_stack(c.sigma, b.i) || c.t.contains(b)) continue;
    if (best < 0) {
      best = static_cast<int>(a);
      continue;
    }
    const Bracket& cur = nodes[best].bracket;
    bool narrower = b.j - b.i < cur.j - cur.i;
    bool same_span_deeper = b.i == cur.i && b.j == cur.j &&
                            nodes[a].chain_depth > nodes[best].chain_depth;
    if (narrower || same_span_deeper) best = static_cast<int>(a);
  }
  return best;
}

}  // namespace

OracleState::OracleState(const GoldTreeIndex& idx, const Configuration& c)
    : idx_(&idx), skip_(idx.nodes().size(), -1) {
  // Mid-trajectory attachment needs a correct starting candidate; from the
  // initial configuration the first query finds it through the boundary
  // index.
  cursor_ = direct_next(c, idx);
}

bool OracleState::valid(int node, const Configuration& c) const {
  if (node < 0) return false;
  const Bracket& b = idx_->nodes()[node].bracket;
  const Span top = c.top_span();
  if (!(b.i <= top.i && top.j <= b.j)) return false;
  if (b.i == top.i && b.j == top.j) return false;  // strict at even z
  if (!on_stack(c.sigma, b.i)) return false;
  return !c.t.contains(b);
}

int OracleState::trace_up(int node, const Configuration& c) {
  std::vector<int> path;
  while (node >= 0 && !valid(node, c)) {
    path.push_back(node);
    int up = skip_[node] >= 0 ? skip_[node] : idx_->nodes()[node].parent;
    ++traversal_count_;
    node = up;
  }
  for (int dead : path) skip_[dead] = node;
  return node;
}

Bracket OracleState::next_bracket(const Configuration& c) {
  assert(c.z % 2 == 0);
  if (!c.has_top_span()) throw Error("next_bracket: no top span");
  const Span top = c.top_span();

  int traced = trace_up(cursor_, c);

  // A shift may move the minimum inward, to a bracket starting exactly at
  // the new top's left boundary; the boundary index finds it directly.
  int inward = -1;
  for (int cand : idx_->starting_at(top.i)) {
    if (idx_->nodes()[cand].bracket.j > top.j) {
      inward = cand;
      break;
    }
  }

  int chosen = traced;
  if (inward >= 0) {
    assert(valid(inward, c));
    if (chosen < 0) {
      chosen = inward;
    } else {
      const Bracket& bi = idx_->nodes()[inward].bracket;
      const Bracket& bt = idx_->nodes()[chosen].bracket;
      bool tighter = bi.i >= bt.i && bi.j <= bt.j;
      if (tighter) chosen = inward;
    }
  }
  if (chosen < 0)
    throw Error("next_bracket: left(c) is empty; remaining gold brackets "
                "are on the queue");
  cursor_ = chosen;
  return idx_->nodes()[chosen].bracket;
}

// ---------------------------------------------------------------------------
// dyna

namespace {

LegalActions structural_cases(const Configuration& c, const Bracket& next) {
  const Span top = c.top_span();
  LegalActions la = legal_actions(c);
  LegalActions out;
  // p = i and q = j cannot occur: next strictly encompasses the top span.
  assert(!(next.i == top.i && next.j == top.j));
  out.shift = next.j > top.j && la.shift;
  out.combine = next.i < top.i && la.combine;
  return out;
}

}  // namespace

LegalActions dyna_structural(const Configuration& c, OracleState& state) {
  assert(c.z % 2 == 0 && !is_final(c));
  if (!c.has_top_span()) {
    LegalActions out;
    out.shift = true;  // dyna(<0, [0], {}>) = {sh}
    return out;
  }
  return structural_cases(c, state.next_bracket(c));
}

LegalActions dyna_structural_direct(const Configuration& c,
                                    const GoldTreeIndex& idx) {
  assert(c.z % 2 == 0 && !is_final(c));
  if (!c.has_top_span()) {
    LegalActions out;
    out.shift = true;
    return out;
  }
  int node = direct_next(c, idx);
  if (node < 0) throw Error("next_bracket: left(c) is empty");
  return structural_cases(c, idx.nodes()[node].bracket);
}

Action dyna_label(const Configuration& c, const GoldTreeIndex& idx) {
  assert(c.z % 2 == 1);
  const Span top = c.top_span();
  const auto* chain = idx.chain_at(top.i, top.j);
  if (chain) return Action::label(*chain);
  if (c.z == 4 * c.n - 3) {
    // Unreachable for well-formed gold (the root span is always labeled);
    // guards exploration over corrupted fixtures.
    const auto& fallback = idx.nodes()[idx.root_node()].bracket.label;
    return Action::label(std::vector<std::string>{fallback});
  }
  return Action::nolabel();
}

std::vector<Action> dyna(const Configuration& c, OracleState& state) {
  std::vector<Action> out;
  if (c.z % 2 == 0) {
    LegalActions la = dyna_structural(c, state);
    if (la.shift) out.push_back(Action::shift());
    if (la.combine) out.push_back(Action::combine());
  } else {
    out.push_back(dyna_label(c, state.index()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Static oracle

namespace {

void emit_actions(const Tree& node, const SpanChains& chains,
                  std::vector<Action>& out) {
  auto label_decision = [&](Span s) {
    auto it = chains.find(s);
    if (it != chains.end())
      out.push_back(Action::label(it->second));
    else
      out.push_back(Action::nolabel());
  };

  if (node.is_leaf()) {
    out.push_back(Action::shift());
    label_decision(node.span());
    return;
  }
  for (std::size_t k = 0; k < node.children().size(); ++k) {
    emit_actions(node.children()[k], chains, out);
    if (k > 0) {
      // Short-stack rule: merge with the accumulated left siblings as soon
      // as this child is complete.
      out.push_back(Action::combine());
      label_decision(Span{node.begin(), node.children()[k].end()});
    }
  }
}

}  // namespace

std::vector<Action> static_oracle(const Tree& gold) {
  if (gold.is_leaf())
    throw DataError("static_oracle: gold tree has no labeled root");
  SpanChains chains = tree_to_span_chains(gold);
  std::vector<Action> out;
  emit_actions(gold, chains, out);
  assert(static_cast<int>(out.size()) == 4 * gold.num_leaves() - 2);
  return out;
}

}  // namespace spanparse
