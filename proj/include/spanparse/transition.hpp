#pragma once

#include <string>
#include <vector>

#include "spanparse/tree.hpp"

namespace spanparse {

enum class ActionKind { Shift, Combine, Label, NoLabel };

/// One parser action. Label actions carry the full ordered chain
/// (outermost first), which is a single atomic classifier output but
/// expands into one bracket per chain element.
struct Action {
  ActionKind kind;
  std::vector<std::string> chain;  // Label only

  static Action shift() { return {ActionKind::Shift, {}}; }
  static Action combine() { return {ActionKind::Combine, {}}; }
  static Action label(std::vector<std::string> chain) {
    return {ActionKind::Label, std::move(chain)};
  }
  static Action label(const std::string& joined) {
    return {ActionKind::Label, split_chain(joined)};
  }
  static Action nolabel() { return {ActionKind::NoLabel, {}}; }

  bool is_structural() const {
    return kind == ActionKind::Shift || kind == ActionKind::Combine;
  }
  bool operator==(const Action& o) const {
    return kind == o.kind && chain == o.chain;
  }
};

/// "SH", "COMB", "LABEL S-VP", "NOLABEL".
std::string action_to_string(const Action& a);
Action action_from_string(const std::string& line);
std::string actions_to_trace(const std::vector<Action>& actions);

/// Parser state <z, sigma, t>. The stack sigma is a strictly increasing
/// list of word boundaries starting at 0; consecutive pairs are the spans
/// on the stack. Even z takes a structural action, odd z a label action;
/// the goal is z = 4n-2 with sigma = [0, n].
struct Configuration {
  int z = 0;
  std::vector<int> sigma;
  BracketSet t;
  SpanChains label_order;  // chains recorded by label actions, for output
  int n = 0;

  /// Top span (second-to-top boundary, top boundary). Requires >= 2 entries.
  Span top_span() const {
    return {sigma[sigma.size() - 2], sigma.back()};
  }
  bool has_top_span() const { return sigma.size() >= 2; }
};

/// Axiom item <0, [0], {}>. Throws DataError when n < 1.
Configuration initial(int n);

/// True iff z = 4n-2.
bool is_final(const Configuration& c);

struct LegalActions {
  bool shift = false;
  bool combine = false;
  bool label = false;
  bool nolabel = false;

  bool allows(const Action& a) const {
    switch (a.kind) {
      case ActionKind::Shift: return shift;
      case ActionKind::Combine: return combine;
      case ActionKind::Label: return label;
      case ActionKind::NoLabel: return nolabel;
    }
    return false;
  }
};

/// Side conditions of the deductive system. Even z: shift needs the top
/// boundary < n, combine needs two spans on the stack. Odd z: label is
/// always available; nolabel is barred at the final label step (z = 4n-3)
/// because the parse must end with a root bracket.
/// Throws Error when called on a final configuration.
LegalActions legal_actions(const Configuration& c);

/// Applies one action, returning the successor configuration.
/// Throws Error on an illegal action.
Configuration apply(const Configuration& c, const Action& a);

/// Scores actions for one configuration. Implementations are bound to a
/// sentence encoding; they must be deterministic given identical inputs.
/// Structural scores are [shift, combine]; label scores have L+1 entries
/// with index 0 = nolabel and index 1+k = inventory label k.
class ActionScorer {
 public:
  virtual ~ActionScorer() = default;
  virtual std::vector<float> score_structural(const Configuration& c) = 0;
  virtual std::vector<float> score_label(const Configuration& c) = 0;
};

struct DecodeResult {
  Tree tree;
  std::vector<Action> actions;
};

/// Greedy decoding: exactly 4n-2 steps, argmax over legal actions with
/// illegal actions masked. Ties break by action id (shift before combine,
/// nolabel before labels, labels by inventory id).
DecodeResult decode(const std::vector<Token>& tokens, ActionScorer& scorer,
                    const LabelInventory& inventory);

}  // namespace spanparse
