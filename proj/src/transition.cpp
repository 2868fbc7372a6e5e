#include "spanparse/transition.hpp"

#include <cassert>
#include <sstream>

#include "spanparse/error.hpp"

namespace spanparse {

std::string action_to_string(const Action& a) {
  switch (a.kind) {
    case ActionKind::Shift: return "SH";
    case ActionKind::Combine: return "COMB";
    case ActionKind::NoLabel: return "NOLABEL";
    case ActionKind::Label: return "LABEL " + join_chain(a.chain);
  }
  return "";
}

Action action_from_string(const std::string& line) {
  if (line == "SH") return Action::shift();
  if (line == "COMB") return Action::combine();
  if (line == "NOLABEL") return Action::nolabel();
  if (line.rfind("LABEL ", 0) == 0) return Action::label(line.substr(6));
  throw DataError("unrecognized action: '" + line + "'");
}

std::string actions_to_trace(const std::vector<Action>& actions) {
  std::string out;
  for (const Action& a : actions) {
    out += action_to_string(a);
    out += '\n';
  }
  return out;
}

Configuration initial(int n) {
  if (n < 1) throw DataError("sentence length must be at least 1");
  Configuration c;
  c.z = 0;
  c.sigma = {0};
  c.n = n;
  return c;
}

bool is_final(const Configuration& c) { return c.z == 4 * c.n - 2; }

LegalActions legal_actions(const Configuration& c) {
  if (is_final(c)) throw Error("legal_actions called on final configuration");
  LegalActions la;
  if (c.z % 2 == 0) {
    la.shift = c.sigma.back() < c.n;
    la.combine = c.sigma.size() >= 3;
  } else {
    la.label = true;
    la.nolabel = c.z < 4 * c.n - 3;
  }
  return la;
}

Configuration apply(const Configuration& c, const Action& a) {
  LegalActions la = legal_actions(c);
  if (!la.allows(a))
    throw Error("illegal action " + action_to_string(a) + " at step " +
                std::to_string(c.z));
  Configuration out = c;
  out.z = c.z + 1;
  switch (a.kind) {
    case ActionKind::Shift:
      out.sigma.push_back(c.sigma.back() + 1);
      break;
    case ActionKind::Combine:
      out.sigma.erase(out.sigma.end() - 2);
      break;
    case ActionKind::Label: {
      if (a.chain.empty()) throw Error("label action with empty chain");
      Span s = c.top_span();
      assert(!out.label_order.count(s));  // one labeling opportunity per span
      for (const std::string& part : a.chain)
        out.t.insert(Bracket{part, s.i, s.j});
      out.label_order[s] = a.chain;
      break;
    }
    case ActionKind::NoLabel:
      break;
  }
  return out;
}

namespace {

int argmax_tiebreak_low(const std::vector<float>& scores,
                        const std::vector<bool>& allowed) {
  int best = -1;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    if (!allowed[k]) continue;
    if (best < 0 || scores[k] > scores[best]) best = static_cast<int>(k);
  }
  return best;
}

}  // namespace

DecodeResult decode(const std::vector<Token>& tokens, ActionScorer& scorer,
                    const LabelInventory& inventory) {
  const int n = static_cast<int>(tokens.size());
  Configuration c = initial(n);
  std::vector<Action> trace;
  trace.reserve(4 * n - 2);
  while (!is_final(c)) {
    LegalActions la = legal_actions(c);
    Action chosen = Action::shift();
    if (c.z % 2 == 0) {
      std::vector<float> s = scorer.score_structural(c);
      int pick = argmax_tiebreak_low(s, {la.shift, la.combine});
      chosen = pick == 0 ? Action::shift() : Action::combine();
    } else {
      std::vector<float> s = scorer.score_label(c);
      std::vector<bool> allowed(s.size(), true);
      allowed[0] = la.nolabel;
      int pick = argmax_tiebreak_low(s, allowed);
      chosen = pick == 0 ? Action::nolabel()
                         : Action::label(inventory.label_of(pick - 1));
    }
    c = apply(c, chosen);
    trace.push_back(std::move(chosen));
  }
  return DecodeResult{assemble_tree(c.label_order, tokens), std::move(trace)};
}

}  // namespace spanparse
