#include "spanparse/verify.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <sstream>
#include <unordered_set>

#include "spanparse/error.hpp"

namespace spanparse {

// ---------------------------------------------------------------------------
// CompletionAnalysis

CompletionAnalysis::CompletionAnalysis(const GoldTreeIndex& idx,
                                       const LabelInventory& inventory)
    : idx_(&idx), inventory_(&inventory), n_(idx.n()) {
  if (n_ > 6)
    throw Error("enumeration guard: sentence length " + std::to_string(n_) +
                " exceeds 6");
  if (inventory.size() > 4)
    throw Error("enumeration guard: inventory size " +
                std::to_string(inventory.size()) + " exceeds 4");
  for (const std::string& chain : inventory.labels())
    for (const std::string& part : split_chain(chain))
      if (!part_ids_.count(part)) {
        part_ids_.emplace(part, static_cast<int>(parts_.size()));
        parts_.push_back(part);
      }
  for (const auto& node : idx.nodes())
    if (!part_ids_.count(node.bracket.label)) {
      part_ids_.emplace(node.bracket.label, static_cast<int>(parts_.size()));
      parts_.push_back(node.bracket.label);
    }
  const int spans = n_ * (n_ + 1) / 2;
  if (spans * static_cast<int>(parts_.size()) > 192)
    throw Error("enumeration guard: state space too large to pack");
}

int CompletionAnalysis::bracket_bit(const Bracket& b) const {
  // Span index over i < j <= n, row-major by i.
  int span_index = 0;
  for (int i = 0; i < b.i; ++i) span_index += n_ - i;
  span_index += b.j - b.i - 1;
  return span_index * static_cast<int>(parts_.size()) +
         part_ids_.at(b.label);
}

CompletionAnalysis::Key CompletionAnalysis::state_key(
    const Configuration& c) const {
  Key key{0, 0, 0, 0};
  for (int boundary : c.sigma)
    if (boundary > 0) key[0] |= 1ull << (boundary - 1);
  if (c.z % 2) key[0] |= 1ull << 63;
  for (const Bracket& b : c.t) {
    int bit = bracket_bit(b);
    key[1 + bit / 64] |= 1ull << (bit % 64);
  }
  return key;
}

std::vector<Action> CompletionAnalysis::candidate_actions(
    const Configuration& c) const {
  LegalActions la = legal_actions(c);
  std::vector<Action> out;
  if (c.z % 2 == 0) {
    if (la.shift) out.push_back(Action::shift());
    if (la.combine) out.push_back(Action::combine());
  } else {
    if (la.nolabel) out.push_back(Action::nolabel());
    for (const std::string& chain : inventory_->labels())
      out.push_back(Action::label(chain));
  }
  return out;
}

const CompletionAnalysis::Best& CompletionAnalysis::best_from(
    const Configuration& c) {
  Key key = state_key(c);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  Best best;
  if (is_final(c)) {
    const std::size_t m = c.t.intersection_size(idx_->brackets());
    const std::size_t g = idx_->brackets().size();
    best.f1 = Fraction{std::int64_t(2 * m), std::int64_t(c.t.size() + g)};
    best.recall = Fraction{std::int64_t(m), std::int64_t(g)};
    best.precision = Fraction{std::int64_t(m), std::int64_t(c.t.size())};
    best.argmax = {c.t};
  } else {
    bool first = true;
    for (const Action& a : candidate_actions(c)) {
      const Best& child = best_from(apply(c, a));
      if (first || child.recall > best.recall) best.recall = child.recall;
      if (first || child.precision > best.precision)
        best.precision = child.precision;
      if (first || child.f1 > best.f1) {
        best.f1 = child.f1;
        best.argmax = child.argmax;
      } else if (child.f1 == best.f1) {
        for (const BracketSet& t : child.argmax) {
          if (best.argmax.size() >= 2) break;
          if (std::find(best.argmax.begin(), best.argmax.end(), t) ==
              best.argmax.end())
            best.argmax.push_back(t);
        }
      }
      first = false;
    }
  }
  return memo_.emplace(key, std::move(best)).first->second;
}

std::pair<Fraction, std::vector<BracketSet>> brute_force_best_f1(
    const Configuration& c, const GoldTreeIndex& gold,
    const LabelInventory& labels) {
  CompletionAnalysis analysis(gold, labels);
  const auto& best = analysis.best_from(c);
  return {best.f1, best.argmax};
}

// ---------------------------------------------------------------------------
// Property suite

namespace {

enum Property {
  kOptimality = 0,
  kTheorem1,
  kCorollary1,
  kLemma1,
  kLabelReach,
  kTstarPreserved,
  kLemma2,
  kStaticOnPath,
  kTraversalBound,
  kNumProperties,
};

const char* kPropertyNames[kNumProperties] = {
    "optimality",  "theorem-1",       "corollary-1",
    "lemma-1",     "label-reach",     "tstar-preserved",
    "lemma-2",     "static-on-path",  "traversal-bound",
};

struct Verifier {
  const VerifyOptions& options;
  VerifyReport& report;

  const Tree* gold = nullptr;
  const GoldTreeIndex* idx = nullptr;
  const LabelInventory* inventory = nullptr;
  CompletionAnalysis* analysis = nullptr;
  std::vector<Action> path;  // actions from the initial configuration

  void fail(Property p, const std::string& what) {
    auto& stats = report.properties[p];
    ++stats.violations;
    if (report.first_counterexample.empty()) {
      std::ostringstream out;
      out << stats.name << " violated: " << what << "\n";
      out << "sentence: " << write_tree(*gold) << "\n";
      out << "action trace from the initial configuration:\n"
          << actions_to_trace(path);
      report.first_counterexample = out.str();
    }
  }

  void pass(Property p) { ++report.properties[p].checked; }

  void check(Property p, bool ok, const std::string& what) {
    pass(p);
    if (!ok) fail(p, what);
  }

  // The oracle action set at c; the mutation hook misreports the
  // shift-only case of the structural oracle as combine-only.
  std::vector<Action> oracle_set(const Configuration& c) const {
    if (c.z % 2 == 1) return {dyna_label(c, *idx)};
    LegalActions la = dyna_structural_direct(c, *idx);
    if (options.corrupt_case1 && la.shift && !la.combine && c.has_top_span()) {
      LegalActions legal = legal_actions(c);
      la.shift = false;
      la.combine = legal.combine;
      if (!la.combine) la.shift = true;  // keep the set nonempty
    }
    std::vector<Action> out;
    if (la.shift) out.push_back(Action::shift());
    if (la.combine) out.push_back(Action::combine());
    return out;
  }

  static bool same_action_set(std::vector<Action> a, std::vector<Action> b) {
    auto key = [](const Action& x) { return action_to_string(x); };
    std::sort(a.begin(), a.end(), [&](const Action& x, const Action& y) {
      return key(x) < key(y);
    });
    std::sort(b.begin(), b.end(), [&](const Action& x, const Action& y) {
      return key(x) < key(y);
    });
    return a == b;
  }

  // Greedy rollout following the oracle from c; prefer_combine picks the
  // combine member when the structural oracle returns both actions.
  BracketSet rollout(Configuration c, bool prefer_combine) {
    OracleState state(*idx, c);
    while (!is_final(c)) {
      Action a = Action::shift();
      if (c.z % 2 == 0) {
        LegalActions la = dyna_structural(c, state);
        if (la.shift && la.combine)
          a = prefer_combine ? Action::combine() : Action::shift();
        else
          a = la.combine ? Action::combine() : Action::shift();
      } else {
        a = dyna_label(c, *idx);
      }
      c = apply(c, a);
    }
    return c.t;
  }

  void check_configuration(const Configuration& c) {
    ++report.configurations;
    const auto& best = analysis->best_from(c);
    const BracketSet tstar = t_star(c, *idx);

    {  // Theorem 1: t* attains the maximum F1, recall and precision.
      F1Report f = parseval(tstar, idx->brackets());
      bool ok = f.f1_exact() == best.f1 && f.recall_exact() == best.recall &&
                f.precision_exact() == best.precision;
      check(kTheorem1, ok, "F1/recall/precision of t*(c) do not attain the "
                           "enumerated maxima");
    }

    // Corollary 1: every other final tree scores strictly lower.
    check(kCorollary1, best.argmax.size() == 1 && best.argmax[0] == tstar,
          "a final tree different from t*(c) attains the maximum F1");

    if (is_final(c)) return;

    const std::vector<Action> oracle_actions = oracle_set(c);
    {  // Optimality: dyna equals the arg-max action set.
      std::vector<Action> argmax;
      for (const Action& a : analysis->candidate_actions(c))
        if (analysis->best_from(apply(c, a)).f1 == best.f1)
          argmax.push_back(a);
      check(kOptimality, same_action_set(oracle_actions, argmax),
            "dyna(c) differs from the set of actions preserving best F1");
    }

    const BracketSet reach_here = reach(c, *idx);
    for (const Action& a : analysis->candidate_actions(c)) {
      Configuration next = apply(c, a);
      bool in_oracle = false;
      for (const Action& o : oracle_actions)
        if (o == a) in_oracle = true;

      // t* preservation at every parity (both directions).
      BracketSet tstar_next = t_star(next, *idx);
      check(kTstarPreserved, (tstar_next == tstar) == in_oracle,
            "t*(a(c)) = t*(c) disagrees with membership of a in dyna(c)");

      if (c.z % 2 == 0) {
        // Lemma 1: oracle structural actions preserve reach exactly;
        // non-oracle ones strictly shrink it.
        BracketSet reach_next = reach(next, *idx);
        bool ok;
        if (in_oracle) {
          ok = reach_next == reach_here;
        } else {
          ok = reach_next.size() < reach_here.size();
          for (const Bracket& b : reach_next)
            if (!reach_here.contains(b)) ok = false;
        }
        check(kLemma1, ok, "reach law for structural action " +
                               action_to_string(a));
      } else if (in_oracle) {
        // The label oracle removes exactly the labeled chain from reach.
        BracketSet expected = reach_here;
        if (a.kind == ActionKind::Label) {
          Span top = c.top_span();
          expected = BracketSet{};
          for (const Bracket& b : reach_here)
            if (!(b.i == top.i && b.j == top.j)) expected.insert(b);
        }
        check(kLabelReach, reach(next, *idx) == expected,
              "label oracle changed reach by more than the labeled chain");
      }
    }

    // Lemma 2: greedy rollouts end in t*(c).
    check(kLemma2,
          rollout(c, false) == tstar && rollout(c, true) == tstar,
          "greedy oracle rollout did not terminate in t*(c)");
  }
};

using SeenSet = std::unordered_set<CompletionAnalysis::Key,
                                   CompletionAnalysis::KeyHash>;

// Depth-first enumeration of every configuration reachable from initial.
void enumerate_configurations(Verifier& v, const Configuration& c,
                              SeenSet& seen) {
  if (!seen.insert(v.analysis->state_key(c)).second) return;
  v.check_configuration(c);
  if (is_final(c)) return;
  for (const Action& a : v.analysis->candidate_actions(c)) {
    v.path.push_back(a);
    enumerate_configurations(v, apply(c, a), seen);
    v.path.pop_back();
  }
}

}  // namespace

std::string VerifyReport::format() const {
  std::ostringstream out;
  out << sentences << " sentences, " << configurations
      << " configurations checked";
  if (skipped) out << " (" << skipped << " skipped: inventory beyond guard)";
  out << "\n";
  for (const auto& p : properties) {
    out << "  " << p.name << ": " << p.checked << " checks, " << p.violations
        << " violations" << (p.violations ? "  [FAIL]" : "") << "\n";
  }
  if (total_steps > 0) {
    out << "  parent-link traversals: " << total_traversals << " over "
        << total_steps << " steps ("
        << double(total_traversals) / double(total_steps) << " per step)\n";
  }
  if (!first_counterexample.empty())
    out << "counterexample:\n" << first_counterexample;
  return out.str();
}

VerifyReport verify_oracle(const std::vector<Tree>& corpus,
                           const VerifyOptions& options) {
  VerifyReport report;
  report.properties.resize(kNumProperties);
  for (int p = 0; p < kNumProperties; ++p)
    report.properties[p].name = kPropertyNames[p];

  std::mt19937_64 rng(options.seed);

  // A corpus-wide inventory exposes mislabeling actions to the enumeration;
  // fall back to per-sentence inventories when it exceeds the guard.
  std::vector<Tree> in_scope;
  for (const Tree& gold : corpus)
    if (gold.num_leaves() <= options.max_len) in_scope.push_back(gold);
  LabelInventory corpus_inventory;
  if (!in_scope.empty()) corpus_inventory = build_label_inventory(in_scope);
  const bool shared_inventory = corpus_inventory.size() <= 4;

  for (const Tree& gold : in_scope) {
    const int n = gold.num_leaves();
    GoldTreeIndex idx(gold);
    LabelInventory inventory =
        shared_inventory ? corpus_inventory : build_label_inventory({gold});
    if (inventory.size() > 4) {
      ++report.skipped;
      continue;
    }
    ++report.sentences;
    CompletionAnalysis analysis(idx, inventory);

    Verifier v{options, report};
    v.gold = &gold;
    v.idx = &idx;
    v.inventory = &inventory;
    v.analysis = &analysis;

    if (n <= options.exhaustive_len) {
      SeenSet seen;
      enumerate_configurations(v, initial(n), seen);
    } else {
      // Random sample of reachable configurations from random trajectories.
      std::vector<Configuration> pool;
      std::vector<std::vector<Action>> pool_paths;
      SeenSet seen;
      while (static_cast<int>(pool.size()) < options.sampled_configs) {
        Configuration c = initial(n);
        std::vector<Action> trace;
        bool saturated = true;
        while (true) {
          if (seen.insert(analysis.state_key(c)).second) {
            pool.push_back(c);
            pool_paths.push_back(trace);
            saturated = false;
          }
          if (is_final(c)) break;
          auto actions = analysis.candidate_actions(c);
          const Action& a =
              actions[std::uniform_int_distribution<std::size_t>(
                  0, actions.size() - 1)(rng)];
          trace.push_back(a);
          c = apply(c, a);
        }
        if (saturated) break;  // trajectory space exhausted
      }
      std::vector<std::size_t> order(pool.size());
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
      std::shuffle(order.begin(), order.end(), rng);
      if (order.size() > static_cast<std::size_t>(options.sampled_configs))
        order.resize(options.sampled_configs);
      for (std::size_t k : order) {
        v.path = pool_paths[k];
        v.check_configuration(pool[k]);
      }
      v.path.clear();
    }

    // Gold-path agreement and the traversal bound on the static trajectory
    // plus random exploration trajectories.
    {
      auto actions = static_oracle(gold);
      Configuration c = initial(n);
      OracleState state(idx, c);
      for (std::size_t step = 0; step < actions.size(); ++step) {
        const Action& a = actions[step];
        if (c.z % 2 == 0) {
          LegalActions la = dyna_structural(c, state);
          bool member = (a.kind == ActionKind::Shift && la.shift) ||
                        (a.kind == ActionKind::Combine && la.combine);
          v.path.assign(actions.begin(), actions.begin() + step);
          v.check(kStaticOnPath, member,
                  "static-oracle action " + action_to_string(a) +
                      " is not in dyna(c) on the gold path");
        }
        c = apply(c, a);
      }
      long steps = 4L * n - 2;
      long bound = static_cast<long>(idx.brackets().size()) + steps;
      v.path.clear();
      v.check(kTraversalBound, state.traversal_count() <= bound,
              "gold-path traversal count exceeds |gold| + steps");
      report.total_traversals += state.traversal_count();
      report.total_steps += steps;
    }
    for (int traj = 0; traj < options.random_trajectories; ++traj) {
      Configuration c = initial(n);
      OracleState state(idx, c);
      std::vector<Action> trace;
      while (!is_final(c)) {
        if (c.z % 2 == 0 && c.has_top_span())
          state.next_bracket(c);  // oracle queried every structural step
        auto actions = analysis.candidate_actions(c);
        const Action& a = actions[std::uniform_int_distribution<std::size_t>(
            0, actions.size() - 1)(rng)];
        trace.push_back(a);
        c = apply(c, a);
      }
      long steps = 4L * n - 2;
      long bound = static_cast<long>(idx.brackets().size()) + steps;
      v.path = trace;
      v.check(kTraversalBound, state.traversal_count() <= bound,
              "exploration traversal count exceeds |gold| + steps");
      v.path.clear();
      report.total_traversals += state.traversal_count();
      report.total_steps += steps;
    }
  }
  return report;
}

}  // namespace spanparse
