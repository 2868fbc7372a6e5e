#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "spanparse/metrics.hpp"
#include "spanparse/oracle.hpp"
#include "spanparse/transition.hpp"

namespace spanparse {

/// Exhaustive enumeration of the completion space below a configuration,
/// with memoized per-configuration maxima of F1, recall and precision and
/// the set of maximizing final trees (tracked up to two distinct trees,
/// enough to witness non-uniqueness).
///
/// Guarded: refuses sentences longer than 6 words or inventories with more
/// than 4 label actions, and any combination whose packed state would not
/// fit the memo key.
class CompletionAnalysis {
 public:
  CompletionAnalysis(const GoldTreeIndex& idx, const LabelInventory& inventory);

  struct Best {
    Fraction f1;
    Fraction recall;
    Fraction precision;
    std::vector<BracketSet> argmax;  // distinct maximizers, capped at 2
  };

  const Best& best_from(const Configuration& c);

  /// Every action legal at c, label actions drawn from the inventory.
  std::vector<Action> candidate_actions(const Configuration& c) const;

  using Key = std::array<std::uint64_t, 4>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = 0xcbf29ce484222325ull;
      for (std::uint64_t w : k) h = (h ^ w) * 0x100000001b3ull;
      return h;
    }
  };

  /// Canonical packed (sigma, parity, t) state; two configurations with
  /// equal keys have identical completion spaces.
  Key state_key(const Configuration& c) const;

  const GoldTreeIndex& index() const { return *idx_; }
  const LabelInventory& inventory() const { return *inventory_; }
  std::size_t memo_size() const { return memo_.size(); }

 private:
  int bracket_bit(const Bracket& b) const;

  const GoldTreeIndex* idx_;
  const LabelInventory* inventory_;
  std::vector<std::string> parts_;                  // single labels
  std::unordered_map<std::string, int> part_ids_;
  std::unordered_map<Key, Best, KeyHash> memo_;
  int n_ = 0;
};

/// Maximum F1 achievable from c plus all maximizing final trees, by
/// exhaustive enumeration. The test oracle for the dynamic oracle.
/// Throws Error when the guard (n <= 6, |labels| <= 4) is exceeded.
std::pair<Fraction, std::vector<BracketSet>> brute_force_best_f1(
    const Configuration& c, const GoldTreeIndex& gold,
    const LabelInventory& labels);

// ---------------------------------------------------------------------------
// Property suite

struct VerifyOptions {
  int max_len = 5;        // ignore longer sentences
  int exhaustive_len = 4; // full configuration enumeration up to here
  int sampled_configs = 1000;  // per sentence above exhaustive_len
  int random_trajectories = 2; // per sentence, for the traversal bound
  std::uint64_t seed = 1;
  bool corrupt_case1 = false;  // mutation hook: misreport the shift-only case
};

struct PropertyStats {
  std::string name;
  long checked = 0;
  long violations = 0;
};

struct VerifyReport {
  std::vector<PropertyStats> properties;
  std::string first_counterexample;  // description + action trace
  long sentences = 0;
  long skipped = 0;  // inventory beyond the enumeration guard
  long configurations = 0;
  long total_traversals = 0;
  long total_steps = 0;

  bool ok() const {
    for (const auto& p : properties)
      if (p.violations) return false;
    return true;
  }
  std::string format() const;
};

/// Runs the full oracle property suite over a collapsed corpus:
///   optimality        dyna(c) equals the brute-force optimal action set
///   theorem-1         F1(t*) attains the maximum F1, recall and precision
///   corollary-1       t*(c) is the unique maximizer
///   lemma-1           structural oracle actions preserve reach exactly,
///                     non-oracle structural actions strictly shrink it
///   label-reach       the label oracle removes exactly the labeled chain
///                     from reach; wrong label decisions change t*
///   tstar-preserved   a in dyna(c) iff t*(a(c)) = t*(c), at every parity
///   lemma-2           greedy dyna rollouts from c terminate in t*(c)
///   static-on-path    dyna contains the static-oracle action on the gold path
///   traversal-bound   per-trajectory parent-link follows <= |gold| + steps
VerifyReport verify_oracle(const std::vector<Tree>& corpus,
                           const VerifyOptions& options = {});

}  // namespace spanparse
