#include "spanparse/metrics.hpp"

#include "spanparse/error.hpp"

namespace spanparse {

F1Report parseval(const BracketSet& pred, const BracketSet& gold) {
  if (gold.empty()) throw DataError("parseval: empty gold bracket set");
  F1Report r;
  r.matched = pred.intersection_size(gold);
  r.predicted = pred.size();
  r.gold = gold.size();
  return r;
}

F1Report corpus_parseval(
    const std::vector<std::pair<BracketSet, BracketSet>>& pairs) {
  if (pairs.empty()) throw DataError("corpus_parseval: no sentence pairs");
  F1Report total;
  for (const auto& [pred, gold] : pairs) {
    F1Report one = parseval(pred, gold);
    total.matched += one.matched;
    total.predicted += one.predicted;
    total.gold += one.gold;
  }
  return total;
}

}  // namespace spanparse
