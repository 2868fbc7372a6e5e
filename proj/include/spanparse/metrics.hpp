#pragma once

#include <cstdint>
#include <vector>

#include "spanparse/tree.hpp"

namespace spanparse {

/// Exact nonnegative rational for zero-tolerance F1 comparisons.
/// Denominator is kept positive; values are compared by cross-multiplying.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return den == 0 ? 0.0 : double(num) / double(den); }
  bool operator==(const Fraction& o) const {
    return num * o.den == o.num * den;
  }
  bool operator!=(const Fraction& o) const { return !(*this == o); }
  bool operator<(const Fraction& o) const { return num * o.den < o.num * den; }
  bool operator<=(const Fraction& o) const {
    return num * o.den <= o.num * den;
  }
  bool operator>(const Fraction& o) const { return o < *this; }
  bool operator>=(const Fraction& o) const { return o <= *this; }
};

/// Labeled-bracket match counts with derived precision/recall/F1.
struct F1Report {
  std::size_t matched = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;

  double recall() const { return gold ? double(matched) / gold : 0.0; }
  double precision() const {
    return predicted ? double(matched) / predicted : 0.0;
  }
  /// 2rp/(r+p), defined as 0 when r + p = 0. Equals 2m/(predicted+gold).
  double f1() const {
    return matched ? 2.0 * matched / double(predicted + gold) : 0.0;
  }

  /// Exact counterparts, for zero-tolerance checks.
  Fraction recall_exact() const {
    return {std::int64_t(matched), std::int64_t(gold)};
  }
  Fraction precision_exact() const {
    return {std::int64_t(matched), std::int64_t(predicted ? predicted : 1)};
  }
  Fraction f1_exact() const {
    return {std::int64_t(2 * matched), std::int64_t(predicted + gold)};
  }
};

/// Labeled PARSEVAL on bracket sets: exact (label, i, j) intersection.
/// Throws DataError when gold is empty.
F1Report parseval(const BracketSet& pred, const BracketSet& gold);

/// Micro-average: counts summed over sentences before computing ratios.
/// Throws DataError on an empty list or any empty gold set.
F1Report corpus_parseval(
    const std::vector<std::pair<BracketSet, BracketSet>>& pairs);

}  // namespace spanparse
