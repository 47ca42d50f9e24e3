#pragma once

#include <optional>
#include <span>
#include <vector>

#include "haar_riesz/errors.hpp"
#include "haar_riesz/rational.hpp"

namespace haar_riesz {

/// Outcome of an exact symmetric LDLᵀ. When `psd` holds, `pivots` (all >= 0)
/// taken in `order` is the diagonal factor D of P A Pᵀ = L D Lᵀ.
struct LdltResult {
  bool psd = true;
  std::vector<std::size_t> order;
  std::vector<Rational> pivots;
  std::optional<std::size_t> failed_index;  // row whose pivot proved indefiniteness
};

/// Decides A ⪰ 0 exactly. `a` is row-major n×n and symmetric.
///
/// With an empty `order`, pivots on the largest-magnitude remaining diagonal.
/// Otherwise eliminates in the given order; for a perfect elimination order of
/// the sparsity graph this creates no fill. The decision does not depend on the
/// order: a negative diagonal, or a zero diagonal with a nonzero row, rules out
/// semidefiniteness at any stage, and a positive pivot reduces to its Schur
/// complement.
inline LdltResult ldlt_psd(std::vector<Rational> a, std::size_t n, std::span<const std::size_t> order = {}) {
  if (a.size() != n * n) throw InputError("ldlt: matrix size is not n*n");
  if (!order.empty() && order.size() != n) throw InputError("ldlt: elimination order has wrong length");
  auto at = [&](std::size_t i, std::size_t j) -> Rational& { return a[i * n + j]; };

  LdltResult result;
  std::vector<bool> active(n, true);
  std::vector<std::size_t> row;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t k = n;
    if (order.empty()) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!active[i]) continue;
        if (at(i, i).sign() < 0) {
          result.psd = false;
          result.failed_index = i;
          return result;
        }
        if (k == n || at(k, k) < at(i, i)) k = i;
      }
    } else {
      k = order[step];
      if (k >= n || !active[k]) throw InputError("ldlt: elimination order is not a permutation");
    }

    const Rational pivot = at(k, k);
    if (pivot.sign() < 0) {
      result.psd = false;
      result.failed_index = k;
      return result;
    }
    row.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (i != k && active[i] && !at(i, k).is_zero()) row.push_back(i);
    }
    active[k] = false;
    result.order.push_back(k);
    result.pivots.push_back(pivot);
    if (pivot.is_zero()) {
      if (!row.empty()) {
        result.psd = false;
        result.failed_index = k;
        return result;
      }
      continue;
    }
    const Rational inv = pivot.reciprocal();
    for (const std::size_t i : row) {
      const Rational l = at(i, k) * inv;
      for (const std::size_t j : row) {
        if (j < i) continue;
        at(i, j) -= l * at(j, k);
        if (j != i) at(j, i) = at(i, j);
      }
    }
  }
  return result;
}

}  // namespace haar_riesz
