#pragma once

#include <optional>
#include <string>
#include <vector>

#include "haar_riesz/errors.hpp"
#include "haar_riesz/haar.hpp"
#include "haar_riesz/measure.hpp"
#include "haar_riesz/rational.hpp"

namespace haar_riesz {

/// E = [0, 2/3), the set on which the restricted Haar system degenerates at p = 2/3.
inline StepSet two_thirds_set() { return StepSet::interval(Rational(0), Rational(2, 3)); }

/// Stage n of the zig-zag: I_0 = [0,1), I_{2m+1} = rh I_{2m}, I_{2m+2} = lh I_{2m+1}.
struct ZigzagState {
  int n = 0;
  DyadicInterval interval;
  std::optional<Rational> coefficient;  // a_n, even stages only
};

inline ZigzagState zigzag(int n) {
  if (n < 0) throw InputError("zigzag stage must be nonnegative");
  if (n > DyadicInterval::kMaxLevel) throw InputError("zigzag stage beyond level 62");
  DyadicInterval current = DyadicInterval::unit();
  for (int stage = 1; stage <= n; ++stage) {
    current = (stage % 2 == 1) ? current.right_half() : current.left_half();
  }
  ZigzagState out{n, current, std::nullopt};
  if (n % 2 == 0) {
    const int m = n / 2;
    out.coefficient = m == 0 ? Rational(1) : Rational::pow2(m - 1);
  }
  return out;
}

/// Coefficients a_{2k} on I_{2k} for k = 0..n.
inline CoefficientMap zigzag_coefficients(int n) {
  CoefficientMap coeffs;
  for (int k = 0; k <= n; ++k) {
    const auto state = zigzag(2 * k);
    coeffs.set(state.interval, *state.coefficient);
  }
  return coeffs;
}

/// |I_n| = 2^-n, |I_{2k} ∩ E| = 2/3 |I_{2k}|, |I_{2k+1} ∩ E| = 1/3 |I_{2k+1}| for k <= n.
inline bool check_lemma_densities(int n) {
  if (n < 0) throw InputError("check_lemma_densities: n must be nonnegative");
  const StepSet set = two_thirds_set();
  for (int stage = 0; stage <= 2 * n + 1; ++stage) {
    const auto state = zigzag(stage);
    if (state.interval.length() != Rational::pow2(-stage)) return false;
    const Rational expected = stage % 2 == 0 ? Rational(2, 3) : Rational(1, 3);
    if (density(set, state.interval) != expected) return false;
  }
  return true;
}

struct CounterexampleRow {
  int n = 0;
  Rational sum_of_norms;  // Σ_k ‖a_{2k} h_{I_{2k}} 1_E‖²
  Rational norm_of_sum;   // ‖Σ_k a_{2k} h_{I_{2k}} 1_E‖²
  Rational ratio;
  bool matches_closed_form = false;  // 2/3 + n/6 and 2/3
};

/// Rows n = 0..N computed through the generic Haar machinery.
inline std::vector<CounterexampleRow> counterexample_table(int N) {
  if (N < 0) throw InputError("counterexample table needs N >= 0");
  if (2 * N > DyadicInterval::kMaxLevel - 1) throw InputError("counterexample table limited to N <= 30");
  const StepSet set = two_thirds_set();
  std::vector<CounterexampleRow> rows;
  Rational running;
  for (int n = 0; n <= N; ++n) {
    const auto state = zigzag(2 * n);
    running += square(*state.coefficient) * restricted_norm_sq(state.interval, set);
    CounterexampleRow row;
    row.n = n;
    row.sum_of_norms = running;
    row.norm_of_sum = norm_sq(combination(zigzag_coefficients(n), set));
    row.ratio = row.norm_of_sum / row.sum_of_norms;
    row.matches_closed_form =
        row.sum_of_norms == Rational(2, 3) + Rational(n, 6) && row.norm_of_sum == Rational(2, 3);
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Σ_{k<=n} a_{2k} h_{I_{2k}} 1_E, checked against -1_{[0,1/2)} + 2^n 1_{rh I_{2n} ∩ E}.
inline PiecewiseConstant partial_sum_structure(int n) {
  if (n < 0) throw InputError("partial_sum_structure: n must be nonnegative");
  const StepSet set = two_thirds_set();
  const PiecewiseConstant sum = combination(zigzag_coefficients(n), set);

  const DyadicInterval tail = zigzag(2 * n).interval.right_half();
  const Rational right_end = min(tail.right(), Rational(2, 3));
  PiecewiseConstant expected = PiecewiseConstant::indicator(Rational(0), Rational(1, 2), Rational(-1));
  if (tail.left() < right_end) {
    expected = expected + PiecewiseConstant::indicator(tail.left(), right_end, Rational::pow2(n));
  }
  if (!(sum == expected)) {
    throw ConsistencyError("partial sum at n = " + std::to_string(n) + " differs from its closed form");
  }
  return sum;
}

}  // namespace haar_riesz
