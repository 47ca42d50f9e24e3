#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "haar_riesz/errors.hpp"
#include "haar_riesz/rational.hpp"

namespace haar_riesz {

/// c(p) = (3p-2)² / ((3p-2)² + p(2-p)), the lower Riesz constant produced by the
/// weighted induction. Equals 1/g(1).
inline Rational riesz_constant(const Rational& p) {
  if (!(Rational(2, 3) < p)) {
    throw InputError("no positive Riesz constant exists for p <= 2/3 (got p = " + p.str() + ")");
  }
  if (Rational(1) < p) throw InputError("p must not exceed 1 (got p = " + p.str() + ")");
  const Rational s = square(Rational(3) * p - Rational(2));
  return s / (s + p * (Rational(2) - p));
}

/// Leading term (81/8)(p - 2/3)² of c(p) near the threshold.
inline double asymptotic_constant(double p) {
  const double x = p - 2.0 / 3.0;
  return 81.0 / 8.0 * x * x;
}

/// Leading term 27 (p - 2/3)² of the conjectured sharp constant.
inline double sharp_conjectured(double p) {
  const double x = p - 2.0 / 3.0;
  return 27.0 * x * x;
}

/// C/2 - sqrt(2(C-1)(2-C)), the two-colouring Riesz constant for a Bessel bound 1 <= C < 4/3.
inline double bcms_constant(double bessel) {
  if (!(bessel >= 1.0) || !(bessel < 4.0 / 3.0)) {
    throw InputError("two-colouring bound needs 1 <= C < 4/3");
  }
  return bessel / 2.0 - std::sqrt(2.0 * (bessel - 1.0) * (2.0 - bessel));
}

struct ConstantsReport {
  Rational p;
  Rational c;  // riesz_constant(p)
  Rational C;  // 1/c
  double asymptotic = 0;
  double sharp_conjectured = 0;
  std::optional<double> bcms;  // only for p > 3/4, with C = 1/p
};

inline ConstantsReport constants_report(const Rational& p) {
  ConstantsReport out;
  out.p = p;
  out.c = riesz_constant(p);
  out.C = out.c.reciprocal();
  const double pd = p.to_double();
  out.asymptotic = asymptotic_constant(pd);
  out.sharp_conjectured = haar_riesz::sharp_conjectured(pd);
  if (Rational(3, 4) < p) out.bcms = bcms_constant(p.reciprocal().to_double());
  return out;
}

/// One report per p, ascending.
inline std::vector<ConstantsReport> comparison_table(std::vector<Rational> p_values) {
  std::sort(p_values.begin(), p_values.end());
  std::vector<ConstantsReport> rows;
  rows.reserve(p_values.size());
  for (const auto& p : p_values) rows.push_back(constants_report(p));
  return rows;
}

}  // namespace haar_riesz
