#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "haar_riesz/errors.hpp"
#include "haar_riesz/measure.hpp"
#include "haar_riesz/rational.hpp"

namespace haar_riesz {

/// Exact step function on [0,1). Breakpoints always start at 0 and end at 1;
/// values[i] is the value on [breakpoints[i], breakpoints[i+1]).
class PiecewiseConstant {
 public:
  PiecewiseConstant() : breaks_{Rational(0), Rational(1)}, values_{Rational(0)} {}

  PiecewiseConstant(std::vector<Rational> breakpoints, std::vector<Rational> values)
      : breaks_(std::move(breakpoints)), values_(std::move(values)) {
    if (breaks_.size() < 2 || values_.size() + 1 != breaks_.size()) {
      throw InputError("piecewise constant: need len(values) = len(breakpoints) - 1 >= 1");
    }
    if (breaks_.front() != Rational(0) || breaks_.back() != Rational(1)) {
      throw InputError("piecewise constant: breakpoints must start at 0 and end at 1");
    }
    for (std::size_t i = 1; i < breaks_.size(); ++i) {
      if (!(breaks_[i - 1] < breaks_[i])) {
        throw InputError("piecewise constant: breakpoints must be strictly increasing");
      }
    }
  }

  static PiecewiseConstant zero() { return {}; }

  /// value on [left, right), zero elsewhere
  static PiecewiseConstant indicator(const Rational& left, const Rational& right, const Rational& value = Rational(1)) {
    std::vector<Rational> b{Rational(0)};
    std::vector<Rational> v;
    if (Rational(0) < left) { b.push_back(left); v.emplace_back(0); }
    b.push_back(right);
    v.push_back(value);
    if (right < Rational(1)) { b.emplace_back(1); v.emplace_back(0); }
    return {std::move(b), std::move(v)};
  }

  static PiecewiseConstant indicator(const StepSet& set) {
    PiecewiseConstant out;
    for (const auto& [l, r] : set.intervals()) out = out + indicator(l, r);
    return out;
  }

  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<Rational>& values() const { return values_; }

  Rational operator()(const Rational& x) const {
    if (x < Rational(0) || !(x < Rational(1))) return Rational(0);
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
  }

  Rational integral() const {
    Rational total;
    for (std::size_t i = 0; i < values_.size(); ++i) total += values_[i] * (breaks_[i + 1] - breaks_[i]);
    return total;
  }

  /// Same function with equal neighbouring values merged.
  PiecewiseConstant canonical() const {
    std::vector<Rational> b{breaks_.front()};
    std::vector<Rational> v{values_.front()};
    for (std::size_t i = 1; i < values_.size(); ++i) {
      if (values_[i] == v.back()) continue;
      b.push_back(breaks_[i]);
      v.push_back(values_[i]);
    }
    b.push_back(breaks_.back());
    return {std::move(b), std::move(v)};
  }

  friend PiecewiseConstant operator+(const PiecewiseConstant& f, const PiecewiseConstant& g) {
    return combine(f, g, [](const Rational& a, const Rational& b) { return a + b; });
  }
  friend PiecewiseConstant operator*(const PiecewiseConstant& f, const PiecewiseConstant& g) {
    return combine(f, g, [](const Rational& a, const Rational& b) { return a * b; });
  }
  friend PiecewiseConstant operator*(const Rational& s, const PiecewiseConstant& f) {
    PiecewiseConstant out = f;
    for (auto& v : out.values_) v *= s;
    return out;
  }

  /// Equality as functions (ignores redundant breakpoints).
  friend bool operator==(const PiecewiseConstant& f, const PiecewiseConstant& g) {
    const auto a = f.canonical();
    const auto b = g.canonical();
    return a.breaks_ == b.breaks_ && a.values_ == b.values_;
  }

 private:
  template <class Op>
  static PiecewiseConstant combine(const PiecewiseConstant& f, const PiecewiseConstant& g, Op op) {
    std::vector<Rational> b;
    std::merge(f.breaks_.begin(), f.breaks_.end(), g.breaks_.begin(), g.breaks_.end(), std::back_inserter(b));
    b.erase(std::unique(b.begin(), b.end()), b.end());
    std::vector<Rational> v;
    v.reserve(b.size() - 1);
    std::size_t i = 0;
    std::size_t j = 0;
    for (std::size_t k = 0; k + 1 < b.size(); ++k) {
      while (!(b[k] < f.breaks_[i + 1])) ++i;
      while (!(b[k] < g.breaks_[j + 1])) ++j;
      v.push_back(op(f.values_[i], g.values_[j]));
    }
    return {std::move(b), std::move(v)};
  }

  std::vector<Rational> breaks_;
  std::vector<Rational> values_;
};

/// ∫ f².
inline Rational norm_sq(const PiecewiseConstant& f) { return (f * f).integral(); }

/// Finite coefficient sequence (a_I). Zero coefficients are never stored.
class CoefficientMap {
 public:
  using Storage = std::map<DyadicInterval, Rational>;

  CoefficientMap() = default;
  CoefficientMap(std::initializer_list<std::pair<const DyadicInterval, Rational>> init) {
    for (const auto& [k, v] : init) set(k, v);
  }

  void set(const DyadicInterval& interval, const Rational& value) {
    if (value.is_zero()) {
      entries_.erase(interval);
    } else {
      entries_[interval] = value;
    }
  }

  Rational get(const DyadicInterval& interval) const {
    const auto it = entries_.find(interval);
    return it == entries_.end() ? Rational(0) : it->second;
  }

  const Storage& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  int max_level() const {
    int lvl = -1;
    for (const auto& [k, v] : entries_) lvl = std::max(lvl, k.level);
    return lvl;
  }

  /// Entries with level <= max_level.
  CoefficientMap truncated(int max_level) const {
    CoefficientMap out;
    for (const auto& [k, v] : entries_) {
      if (k.level <= max_level) out.entries_.emplace(k, v);
    }
    return out;
  }

  friend bool operator==(const CoefficientMap&, const CoefficientMap&) = default;

 private:
  Storage entries_;
};

/// h_I = -1 on the left half of I, +1 on the right half.
inline PiecewiseConstant haar_function(const DyadicInterval& interval) {
  return PiecewiseConstant::indicator(interval.left(), interval.midpoint(), Rational(-1)) +
         PiecewiseConstant::indicator(interval.midpoint(), interval.right(), Rational(1));
}

/// ‖h_I 1_E‖² = |I ∩ E| since h_I² = 1_I.
inline Rational restricted_norm_sq(const DyadicInterval& interval, const StepSet& set) {
  return intersect_measure(set, interval);
}

/// ∫ h_I h_J 1_E. Nonzero only for nested intervals.
inline Rational inner_product(const DyadicInterval& a, const DyadicInterval& b, const StepSet& set) {
  if (a == b) return intersect_measure(set, a);
  if (!a.nested_with(b)) return Rational(0);
  const DyadicInterval& outer = a.level < b.level ? a : b;
  const DyadicInterval& inner = a.level < b.level ? b : a;
  // h_outer is constant on inner: -1 in the left half, +1 in the right half.
  const bool in_right = outer.right_half().contains(inner);
  const Rational mean = intersect_measure(set, inner.right_half()) - intersect_measure(set, inner.left_half());
  return in_right ? mean : -mean;
}

/// Σ a_I h_I 1_E as an exact step function.
inline PiecewiseConstant combination(const CoefficientMap& coeffs, const StepSet& set) {
  if (coeffs.empty()) return PiecewiseConstant::zero();
  std::vector<Rational> b{Rational(0), Rational(1)};
  for (const auto& [interval, a] : coeffs.entries()) {
    b.push_back(interval.left());
    b.push_back(interval.midpoint());
    b.push_back(interval.right());
  }
  for (const auto& [l, r] : set.intervals()) {
    b.push_back(l);
    b.push_back(r);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());

  std::vector<Rational> values;
  values.reserve(b.size() - 1);
  for (std::size_t k = 0; k + 1 < b.size(); ++k) {
    const Rational& x = b[k];  // every summand is constant on [b[k], b[k+1])
    if (!set.contains(x)) {
      values.emplace_back(0);
      continue;
    }
    Rational v;
    for (const auto& [interval, a] : coeffs.entries()) {
      if (x < interval.left() || !(x < interval.right())) continue;
      if (x < interval.midpoint()) {
        v -= a;
      } else {
        v += a;
      }
    }
    values.push_back(std::move(v));
  }
  return PiecewiseConstant(std::move(b), std::move(values)).canonical();
}

/// All I ⊆ [0,1) with level <= depth and |I ∩ E| >= p |I|, in (level, index) order.
inline std::vector<DyadicInterval> enumerate_family(int depth, const StepSet& set, const Rational& p) {
  if (depth < 0) throw InputError("depth must be nonnegative");
  if (depth > 30) throw InputError("depth above 30 is not supported for full enumeration");
  if (!(Rational(0) < p) || Rational(1) < p) throw InputError("threshold p must lie in (0, 1]");
  std::vector<DyadicInterval> family;
  for (int level = 0; level <= depth; ++level) {
    const std::uint64_t count = std::uint64_t{1} << level;
    for (std::uint64_t k = 0; k < count; ++k) {
      const DyadicInterval interval(level, k);
      if (density(set, interval) >= p) family.push_back(interval);
    }
  }
  return family;
}

}  // namespace haar_riesz
