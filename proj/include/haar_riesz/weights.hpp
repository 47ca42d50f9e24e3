#pragma once

#include <string>
#include <utility>
#include <vector>

#include "haar_riesz/errors.hpp"
#include "haar_riesz/haar.hpp"
#include "haar_riesz/measure.hpp"
#include "haar_riesz/rational.hpp"

namespace haar_riesz {

/// Threshold p with 2/3 < p <= 1; g is only defined in that range.
class WeightConfig {
 public:
  explicit WeightConfig(Rational p) : p_(std::move(p)) {
    if (!(Rational(2, 3) < p_) || Rational(1) < p_) {
      throw InputError("weight function needs 2/3 < p <= 1, got p = " + p_.str());
    }
  }
  const Rational& p() const { return p_; }

 private:
  Rational p_;
};

namespace detail {
inline void check_unit(const Rational& q, const char* what) {
  if (q.sign() < 0 || Rational(1) < q) throw InputError(std::string(what) + ": q = " + q.str() + " outside [0, 1]");
}
}  // namespace detail

/// g̃(q) = 1 + p(2-p) / ((3p-2)(3p-2q)).
inline Rational g_tilde(const Rational& q, const WeightConfig& cfg) {
  detail::check_unit(q, "g_tilde");
  const Rational& p = cfg.p();
  const Rational s = Rational(3) * p - Rational(2);
  return Rational(1) + p * (Rational(2) - p) / (s * (Rational(3) * p - Rational(2) * q));
}

/// g = g̃ on [p, 1], the chord g(p)·q/p through the origin on [0, p].
inline Rational g(const Rational& q, const WeightConfig& cfg) {
  detail::check_unit(q, "g");
  const Rational& p = cfg.p();
  if (q >= p) return g_tilde(q, cfg);
  return g_tilde(p, cfg) * q / p;
}

/// C = g(1), the upper weight bound.
inline Rational weight_bound(const WeightConfig& cfg) { return g(Rational(1), cfg); }

struct BranchCheck {
  bool holds = false;
  Rational g_value;
  Rational g_tilde_value;
};

/// g(2p-1) = g̃(2p-1); both equal 1 + p/(3p-2).
inline BranchCheck check_lemma_g2pm1(const WeightConfig& cfg) {
  const Rational q = Rational(2) * cfg.p() - Rational(1);
  BranchCheck out{false, g(q, cfg), g_tilde(q, cfg)};
  out.holds = out.g_value == out.g_tilde_value;
  return out;
}

/// LHS - a² of the two-point inequality as L a² + B a + K.
struct GposQuadratic {
  Rational L;
  Rational B;
  Rational K;
};

inline GposQuadratic gpos_quadratic(const Rational& q1, const Rational& q2, const WeightConfig& cfg) {
  const Rational g1 = g(q1, cfg);
  const Rational g2 = g(q2, cfg);
  const Rational mean = (g1 + g2) / Rational(2);
  return {mean - Rational(1), g2 - g1, mean - g((q1 + q2) / Rational(2), cfg)};
}

/// L a² + B a + K >= 0 for every real a (or just K >= 0, the a = 0 case).
inline bool gpos_nonnegative(const GposQuadratic& quad, bool all_a) {
  const auto& [L, B, K] = quad;
  if (!all_a) return K.sign() >= 0;
  if (L.sign() > 0) return square(B) <= Rational(4) * L * K;
  return L.is_zero() && B.is_zero() && K.sign() >= 0;
}

/// (1-a)²/2 g(q1) + (1+a)²/2 g(q2) - g((q1+q2)/2) >= a², decided for all real a
/// at once from the discriminant. Without `require_mid` only a = 0 is checked.
inline bool check_gpos(const Rational& q1, const Rational& q2, const WeightConfig& cfg, bool require_mid) {
  detail::check_unit(q1, "check_gpos");
  detail::check_unit(q2, "check_gpos");
  if (require_mid && (q1 + q2) / Rational(2) < cfg.p()) {
    throw InputError("check_gpos: midpoint (q1+q2)/2 below p for q1 = " + q1.str() + ", q2 = " + q2.str());
  }
  return gpos_nonnegative(gpos_quadratic(q1, q2, cfg), require_mid);
}

struct GcompCheck {
  bool lower_ok = false;
  bool upper_ok = false;
  Rational C;
};

/// q <= g(q) <= C q with C = g(1).
inline GcompCheck check_gcomp(const Rational& q, const WeightConfig& cfg) {
  const Rational gq = g(q, cfg);
  const Rational C = weight_bound(cfg);
  return {q <= gq, gq <= C * q, C};
}

/// w_n: constant on each level-(n+1) cell, g(q_I)/q_I there.
class WeightProfile {
 public:
  WeightProfile(int cell_level, std::vector<Rational> values)
      : cell_level_(cell_level), values_(std::move(values)) {}

  int cell_level() const { return cell_level_; }
  const std::vector<Rational>& values() const { return values_; }

  const Rational& at(const DyadicInterval& cell) const {
    if (cell.level != cell_level_) throw InputError("weight profile queried at the wrong level");
    return values_[cell.index];
  }

 private:
  int cell_level_;
  std::vector<Rational> values_;
};

/// Cells with q_I = 0 get g(p)/p, the value g(q)/q takes on the whole chord.
inline WeightProfile weight_profile(const StepSet& set, int n, const WeightConfig& cfg) {
  if (n < 0 || n + 1 > 30) throw InputError("weight_profile: level out of range");
  const int level = n + 1;
  const std::uint64_t count = std::uint64_t{1} << level;
  std::vector<Rational> values;
  values.reserve(count);
  const Rational chord = g(cfg.p(), cfg) / cfg.p();
  for (std::uint64_t k = 0; k < count; ++k) {
    const Rational q = density(set, DyadicInterval(level, k));
    values.push_back(q.is_zero() ? chord : g(q, cfg) / q);
  }
  return {level, std::move(values)};
}

/// ‖Σ_{level(I) <= k} a_I h_I 1_E‖² in L²(w_k). The sum is constant on each
/// level-(k+1) cell, where the weighted integral is v²·|c|·q_c·g(q_c)/q_c = v²·|c|·g(q_c).
inline Rational weighted_norm_sq(const StepSet& set, const CoefficientMap& coeffs, int k, const WeightConfig& cfg) {
  if (coeffs.max_level() > k) throw InputError("weighted_norm_sq: coefficient deeper than level " + std::to_string(k));
  if (coeffs.empty()) return Rational(0);
  const int level = k + 1;
  const std::uint64_t count = std::uint64_t{1} << level;
  const Rational cell_length = Rational::pow2(-level);
  Rational total;
  for (std::uint64_t c = 0; c < count; ++c) {
    const DyadicInterval cell(level, c);
    Rational v;
    for (int l = 0; l <= k; ++l) {
      const Rational a = coeffs.get(cell.ancestor(l));
      if (a.is_zero()) continue;
      const bool right = (cell.ancestor(l + 1).index & 1U) != 0;
      v += right ? a : -a;
    }
    if (v.is_zero()) continue;
    total += square(v) * cell_length * g(density(set, cell), cfg);
  }
  return total;
}

struct StepCheck {
  bool holds = false;
  Rational lhs;
  Rational rhs;
};

/// ‖Σ_{D_{n+1}}‖²_{w_{n+1}} - ‖Σ_{D_n}‖²_{w_n} >= Σ_{level n+1} ‖a_I h_I 1_E‖².
/// Only the new level-(n+1) coefficients need q_I >= p.
inline StepCheck induction_step_check(const StepSet& set, const CoefficientMap& coeffs, int n,
                                      const WeightConfig& cfg) {
  if (n < 0) throw InputError("induction step needs n >= 0");
  if (coeffs.max_level() > n + 1) {
    throw InputError("induction step: coefficients must be supported on levels <= " + std::to_string(n + 1));
  }
  Rational rhs;
  for (const auto& [interval, a] : coeffs.entries()) {
    if (interval.level != n + 1) continue;
    if (density(set, interval) < cfg.p()) {
      throw InputError("inadmissible coefficient on " + interval.str() + ": density below p = " + cfg.p().str());
    }
    rhs += square(a) * restricted_norm_sq(interval, set);
  }
  const Rational lhs = weighted_norm_sq(set, coeffs, n + 1, cfg) - weighted_norm_sq(set, coeffs.truncated(n), n, cfg);
  return {lhs >= rhs, lhs, rhs};
}

/// Base of the induction: ‖a_{[0,1)} h 1_E‖²_{w_0} >= ‖a_{[0,1)} h 1_E‖².
inline StepCheck induction_base_check(const StepSet& set, const CoefficientMap& coeffs, const WeightConfig& cfg) {
  const CoefficientMap root = coeffs.truncated(0);
  const Rational lhs = weighted_norm_sq(set, root, 0, cfg);
  const Rational rhs = square(root.get(DyadicInterval::unit())) * restricted_norm_sq(DyadicInterval::unit(), set);
  return {lhs >= rhs, lhs, rhs};
}

struct TelescopeReport {
  StepCheck base;
  std::vector<StepCheck> steps;  // n = 0 .. k-1
  Rational weighted_norm;        // ‖Σ_{D_k}‖²_{w_k}
  Rational sum_of_norms;         // Σ_{D_k} ‖a_I h_I 1_E‖²
  Rational plain_norm;           // ‖Σ_{D_k}‖²
  Rational C;
  bool steps_hold = false;
  bool telescopes = false;       // base.lhs + Σ steps.lhs == weighted_norm
  bool weighted_bound = false;   // weighted_norm >= sum_of_norms
  bool unweighted_bound = false; // C·plain_norm >= weighted_norm
  bool riesz_bound = false;      // plain_norm >= sum_of_norms / C

  bool all_ok() const { return steps_hold && telescopes && weighted_bound && unweighted_bound && riesz_bound; }
};

inline TelescopeReport telescoping_check(const StepSet& set, const CoefficientMap& coeffs, int k,
                                         const WeightConfig& cfg) {
  if (k < 0) throw InputError("telescoping depth must be nonnegative");
  if (coeffs.max_level() > k) throw InputError("telescoping: coefficients deeper than level " + std::to_string(k));
  TelescopeReport out;
  out.C = weight_bound(cfg);
  out.base = induction_base_check(set, coeffs, cfg);
  Rational accumulated = out.base.lhs;
  out.steps_hold = out.base.holds;
  for (int n = 0; n < k; ++n) {
    auto step = induction_step_check(set, coeffs.truncated(n + 1), n, cfg);
    accumulated += step.lhs;
    out.steps_hold = out.steps_hold && step.holds;
    out.steps.push_back(std::move(step));
  }
  out.weighted_norm = weighted_norm_sq(set, coeffs, k, cfg);
  for (const auto& [interval, a] : coeffs.entries()) out.sum_of_norms += square(a) * restricted_norm_sq(interval, set);
  out.plain_norm = norm_sq(combination(coeffs, set));
  out.telescopes = accumulated == out.weighted_norm;
  out.weighted_bound = out.weighted_norm >= out.sum_of_norms;
  out.unweighted_bound = out.C * out.plain_norm >= out.weighted_norm;
  out.riesz_bound = out.plain_norm * out.C >= out.sum_of_norms;
  return out;
}

struct IntervalCheck {
  bool holds = false;
  Rational lhs;
  Rational rhs;
};

/// (b-a)²|lh J| g(q1) + (b+a)²|rh J| g(q2) - b²|J| g((q1+q2)/2) >= |J|·(q1+q2)/2·a².
inline IntervalCheck per_interval_detail(const StepSet& set, const DyadicInterval& cell, const Rational& b,
                                         const Rational& a, const WeightConfig& cfg) {
  const Rational q1 = density(set, cell.left_half());
  const Rational q2 = density(set, cell.right_half());
  const Rational qm = (q1 + q2) / Rational(2);
  const Rational half = Rational::pow2(-cell.level - 1);
  const Rational whole = cell.length();
  IntervalCheck out;
  out.lhs = square(b - a) * half * g(q1, cfg) + square(b + a) * half * g(q2, cfg) - square(b) * whole * g(qm, cfg);
  out.rhs = whole * qm * square(a);
  out.holds = out.lhs >= out.rhs;
  return out;
}

inline bool per_interval_check(const StepSet& set, const DyadicInterval& cell, const Rational& b, const Rational& a,
                               const WeightConfig& cfg) {
  return per_interval_detail(set, cell, b, a, cfg).holds;
}

struct WeightsReport {
  Rational p;
  Rational grid_step;
  std::vector<std::pair<Rational, Rational>> gpos_failures;
  std::vector<Rational> gcomp_failures;
  Rational C;
  BranchCheck branch;
  std::size_t pairs_checked = 0;      // pairs with midpoint >= p (all real a)
  std::size_t convexity_checked = 0;  // all pairs, a = 0

  bool passed() const { return gpos_failures.empty() && gcomp_failures.empty() && branch.holds; }
};

/// Two-point inequality and q <= g(q) <= Cq on the grid {0, 1/grid, ..., 1}.
inline WeightsReport verify_weights(const WeightConfig& cfg, int grid) {
  if (grid < 1) throw InputError("grid must be at least 1");
  WeightsReport out;
  out.p = cfg.p();
  out.grid_step = Rational(1, grid);
  out.C = weight_bound(cfg);
  out.branch = check_lemma_g2pm1(cfg);

  std::vector<Rational> q(static_cast<std::size_t>(grid) + 1);
  std::vector<Rational> gq(q.size());
  for (int i = 0; i <= grid; ++i) {
    q[i] = Rational(i, grid);
    gq[i] = g(q[i], cfg);
  }
  // g at midpoints i/(2 grid), shared by all pairs with the same sum
  std::vector<Rational> gmid(2 * q.size() - 1);
  for (std::size_t s = 0; s < gmid.size(); ++s) gmid[s] = g(Rational(static_cast<long>(s), 2L * grid), cfg);

  const Rational one(1);
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      const Rational mean = (gq[i] + gq[j]) / Rational(2);
      const GposQuadratic quad{mean - one, gq[j] - gq[i], mean - gmid[i + j]};
      bool ok = gpos_nonnegative(quad, false);
      ++out.convexity_checked;
      if ((q[i] + q[j]) / Rational(2) >= cfg.p()) {
        ++out.pairs_checked;
        ok = ok && gpos_nonnegative(quad, true);
      }
      if (!ok) out.gpos_failures.emplace_back(q[i], q[j]);
    }
    const Rational& gi = gq[i];
    if (!(q[i] <= gi && gi <= out.C * q[i])) out.gcomp_failures.push_back(q[i]);
  }
  return out;
}

}  // namespace haar_riesz
