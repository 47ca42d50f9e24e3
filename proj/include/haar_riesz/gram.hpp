#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "haar_riesz/errors.hpp"
#include "haar_riesz/haar.hpp"
#include "haar_riesz/jacobi.hpp"
#include "haar_riesz/ldlt.hpp"
#include "haar_riesz/measure.hpp"
#include "haar_riesz/rational.hpp"

namespace haar_riesz {

/// Exact Gram matrix ⟨h_I 1_E, h_J 1_E⟩ of a restricted Haar family.
///
/// Entries are always the unnormalized inner products. The `normalized` flag
/// asks for the unit-norm family h_I 1_E / ‖h_I 1_E‖; its entries involve
/// square roots, so exact work goes through the pencil G - c·diag(G) and only
/// the float view divides by the norms.
class GramMatrix {
 public:
  GramMatrix() = default;

  /// Generic symmetric matrix; `labels` may be empty.
  GramMatrix(std::size_t size, std::vector<Rational> entries, std::vector<DyadicInterval> labels = {},
             bool normalized = false)
      : size_(size), entries_(std::move(entries)), labels_(std::move(labels)), normalized_(normalized) {
    if (entries_.size() != size_ * size_) throw InputError("gram: entry count is not size*size");
    if (!labels_.empty() && labels_.size() != size_) throw InputError("gram: label count does not match size");
    for (std::size_t i = 0; i < size_; ++i) {
      for (std::size_t j = i + 1; j < size_; ++j) {
        if ((*this)(i, j) != (*this)(j, i)) throw InputError("gram: matrix is not symmetric");
      }
    }
    if (normalized_) {
      for (std::size_t i = 0; i < size_; ++i) {
        if ((*this)(i, i).sign() <= 0) {
          throw InputError("gram: cannot normalize zero-norm member " +
                           (labels_.empty() ? std::to_string(i) : labels_[i].str()));
        }
      }
    }
  }

  std::size_t size() const { return size_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }
  const std::vector<Rational>& entries() const { return entries_; }
  const std::vector<DyadicInterval>& labels() const { return labels_; }
  bool normalized() const { return normalized_; }

  std::vector<Rational> diagonal() const {
    std::vector<Rational> d;
    d.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) d.push_back((*this)(i, i));
    return d;
  }

  /// Square of the normalized entry, G_ij² / (G_ii G_jj); exact.
  Rational normalized_entry_sq(std::size_t i, std::size_t j) const {
    return square((*this)(i, j)) / ((*this)(i, i) * (*this)(j, j));
  }

  /// Row-major doubles; divided by the norms when `normalized`.
  std::vector<double> to_float() const {
    std::vector<double> out(size_ * size_);
    for (std::size_t i = 0; i < size_; ++i) {
      for (std::size_t j = 0; j < size_; ++j) out[i * size_ + j] = (*this)(i, j).to_double();
    }
    if (normalized_) {
      std::vector<double> d(size_);
      for (std::size_t i = 0; i < size_; ++i) d[i] = out[i * size_ + i];
      for (std::size_t i = 0; i < size_; ++i) {
        for (std::size_t j = 0; j < size_; ++j) out[i * size_ + j] /= std::sqrt(d[i] * d[j]);
      }
    }
    return out;
  }

  /// The same data with the normalized flag set (or cleared).
  GramMatrix with_normalized(bool flag) const { return {size_, entries_, labels_, flag}; }

  /// Deepest level first. Inner products vanish unless intervals nest, and the
  /// coarser ancestors of any interval are pairwise nested, so this order is a
  /// perfect elimination order: LDLᵀ along it creates no fill.
  std::vector<std::size_t> elimination_order() const {
    if (labels_.empty()) return {};
    std::vector<std::size_t> order(size_);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return labels_[a].level > labels_[b].level; });
    return order;
  }

  friend bool operator==(const GramMatrix&, const GramMatrix&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<Rational> entries_;
  std::vector<DyadicInterval> labels_;
  bool normalized_ = false;
};

inline GramMatrix build_gram(const std::vector<DyadicInterval>& family, const StepSet& set, bool normalized) {
  const std::size_t m = family.size();
  std::vector<Rational> entries(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      entries[i * m + j] = inner_product(family[i], family[j], set);
      entries[j * m + i] = entries[i * m + j];
    }
  }
  return {m, std::move(entries), family, normalized};
}

struct EigenBounds {
  double lambda_min = 0;
  double lambda_max = 0;
};

/// Extreme eigenvalues of the float view of G (normalized when flagged).
inline EigenBounds eig_bounds(const GramMatrix& gram, JacobiOptions opts = {}) {
  if (gram.size() == 0) throw InputError("eig_bounds: empty matrix");
  const auto values = gram.to_float();
  const auto eig = jacobi_eigenvalues<double>(values, gram.size(), opts);
  return {eig.front(), eig.back()};
}

/// Extremes of the pencil det(G - λ diag(G)) = 0, i.e. of D^{-1/2} G D^{-1/2}.
inline EigenBounds pencil_bounds(const GramMatrix& gram, JacobiOptions opts = {}) {
  return eig_bounds(gram.with_normalized(true), opts);
}

namespace detail {

inline void check_diagonal(const GramMatrix& gram, std::span<const Rational> diag) {
  if (diag.size() != gram.size()) throw InputError("certificate: diagonal length does not match matrix");
  for (const auto& d : diag) {
    if (d.sign() < 0) throw InputError("certificate: diagonal weights must be nonnegative");
  }
}

}  // namespace detail

/// Exact LDLᵀ of G - shift·D.
inline LdltResult psd_certificate_detail(const GramMatrix& gram, const Rational& shift,
                                         std::span<const Rational> diag) {
  detail::check_diagonal(gram, diag);
  std::vector<Rational> a = gram.entries();
  const std::size_t m = gram.size();
  for (std::size_t i = 0; i < m; ++i) a[i * m + i] -= shift * diag[i];
  const auto order = gram.elimination_order();
  return ldlt_psd(std::move(a), m, order);
}

/// True iff G - shift·D ⪰ 0, decided exactly.
inline bool psd_certificate(const GramMatrix& gram, const Rational& shift, std::span<const Rational> diag) {
  return psd_certificate_detail(gram, shift, diag).psd;
}

/// True iff bound·D - G ⪰ 0, decided exactly.
inline bool bessel_certificate(const GramMatrix& gram, const Rational& bound, std::span<const Rational> diag) {
  detail::check_diagonal(gram, diag);
  const std::size_t m = gram.size();
  std::vector<Rational> a(m * m);
  for (std::size_t i = 0; i < m * m; ++i) a[i] = -gram.entries()[i];
  for (std::size_t i = 0; i < m; ++i) a[i * m + i] += bound * diag[i];
  const auto order = gram.elimination_order();
  return ldlt_psd(std::move(a), m, order).psd;
}

/// ‖Σ a_I h_I 1_E‖² >= c Σ a_I² ‖h_I 1_E‖² for every a on this family.
inline bool verify_riesz(const std::vector<DyadicInterval>& family, const StepSet& set, const Rational& c) {
  const GramMatrix gram = build_gram(family, set, false);
  const auto diag = gram.diagonal();
  return psd_certificate(gram, c, diag);
}

/// ‖Σ a_I h_I 1_E‖² <= (1/p) Σ a_I² ‖h_I 1_E‖² for every a on this family.
inline bool verify_bessel(const std::vector<DyadicInterval>& family, const StepSet& set, const Rational& p) {
  if (p.sign() <= 0) throw InputError("verify_bessel: p must be positive");
  const GramMatrix gram = build_gram(family, set, false);
  const auto diag = gram.diagonal();
  return bessel_certificate(gram, p.reciprocal(), diag);
}

struct PerturbationDemo {
  Rational sum_norm_sq;              // Σ ‖u_i'‖²
  Rational norm_of_sum_sq;           // ‖Σ u_i'‖²
  Rational per_vector_perturbation;  // ‖u_i - u_i'‖²
};

/// Gram matrix of u_i' = u_i - u/n for orthonormal u_1..u_n: δ_ij - 1/n.
inline GramMatrix perturbation_gram(int n) {
  if (n < 2) throw InputError("perturbation demo needs n >= 2");
  const auto m = static_cast<std::size_t>(n);
  const Rational inv = Rational(1, n);
  std::vector<Rational> entries(m * m, -inv);
  for (std::size_t i = 0; i < m; ++i) entries[i * m + i] = Rational(1) - inv;
  return {m, std::move(entries)};
}

inline PerturbationDemo perturbation_demo(int n) {
  const GramMatrix perturbed = perturbation_gram(n);
  const auto m = perturbed.size();
  PerturbationDemo out;
  for (std::size_t i = 0; i < m; ++i) {
    out.sum_norm_sq += perturbed(i, i);
    for (std::size_t j = 0; j < m; ++j) out.norm_of_sum_sq += perturbed(i, j);
  }
  // u_i - u_i' = u/n and ‖u‖² = Σ_jk ⟨u_j, u_k⟩ = n for the orthonormal u_j.
  Rational u_norm_sq;
  for (std::size_t j = 0; j < m; ++j) u_norm_sq += Rational(1);
  out.per_vector_perturbation = u_norm_sq / square(Rational(n));
  return out;
}

}  // namespace haar_riesz
