#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "haar_riesz/errors.hpp"

namespace haar_riesz {

struct JacobiOptions {
  double relative_tolerance = 1e-14;  // on off-diagonal Frobenius mass
  int max_sweeps = 100;
};

/// Eigenvalues (ascending) of a dense symmetric matrix by cyclic Jacobi rotations.
/// `matrix` is row-major n×n; only symmetric input is meaningful.
template <class Real>
std::vector<Real> jacobi_eigenvalues(std::span<const Real> matrix, std::size_t n, JacobiOptions opts = {}) {
  if (matrix.size() != n * n) throw InputError("jacobi: matrix size is not n*n");
  std::vector<Real> a(matrix.begin(), matrix.end());
  auto at = [&](std::size_t i, std::size_t j) -> Real& { return a[i * n + j]; };

  Real total = 0;
  for (const Real x : a) total += x * x;
  const Real scale = std::sqrt(total);
  auto off_norm = [&] {
    Real s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) s += 2 * at(i, j) * at(i, j);
    }
    return std::sqrt(s);
  };

  const Real threshold = static_cast<Real>(opts.relative_tolerance) * scale;
  Real off = off_norm();
  int sweep = 0;
  while (off > threshold) {
    if (sweep++ >= opts.max_sweeps) {
      throw NumericError("jacobi: no convergence after " + std::to_string(opts.max_sweeps) +
                             " sweeps, off-diagonal residual " + std::to_string(static_cast<double>(off)),
                         static_cast<double>(off));
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Real apq = at(p, q);
        if (apq == 0) continue;
        const Real app = at(p, p);
        const Real aqq = at(q, q);
        const Real theta = (aqq - app) / (2 * apq);
        Real t = 1 / (std::abs(theta) + std::sqrt(theta * theta + 1));
        if (theta < 0) t = -t;
        const Real c = 1 / std::sqrt(t * t + 1);
        const Real s = t * c;
        const Real tau = s / (1 + c);

        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;
        at(p, q) = at(q, p) = 0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const Real arp = at(r, p);
          const Real arq = at(r, q);
          at(r, p) = at(p, r) = arp - s * (arq + tau * arp);
          at(r, q) = at(q, r) = arq + s * (arp - tau * arq);
        }
      }
    }
    off = off_norm();
  }

  std::vector<Real> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace haar_riesz
