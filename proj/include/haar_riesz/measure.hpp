#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "haar_riesz/errors.hpp"
#include "haar_riesz/rational.hpp"

namespace haar_riesz {

/// The dyadic interval [k 2^-n, (k+1) 2^-n) inside [0,1).
struct DyadicInterval {
  static constexpr int kMaxLevel = 62;

  int level = 0;
  std::uint64_t index = 0;

  DyadicInterval() = default;
  DyadicInterval(int lvl, std::uint64_t idx) : level(lvl), index(idx) {
    if (lvl < 0 || lvl > kMaxLevel) {
      throw InputError("dyadic level " + std::to_string(lvl) + " outside [0, 62]");
    }
    if (idx >= (std::uint64_t{1} << lvl)) {
      throw InputError("dyadic index " + std::to_string(idx) + " not below 2^" + std::to_string(lvl));
    }
  }

  static DyadicInterval unit() { return {0, 0}; }

  Rational length() const { return Rational::pow2(-level); }
  Rational left() const { return Rational(index) * length(); }
  Rational right() const { return Rational(index + 1) * length(); }
  Rational midpoint() const { return (Rational(2 * index + 1)) * Rational::pow2(-level - 1); }

  DyadicInterval left_half() const { return {level + 1, 2 * index}; }
  DyadicInterval right_half() const { return {level + 1, 2 * index + 1}; }

  /// Ancestor at a coarser level (or itself).
  DyadicInterval ancestor(int lvl) const {
    if (lvl > level) throw InputError("ancestor level deeper than interval");
    return {lvl, index >> (level - lvl)};
  }

  bool contains(const DyadicInterval& other) const {
    return other.level >= level && other.ancestor(level) == *this;
  }
  bool nested_with(const DyadicInterval& other) const { return contains(other) || other.contains(*this); }

  std::string str() const {
    return "[" + left().str() + ", " + right().str() + ")";
  }

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
  // (level, index) order: coarse to fine, left to right.
  friend auto operator<=>(const DyadicInterval&, const DyadicInterval&) = default;
};

inline std::pair<DyadicInterval, DyadicInterval> halves(const DyadicInterval& interval) {
  return {interval.left_half(), interval.right_half()};
}

/// A finite union of half-open rational intervals in [0,1), kept in canonical
/// form: sorted, pairwise disjoint, with touching pieces merged.
class StepSet {
 public:
  using Piece = std::pair<Rational, Rational>;

  StepSet() = default;

  static StepSet normalize(std::vector<Piece> raw) {
    for (const auto& [l, r] : raw) {
      if (!(l < r) || l < Rational(0) || Rational(1) < r) {
        throw InputError("malformed interval (" + l.str() + ", " + r.str() +
                         "): need 0 <= left < right <= 1");
      }
    }
    std::sort(raw.begin(), raw.end());
    StepSet out;
    for (auto& piece : raw) {
      if (!out.pieces_.empty() && piece.first <= out.pieces_.back().second) {
        if (out.pieces_.back().second < piece.second) out.pieces_.back().second = piece.second;
      } else {
        out.pieces_.push_back(std::move(piece));
      }
    }
    return out;
  }

  static StepSet full() { return normalize({{Rational(0), Rational(1)}}); }
  static StepSet interval(Rational left, Rational right) {
    return normalize({{std::move(left), std::move(right)}});
  }

  /// Union of the level-`resolution` cells whose flag is set.
  static StepSet from_cells(int resolution, const std::vector<bool>& cells) {
    if (resolution < 0 || resolution > DyadicInterval::kMaxLevel ||
        cells.size() != (std::size_t{1} << resolution)) {
      throw InputError("cell vector size does not match 2^resolution");
    }
    std::vector<Piece> raw;
    const Rational width = Rational::pow2(-resolution);
    std::size_t i = 0;
    while (i < cells.size()) {
      if (!cells[i]) { ++i; continue; }
      std::size_t j = i;
      while (j < cells.size() && cells[j]) ++j;
      raw.emplace_back(Rational(i) * width, Rational(j) * width);
      i = j;
    }
    return normalize(std::move(raw));
  }

  const std::vector<Piece>& intervals() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  Rational measure() const {
    Rational total;
    for (const auto& [l, r] : pieces_) total += r - l;
    return total;
  }

  bool contains(const Rational& x) const {
    for (const auto& [l, r] : pieces_) {
      if (l <= x && x < r) return true;
      if (x < l) break;
    }
    return false;
  }

  /// Complement inside [0,1).
  StepSet complement() const {
    std::vector<Piece> raw;
    Rational cursor(0);
    for (const auto& [l, r] : pieces_) {
      if (cursor < l) raw.emplace_back(cursor, l);
      cursor = r;
    }
    if (cursor < Rational(1)) raw.emplace_back(cursor, Rational(1));
    return normalize(std::move(raw));
  }

  /// |E ∩ [a, b)|.
  Rational overlap(const Rational& a, const Rational& b) const {
    Rational total;
    // first piece whose right end exceeds a
    auto it = std::partition_point(pieces_.begin(), pieces_.end(),
                                   [&](const Piece& p) { return p.second <= a; });
    for (; it != pieces_.end() && it->first < b; ++it) {
      const Rational& lo = max(it->first, a);
      const Rational& hi = min(it->second, b);
      if (lo < hi) total += hi - lo;
    }
    return total;
  }

  friend bool operator==(const StepSet&, const StepSet&) = default;
  friend auto operator<=>(const StepSet& a, const StepSet& b) { return a.pieces_ <=> b.pieces_; }

 private:
  std::vector<Piece> pieces_;
};

inline Rational intersect_measure(const StepSet& set, const DyadicInterval& interval) {
  return set.overlap(interval.left(), interval.right());
}

/// q_I = |I ∩ E| / |I|.
inline Rational density(const StepSet& set, const DyadicInterval& interval) {
  return intersect_measure(set, interval) * Rational::pow2(interval.level);
}

}  // namespace haar_riesz
