#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "haar_riesz/constants.hpp"
#include "haar_riesz/errors.hpp"
#include "haar_riesz/gram.hpp"
#include "haar_riesz/haar.hpp"
#include "haar_riesz/measure.hpp"
#include "haar_riesz/rational.hpp"

namespace haar_riesz {

/// SplitMix64 (Steele, Lea, Flood 2014): state advances by 0x9E3779B97F4A7C15,
/// output is the variant-13 finalizer with multipliers 0xBF58476D1CE4E5B9 and
/// 0x94D049BB133111EB. Fixed forever; golden values in the tests depend on it.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31U);
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11U) * 0x1.0p-53; }

  /// Uniform in [0, bound) by modulo reduction.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

/// Seed for iteration `i` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) {
  return SplitMix64::mix(seed ^ (i + 0x9E3779B97F4A7C15ULL));
}

/// Worker count from HAAR_RIESZ_THREADS, else the hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("HAAR_RIESZ_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

inline std::vector<bool> random_cells(int resolution, double density_bias, SplitMix64& rng) {
  if (resolution < 1 || resolution > 24) throw InputError("resolution must lie in [1, 24]");
  if (!(density_bias > 0.0) || density_bias > 1.0) throw InputError("density bias must lie in (0, 1]");
  std::vector<bool> cells(std::size_t{1} << resolution);
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = rng.uniform() < density_bias;
  return cells;
}

/// Each level-`resolution` cell kept independently with probability `density_bias`.
inline StepSet random_stepset(int resolution, double density_bias, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return StepSet::from_cells(resolution, random_cells(resolution, density_bias, rng));
}

struct SpectralSummary {
  double ratio = 1.0;       // λ_min of the normalized pencil
  double lambda_max = 1.0;  // λ_max of the normalized pencil
  std::size_t family_size = 0;
};

/// Optimal Riesz constant of the admissible family, in floating point.
/// An empty family is vacuously orthogonal: ratio 1.
inline SpectralSummary min_ratio(const StepSet& set, const Rational& p, int depth) {
  const auto family = enumerate_family(depth, set, p);
  if (family.empty()) return {};
  const auto bounds = pencil_bounds(build_gram(family, set, false));
  return {bounds.lambda_min, bounds.lambda_max, family.size()};
}

inline constexpr long kCertificateBits = 20;

/// Largest k/2^20 with G - (k/2^20)·diag(G) ⪰ 0, found by exact bisection.
/// For a nonempty family the next grid point fails: at c > 1 every diagonal entry is negative.
inline Rational certificate_lower(const GramMatrix& gram) {
  if (gram.size() == 0) return Rational(1);
  const auto diag = gram.diagonal();
  const Rational unit = Rational::pow2(-kCertificateBits);
  long lo = 0;
  long hi = (1L << kCertificateBits) + 1;
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (psd_certificate(gram, Rational(mid) * unit, diag)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return Rational(lo) * unit;
}

enum class SearchMode { random, greedy_flip };

inline std::string to_string(SearchMode mode) { return mode == SearchMode::random ? "random" : "greedy-flip"; }

inline SearchMode parse_search_mode(const std::string& text) {
  if (text == "random") return SearchMode::random;
  if (text == "greedy-flip") return SearchMode::greedy_flip;
  throw InputError("unknown search mode '" + text + "' (expected random or greedy-flip)");
}

struct SearchConfig {
  Rational p;
  int depth = 6;
  int cell_resolution = 8;
  int iterations = 100;
  std::uint64_t seed = 0;
  SearchMode mode = SearchMode::random;
  // Each fresh random set draws its own inclusion probability from [bias_low, bias_high).
  double bias_low = 0.5;
  double bias_high = 1.0;
  // greedy-flip restarts from a fresh random set after this many rejected flips in a row
  int restart_after = 64;
  unsigned threads = 0;  // 0: worker_count()
};

struct SearchResult {
  StepSet best_set;
  double best_ratio = 1.0;
  double best_lambda_max = 1.0;
  std::size_t family_size = 0;
  Rational certificate_lower;
  std::vector<std::pair<int, double>> history;
  std::optional<Rational> riesz_floor;  // riesz_constant(p) when p > 2/3
  bool floor_certified = true;          // exact G - c(p) D ⪰ 0 on the best set
  std::size_t floor_violations = 0;     // float ratio < c(p) - 1e-8 anywhere
  std::size_t ceiling_violations = 0;   // float λ_max > 1/p + 1e-8 anywhere
  std::size_t evaluations = 0;
};

namespace detail {

struct Candidate {
  StepSet set;
  SpectralSummary summary;
};

inline bool better(const Candidate& a, const Candidate& b) {
  if (a.summary.ratio != b.summary.ratio) return a.summary.ratio < b.summary.ratio;
  return a.set < b.set;
}

class Tracker {
 public:
  explicit Tracker(const SearchConfig& cfg) {
    if (Rational(2, 3) < cfg.p) floor_ = riesz_constant(cfg.p);
    ceiling_ = cfg.p.reciprocal().to_double() + 1e-8;
  }

  const std::optional<Rational>& floor() const { return floor_; }

  void audit(const SpectralSummary& s, SearchResult& out) const {
    ++out.evaluations;
    if (floor_ && s.ratio < floor_->to_double() - 1e-8) ++out.floor_violations;
    if (s.lambda_max > ceiling_) ++out.ceiling_violations;
  }

 private:
  std::optional<Rational> floor_;
  double ceiling_;
};

inline double draw_bias(const SearchConfig& cfg, SplitMix64& rng) {
  return cfg.bias_low + (cfg.bias_high - cfg.bias_low) * rng.uniform();
}

inline void validate(const SearchConfig& cfg) {
  if (cfg.depth < 0 || cfg.depth > 16) throw InputError("search depth must lie in [0, 16]");
  if (cfg.cell_resolution < 1 || cfg.cell_resolution > 20) throw InputError("resolution must lie in [1, 20]");
  if (cfg.iterations < 1) throw InputError("iterations must be at least 1");
  if (!(Rational(0) < cfg.p) || Rational(1) < cfg.p) throw InputError("p must lie in (0, 1]");
  if (!(cfg.bias_low > 0.0) || cfg.bias_high > 1.0 || cfg.bias_low > cfg.bias_high) {
    throw InputError("bias range must satisfy 0 < low <= high <= 1");
  }
  if (cfg.restart_after < 1) throw InputError("restart_after must be at least 1");
}

inline std::vector<Candidate> random_candidates(const SearchConfig& cfg) {
  const auto n = static_cast<std::size_t>(cfg.iterations);
  std::vector<Candidate> out(n);
  const unsigned threads = std::min<unsigned>(cfg.threads == 0 ? worker_count() : cfg.threads,
                                              static_cast<unsigned>(n));
  auto work = [&](unsigned t) {
    for (std::size_t i = t; i < n; i += threads) {
      SplitMix64 rng(derive_seed(cfg.seed, i));
      const double bias = draw_bias(cfg, rng);
      StepSet set = StepSet::from_cells(cfg.cell_resolution, random_cells(cfg.cell_resolution, bias, rng));
      const auto summary = min_ratio(set, cfg.p, cfg.depth);
      out[i] = {std::move(set), summary};
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace detail

/// Lowest min_ratio found over random sets or by single-cell greedy descent.
/// The float path drives the search; the exact certificate covers the final set.
inline SearchResult search_extremal(const SearchConfig& cfg) {
  detail::validate(cfg);
  const detail::Tracker tracker(cfg);
  SearchResult out;
  out.riesz_floor = tracker.floor();

  std::optional<detail::Candidate> best;
  auto offer = [&](const StepSet& set, const SpectralSummary& s) {
    detail::Candidate c{set, s};
    if (!best || detail::better(c, *best)) best = std::move(c);
  };

  if (cfg.mode == SearchMode::random) {
    const auto candidates = detail::random_candidates(cfg);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      tracker.audit(candidates[i].summary, out);
      out.history.emplace_back(static_cast<int>(i), candidates[i].summary.ratio);
      offer(candidates[i].set, candidates[i].summary);
    }
  } else {
    SplitMix64 rng(cfg.seed);
    const std::uint64_t cell_count = std::uint64_t{1} << cfg.cell_resolution;
    auto fresh = [&] { return random_cells(cfg.cell_resolution, detail::draw_bias(cfg, rng), rng); };

    std::vector<bool> cells = fresh();
    StepSet current = StepSet::from_cells(cfg.cell_resolution, cells);
    SpectralSummary current_summary = min_ratio(current, cfg.p, cfg.depth);
    tracker.audit(current_summary, out);
    offer(current, current_summary);
    int stagnation = 0;
    for (int it = 0; it < cfg.iterations; ++it) {
      const auto flip = static_cast<std::size_t>(rng.below(cell_count));
      cells[flip] = !cells[flip];
      StepSet trial = StepSet::from_cells(cfg.cell_resolution, cells);
      const auto trial_summary = min_ratio(trial, cfg.p, cfg.depth);
      tracker.audit(trial_summary, out);
      if (trial_summary.ratio < current_summary.ratio) {
        current = std::move(trial);
        current_summary = trial_summary;
        stagnation = 0;
        offer(current, current_summary);
      } else {
        cells[flip] = !cells[flip];
        if (++stagnation >= cfg.restart_after) {
          cells = fresh();
          current = StepSet::from_cells(cfg.cell_resolution, cells);
          current_summary = min_ratio(current, cfg.p, cfg.depth);
          tracker.audit(current_summary, out);
          offer(current, current_summary);
          stagnation = 0;
        }
      }
      out.history.emplace_back(it, current_summary.ratio);
    }
  }

  out.best_set = best->set;
  out.best_ratio = best->summary.ratio;
  out.best_lambda_max = best->summary.lambda_max;
  out.family_size = best->summary.family_size;
  const auto family = enumerate_family(cfg.depth, out.best_set, cfg.p);
  const GramMatrix gram = build_gram(family, out.best_set, false);
  out.certificate_lower = certificate_lower(gram);
  if (out.riesz_floor) out.floor_certified = psd_certificate(gram, *out.riesz_floor, gram.diagonal());
  return out;
}

}  // namespace haar_riesz
