#pragma once

// Deterministic non-singular parameter points.

#include <cstdint>
#include <optional>
#include <vector>

#include "kzdual/rational.hpp"

namespace kzdual {

/// Parameter values for one evaluation. `z` are the tensor-factor
/// coordinates and `lam` the Cartan coordinates of whichever side the
/// point is handed to; duality checks pass the swapped point to the
/// gl_n side.
struct ParamPoint {
  std::vector<Rat> z;
  std::vector<Rat> lam;
  Rat kappa;
  std::optional<Rat> t;

  /// Roles exchanged: lam becomes the factor group and z the Cartan group.
  ParamPoint swapped() const { return ParamPoint{lam, z, kappa, t}; }

  ParamPoint with_z_shift(std::size_t i, const Rat& by) const {
    ParamPoint p = *this;
    p.z.at(i) += by;
    return p;
  }
  ParamPoint with_lam_shift(std::size_t a, const Rat& by) const {
    ParamPoint p = *this;
    p.lam.at(a) += by;
    return p;
  }

  friend bool operator==(const ParamPoint&, const ParamPoint&) = default;
};

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t x = (state_ += 0x9E3779B97F4A7C15ULL);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
  }

 private:
  std::uint64_t state_;
};

namespace sampling {

inline constexpr long kNumeratorBound = 20;
inline constexpr long kZDenominator = 7;
inline constexpr long kLamDenominator = 11;
inline constexpr long kKappaDenominator = 13;
inline constexpr long kTDenominator = 17;
// Coordinate differences are also probed after shifting by c*kappa,
// |c| <= this; difference operators shift by at most two steps.
inline constexpr long kKappaShiftReach = 2;

/// Uniform over [-20, 20] \ {0}.
inline long draw_numerator(SplitMix64& rng) {
  const auto span = static_cast<std::uint64_t>(2 * kNumeratorBound);
  const long idx = static_cast<long>(rng.next() % span);
  return idx < kNumeratorBound ? idx - kNumeratorBound : idx - kNumeratorBound + 1;
}

inline bool group_ok(const std::vector<Rat>& xs, const Rat& kappa) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (sgn(xs[i]) == 0) return false;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      for (long c = -kKappaShiftReach; c <= kKappaShiftReach; ++c) {
        if (is_integer(Rat(xs[i] - xs[j] + c * kappa))) return false;
      }
    }
  }
  return true;
}

}  // namespace sampling

/// True when the point keeps every B, C and R factor away from its poles.
/// kappa doubles as the second spectral parameter of the braid and
/// Yang-Baxter checks, so it must not be an integer either.
inline bool point_is_nonsingular(const ParamPoint& p, long integer_guard) {
  if (sgn(p.kappa) == 0 || is_integer(p.kappa)) return false;
  if (!sampling::group_ok(p.z, p.kappa) || !sampling::group_ok(p.lam, p.kappa)) return false;
  if (p.t) {
    if (is_integer(*p.t)) return false;
    for (long s = -integer_guard; s <= integer_guard; ++s)
      if (sgn(Rat(*p.t + s)) == 0) return false;
  }
  return true;
}

inline ParamPoint sample_point(std::uint64_t seed, std::size_t n, std::size_t k, bool need_t,
                               long integer_guard) {
  using namespace sampling;
  SplitMix64 rng(seed);
  for (;;) {
    ParamPoint p;
    p.z.reserve(n);
    p.lam.reserve(k);
    for (std::size_t i = 0; i < n; ++i) p.z.push_back(make_rat(draw_numerator(rng), kZDenominator));
    for (std::size_t a = 0; a < k; ++a)
      p.lam.push_back(make_rat(draw_numerator(rng), kLamDenominator));
    p.kappa = make_rat(draw_numerator(rng), kKappaDenominator);
    if (need_t) p.t = make_rat(draw_numerator(rng), kTDenominator);
    if (point_is_nonsingular(p, integer_guard)) return p;
  }
}

}  // namespace kzdual
