#pragma once

// Coefficient matrices of the rational and trigonometric KZ operators
// and of the rational and trigonometric dynamical differential
// operators, with closed-form partial derivatives.
//
// Every operator is written as (scaled derivative) - coeff:
//   KZ_RAT   kappa d/dz_i         - A_i
//   KZ_TRIG  kappa z_i d/dz_i     - Ahat_i
//   DD_RAT   kappa d/dlam_a       - B_a
//   DD_TRIG  kappa lam_a d/dlam_a - M_a
// so the e_aa^2/2 term of the trigonometric dynamical operator enters
// M_a with a minus sign.
//
// For L = kappa s_u d_u - A and G = kappa s_v d_v - B (u != v):
//   [L, G] = kappa (s_v d_v A - s_u d_u B) + A B - B A.

#include <string>

#include "kzdual/gl_action.hpp"
#include "kzdual/sampling.hpp"

namespace kzdual {

enum class Family { KzRat, KzTrig, DdRat, DdTrig };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::KzRat: return "kz_rat";
    case Family::KzTrig: return "kz_trig";
    case Family::DdRat: return "dd_rat";
    case Family::DdTrig: return "dd_trig";
  }
  return "?";
}

/// KZ families are indexed by tensor factors, DD families by Cartan directions.
inline bool indexes_factors(Family f) { return f == Family::KzRat || f == Family::KzTrig; }
/// EULER scaling (kappa u d/du) for the trigonometric families.
inline bool euler_scaled(Family f) { return f == Family::KzTrig || f == Family::DdTrig; }

enum class OmegaVariant { Full, Plus, Minus, Zero };

/// A coordinate of a ParamPoint: factor coordinate z_index or Cartan
/// coordinate lam_index.
struct Var {
  enum class Kind { Z, Lam } kind;
  int index;
  friend bool operator==(const Var&, const Var&) = default;
};

inline Var differentiated_var(Family f, int index) {
  return Var{indexes_factors(f) ? Var::Kind::Z : Var::Kind::Lam, index};
}

namespace detail {

/// (e_ab)^{(i)} (e_ba)^{(j)} restricted to `block`.
inline QMatrix local_exchange(Side side, int a, int b, int i, int j, const BlockPtr& block) {
  const BlockMap first = local_generator(side, b, a, j, block);
  const BlockMap second = local_generator(side, a, b, i, first.target);
  return compose(second, first).matrix;
}

inline void check_point(Side side, const Margins& m, const ParamPoint& p) {
  const SideView view{side, m};
  if (static_cast<int>(p.z.size()) != view.factor_count() ||
      static_cast<int>(p.lam.size()) != view.cartan_count())
    throw DimensionMismatch(std::string("point does not match the ") + side_name(side) +
                            " roles of the block");
}

inline Rat inverse_difference(const Rat& u, const Rat& v) {
  const Rat diff = u - v;
  if (sgn(diff) == 0) throw SingularPoint("coincident coordinates");
  return 1 / diff;
}

inline const Rat& coord(const ParamPoint& p, Var v) {
  return v.kind == Var::Kind::Z ? p.z.at(static_cast<std::size_t>(v.index))
                                : p.lam.at(static_cast<std::size_t>(v.index));
}

}  // namespace detail

/// sum over the variant's (a,b) range of (e_ab)^{(i)} (e_ba)^{(j)}:
/// FULL all pairs, ZERO half the diagonal, PLUS and MINUS the half
/// diagonal plus the a<b (resp. a>b) terms, so FULL = PLUS + MINUS.
inline QMatrix omega(OmegaVariant variant, Side side, int i, int j, const BlockPtr& block) {
  const SideView view{side, block->margins()};
  view.check_factor(i);
  view.check_factor(j);
  if (i == j) throw IndexOutOfRange("omega needs two distinct factors");
  const int K = view.cartan_count();
  const Rat diag_weight = variant == OmegaVariant::Full ? Rat(1) : make_rat(1, 2);
  QMatrix out(block->size(), block->size());
  for (std::size_t s = 0; s < block->size(); ++s) {
    const Table& d = block->tables()[s];
    long acc = 0;
    for (int a = 0; a < K; ++a) acc += view.entry(d, a, i) * view.entry(d, a, j);
    out(s, s) = diag_weight * acc;
  }
  if (variant == OmegaVariant::Zero) return out;
  for (int a = 0; a < K; ++a) {
    for (int b = 0; b < K; ++b) {
      if (a == b) continue;
      const bool keep = variant == OmegaVariant::Full ||
                        (variant == OmegaVariant::Plus && a < b) ||
                        (variant == OmegaVariant::Minus && a > b);
      if (keep) out += detail::local_exchange(side, a, b, i, j, block);
    }
  }
  return out;
}

/// Diagonal (e_aa)^{(i)}.
inline QMatrix local_cartan(Side side, int a, int i, const BlockPtr& block) {
  return local_generator(side, a, a, i, block).matrix;
}

namespace detail {

/// e_ab e_ba - e_aa on the block.
inline QMatrix dynamical_term(Side side, int a, int b, const BlockPtr& block) {
  const int w = SideView{side, block->margins()}.cartan_weight(a);
  return round_trip(side, a, b, block) - QMatrix::scalar(block->size(), Rat(w));
}

}  // namespace detail

inline QMatrix coeff(Family family, Side side, int index, const BlockPtr& block,
                     const ParamPoint& point) {
  const SideView view{side, block->margins()};
  detail::check_point(side, block->margins(), point);
  const int F = view.factor_count();
  const int K = view.cartan_count();
  const std::size_t dim = block->size();
  QMatrix out(dim, dim);
  if (indexes_factors(family)) {
    view.check_factor(index);
    const int i = index;
    const Rat& zi = point.z[static_cast<std::size_t>(i)];
    for (int a = 0; a < K; ++a) {
      Rat c = point.lam[static_cast<std::size_t>(a)];
      if (family == Family::KzTrig) c -= make_rat(view.cartan_weight(a), 2);
      out.add_scaled(local_cartan(side, a, i, block), c);
    }
    for (int j = 0; j < F; ++j) {
      if (j == i) continue;
      const Rat& zj = point.z[static_cast<std::size_t>(j)];
      const Rat inv = detail::inverse_difference(zi, zj);
      if (family == Family::KzRat) {
        out.add_scaled(omega(OmegaVariant::Full, side, i, j, block), inv);
      } else {
        out.add_scaled(omega(OmegaVariant::Plus, side, i, j, block), Rat(zi * inv));
        out.add_scaled(omega(OmegaVariant::Minus, side, i, j, block), Rat(zj * inv));
      }
    }
    return out;
  }

  view.check_cartan(index);
  const int a = index;
  const Rat& la = point.lam[static_cast<std::size_t>(a)];
  for (int i = 0; i < F; ++i)
    out.add_scaled(local_cartan(side, a, i, block), point.z[static_cast<std::size_t>(i)]);
  if (family == Family::DdTrig) {
    const int w = view.cartan_weight(a);
    out -= QMatrix::scalar(dim, make_rat(w * w, 2));
    for (int b = 0; b < K; ++b)
      for (int i = 0; i < F; ++i)
        for (int j = i + 1; j < F; ++j) {
          if (a == b) out += local_cartan(side, a, i, block) * local_cartan(side, a, j, block);
          else out += detail::local_exchange(side, a, b, i, j, block);
        }
  }
  for (int b = 0; b < K; ++b) {
    if (b == a) continue;
    const Rat& lb = point.lam[static_cast<std::size_t>(b)];
    const Rat inv = detail::inverse_difference(la, lb);
    const Rat c = family == Family::DdRat ? inv : Rat(lb * inv);
    out.add_scaled(detail::dynamical_term(side, a, b, block), c);
  }
  return out;
}

/// Exact partial derivative of coeff(family, side, index) in `var`.
inline QMatrix coeff_partial(Family family, Side side, int index, Var var, const BlockPtr& block,
                             const ParamPoint& point) {
  const SideView view{side, block->margins()};
  detail::check_point(side, block->margins(), point);
  const std::size_t dim = block->size();
  QMatrix out(dim, dim);
  if (indexes_factors(family)) {
    view.check_factor(index);
    const int i = index;
    if (var.kind == Var::Kind::Lam) {
      view.check_cartan(var.index);
      return local_cartan(side, var.index, i, block);
    }
    view.check_factor(var.index);
    const Rat& zi = point.z[static_cast<std::size_t>(i)];
    // A_i:    d_zi 1/(zi-zj) = -1/(zi-zj)^2,  d_zj = +1/(zi-zj)^2
    // Ahat_i: d_zi (zi P + zj M)/(zi-zj) = -zj Omega/(zi-zj)^2,
    //         d_zj                       = +zi Omega/(zi-zj)^2
    auto term = [&](int j, bool wrt_i) {
      const Rat& zj = point.z[static_cast<std::size_t>(j)];
      const Rat inv = detail::inverse_difference(zi, zj);
      Rat c = inv * inv;
      if (family == Family::KzTrig) c *= wrt_i ? zj : zi;
      if (wrt_i) c = -c;
      out.add_scaled(omega(OmegaVariant::Full, side, i, j, block), c);
    };
    if (var.index == i) {
      for (int j = 0; j < view.factor_count(); ++j)
        if (j != i) term(j, true);
    } else {
      term(var.index, false);
    }
    return out;
  }

  view.check_cartan(index);
  const int a = index;
  if (var.kind == Var::Kind::Z) {
    view.check_factor(var.index);
    return local_cartan(side, a, var.index, block);
  }
  view.check_cartan(var.index);
  const Rat& la = point.lam[static_cast<std::size_t>(a)];
  // B_a:  d_la 1/(la-lb) = -1/(la-lb)^2,   d_lb = +1/(la-lb)^2
  // M_a:  d_la lb/(la-lb) = -lb/(la-lb)^2, d_lb = +la/(la-lb)^2
  auto term = [&](int b, bool wrt_a) {
    const Rat& lb = point.lam[static_cast<std::size_t>(b)];
    const Rat inv = detail::inverse_difference(la, lb);
    Rat c = inv * inv;
    if (family == Family::DdTrig) c *= wrt_a ? lb : la;
    if (wrt_a) c = -c;
    out.add_scaled(detail::dynamical_term(side, a, b, block), c);
  };
  if (var.index == a) {
    for (int b = 0; b < view.cartan_count(); ++b)
      if (b != a) term(b, true);
  } else {
    term(var.index, false);
  }
  return out;
}

/// Residual of [kappa s_u d_u - A, kappa s_v d_v - B]; zero when the
/// two operators commute.
inline QMatrix curvature(Family fam_a, int idx_a, Family fam_b, int idx_b, Side side,
                         const BlockPtr& block, const ParamPoint& point) {
  const Var u = differentiated_var(fam_a, idx_a);
  const Var v = differentiated_var(fam_b, idx_b);
  if (u == v) throw IndexOutOfRange("both operators differentiate the same coordinate");
  const QMatrix A = coeff(fam_a, side, idx_a, block, point);
  const QMatrix B = coeff(fam_b, side, idx_b, block, point);
  QMatrix dv_A = coeff_partial(fam_a, side, idx_a, v, block, point);
  QMatrix du_B = coeff_partial(fam_b, side, idx_b, u, block, point);
  if (euler_scaled(fam_b)) dv_A *= detail::coord(point, v);
  if (euler_scaled(fam_a)) du_B *= detail::coord(point, u);
  QMatrix out = (dv_A - du_B) * point.kappa;
  out += commutator(A, B);
  return out;
}

}  // namespace kzdual
