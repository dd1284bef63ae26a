#pragma once

// B-series, Gamma-ratio scalars, rational R-matrices, and the ordered
// products X_a and K_i behind the difference dynamical and quantized
// KZ operators Q_{lam_a} = X_a T_{lam_a}, Z_{z_i} = K_i T_{z_i}, where
// (T_u f)(u) = f(u + kappa). Shift operators are never materialized;
// identities involving them are expanded into matrix identities by the
// verification suites.

#include <string>
#include <vector>

#include "kzdual/diff_operators.hpp"
#include "kzdual/gl_action.hpp"
#include "kzdual/projector_cache.hpp"
#include "kzdual/sampling.hpp"

namespace kzdual {

namespace detail {

inline Rat checked_inverse(const Rat& x, const char* what) {
  if (sgn(x) == 0) throw PoleAtT(std::string("pole in ") + what);
  return 1 / x;
}

inline Rat int_power(const Rat& base, int exponent) {
  if (exponent == 0) return 1;
  if (sgn(base) == 0) throw SingularPoint("zero coordinate raised to a power");
  Rat out = 1;
  for (int e = 0; e < (exponent < 0 ? -exponent : exponent); ++e) out *= base;
  return exponent < 0 ? Rat(1 / out) : out;
}

}  // namespace detail

/// B_ab(t) = 1 + sum_s e_ba^s e_ab^s prod_{j=1}^s 1/(j (t - e_aa + e_bb - j)).
/// Each term has zero weight, so the Cartan values are those of the block.
/// The sum stops at the first s where e_ab^s vanishes on the block.
inline QMatrix b_matrix(Side side, int a, int b, const Rat& t, const BlockPtr& block) {
  const SideView view{side, block->margins()};
  view.check_cartan(a);
  view.check_cartan(b);
  if (a == b) throw IndexOutOfRange("B-series needs a != b");
  const int shift = view.cartan_weight(b) - view.cartan_weight(a);
  QMatrix out = QMatrix::identity(block->size());
  if (block->empty()) return out;

  std::vector<BlockMap> lowering;  // lowering[s-1]: level s -> level s-1
  BlockMap up = total_generator(side, a, b, block);
  Rat coeff = 1;
  const int cap = block->margins().degree() + 1;
  for (int s = 1; s <= cap; ++s) {
    if (up.target->empty() || up.matrix.is_zero()) return out;
    coeff *= detail::checked_inverse(Rat(s * (t + shift - s)), "B-series");
    lowering.push_back(total_generator(side, b, a, up.target));
    BlockMap term = up;
    for (int r = s; r >= 1; --r) term = compose(lowering[static_cast<std::size_t>(r - 1)], term);
    out.add_scaled(term.matrix, coeff);
    up = compose(total_generator(side, a, b, up.target), up);
  }
  throw SingularMatrix("B-series failed to truncate");
}

/// Gamma(t+1) Gamma(t-w_a+w_b) / (Gamma(t-w_a) Gamma(t+w_b+1)) for
/// integer Cartan values w_a, w_b >= 0, i.e. prod_{j=0}^{w_a} (t-j)/(t-j+w_b).
inline Rat c_scalar(int w_a, int w_b, const Rat& t) {
  if (w_a < 0 || w_b < 0) throw IndexOutOfRange("C-scalar needs nonnegative weights");
  Rat out = 1;
  for (int j = 0; j <= w_a; ++j)
    out *= Rat(t - j) * detail::checked_inverse(Rat(t - j + w_b), "C-scalar");
  return out;
}

/// Eigenvalue prod_{j=0}^{label-1} (t-l+j)/(t+m-j) of R_{V_l V_m}(t) on
/// the summand V_{(l+m-label, label)}.
inline Rat r_eigenvalue(int l, int m, int label, const Rat& t) {
  Rat out = 1;
  for (int j = 0; j < label; ++j)
    out *= Rat(t - l + j) * detail::checked_inverse(Rat(t + m - j), "R-matrix");
  return out;
}

/// Rational R-matrix on V_l (x) V_m for gl_N, normalized to fix v_l (x) v_m.
inline QMatrix r_matrix(const RMatrixKey& key, const Rat& t,
                        ProjectorCache& cache = default_projector_cache()) {
  const auto proj = cache.get(key);
  const auto& dec = proj->decomposition;
  QMatrix out(proj->pair.size(), proj->pair.size());
  for (std::size_t p = 0; p < dec.labels.size(); ++p)
    out.add_scaled(dec.projectors[p], r_eigenvalue(key.l, key.m, dec.labels[p], t));
  return out;
}

/// R_{f1 f2}(t) acting on tensor factors (f1, f2) of the block.
inline QMatrix embedded_r_matrix(Side side, int f1, int f2, const Rat& t, const BlockPtr& block,
                                 ProjectorCache& cache = default_projector_cache()) {
  const SideView view{side, block->margins()};
  view.check_factor(f1);
  view.check_factor(f2);
  const RMatrixKey key{view.cartan_count(), view.factor_degree(f1), view.factor_degree(f2)};
  const auto proj = cache.get(key);
  return embed_pair_operator(side, f1, f2, proj->pair, r_matrix(key, t, cache), *block);
}

/// L^{-1} * diag * R split of an X_a or K_i product.
struct OrderedProduct {
  QMatrix left_inverse;
  QMatrix diagonal;
  QMatrix right;

  QMatrix value() const { return left_inverse * diagonal * right; }
};

namespace detail {

inline OrderedProduct x_factors(Side side, int a, const BlockPtr& block, const ParamPoint& p) {
  const SideView view{side, block->margins()};
  check_point(side, block->margins(), p);
  view.check_cartan(a);
  const int K = view.cartan_count();
  const std::size_t dim = block->size();
  const auto& lam = p.lam;
  auto ua = static_cast<std::size_t>(a);

  QMatrix left = QMatrix::identity(dim);  // B_{a,K} ... B_{a,a+1}
  for (int b = K - 1; b > a; --b)
    left = left * b_matrix(side, a, b, Rat(lam[ua] - lam[static_cast<std::size_t>(b)]), block);
  QMatrix right = QMatrix::identity(dim);  // B_{1,a} ... B_{a-1,a}
  for (int b = 0; b < a; ++b)
    right = right *
            b_matrix(side, b, a, Rat(lam[static_cast<std::size_t>(b)] - lam[ua] - p.kappa), block);

  std::vector<Rat> diag(dim);
  for (std::size_t s = 0; s < dim; ++s) {
    Rat v = 1;
    for (int f = 0; f < view.factor_count(); ++f)
      v *= int_power(p.z[static_cast<std::size_t>(f)], -view.entry(block->tables()[s], a, f));
    diag[s] = v;
  }
  return OrderedProduct{mat_inverse(left), QMatrix::diagonal(diag), std::move(right)};
}

inline OrderedProduct k_factors(Side side, int i, const BlockPtr& block, const ParamPoint& p,
                                ProjectorCache& cache) {
  const SideView view{side, block->margins()};
  check_point(side, block->margins(), p);
  view.check_factor(i);
  const int F = view.factor_count();
  const std::size_t dim = block->size();
  const auto& z = p.z;
  auto ui = static_cast<std::size_t>(i);

  QMatrix left = QMatrix::identity(dim);  // R_{i,n} ... R_{i,i+1}
  for (int j = F - 1; j > i; --j)
    left = left * embedded_r_matrix(side, i, j, Rat(z[ui] - z[static_cast<std::size_t>(j)]), block, cache);
  QMatrix right = QMatrix::identity(dim);  // R_{1,i} ... R_{i-1,i}
  for (int j = 0; j < i; ++j)
    right = right * embedded_r_matrix(side, j, i, Rat(z[static_cast<std::size_t>(j)] - z[ui] - p.kappa),
                                      block, cache);

  std::vector<Rat> diag(dim);
  for (std::size_t s = 0; s < dim; ++s) {
    Rat v = 1;
    for (int a = 0; a < view.cartan_count(); ++a)
      v *= int_power(p.lam[static_cast<std::size_t>(a)], -view.entry(block->tables()[s], a, i));
    diag[s] = v;
  }
  return OrderedProduct{mat_inverse(left), QMatrix::diagonal(diag), std::move(right)};
}

}  // namespace detail

/// X_a = (B_{aK}(lam_{aK}) ... B_{a,a+1}(lam_{a,a+1}))^{-1}
///       prod_i (z_i^{-e_aa})^{(i)} B_{1a}(lam_{1a}-kappa) ... B_{a-1,a}(lam_{a-1,a}-kappa)
inline QMatrix x_matrix(Side side, int a, const BlockPtr& block, const ParamPoint& point) {
  return detail::x_factors(side, a, block, point).value();
}

/// z_i dX_a/dz_i = -L^{-1} (e_aa)^{(i)} diag R.
inline QMatrix x_scaled_partial(Side side, int a, int i, const BlockPtr& block,
                                const ParamPoint& point) {
  SideView{side, block->margins()}.check_factor(i);
  const auto parts = detail::x_factors(side, a, block, point);
  return -(parts.left_inverse * local_cartan(side, a, i, block) * parts.diagonal * parts.right);
}

/// K_i = (R_{in}(z_{in}) ... R_{i,i+1}(z_{i,i+1}))^{-1}
///       prod_a (lam_a^{-e_aa})^{(i)} R_{1i}(z_{1i}-kappa) ... R_{i-1,i}(z_{i-1,i}-kappa)
inline QMatrix k_matrix(Side side, int i, const BlockPtr& block, const ParamPoint& point,
                        ProjectorCache& cache = default_projector_cache()) {
  return detail::k_factors(side, i, block, point, cache).value();
}

/// lam_a dK_i/dlam_a = -L^{-1} (e_aa)^{(i)} diag R.
inline QMatrix k_scaled_partial(Side side, int i, int a, const BlockPtr& block,
                                const ParamPoint& point,
                                ProjectorCache& cache = default_projector_cache()) {
  SideView{side, block->margins()}.check_cartan(a);
  const auto parts = detail::k_factors(side, i, block, point, cache);
  return -(parts.left_inverse * local_cartan(side, a, i, block) * parts.diagonal * parts.right);
}

/// N_c = prod_{b<c} C_{bc}(lam_{bc} - kappa) prod_{b>c} C_{cb}(lam_{cb})^{-1},
/// a scalar on the block; coordinates are the point's Cartan group.
inline Rat n_scalar(Side side, int c, const BlockPtr& block, const ParamPoint& point) {
  const SideView view{side, block->margins()};
  detail::check_point(side, block->margins(), point);
  view.check_cartan(c);
  const auto& lam = point.lam;
  const auto uc = static_cast<std::size_t>(c);
  Rat out = 1;
  for (int b = 0; b < view.cartan_count(); ++b) {
    const auto ub = static_cast<std::size_t>(b);
    if (b < c) {
      out *= c_scalar(view.cartan_weight(b), view.cartan_weight(c), Rat(lam[ub] - lam[uc] - point.kappa));
    } else if (b > c) {
      out *= detail::checked_inverse(
          c_scalar(view.cartan_weight(c), view.cartan_weight(b), Rat(lam[uc] - lam[ub])), "N-normalizer");
    }
  }
  return out;
}

}  // namespace kzdual
