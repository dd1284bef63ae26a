#pragma once

// Residuals of the (gl_k, gl_n) duality identities and the spectral
// checks behind the B/C/R comparison.
//
// Both actions are written in the same table basis, so "acts the same
// way" is literal matrix equality. The gl_n side receives the swapped
// point: its factor coordinates are the lam values and its Cartan
// coordinates the z values.
//
// For the differential identities the derivative parts coincide on the
// two sides (kappa d/dz_i, resp. kappa z_i d/dz_i), so
//   (kappa d_i - A) - (kappa d_i - B') = B' - A
// and only the coefficient matrices are compared. Every operator
// preserves weight blocks, so checking block by block covers all of P_kn.

#include <algorithm>
#include <string>
#include <vector>

#include "kzdual/diff_operators.hpp"
#include "kzdual/difference_operators.hpp"

namespace kzdual {

enum class DualityTag { NdKz, NdDd, HdKz, HdDd, ZqLeft, ZqRight, BcrLeft, BcrRight, Ikn };

inline const char* duality_tag_name(DualityTag t) {
  switch (t) {
    case DualityTag::NdKz: return "ND_KZ";
    case DualityTag::NdDd: return "ND_DD";
    case DualityTag::HdKz: return "HD_KZ";
    case DualityTag::HdDd: return "HD_DD";
    case DualityTag::ZqLeft: return "ZQ_LEFT";
    case DualityTag::ZqRight: return "ZQ_RIGHT";
    case DualityTag::BcrLeft: return "BCR_LEFT";
    case DualityTag::BcrRight: return "BCR_RIGHT";
    case DualityTag::Ikn: return "IKN";
  }
  return "?";
}

/// One displayed identity; `first`/`second` are 0-based indices (second
/// only for the BCR pair cases).
struct DualityCase {
  DualityTag tag;
  int first = 0;
  int second = 0;
};

inline std::string case_name(const DualityCase& c) {
  std::string out = duality_tag_name(c.tag);
  switch (c.tag) {
    case DualityTag::Ikn: return out;
    case DualityTag::BcrLeft:
    case DualityTag::BcrRight:
      return out + "(" + std::to_string(c.first + 1) + "," + std::to_string(c.second + 1) + ")";
    default: return out + "(" + std::to_string(c.first + 1) + ")";
  }
}

/// Spectral parameter of a point; BCR cases need it.
inline const Rat& spectral_parameter(const ParamPoint& p) {
  if (!p.t) throw DimensionMismatch("point has no spectral parameter");
  return *p.t;
}

/// Exact difference of the two sides of the identity; zero when it holds.
/// `point` is in gl_k roles: z has length n, lam length k.
inline QMatrix residual(const DualityCase& c, const BlockPtr& block, const ParamPoint& point) {
  const Margins& m = block->margins();
  if (c.tag != DualityTag::Ikn) detail::check_point(Side::GLK, m, point);
  const ParamPoint dual_point = point.swapped();
  const std::size_t dim = block->size();
  switch (c.tag) {
    case DualityTag::NdKz:
      return coeff(Family::KzRat, Side::GLK, c.first, block, point) -
             coeff(Family::DdRat, Side::GLN, c.first, block, dual_point);
    case DualityTag::NdDd:
      return coeff(Family::DdRat, Side::GLK, c.first, block, point) -
             coeff(Family::KzRat, Side::GLN, c.first, block, dual_point);
    case DualityTag::HdKz:
      return coeff(Family::KzTrig, Side::GLK, c.first, block, point) -
             coeff(Family::DdTrig, Side::GLN, c.first, block, dual_point);
    case DualityTag::HdDd:
      return coeff(Family::DdTrig, Side::GLK, c.first, block, point) -
             coeff(Family::KzTrig, Side::GLN, c.first, block, dual_point);
    case DualityTag::ZqLeft:
      return k_matrix(Side::GLK, c.first, block, point) -
             n_scalar(Side::GLN, c.first, block, dual_point) *
                 x_matrix(Side::GLN, c.first, block, dual_point);
    case DualityTag::ZqRight:
      return n_scalar(Side::GLK, c.first, block, point) * x_matrix(Side::GLK, c.first, block, point) -
             k_matrix(Side::GLN, c.first, block, dual_point);
    case DualityTag::BcrLeft: {
      const Rat& t = spectral_parameter(point);
      const auto ua = static_cast<std::size_t>(c.first);
      const auto ub = static_cast<std::size_t>(c.second);
      return b_matrix(Side::GLK, c.first, c.second, t, block) * c_scalar(m.mu.at(ua), m.mu.at(ub), t) -
             embedded_r_matrix(Side::GLN, c.first, c.second, t, block);
    }
    case DualityTag::BcrRight: {
      const Rat& t = spectral_parameter(point);
      const auto ui = static_cast<std::size_t>(c.first);
      const auto uj = static_cast<std::size_t>(c.second);
      return embedded_r_matrix(Side::GLK, c.first, c.second, t, block) -
             b_matrix(Side::GLN, c.first, c.second, t, block) *
                 c_scalar(m.lambda.at(ui), m.lambda.at(uj), t);
    }
    case DualityTag::Ikn: {
      long mu_total = 0;
      for (int v : m.mu) mu_total += v;
      long lambda_total = 0;
      for (int v : m.lambda) lambda_total += v;
      return casimir(Side::GLK, block) - casimir(Side::GLN, block) +
             QMatrix::scalar(dim, Rat(static_cast<long>(m.n) * lambda_total -
                                      static_cast<long>(m.k) * mu_total));
    }
  }
  throw IndexOutOfRange("unknown duality case");
}

// ---------------------------------------------------------------------
// Spectral checks.

/// prod_c (M - c) over the distinct values of `spectrum`.
inline QMatrix annihilation_residual(const QMatrix& M, std::vector<Rat> spectrum) {
  std::sort(spectrum.begin(), spectrum.end());
  spectrum.erase(std::unique(spectrum.begin(), spectrum.end()), spectrum.end());
  QMatrix out = QMatrix::identity(M.rows());
  for (const auto& c : spectrum) out = out * (M - QMatrix::scalar(M.rows(), c));
  return out;
}

/// Casimir values |D|^2 + |D| + 2m(m - |D| - 1), m = 0..min(m1, m2), of
/// gl_2 on a weight block with Cartan values (m1, m2).
inline std::vector<Rat> gl2_casimir_spectrum(int m1, int m2) {
  std::vector<Rat> out;
  const int D = m1 + m2;
  for (int m = 0; m <= std::min(m1, m2); ++m) out.emplace_back(D * D + D + 2 * m * (m - D - 1));
  return out;
}

/// gl_2 Casimir annihilated by its predicted spectrum (k = 2 blocks).
inline QMatrix itwo_residual(const BlockPtr& block) {
  const Margins& m = block->margins();
  if (m.k != 2) throw DimensionMismatch("gl_2 spectrum check needs k = 2");
  return annihilation_residual(casimir(Side::GLK, block), gl2_casimir_spectrum(m.mu[0], m.mu[1]));
}

/// prod_{j=m}^{m2-1} (t + m2 - j)/(t - m1 + j): the value of B_12(t) on
/// the summand V_{(m1+m2-m, m)}.
inline Rat b2_eigenvalue(int m1, int m2, int m, const Rat& t) {
  Rat out = 1;
  for (int j = m; j < m2; ++j)
    out *= Rat(t + m2 - j) * detail::checked_inverse(Rat(t - m1 + j), "B-eigenvalue");
  return out;
}

/// sum_m (B_12(t) - b_m) P_m over the Casimir projectors of a k = 2 block.
inline QMatrix b2_residual(const BlockPtr& block, const Rat& t) {
  const Margins& m = block->margins();
  if (m.k != 2) throw DimensionMismatch("B eigenvalue check needs k = 2");
  const int m1 = m.mu[0];
  const int m2 = m.mu[1];
  const auto spectrum = gl2_casimir_spectrum(m1, m2);
  const auto projectors = lagrange_projectors(casimir(Side::GLK, block), spectrum);
  const QMatrix B = b_matrix(Side::GLK, 0, 1, t, block);
  QMatrix out(block->size(), block->size());
  for (std::size_t j = 0; j < projectors.size(); ++j) {
    const Rat b = b2_eigenvalue(m1, m2, static_cast<int>(j), t);
    out += (B - QMatrix::scalar(block->size(), b)) * projectors[j];
  }
  return out;
}

/// Highest-weight vectors (columns) of the given weight in V_l (x) V_m.
inline QMatrix pair_highest_weight_vectors(const PairBlock& pair, const Multidegree& weight) {
  std::vector<std::size_t> cols;
  for (std::size_t s = 0; s < pair.size(); ++s) {
    const auto& [c, c2] = pair.basis()[s];
    bool match = true;
    for (std::size_t a = 0; a < weight.size(); ++a) match = match && c[a] + c2[a] == weight[a];
    if (match) cols.push_back(s);
  }
  std::vector<QMatrix> raising;
  for (int a = 0; a + 1 < pair.N(); ++a) {
    const QMatrix e = pair_generator(pair, a, a + 1, Leg::Both);
    QMatrix sub(pair.size(), cols.size());
    for (std::size_t r = 0; r < pair.size(); ++r)
      for (std::size_t q = 0; q < cols.size(); ++q) sub(r, q) = e(r, cols[q]);
    raising.push_back(std::move(sub));
  }
  const QMatrix kernel = raising.empty() ? QMatrix::identity(cols.size())
                                         : nullspace(vstack(raising, cols.size()));
  QMatrix out(pair.size(), kernel.cols());
  for (std::size_t q = 0; q < cols.size(); ++q)
    for (std::size_t v = 0; v < kernel.cols(); ++v) out(cols[q], v) = kernel(q, v);
  return out;
}

/// sum_{m'} (R(t) - r_{m'}(t)) h_{m'} over the highest-weight vector h_{m'}
/// of each summand, found independently of the projectors. Throws
/// SpectrumMismatch unless every summand has exactly one such vector.
inline QMatrix rn_residual(const RMatrixKey& key, const Rat& t,
                           ProjectorCache& cache = default_projector_cache()) {
  const PairBlock pair(key.N, key.l, key.m);
  const QMatrix R = r_matrix(key, t, cache);
  const auto labels = pair_labels(key.N, key.l, key.m);
  QMatrix out(pair.size(), labels.size());
  for (std::size_t q = 0; q < labels.size(); ++q) {
    Multidegree weight(static_cast<std::size_t>(key.N), 0);
    weight[0] = key.l + key.m - labels[q];
    if (key.N > 1) weight[1] = labels[q];
    const QMatrix h = pair_highest_weight_vectors(pair, weight);
    if (h.cols() != 1) throw SpectrumMismatch("summand multiplicity is not one");
    const QMatrix diff =
        (R - QMatrix::scalar(pair.size(), r_eigenvalue(key.l, key.m, labels[q], t))) * h;
    for (std::size_t r = 0; r < pair.size(); ++r) out(r, q) = diff(r, 0);
  }
  return out;
}

/// b_m(t) C(m1, m2, t) - r_m(t) for every summand m, as a 1 x (min+1) row.
inline QMatrix bcr_chain_residual(int m1, int m2, const Rat& t) {
  const int top = std::min(m1, m2);
  QMatrix out(1, static_cast<std::size_t>(top + 1));
  for (int m = 0; m <= top; ++m)
    out(0, static_cast<std::size_t>(m)) =
        b2_eigenvalue(m1, m2, m, t) * c_scalar(m1, m2, t) - r_eigenvalue(m1, m2, m, t);
  return out;
}

/// Highest-weight vectors of the block for `side`: the common kernel of
/// the raising totals e_{c,c+1}.
inline QMatrix highest_weight_vectors(Side side, const BlockPtr& block) {
  const SideView view{side, block->margins()};
  std::vector<QMatrix> raising;
  for (int c = 0; c + 1 < view.cartan_count(); ++c)
    raising.push_back(total_generator(side, c, c + 1, block).matrix);
  if (raising.empty()) return QMatrix::identity(block->size());
  return nullspace(vstack(raising, block->size()));
}

/// On a block whose Cartan weight nu is a partition, the Casimir acts on
/// highest-weight vectors by (nu, nu + 2 rho).
inline QMatrix casimir_highest_weight_residual(Side side, const BlockPtr& block) {
  const SideView view{side, block->margins()};
  std::vector<int> weight;
  for (int c = 0; c < view.cartan_count(); ++c) weight.push_back(view.cartan_weight(c));
  if (!std::is_sorted(weight.rbegin(), weight.rend()))
    throw DimensionMismatch("Cartan weight is not dominant");
  const Rat value = casimir_eigenvalue(static_cast<std::size_t>(view.cartan_count()),
                                       make_partition(weight));
  const QMatrix h = highest_weight_vectors(side, block);
  return casimir(side, block) * h - h * value;
}

/// Casimir annihilated by prod over nu |- D with at most min(k, n) parts
/// of (I - (nu, nu + 2 rho)).
inline QMatrix casimir_spectrum_residual(Side side, const BlockPtr& block) {
  const Margins& m = block->margins();
  const SideView view{side, m};
  const std::size_t N = static_cast<std::size_t>(view.cartan_count());
  const std::size_t parts = static_cast<std::size_t>(std::min(m.k, m.n));
  std::vector<Rat> spectrum;
  for (const auto& nu : enumerate_partitions(parts, m.degree()))
    spectrum.push_back(casimir_eigenvalue(N, nu));
  return annihilation_residual(casimir(side, block), std::move(spectrum));
}

}  // namespace kzdual
