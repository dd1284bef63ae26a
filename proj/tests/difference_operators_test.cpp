#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace kzdual;
using oracle::Poly;

namespace {

BlockPtr blk(int k, int n, std::vector<int> lambda, std::vector<int> mu) {
  return block_for(Margins{k, n, std::move(lambda), std::move(mu)});
}

std::vector<BlockPtr> small_blocks(int k_max, int n_max, int d_max) {
  std::vector<BlockPtr> out;
  for (int k = 1; k <= k_max; ++k)
    for (int n = 1; n <= n_max; ++n)
      for (int D = 0; D <= d_max; ++D)
        for (const auto& lambda : compositions(D, n))
          for (const auto& mu : compositions(D, k)) {
            auto b = blk(k, n, lambda, mu);
            if (!b->empty()) out.push_back(b);
          }
  return out;
}

Rat q(long p, long d = 1) { return make_rat(p, d); }

// sum_i x_{ai} d/dx_{bi}, applied symbolically.
Poly E(int n, int a, int b, const Poly& f) {
  Poly out;
  for (int i = 0; i < n; ++i)
    for (const auto& [mono, c] : oracle::apply_xd(f, oracle::var(n, a, i), oracle::var(n, b, i))) out[mono] += c;
  std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

// B_ab(t) on a gl_k block from the series, by symbolic application.
QMatrix symbolic_b(int a, int b, const Rat& t, const BlockPtr& block) {
  const int n = block->margins().n;
  const int shift = block->margins().mu[static_cast<std::size_t>(b)] - block->margins().mu[static_cast<std::size_t>(a)];
  auto op = [&](const Poly& f) {
    Poly out = f;
    Poly up = f;
    Rat c = 1;
    for (int s = 1;; ++s) {
      up = E(n, a, b, up);
      if (up.empty()) break;
      c /= s * (t + shift - s);
      Poly down = up;
      for (int r = 0; r < s; ++r) down = E(n, b, a, down);
      for (const auto& [mono, v] : down) out[mono] += c * v;
    }
    std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
    return out;
  };
  return oracle::symbolic_matrix(op, *block, *block);
}

// Flip of tensor factors (f1, f2) of a GLK block: swaps two columns.
QMatrix column_swap(const WeightBlock& block, int f1, int f2) {
  QMatrix out(block.size(), block.size());
  for (std::size_t s = 0; s < block.size(); ++s) {
    Table d = block.tables()[s];
    for (int a = 0; a < d.k; ++a) std::swap(d(a, f1), d(a, f2));
    out(*block.find(d), s) = 1;
  }
  return out;
}

TEST(BMatrix, IdentityWhenRaisingAnnihilates) {
  EXPECT_EQ(b_matrix(Side::GLK, 0, 1, q(5, 2), blk(2, 2, {1, 1}, {2, 0})), QMatrix::identity(1));
  EXPECT_EQ(b_matrix(Side::GLK, 0, 1, q(5, 2), blk(2, 3, {1, 2, 0}, {3, 0})), QMatrix::identity(1));
  EXPECT_THROW(b_matrix(Side::GLK, 0, 0, q(5, 2), blk(2, 2, {1, 1}, {2, 0})), IndexOutOfRange);
}

TEST(BMatrix, EigenvaluesOnCasimirComponents) {
  const auto b = blk(2, 2, {1, 1}, {1, 1});
  const QMatrix B = b_matrix(Side::GLK, 0, 1, q(5, 2), b);
  const std::vector<Rat> spec{q(6), q(2)};
  const auto P = lagrange_projectors(casimir(Side::GLK, b), spec);
  EXPECT_EQ(B * P[0], P[0] * q(7, 3));
  EXPECT_EQ(B * P[1], P[1]);
}

TEST(BMatrix, InversionSpotValue) {
  const auto b = blk(2, 2, {1, 1}, {2, 0});
  EXPECT_EQ(b_matrix(Side::GLK, 0, 1, q(3), b) * b_matrix(Side::GLK, 1, 0, q(-3), b),
            QMatrix::scalar(b->size(), q(1, 3)));
}

TEST(BMatrix, MatchesSymbolicSeries) {
  const Rat t = q(3, 17);
  for (const auto& b : small_blocks(3, 2, 4)) {
    const int k = b->margins().k;
    for (int a = 0; a < k; ++a)
      for (int c = 0; c < k; ++c)
        if (a != c) ASSERT_EQ(b_matrix(Side::GLK, a, c, t, b), symbolic_b(a, c, t, b));
  }
}

TEST(BMatrix, InversionOnSmallBlocks) {
  for (const auto& b : small_blocks(3, 3, 3))
    for (Side side : {Side::GLK, Side::GLN}) {
      const SideView view{side, b->margins()};
      for (int a = 0; a < view.cartan_count(); ++a)
        for (int c = 0; c < view.cartan_count(); ++c) {
          if (a == c) continue;
          for (long num : {-5L, 3L, 11L}) {
            const Rat t = q(num, 17);
            const Rat scalar = 1 - Rat(view.cartan_weight(a) - view.cartan_weight(c)) / t;
            EXPECT_EQ(b_matrix(side, a, c, t, b) * b_matrix(side, c, a, -t, b), QMatrix::scalar(b->size(), scalar));
          }
        }
    }
}

TEST(BMatrix, PoleThrows) {
  // t + (w_b - w_a) - 1 = 0 at s = 1 with w = (1, 1).
  EXPECT_THROW(b_matrix(Side::GLK, 0, 1, q(1), blk(2, 2, {1, 1}, {1, 1})), PoleAtT);
}

TEST(CScalar, Examples) {
  EXPECT_EQ(c_scalar(3, 0, q(2, 17)), q(1));
  EXPECT_EQ(c_scalar(0, 4, q(2, 17)), q(2, 17) / (q(2, 17) + 4));
  EXPECT_EQ(c_scalar(1, 1, q(5, 2)), q(3, 7));
  EXPECT_THROW(c_scalar(1, 1, q(-1)), PoleAtT);
  EXPECT_THROW(c_scalar(-1, 1, q(1, 2)), IndexOutOfRange);
}

TEST(CScalar, MatchesGammaFunctionalEquation) {
  // Gamma(t+1)/Gamma(t-w_a) = prod_{j=0}^{w_a} (t-j) and
  // Gamma(t-w_a+w_b)/Gamma(t+w_b+1) = 1/prod_{j=0}^{w_a} (t+w_b-j).
  const Rat t = q(7, 17);
  for (int wa = 0; wa <= 5; ++wa)
    for (int wb = 0; wb <= 5; ++wb) {
      Rat num = 1;
      Rat den = 1;
      for (int j = 0; j <= wa; ++j) {
        num *= t - j;
        den *= t + wb - j;
      }
      EXPECT_EQ(c_scalar(wa, wb, t), num / den);
    }
}

TEST(RMatrix, VectorRepresentationsClosedForm) {
  for (int N = 1; N <= 3; ++N) {
    const PairBlock p(N, 1, 1);
    const QMatrix P = flip_matrix(p, p);
    for (long num : {3L, -4L, 9L}) {
      const Rat t = q(num, 17);
      EXPECT_EQ(r_matrix({N, 1, 1}, t), (QMatrix::scalar(p.size(), t) + P) * (1 / (t + 1)));
    }
  }
}

TEST(RMatrix, AntisymmetricEigenvalueAtThree) {
  const PairBlock p(2, 1, 1);
  const QMatrix R = r_matrix({2, 1, 1}, q(3));
  const QMatrix antisym = (QMatrix::identity(4) - flip_matrix(p, p)) * q(1, 2);
  EXPECT_EQ(R * antisym, antisym * q(1, 2));
  EXPECT_EQ(r_eigenvalue(1, 1, 1, q(3)), q(1, 2));
}

TEST(RMatrix, FixesHighestVector) {
  for (int N = 1; N <= 3; ++N)
    for (int l = 0; l <= 3; ++l)
      for (int m = 0; m <= 3; ++m) {
        const PairBlock p(N, l, m);
        const QMatrix R = r_matrix({N, l, m}, q(5, 17));
        const std::size_t h = p.highest_index();
        for (std::size_t r = 0; r < p.size(); ++r) EXPECT_EQ(R(r, h), r == h ? q(1) : q(0));
      }
}

TEST(RMatrix, PoleThrows) { EXPECT_THROW(r_matrix({2, 1, 1}, q(-1)), PoleAtT); }

// Solve the defining relation R(t) X_ab = Y_ab R(t) for all (a, b) as a
// linear system in the entries of R, then normalize on v_l (x) v_m.
QMatrix solve_defining_relation(int N, int l, int m, const Rat& t) {
  const PairBlock p(N, l, m);
  const std::size_t d = p.size();
  const QMatrix I = QMatrix::identity(d);
  std::vector<QMatrix> rows;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      QMatrix X = pair_generator(p, a, b, Leg::First) * t;
      QMatrix Y = X;
      for (int c = 0; c < N; ++c) {
        X += pair_generator(p, a, c, Leg::First) * pair_generator(p, c, b, Leg::Second);
        Y += pair_generator(p, c, b, Leg::First) * pair_generator(p, a, c, Leg::Second);
      }
      // Row-major vec: vec(R X) = (I (x) X^T) vec R, vec(Y R) = (Y (x) I) vec R.
      rows.push_back(oracle::kron(I, X.transpose()) - oracle::kron(Y, I));
      // Invariance: R commutes with the coproduct of e_ab.
      const QMatrix g = pair_generator(p, a, b, Leg::Both);
      rows.push_back(oracle::kron(I, g.transpose()) - oracle::kron(g, I));
    }
  const QMatrix K = nullspace(vstack(rows, d * d));
  if (K.cols() != 1) throw SpectrumMismatch("defining relation does not fix R up to scale");
  const std::size_t h = p.highest_index();
  const Rat scale = 1 / K(h * d + h, 0);
  QMatrix R(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) R(r, c) = K(r * d + c, 0) * scale;
  return R;
}

TEST(RMatrix, MatchesSolutionOfDefiningRelation) {
  const Rat t = q(4, 17);
  for (int l = 0; l <= 2; ++l)
    for (int m = 0; m <= 2; ++m) EXPECT_EQ(r_matrix({2, l, m}, t), solve_defining_relation(2, l, m, t)) << l << m;
  EXPECT_EQ(r_matrix({3, 1, 1}, t), solve_defining_relation(3, 1, 1, t));
  EXPECT_EQ(r_matrix({3, 2, 1}, t), solve_defining_relation(3, 2, 1, t));
}

TEST(XMatrix, SingleCartanDirection) {
  const auto b = blk(1, 3, {2, 1, 0}, {3});
  const ParamPoint p = sample_point(5, 3, 1, false, 4);
  const Rat expected = 1 / (p.z[0] * p.z[0] * p.z[1]);
  EXPECT_EQ(x_matrix(Side::GLK, 0, b, p), QMatrix::scalar(1, expected));
  EXPECT_EQ(x_scaled_partial(Side::GLK, 0, 0, b, p), QMatrix::scalar(1, -2 * expected));
  EXPECT_EQ(x_scaled_partial(Side::GLK, 0, 2, b, p), QMatrix(1, 1));
}

std::vector<Rat> diag_powers(Side side, int c, const BlockPtr& b, const std::vector<Rat>& coords, bool over_factors) {
  const SideView view{side, b->margins()};
  std::vector<Rat> out;
  for (const auto& d : b->tables()) {
    Rat v = 1;
    if (over_factors) {
      for (int f = 0; f < view.factor_count(); ++f)
        for (int e = 0; e < view.entry(d, c, f); ++e) v /= coords[static_cast<std::size_t>(f)];
    } else {
      for (int a = 0; a < view.cartan_count(); ++a)
        for (int e = 0; e < view.entry(d, a, c); ++e) v /= coords[static_cast<std::size_t>(a)];
    }
    out.push_back(v);
  }
  return out;
}

TEST(XMatrix, FactorByFactorReassembly) {
  const auto b = blk(2, 2, {1, 1}, {1, 1});
  const ParamPoint p = sample_point(11, 2, 2, false, 3);
  const QMatrix D1 = QMatrix::diagonal(diag_powers(Side::GLK, 0, b, p.z, true));
  const QMatrix D2 = QMatrix::diagonal(diag_powers(Side::GLK, 1, b, p.z, true));
  const Rat l12 = p.lam[0] - p.lam[1];
  EXPECT_EQ(x_matrix(Side::GLK, 0, b, p), mat_inverse(symbolic_b(0, 1, l12, b)) * D1);
  EXPECT_EQ(x_matrix(Side::GLK, 1, b, p), D2 * symbolic_b(0, 1, l12 - p.kappa, b));
}

TEST(XMatrix, ThreeDirectionsReassembly) {
  const auto b = blk(3, 2, {2, 1}, {1, 1, 1});
  const ParamPoint p = sample_point(12, 2, 3, false, 4);
  const auto& L = p.lam;
  const Rat k = p.kappa;
  auto B = [&](int a, int c, const Rat& t) { return symbolic_b(a, c, t, b); };
  auto D = [&](int a) { return QMatrix::diagonal(diag_powers(Side::GLK, a, b, p.z, true)); };
  EXPECT_EQ(x_matrix(Side::GLK, 0, b, p), mat_inverse(B(0, 2, L[0] - L[2]) * B(0, 1, L[0] - L[1])) * D(0));
  EXPECT_EQ(x_matrix(Side::GLK, 1, b, p), mat_inverse(B(1, 2, L[1] - L[2])) * D(1) * B(0, 1, L[0] - L[1] - k));
  EXPECT_EQ(x_matrix(Side::GLK, 2, b, p), D(2) * B(0, 2, L[0] - L[2] - k) * B(1, 2, L[1] - L[2] - k));
}

TEST(KMatrix, SingleFactor) {
  const auto b = blk(3, 1, {3}, {1, 2, 0});
  const ParamPoint p = sample_point(6, 1, 3, false, 4);
  const Rat expected = 1 / (p.lam[0] * p.lam[1] * p.lam[1]);
  EXPECT_EQ(k_matrix(Side::GLK, 0, b, p), QMatrix::scalar(1, expected));
  EXPECT_EQ(k_scaled_partial(Side::GLK, 0, 1, b, p), QMatrix::scalar(1, -2 * expected));
  EXPECT_EQ(k_scaled_partial(Side::GLK, 0, 2, b, p), QMatrix(1, 1));
}

TEST(KMatrix, FactorByFactorReassembly) {
  const auto b = blk(2, 2, {1, 1}, {1, 1});
  const ParamPoint p = sample_point(13, 2, 2, false, 3);
  const QMatrix P = column_swap(*b, 0, 1);
  auto R = [&](const Rat& t) { return (QMatrix::scalar(b->size(), t) + P) * (1 / (t + 1)); };
  const QMatrix D1 = QMatrix::diagonal(diag_powers(Side::GLK, 0, b, p.lam, false));
  const QMatrix D2 = QMatrix::diagonal(diag_powers(Side::GLK, 1, b, p.lam, false));
  const Rat z12 = p.z[0] - p.z[1];
  EXPECT_EQ(k_matrix(Side::GLK, 0, b, p), mat_inverse(R(z12)) * D1);
  EXPECT_EQ(k_matrix(Side::GLK, 1, b, p), D2 * R(z12 - p.kappa));
}

TEST(KMatrix, ThreeFactorsReassembly) {
  const auto b = blk(2, 3, {1, 1, 1}, {2, 1});
  const ParamPoint p = sample_point(14, 3, 2, false, 4);
  const auto& z = p.z;
  auto R = [&](int f1, int f2, const Rat& t) {
    return (QMatrix::scalar(b->size(), t) + column_swap(*b, f1, f2)) * (1 / (t + 1));
  };
  auto D = [&](int i) { return QMatrix::diagonal(diag_powers(Side::GLK, i, b, p.lam, false)); };
  const Rat k = p.kappa;
  EXPECT_EQ(k_matrix(Side::GLK, 0, b, p), mat_inverse(R(0, 2, z[0] - z[2]) * R(0, 1, z[0] - z[1])) * D(0));
  EXPECT_EQ(k_matrix(Side::GLK, 1, b, p), mat_inverse(R(1, 2, z[1] - z[2])) * D(1) * R(0, 1, z[0] - z[1] - k));
  EXPECT_EQ(k_matrix(Side::GLK, 2, b, p), D(2) * R(0, 2, z[0] - z[2] - k) * R(1, 2, z[1] - z[2] - k));
}

TEST(ScaledPartials, MatchInterpolationDerivative) {
  std::uint64_t seed = 40;
  for (const auto& b : small_blocks(3, 3, 2)) {
    for (Side side : {Side::GLK, Side::GLN}) {
      const SideView view{side, b->margins()};
      const int F = view.factor_count();
      const int K = view.cartan_count();
      const ParamPoint p = sample_point(seed++, static_cast<std::size_t>(F), static_cast<std::size_t>(K), false,
                                        b->margins().degree() + 1);
      const int D = b->margins().degree();
      for (int a = 0; a < K; ++a)
        for (int i = 0; i < F; ++i) {
          const std::vector<Rat> zero_poles(static_cast<std::size_t>(D), Rat(0));
          auto X_of = [&](const Rat& u) {
            ParamPoint r = p;
            r.z[static_cast<std::size_t>(i)] = u;
            return x_matrix(side, a, b, r);
          };
          const Rat& zi = p.z[static_cast<std::size_t>(i)];
          EXPECT_EQ(x_scaled_partial(side, a, i, b, p), oracle::rational_derivative(X_of, zi, zero_poles, D) * zi);
          auto K_of = [&](const Rat& u) {
            ParamPoint r = p;
            r.lam[static_cast<std::size_t>(a)] = u;
            return k_matrix(side, i, b, r);
          };
          const Rat& la = p.lam[static_cast<std::size_t>(a)];
          EXPECT_EQ(k_scaled_partial(side, i, a, b, p), oracle::rational_derivative(K_of, la, zero_poles, D) * la);
        }
    }
  }
}

TEST(NScalar, EmptyProducts) {
  const auto b = blk(1, 3, {1, 1, 1}, {3});
  const ParamPoint p = sample_point(15, 3, 1, false, 4);
  EXPECT_EQ(n_scalar(Side::GLK, 0, b, p), q(1));
  const auto b2 = blk(3, 1, {3}, {1, 1, 1});
  const ParamPoint p2 = sample_point(16, 3, 1, false, 4);
  EXPECT_EQ(n_scalar(Side::GLN, 0, b2, p2), q(1));
}

TEST(NScalar, VanishingWeightsGiveOne) {
  const auto b = blk(3, 2, {1, 1}, {2, 0, 0});
  const ParamPoint p = sample_point(18, 2, 3, false, 3);
  EXPECT_EQ(n_scalar(Side::GLK, 1, b, p), q(1));
  EXPECT_EQ(n_scalar(Side::GLK, 2, b, p), q(1));
}

TEST(NScalar, SeedSeventeenExample) {
  const auto b = blk(2, 2, {1, 1}, {1, 1});
  const ParamPoint p = sample_point(17, 2, 2, false, 3);
  const Rat z12 = p.z[0] - p.z[1];
  EXPECT_EQ(n_scalar(Side::GLN, 0, b, p.swapped()), (z12 + 1) / (z12 - 1));
  EXPECT_EQ(n_scalar(Side::GLN, 1, b, p.swapped()), q(1) * (z12 - p.kappa - 1) / (z12 - p.kappa + 1));
}

}  // namespace
