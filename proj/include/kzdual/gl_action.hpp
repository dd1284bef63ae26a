#pragma once

// Matrices of the gl_k and gl_n actions on weight blocks of P_kn.
//
// gl_k acts by e_ab -> sum_i x_{ai} d/dx_{bi}; its tensor factors are
// the n columns of a table. gl_n acts by e_ij -> sum_a x_{ai} d/dx_{aj};
// its tensor factors are the k rows. On the divided-power basis the
// single nonzero matrix element of x_{ai} d/dx_{bi} (a != b) is
// d_{ai} + 1, and x_{ai} d/dx_{ai} is diagonal with entry d_{ai}.

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "kzdual/rational.hpp"
#include "kzdual/weight_basis.hpp"

namespace kzdual {

enum class Side { GLK, GLN };

inline Side dual(Side s) { return s == Side::GLK ? Side::GLN : Side::GLK; }
inline const char* side_name(Side s) { return s == Side::GLK ? "glk" : "gln"; }

/// Index bookkeeping for one side of the duality.
struct SideView {
  Side side;
  const Margins& margins;

  int factor_count() const { return side == Side::GLK ? margins.n : margins.k; }
  int cartan_count() const { return side == Side::GLK ? margins.k : margins.n; }
  /// Total Cartan eigenvalue e_cc on the block.
  int cartan_weight(int c) const {
    return side == Side::GLK ? margins.mu[static_cast<std::size_t>(c)]
                             : margins.lambda[static_cast<std::size_t>(c)];
  }
  /// Degree of tensor factor f.
  int factor_degree(int f) const {
    return side == Side::GLK ? margins.lambda[static_cast<std::size_t>(f)]
                             : margins.mu[static_cast<std::size_t>(f)];
  }
  int entry(const Table& d, int c, int f) const { return side == Side::GLK ? d(c, f) : d(f, c); }
  int& entry(Table& d, int c, int f) const { return side == Side::GLK ? d(c, f) : d(f, c); }

  /// Margins after applying a generator of weight eps_a - eps_b.
  Margins shifted(int a, int b) const {
    Margins m = margins;
    auto& w = side == Side::GLK ? m.mu : m.lambda;
    w[static_cast<std::size_t>(a)] += 1;
    w[static_cast<std::size_t>(b)] -= 1;
    return m;
  }

  void check_cartan(int c) const {
    if (c < 0 || c >= cartan_count()) throw IndexOutOfRange("Cartan index out of range");
  }
  void check_factor(int f) const {
    if (f < 0 || f >= factor_count()) throw IndexOutOfRange("factor index out of range");
  }
};

/// A linear map between two weight blocks.
struct BlockMap {
  BlockPtr source;
  BlockPtr target;
  QMatrix matrix;  // target.size() x source.size()
};

inline BlockMap compose(const BlockMap& after, const BlockMap& before) {
  if (after.source->margins() != before.target->margins())
    throw DimensionMismatch("composed block maps do not chain");
  return BlockMap{before.source, after.target, after.matrix * before.matrix};
}

/// (e_ab)^{(factor)} on `source`.
inline BlockMap local_generator(Side side, int a, int b, int factor, const BlockPtr& source) {
  const SideView view{side, source->margins()};
  view.check_cartan(a);
  view.check_cartan(b);
  view.check_factor(factor);
  if (a == b) {
    QMatrix m(source->size(), source->size());
    for (std::size_t s = 0; s < source->size(); ++s)
      m(s, s) = view.entry(source->tables()[s], a, factor);
    return BlockMap{source, source, std::move(m)};
  }
  BlockPtr target = block_for(view.shifted(a, b));
  QMatrix m(target->size(), source->size());
  for (std::size_t s = 0; s < source->size(); ++s) {
    Table d = source->tables()[s];
    if (view.entry(d, b, factor) == 0) continue;
    const int coeff = view.entry(d, a, factor) + 1;
    view.entry(d, b, factor) -= 1;
    view.entry(d, a, factor) += 1;
    const auto row = target->find(d);
    if (!row) throw DimensionMismatch("generator left its target block");
    m(*row, s) = coeff;
  }
  return BlockMap{source, target, std::move(m)};
}

/// e_ab = sum over factors of (e_ab)^{(i)}.
inline BlockMap total_generator(Side side, int a, int b, const BlockPtr& source) {
  const SideView view{side, source->margins()};
  view.check_cartan(a);
  view.check_cartan(b);
  if (a == b) {
    return BlockMap{source, source,
                    QMatrix::scalar(source->size(), Rat(view.cartan_weight(a)))};
  }
  BlockMap out = local_generator(side, a, b, 0, source);
  for (int f = 1; f < view.factor_count(); ++f)
    out.matrix += local_generator(side, a, b, f, source).matrix;
  return out;
}

/// e_ab e_ba restricted back to `block`.
inline QMatrix round_trip(Side side, int a, int b, const BlockPtr& block) {
  if (a == b) {
    const int w = SideView{side, block->margins()}.cartan_weight(a);
    return QMatrix::scalar(block->size(), Rat(w * w));
  }
  const BlockMap down = total_generator(side, b, a, block);
  const BlockMap up = total_generator(side, a, b, down.target);
  return compose(up, down).matrix;
}

/// sum_{a,b} e_ab e_ba on `block`.
inline QMatrix casimir(Side side, const BlockPtr& block) {
  const SideView view{side, block->margins()};
  QMatrix out(block->size(), block->size());
  for (int a = 0; a < view.cartan_count(); ++a)
    for (int b = 0; b < view.cartan_count(); ++b) out += round_trip(side, a, b, block);
  return out;
}

/// Eigenvalue (nu, nu + 2 rho) of the gl_N Casimir on V_nu.
inline Rat casimir_eigenvalue(std::size_t N, const Partition& nu) {
  Rat out = 0;
  for (std::size_t a = 0; a < N; ++a) {
    const Rat rho = make_rat(static_cast<long>(N) - 2 * static_cast<long>(a) - 1, 2);
    const Rat v = nu.part(a);
    out += v * (v + 2 * rho);
  }
  return out;
}

// ---------------------------------------------------------------------
// Standalone V_l (x) V_m for gl_N, used to build R-matrices.

using Multidegree = std::vector<int>;

/// Basis of V_l (x) V_m: pairs (c, c') of N-part multidegrees, ordered
/// lexicographically by c then c'.
class PairBlock {
 public:
  PairBlock(int N, int l, int m) : N_(N), l_(l), m_(m) {
    if (N < 1 || l < 0 || m < 0) throw IndexOutOfRange("bad pair block key");
    for (const auto& c : compositions(l, N))
      for (const auto& c2 : compositions(m, N)) basis_.emplace_back(c, c2);
    for (std::size_t p = 0; p < basis_.size(); ++p) index_.emplace(basis_[p], p);
  }

  int N() const { return N_; }
  int l() const { return l_; }
  int m() const { return m_; }
  std::size_t size() const { return basis_.size(); }
  const std::vector<std::pair<Multidegree, Multidegree>>& basis() const { return basis_; }

  std::optional<std::size_t> find(const Multidegree& c, const Multidegree& c2) const {
    auto it = index_.find({c, c2});
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Position of v_l (x) v_m = x_1^l (x) x_1^m.
  std::size_t highest_index() const {
    Multidegree c(static_cast<std::size_t>(N_), 0);
    Multidegree c2(static_cast<std::size_t>(N_), 0);
    c[0] = l_;
    c2[0] = m_;
    return *find(c, c2);
  }

 private:
  int N_, l_, m_;
  std::vector<std::pair<Multidegree, Multidegree>> basis_;
  std::map<std::pair<Multidegree, Multidegree>, std::size_t> index_;
};

enum class Leg { First, Second, Both };

/// e_ab acting on the first leg, the second leg, or both (coproduct).
inline QMatrix pair_generator(const PairBlock& pair, int a, int b, Leg leg) {
  if (a < 0 || b < 0 || a >= pair.N() || b >= pair.N())
    throw IndexOutOfRange("gl_N index out of range");
  QMatrix out(pair.size(), pair.size());
  auto act = [&](std::size_t s, bool first) {
    auto [c, c2] = pair.basis()[s];
    Multidegree& x = first ? c : c2;
    const auto ua = static_cast<std::size_t>(a);
    const auto ub = static_cast<std::size_t>(b);
    if (a == b) {
      out(s, s) += x[ua];
      return;
    }
    if (x[ub] == 0) return;
    const int coeff = x[ua] + 1;
    x[ub] -= 1;
    x[ua] += 1;
    out(*pair.find(c, c2), s) += coeff;
  };
  for (std::size_t s = 0; s < pair.size(); ++s) {
    if (leg != Leg::Second) act(s, true);
    if (leg != Leg::First) act(s, false);
  }
  return out;
}

/// The flip V_l (x) V_m -> V_m (x) V_l.
inline QMatrix flip_matrix(const PairBlock& from, const PairBlock& to) {
  if (from.N() != to.N() || from.l() != to.m() || from.m() != to.l())
    throw DimensionMismatch("flip between incompatible pair blocks");
  QMatrix out(to.size(), from.size());
  for (std::size_t s = 0; s < from.size(); ++s) {
    const auto& [c, c2] = from.basis()[s];
    out(*to.find(c2, c), s) = 1;
  }
  return out;
}

/// Coproduct Casimir sum_{a,b} Delta(e_ab) Delta(e_ba) on V_l (x) V_m.
inline QMatrix pair_casimir(const PairBlock& pair) {
  std::vector<QMatrix> g;
  const int N = pair.N();
  g.reserve(static_cast<std::size_t>(N * N));
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) g.push_back(pair_generator(pair, a, b, Leg::Both));
  QMatrix out(pair.size(), pair.size());
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      out += g[static_cast<std::size_t>(a * N + b)] * g[static_cast<std::size_t>(b * N + a)];
  return out;
}

/// Labels m' of the summands V_{(l+m-m', m')} of V_l (x) V_m.
inline std::vector<int> pair_labels(int N, int l, int m) {
  std::vector<int> out;
  const int top = N >= 2 ? std::min(l, m) : 0;
  for (int j = 0; j <= top; ++j) out.push_back(j);
  return out;
}

/// Casimir eigenvalue (l+m)^2 + (N-1)(l+m) + 2m'(m'-l-m-1) on the summand m'.
inline Rat pair_casimir_eigenvalue(int N, int l, int m, int label) {
  const int s = l + m;
  return Rat(s * s + (N - 1) * s + 2 * label * (label - s - 1));
}

struct PairDecomposition {
  std::vector<int> labels;
  std::vector<Rat> spectrum;
  std::vector<QMatrix> projectors;
};

inline PairDecomposition pair_decomposition(const PairBlock& pair) {
  PairDecomposition out;
  out.labels = pair_labels(pair.N(), pair.l(), pair.m());
  for (int j : out.labels) out.spectrum.push_back(pair_casimir_eigenvalue(pair.N(), pair.l(), pair.m(), j));
  out.projectors = lagrange_projectors(pair_casimir(pair), out.spectrum);
  return out;
}

/// Transports an operator on V_l (x) V_m into `block`, acting on the
/// tensor factors (f1, f2) of `side` and fixing every other factor.
inline QMatrix embed_pair_operator(Side side, int f1, int f2, const PairBlock& pair,
                                   const QMatrix& op, const WeightBlock& block) {
  const SideView view{side, block.margins()};
  view.check_factor(f1);
  view.check_factor(f2);
  if (f1 == f2) throw IndexOutOfRange("pair operator needs two distinct factors");
  if (pair.N() != view.cartan_count() || pair.l() != view.factor_degree(f1) ||
      pair.m() != view.factor_degree(f2))
    throw DimensionMismatch("pair block does not match the block's factors");
  const int N = pair.N();
  QMatrix out(block.size(), block.size());
  for (std::size_t s = 0; s < block.size(); ++s) {
    const Table& d = block.tables()[s];
    Multidegree c(static_cast<std::size_t>(N));
    Multidegree c2(static_cast<std::size_t>(N));
    for (int a = 0; a < N; ++a) {
      c[static_cast<std::size_t>(a)] = view.entry(d, a, f1);
      c2[static_cast<std::size_t>(a)] = view.entry(d, a, f2);
    }
    const std::size_t col = *pair.find(c, c2);
    for (std::size_t q = 0; q < pair.size(); ++q) {
      const Rat& v = op(q, col);
      if (sgn(v) == 0) continue;
      Table d2 = d;
      const auto& [e, e2] = pair.basis()[q];
      for (int a = 0; a < N; ++a) {
        view.entry(d2, a, f1) = e[static_cast<std::size_t>(a)];
        view.entry(d2, a, f2) = e2[static_cast<std::size_t>(a)];
      }
      const auto row = block.find(d2);
      if (!row) throw DimensionMismatch("pair operator does not preserve the weight block");
      out(*row, s) += v;
    }
  }
  return out;
}

}  // namespace kzdual
