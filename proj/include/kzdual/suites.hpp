#pragma once

// Verification suites. Each suite sweeps margins (or R-matrix keys),
// samples `trials` points per case and records one report per check.
// Record order is (suite, margins, trial, check) no matter how many
// workers run.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "kzdual/duality.hpp"
#include "kzdual/serialize.hpp"

namespace kzdual {

struct Limits {
  std::optional<int> k;  // fixed counts; otherwise swept over [min, max]
  std::optional<int> n;
  int k_min = 1;
  int k_max = 3;
  int n_min = 1;
  int n_max = 3;
  int degree_max = 4;
  std::optional<std::vector<int>> lambda;
  std::optional<std::vector<int>> mu;
  int trials = 5;
  std::uint64_t seed = 42;
  unsigned jobs = 1;
  bool timing = false;
};

struct VerifyReport {
  std::string suite;
  std::string check;
  std::optional<Margins> margins;
  json params = json::object();
  std::uint64_t seed = 0;
  int trial = 0;
  bool pass = false;
  std::optional<ParamPoint> point;  // failure witness
  std::optional<QMatrix> residual;  // failure witness
  std::string error;
  std::optional<double> elapsed_ms;
};

inline json report_json(const VerifyReport& r) {
  json out{{"schema_version", kSchemaVersion}, {"suite", r.suite}, {"check", r.check}};
  if (r.margins) out["margins"] = margins_json(*r.margins);
  if (!r.params.empty()) out["params"] = r.params;
  out["seed"] = r.seed;
  out["trial"] = r.trial;
  out["status"] = r.pass ? "pass" : "fail";
  if (!r.pass) {
    json witness = json::object();
    if (r.point) witness["point"] = point_json(*r.point);
    if (r.residual) witness["residual"] = matrix_json(*r.residual);
    if (!r.error.empty()) witness["error"] = r.error;
    out["witness"] = std::move(witness);
  }
  if (r.elapsed_ms) out["elapsed_ms"] = *r.elapsed_ms;
  return out;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "kz-flat",     "kz-trig-flat", "dd-flat",  "dd-trig-flat", "kz-dd", "b-props", "r-props",
      "ybe",         "qdd-commute",  "kz-qdd",   "qkz-commute",  "qkz-dd", "ikn",    "nd",
      "hd",          "zq",           "bcr",      "spectral",     "dual-dims"};
  return names;
}

inline bool is_suite_name(const std::string& s) {
  const auto& names = suite_names();
  return s == "all" || std::find(names.begin(), names.end(), s) != names.end();
}

namespace detail {

/// One identity evaluated at a point; returns the residual.
struct Check {
  std::string name;
  std::function<QMatrix(const ParamPoint&)> residual;
};

/// A unit of work: a fixed set of checks over trials of one point shape.
struct Task {
  std::string suite;
  std::optional<Margins> margins;
  json params = json::object();
  bool uses_point = true;
  std::size_t z_count = 0;
  std::size_t lam_count = 0;
  bool need_t = false;
  long guard = 1;
  std::function<std::vector<Check>()> checks;
};

inline std::string idx(int i) { return std::to_string(i + 1); }
inline std::string idx(int i, int j) { return idx(i) + "," + idx(j); }

inline std::vector<Margins> sweep_margins(const Limits& lim, int k_min, int n_min) {
  std::vector<Margins> out;
  const int k_lo = lim.k ? *lim.k : std::max(lim.k_min, k_min);
  const int k_hi = lim.k ? *lim.k : lim.k_max;
  const int n_lo = lim.n ? *lim.n : std::max(lim.n_min, n_min);
  const int n_hi = lim.n ? *lim.n : lim.n_max;
  for (int k = k_lo; k <= k_hi; ++k) {
    if (k < k_min) continue;
    for (int n = n_lo; n <= n_hi; ++n) {
      if (n < n_min) continue;
      if (lim.lambda && static_cast<int>(lim.lambda->size()) != n) continue;
      if (lim.mu && static_cast<int>(lim.mu->size()) != k) continue;
      for (int D = 0; D <= lim.degree_max; ++D) {
        const auto lambdas = lim.lambda ? std::vector<std::vector<int>>{*lim.lambda} : compositions(D, n);
        for (const auto& lambda : lambdas) {
          if (std::accumulate(lambda.begin(), lambda.end(), 0) != D) continue;
          const auto mus = lim.mu ? std::vector<std::vector<int>>{*lim.mu} : compositions(D, k);
          for (const auto& mu : mus) {
            if (std::accumulate(mu.begin(), mu.end(), 0) != D) continue;
            out.push_back(Margins{k, n, lambda, mu});
          }
        }
      }
    }
  }
  return out;
}

inline Task margin_task(const std::string& suite, const Margins& m, bool need_t,
                        std::function<std::vector<Check>(const BlockPtr&)> make) {
  Task t;
  t.suite = suite;
  t.margins = m;
  t.z_count = static_cast<std::size_t>(m.n);
  t.lam_count = static_cast<std::size_t>(m.k);
  t.need_t = need_t;
  t.guard = m.degree() + 1;
  t.checks = [m, make = std::move(make)] { return make(block_for(m)); };
  return t;
}

// ---------------------------------------------------------------------
// Suite builders. Points are sampled in gl_k roles (z of length n, lam of
// length k); checks on the gl_n side evaluate at the swapped point.

inline constexpr Side kBothSides[] = {Side::GLK, Side::GLN};

inline ParamPoint side_point(Side side, const ParamPoint& p) {
  return side == Side::GLK ? p : p.swapped();
}

inline std::string side_prefix(Side side) { return std::string(side_name(side)) + ":"; }

inline void add_flat(std::vector<Task>& tasks, const std::string& suite, const Limits& lim,
                     Family fa, Family fb) {
  for (const auto& m : sweep_margins(lim, 1, 1)) {
    tasks.push_back(margin_task(suite, m, false, [fa, fb](const BlockPtr& b) {
      std::vector<Check> out;
      for (Side side : kBothSides) {
        const SideView view{side, b->margins()};
        const std::string pre = side_prefix(side);
        auto add = [&](int i, int j, std::string name) {
          out.push_back({pre + name, [=](const ParamPoint& p) {
                           return curvature(fa, i, fb, j, side, b, side_point(side, p));
                         }});
        };
        if (fa == fb) {
          const int count = indexes_factors(fa) ? view.factor_count() : view.cartan_count();
          for (int i = 0; i < count; ++i)
            for (int j = i + 1; j < count; ++j) add(i, j, std::string(family_name(fa)) + "(" + idx(i, j) + ")");
        } else {
          for (int i = 0; i < view.factor_count(); ++i)
            for (int a = 0; a < view.cartan_count(); ++a)
              add(i, a, std::string(family_name(fa)) + "(" + idx(i) + ")x" + family_name(fb) + "(" + idx(a) + ")");
        }
      }
      return out;
    }));
  }
}

inline void add_b_props(std::vector<Task>& tasks, const Limits& lim) {
  for (const auto& m : sweep_margins(lim, 1, 1)) {
    if (m.k < 2 && m.n < 2) continue;
    tasks.push_back(margin_task("b-props", m, true, [](const BlockPtr& b) {
      std::vector<Check> out;
      const std::size_t dim = b->size();
      for (Side side : kBothSides) {
        const SideView view{side, b->margins()};
        const SideView other{dual(side), b->margins()};
        const int K = view.cartan_count();
        const std::string pre = side_prefix(side);
        for (int a = 0; a < K; ++a)
          for (int c = 0; c < K; ++c) {
            if (a == c) continue;
            const int wa = view.cartan_weight(a);
            const int wc = view.cartan_weight(c);
            out.push_back({pre + "zero_weight(" + idx(a, c) + ")", [=](const ParamPoint& p) {
                             const QMatrix B = b_matrix(side, a, c, *p.t, b);
                             QMatrix res(dim, dim);
                             for (int d = 0; d < K; ++d) res += commutator(B, total_generator(side, d, d, b).matrix);
                             return res;
                           }});
            // The series commutes with every generator of the dual side,
            // as a map between the blocks that generator connects.
            const int F = other.cartan_count();
            std::vector<std::pair<int, int>> dual_pairs;
            for (int i = 0; i < F; ++i)
              for (int j = 0; j < F; ++j)
                if (i != j && other.cartan_weight(j) > 0) dual_pairs.emplace_back(i, j);
            out.push_back({pre + "dual_commute(" + idx(a, c) + ")", [=](const ParamPoint& p) {
                             std::vector<QMatrix> parts;
                             const QMatrix B = b_matrix(side, a, c, *p.t, b);
                             for (const auto& [i, j] : dual_pairs) {
                               const BlockMap e = total_generator(dual(side), i, j, b);
                               parts.push_back(e.matrix * B - b_matrix(side, a, c, *p.t, e.target) * e.matrix);
                             }
                             return parts.empty() ? QMatrix(0, dim) : vstack(parts, dim);
                           }});
            out.push_back({pre + "inversion(" + idx(a, c) + ")", [=](const ParamPoint& p) {
                             const Rat& t = *p.t;
                             return b_matrix(side, a, c, t, b) * b_matrix(side, c, a, Rat(-t), b) -
                                    QMatrix::scalar(dim, Rat(1 - Rat(wa - wc) / t));
                           }});
          }
        for (int a = 0; a < K; ++a)
          for (int c = a + 1; c < K; ++c)
            for (int d = c + 1; d < K; ++d)
              out.push_back({pre + "braid(" + idx(a, c) + "," + idx(d) + ")", [=](const ParamPoint& p) {
                               const Rat& t = *p.t;
                               const Rat& s = p.kappa;
                               const QMatrix Bab = b_matrix(side, a, c, t, b);
                               const QMatrix Bac = b_matrix(side, a, d, Rat(t + s), b);
                               const QMatrix Bbc = b_matrix(side, c, d, s, b);
                               return Bab * Bac * Bbc - Bbc * Bac * Bab;
                             }});
      }
      return out;
    }));
  }
}

struct PairKey {
  int N, l, m;
};

inline std::vector<PairKey> sweep_keys(const Limits& lim, int leg_max) {
  std::vector<PairKey> out;
  const int N_max = std::max(lim.k ? *lim.k : lim.k_max, lim.n ? *lim.n : lim.n_max);
  const int cap = std::min(leg_max, lim.degree_max);
  for (int N = 1; N <= N_max; ++N)
    for (int l = 0; l <= cap; ++l)
      for (int m = 0; m <= cap; ++m) out.push_back({N, l, m});
  return out;
}

inline Task key_task(const std::string& suite, const PairKey& key, std::function<std::vector<Check>()> make) {
  Task t;
  t.suite = suite;
  t.params = json{{"N", key.N}, {"l", key.l}, {"m", key.m}};
  t.z_count = 1;
  t.lam_count = 1;
  t.need_t = true;
  t.guard = key.l + key.m + 1;
  t.checks = std::move(make);
  return t;
}

inline void add_r_props(std::vector<Task>& tasks, const Limits& lim) {
  for (const auto& key : sweep_keys(lim, 3)) {
    tasks.push_back(key_task("r-props", key, [key] {
      std::vector<Check> out;
      const RMatrixKey rk{key.N, key.l, key.m};
      const auto pair = std::make_shared<PairBlock>(key.N, key.l, key.m);
      const std::size_t dim = pair->size();
      const int N = key.N;
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
          out.push_back({"rdef(" + idx(a, b) + ")", [=](const ParamPoint& p) {
                           const Rat& t = *p.t;
                           const QMatrix R = r_matrix(rk, t);
                           QMatrix lhs = pair_generator(*pair, a, b, Leg::First) * t;
                           QMatrix rhs = lhs;
                           for (int c = 0; c < N; ++c) {
                             lhs += pair_generator(*pair, a, c, Leg::First) *
                                    pair_generator(*pair, c, b, Leg::Second);
                             rhs += pair_generator(*pair, c, b, Leg::First) *
                                    pair_generator(*pair, a, c, Leg::Second);
                           }
                           return R * lhs - rhs * R;
                         }});
          out.push_back({"rinv(" + idx(a, b) + ")", [=](const ParamPoint& p) {
                           return commutator(r_matrix(rk, *p.t), pair_generator(*pair, a, b, Leg::Both));
                         }});
        }
      out.push_back({"normalization", [=](const ParamPoint& p) {
                       const QMatrix R = r_matrix(rk, *p.t);
                       const std::size_t h = pair->highest_index();
                       QMatrix res(dim, 1);
                       for (std::size_t r = 0; r < dim; ++r) res(r, 0) = R(r, h) - (r == h ? 1 : 0);
                       return res;
                     }});
      out.push_back({"inversion", [=](const ParamPoint& p) {
                       const Rat& t = *p.t;
                       const PairBlock swapped(key.N, key.m, key.l);
                       const QMatrix to_swapped = flip_matrix(*pair, swapped);
                       const QMatrix back = flip_matrix(swapped, *pair);
                       return r_matrix(rk, t) * back * r_matrix({key.N, key.m, key.l}, Rat(-t)) * to_swapped -
                              QMatrix::identity(dim);
                     }});
      return out;
    }));
  }
}

inline void add_ybe(std::vector<Task>& tasks, const Limits& lim) {
  const auto keys = sweep_keys(lim, 2);
  const int N_max = keys.empty() ? 0 : keys.back().N;
  const int cap = std::min(2, lim.degree_max);
  for (int N = 1; N <= N_max; ++N)
    for (int l = 0; l <= cap; ++l)
      for (int m = 0; m <= cap; ++m)
        for (int q = 0; q <= cap; ++q) {
          const int D = l + m + q;
          for (const auto& mu : compositions(D, N)) {
            Margins mg{N, 3, {l, m, q}, mu};
            tasks.push_back(margin_task("ybe", mg, true, [](const BlockPtr& b) {
              return std::vector<Check>{{"yang_baxter", [b](const ParamPoint& p) {
                                           const Rat& t = *p.t;
                                           const Rat& u = p.kappa;
                                           const Rat tu = t + u;
                                           const QMatrix R12 = embedded_r_matrix(Side::GLK, 0, 1, t, b);
                                           const QMatrix R13 = embedded_r_matrix(Side::GLK, 0, 2, tu, b);
                                           const QMatrix R23 = embedded_r_matrix(Side::GLK, 1, 2, u, b);
                                           return R12 * R13 * R23 - R23 * R13 * R12;
                                         }}};
            }));
          }
        }
}

inline void add_difference(std::vector<Task>& tasks, const std::string& suite, const Limits& lim) {
  for (const auto& m : sweep_margins(lim, 1, 1)) {
    tasks.push_back(margin_task(suite, m, false, [suite](const BlockPtr& b) {
      std::vector<Check> out;
      for (Side S : kBothSides) {
        const SideView view{S, b->margins()};
        const int F = view.factor_count();
        const int K = view.cartan_count();
        const std::string pre = side_prefix(S);
        auto add = [&](std::string name, std::function<QMatrix(const ParamPoint&)> fn) {
          out.push_back({pre + name, [S, fn = std::move(fn)](const ParamPoint& p) { return fn(side_point(S, p)); }});
        };
        if (suite == "qdd-commute") {
          for (int a = 0; a < K; ++a)
            for (int c = a + 1; c < K; ++c)
              add("qdd(" + idx(a, c) + ")", [=](const ParamPoint& p) {
                const auto ua = static_cast<std::size_t>(a);
                const auto uc = static_cast<std::size_t>(c);
                return x_matrix(S, a, b, p) * x_matrix(S, c, b, p.with_lam_shift(ua, p.kappa)) -
                       x_matrix(S, c, b, p) * x_matrix(S, a, b, p.with_lam_shift(uc, p.kappa));
              });
        } else if (suite == "kz-qdd") {
          // kappa z_i dX_a/dz_i = Ahat_i(lam) X_a(lam) - X_a(lam) Ahat_i(lam + kappa delta_a)
          for (int a = 0; a < K; ++a)
            for (int i = 0; i < F; ++i)
              add("kz_trig(" + idx(i) + ")xqdd(" + idx(a) + ")", [=](const ParamPoint& p) {
                const ParamPoint shifted = p.with_lam_shift(static_cast<std::size_t>(a), p.kappa);
                const QMatrix X = x_matrix(S, a, b, p);
                return x_scaled_partial(S, a, i, b, p) * p.kappa -
                       (coeff(Family::KzTrig, S, i, b, p) * X - X * coeff(Family::KzTrig, S, i, b, shifted));
              });
        } else if (suite == "qkz-commute") {
          for (int i = 0; i < F; ++i)
            for (int j = i + 1; j < F; ++j)
              add("qkz(" + idx(i, j) + ")", [=](const ParamPoint& p) {
                const auto ui = static_cast<std::size_t>(i);
                const auto uj = static_cast<std::size_t>(j);
                return k_matrix(S, i, b, p) * k_matrix(S, j, b, p.with_z_shift(ui, p.kappa)) -
                       k_matrix(S, j, b, p) * k_matrix(S, i, b, p.with_z_shift(uj, p.kappa));
              });
        } else {
          // kappa lam_a dK_i/dlam_a = M_a(z) K_i(z) - K_i(z) M_a(z + kappa delta_i)
          for (int i = 0; i < F; ++i)
            for (int a = 0; a < K; ++a)
              add("qkz(" + idx(i) + ")xdd_trig(" + idx(a) + ")", [=](const ParamPoint& p) {
                const ParamPoint shifted = p.with_z_shift(static_cast<std::size_t>(i), p.kappa);
                const QMatrix Km = k_matrix(S, i, b, p);
                return k_scaled_partial(S, i, a, b, p) * p.kappa -
                       (coeff(Family::DdTrig, S, a, b, p) * Km - Km * coeff(Family::DdTrig, S, a, b, shifted));
              });
        }
      }
      return out;
    }));
  }
}

inline void add_duality(std::vector<Task>& tasks, const std::string& suite, const Limits& lim) {
  const bool need_t = suite == "bcr";
  for (const auto& m : sweep_margins(lim, 1, 1)) {
    Task task = margin_task(suite, m, need_t, [suite](const BlockPtr& b) {
      std::vector<DualityCase> cases;
      const Margins& m = b->margins();
      if (suite == "ikn") {
        cases.push_back({DualityTag::Ikn});
      } else if (suite == "nd" || suite == "hd") {
        const bool rat = suite == "nd";
        for (int i = 0; i < m.n; ++i) cases.push_back({rat ? DualityTag::NdKz : DualityTag::HdKz, i});
        for (int a = 0; a < m.k; ++a) cases.push_back({rat ? DualityTag::NdDd : DualityTag::HdDd, a});
      } else if (suite == "zq") {
        for (int i = 0; i < m.n; ++i) cases.push_back({DualityTag::ZqLeft, i});
        for (int a = 0; a < m.k; ++a) cases.push_back({DualityTag::ZqRight, a});
      } else {
        for (int a = 0; a < m.k; ++a)
          for (int c = 0; c < m.k; ++c)
            if (a != c) cases.push_back({DualityTag::BcrLeft, a, c});
        for (int i = 0; i < m.n; ++i)
          for (int j = 0; j < m.n; ++j)
            if (i != j) cases.push_back({DualityTag::BcrRight, i, j});
      }
      std::vector<Check> out;
      for (const auto& c : cases)
        out.push_back({case_name(c), [c, b](const ParamPoint& p) { return residual(c, b, p); }});
      return out;
    });
    if (suite == "ikn") task.uses_point = false;
    tasks.push_back(std::move(task));
  }
}

inline QMatrix scalar_residual(const Rat& v) {
  QMatrix out(1, 1);
  out(0, 0) = v;
  return out;
}

inline void add_spectral(std::vector<Task>& tasks, const Limits& lim) {
  for (const auto& m : sweep_margins(lim, 1, 1)) {
    const bool gl2 = m.k == 2;
    Task structural = margin_task("spectral", m, false, [](const BlockPtr& b) {
      std::vector<Check> out;
      const Margins& m = b->margins();
      for (Side side : {Side::GLK, Side::GLN}) {
        out.push_back({std::string("casimir_spectrum(") + side_name(side) + ")",
                       [=](const ParamPoint&) { return casimir_spectrum_residual(side, b); }});
        const auto& w = side == Side::GLK ? m.mu : m.lambda;
        if (std::is_sorted(w.rbegin(), w.rend()))
          out.push_back({std::string("casimir_hw(") + side_name(side) + ")",
                         [=](const ParamPoint&) { return casimir_highest_weight_residual(side, b); }});
      }
      if (m.k == 2) out.push_back({"itwo", [=](const ParamPoint&) { return itwo_residual(b); }});
      return out;
    });
    structural.uses_point = false;
    tasks.push_back(std::move(structural));
    if (gl2) {
      tasks.push_back(margin_task("spectral", m, true, [](const BlockPtr& b) {
        const Margins& m = b->margins();
        const int m1 = m.mu[0];
        const int m2 = m.mu[1];
        return std::vector<Check>{
            {"b2", [b](const ParamPoint& p) { return b2_residual(b, *p.t); }},
            {"bcr_chain", [m1, m2](const ParamPoint& p) { return bcr_chain_residual(m1, m2, *p.t); }}};
      }));
    }
  }
  for (const auto& key : sweep_keys(lim, 3)) {
    tasks.push_back(key_task("spectral", key, [key] {
      return std::vector<Check>{
          {"rn", [key](const ParamPoint& p) { return rn_residual({key.N, key.l, key.m}, *p.t); }}};
    }));
  }
}

inline void add_dual_dims(std::vector<Task>& tasks, const Limits& lim) {
  const int k_lo = lim.k ? *lim.k : lim.k_min;
  const int k_hi = lim.k ? *lim.k : lim.k_max;
  const int n_lo = lim.n ? *lim.n : lim.n_min;
  const int n_hi = lim.n ? *lim.n : lim.n_max;
  for (int k = k_lo; k <= k_hi; ++k)
    for (int n = n_lo; n <= n_hi; ++n)
      for (int D = 0; D <= lim.degree_max; ++D) {
        Task t;
        t.suite = "dual-dims";
        t.params = json{{"k", k}, {"n", n}, {"D", D}};
        t.uses_point = false;
        t.checks = [k, n, D] {
          std::vector<Check> out;
          out.push_back({"howe", [=](const ParamPoint&) {
                           long total = 0;
                           for (const auto& nu : enumerate_partitions(static_cast<std::size_t>(std::min(k, n)), D))
                             total += static_cast<long>(weyl_dimension(static_cast<std::size_t>(k), nu) *
                                                        weyl_dimension(static_cast<std::size_t>(n), nu));
                           const auto expected = binomial(static_cast<std::uint64_t>(k * n + D - 1),
                                                          static_cast<std::uint64_t>(D));
                           return scalar_residual(Rat(total - static_cast<long>(expected)));
                         }});
          out.push_back({"block_dims", [=](const ParamPoint&) {
                           long bad = 0;
                           for (const auto& lambda : compositions(D, n)) {
                             std::uint64_t sum = 0;
                             for (const auto& mu : compositions(D, k)) sum += block_dimension({k, n, lambda, mu});
                             std::uint64_t expected = 1;
                             for (int l : lambda)
                               expected *= binomial(static_cast<std::uint64_t>(l + k - 1),
                                                    static_cast<std::uint64_t>(k - 1));
                             if (sum != expected) ++bad;
                           }
                           return scalar_residual(Rat(bad));
                         }});
          out.push_back({"transpose", [=](const ParamPoint&) {
                           long bad = 0;
                           for (const auto& lambda : compositions(D, n))
                             for (const auto& mu : compositions(D, k)) {
                               const auto left = block_for({k, n, lambda, mu});
                               const auto right = block_for({n, k, mu, lambda});
                               if (left->size() != right->size()) {
                                 ++bad;
                                 continue;
                               }
                               for (const auto& d : left->tables())
                                 if (!right->find(d.transposed())) ++bad;
                             }
                           return scalar_residual(Rat(bad));
                         }});
          return out;
        };
        tasks.push_back(std::move(t));
      }
}

inline std::vector<Task> build_tasks(const std::string& suite, const Limits& lim) {
  std::vector<Task> tasks;
  if (suite == "all") {
    for (const auto& name : suite_names()) {
      auto more = build_tasks(name, lim);
      std::move(more.begin(), more.end(), std::back_inserter(tasks));
    }
    return tasks;
  }
  if (suite == "kz-flat") add_flat(tasks, suite, lim, Family::KzRat, Family::KzRat);
  else if (suite == "kz-trig-flat") add_flat(tasks, suite, lim, Family::KzTrig, Family::KzTrig);
  else if (suite == "dd-flat") add_flat(tasks, suite, lim, Family::DdRat, Family::DdRat);
  else if (suite == "dd-trig-flat") add_flat(tasks, suite, lim, Family::DdTrig, Family::DdTrig);
  else if (suite == "kz-dd") add_flat(tasks, suite, lim, Family::KzRat, Family::DdRat);
  else if (suite == "b-props") add_b_props(tasks, lim);
  else if (suite == "r-props") add_r_props(tasks, lim);
  else if (suite == "ybe") add_ybe(tasks, lim);
  else if (suite == "qdd-commute" || suite == "kz-qdd" || suite == "qkz-commute" || suite == "qkz-dd")
    add_difference(tasks, suite, lim);
  else if (suite == "ikn" || suite == "nd" || suite == "hd" || suite == "zq" || suite == "bcr")
    add_duality(tasks, suite, lim);
  else if (suite == "spectral") add_spectral(tasks, lim);
  else if (suite == "dual-dims") add_dual_dims(tasks, lim);
  else throw ParseError("unknown suite: " + suite);
  return tasks;
}

inline std::vector<VerifyReport> run_task(const Task& task, const Limits& lim) {
  std::vector<VerifyReport> out;
  std::vector<Check> checks;
  std::string setup_error;
  try {
    checks = task.checks();
  } catch (const std::exception& e) {
    setup_error = e.what();
  }
  auto base = [&](int trial) {
    VerifyReport r;
    r.suite = task.suite;
    r.margins = task.margins;
    r.params = task.params;
    r.seed = lim.seed;
    r.trial = trial;
    return r;
  };
  if (!setup_error.empty()) {
    VerifyReport r = base(0);
    r.check = "setup";
    r.error = setup_error;
    out.push_back(std::move(r));
    return out;
  }
  const int trials = task.uses_point ? lim.trials : 1;
  for (int trial = 0; trial < trials; ++trial) {
    ParamPoint point;
    if (task.uses_point)
      point = sample_point(lim.seed + static_cast<std::uint64_t>(trial), task.z_count, task.lam_count,
                           task.need_t, task.guard);
    for (const auto& check : checks) {
      VerifyReport r = base(trial);
      r.check = check.name;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        QMatrix res = check.residual(point);
        r.pass = res.is_zero();
        if (!r.pass) r.residual = std::move(res);
      } catch (const std::exception& e) {
        r.pass = false;
        r.error = e.what();
      }
      if (!r.pass && task.uses_point) r.point = point;
      if (lim.timing)
        r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace detail

/// Runs a suite (or "all") and returns its records in deterministic order.
/// `sink`, when given, receives the records of each task in order as soon
/// as they are available, and the returned list is left empty.
inline std::vector<VerifyReport> run_suite(
    const std::string& suite, const Limits& lim,
    const std::function<void(const VerifyReport&)>& sink = nullptr) {
  const auto tasks = detail::build_tasks(suite, lim);
  std::vector<std::vector<VerifyReport>> results(tasks.size());
  std::vector<std::atomic<bool>> done(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      results[i] = detail::run_task(tasks[i], lim);
      done[i].store(true, std::memory_order_release);
      done[i].notify_all();
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(lim.jobs, static_cast<unsigned>(tasks.size())));
  std::vector<std::jthread> pool;
  if (jobs > 1)
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);

  std::vector<VerifyReport> out;
  auto emit = [&](std::size_t i) {
    done[i].wait(false, std::memory_order_acquire);
    for (auto& r : results[i]) {
      if (sink) sink(r);
      else out.push_back(std::move(r));
    }
    results[i].clear();
  };
  if (jobs == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      results[i] = detail::run_task(tasks[i], lim);
      done[i].store(true);
      emit(i);
    }
  } else {
    for (std::size_t i = 0; i < tasks.size(); ++i) emit(i);
  }
  return out;
}

inline bool all_pass(const std::vector<VerifyReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const VerifyReport& r) { return r.pass; });
}

}  // namespace kzdual
