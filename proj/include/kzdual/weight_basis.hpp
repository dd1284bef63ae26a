#pragma once

// Contingency tables with fixed margins and the weight blocks of the
// polynomial ring in k*n variables that they index.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "kzdual/errors.hpp"

namespace kzdual {

/// Degrees of the n tensor factors (`lambda`, the gl_n weight) and the
/// gl_k weight `mu`.
struct Margins {
  int k = 0;
  int n = 0;
  std::vector<int> lambda;
  std::vector<int> mu;

  bool well_formed() const {
    return k >= 0 && n >= 0 && static_cast<int>(lambda.size()) == n &&
           static_cast<int>(mu.size()) == k;
  }
  /// Nonempty margins need equal totals and no negative entries.
  bool feasible() const {
    if (!well_formed()) return false;
    for (int l : lambda)
      if (l < 0) return false;
    for (int m : mu)
      if (m < 0) return false;
    return std::accumulate(lambda.begin(), lambda.end(), 0) ==
           std::accumulate(mu.begin(), mu.end(), 0);
  }
  int degree() const { return std::accumulate(lambda.begin(), lambda.end(), 0); }

  friend auto operator<=>(const Margins&, const Margins&) = default;
};

/// k x n table of nonnegative integers, stored row-major. Labels the
/// divided-power monomial prod x_{ai}^{d_{ai}} / d_{ai}!.
struct Table {
  int k = 0;
  int n = 0;
  std::vector<int> d;

  Table() = default;
  Table(int k_, int n_) : k(k_), n(n_), d(static_cast<std::size_t>(k_ * n_), 0) {}
  Table(int k_, int n_, std::vector<int> entries) : k(k_), n(n_), d(std::move(entries)) {}

  int& operator()(int a, int i) { return d[static_cast<std::size_t>(a * n + i)]; }
  int operator()(int a, int i) const { return d[static_cast<std::size_t>(a * n + i)]; }

  Table transposed() const {
    Table t(n, k);
    for (int a = 0; a < k; ++a)
      for (int i = 0; i < n; ++i) t(i, a) = (*this)(a, i);
    return t;
  }

  friend bool operator==(const Table&, const Table&) = default;
  friend auto operator<=>(const Table& x, const Table& y) { return x.d <=> y.d; }
};

class WeightBlock {
 public:
  explicit WeightBlock(Margins margins) : margins_(std::move(margins)) {
    if (!margins_.well_formed()) throw IndexOutOfRange("margins have wrong lengths");
    if (margins_.feasible()) fill();
    for (std::size_t p = 0; p < tables_.size(); ++p) index_.emplace(tables_[p], p);
  }

  const Margins& margins() const { return margins_; }
  const std::vector<Table>& tables() const { return tables_; }
  std::size_t size() const { return tables_.size(); }
  bool empty() const { return tables_.empty(); }

  std::optional<std::size_t> find(const Table& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  // Depth-first over the row-major cells with remaining row/column
  // capacities; the traversal emits tables in ascending lexicographic
  // order of the flattening.
  void fill() {
    const int k = margins_.k;
    const int n = margins_.n;
    if (k == 0 || n == 0) {
      if (margins_.degree() == 0) tables_.emplace_back(k, n);
      return;
    }
    std::vector<int> row_left(margins_.mu);
    std::vector<int> col_left(margins_.lambda);
    Table cur(k, n);
    recurse(0, cur, row_left, col_left);
  }

  void recurse(int cell, Table& cur, std::vector<int>& row_left, std::vector<int>& col_left) {
    const int k = margins_.k;
    const int n = margins_.n;
    if (cell == k * n) {
      tables_.push_back(cur);
      return;
    }
    const int a = cell / n;
    const int i = cell % n;
    int lo = 0;
    int hi = std::min(row_left[a], col_left[i]);
    // The last cell of a row (column) must absorb what the row (column) has left.
    if (i == n - 1) lo = std::max(lo, row_left[a]);
    if (a == k - 1) lo = std::max(lo, col_left[i]);
    if (i == n - 1) hi = std::min(hi, row_left[a]);
    if (a == k - 1) hi = std::min(hi, col_left[i]);
    for (int v = lo; v <= hi; ++v) {
      cur(a, i) = v;
      row_left[a] -= v;
      col_left[i] -= v;
      recurse(cell + 1, cur, row_left, col_left);
      row_left[a] += v;
      col_left[i] += v;
    }
    cur(a, i) = 0;
  }

  Margins margins_;
  std::vector<Table> tables_;
  std::map<Table, std::size_t> index_;
};

using BlockPtr = std::shared_ptr<const WeightBlock>;

inline WeightBlock enumerate_tables(const Margins& margins) { return WeightBlock(margins); }

/// Shared, memoized blocks; safe for concurrent use.
inline BlockPtr block_for(const Margins& margins) {
  static std::mutex mutex;
  static std::map<Margins, BlockPtr> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(margins);
  if (it != cache.end()) return it->second;
  auto block = std::make_shared<const WeightBlock>(margins);
  cache.emplace(margins, block);
  return block;
}

inline std::size_t block_dimension(const Margins& margins) {
  return enumerate_tables(margins).size();
}

/// Weakly decreasing parts, no trailing zeros.
struct Partition {
  std::vector<int> parts;

  int size() const { return std::accumulate(parts.begin(), parts.end(), 0); }
  std::size_t length() const { return parts.size(); }
  int part(std::size_t a) const { return a < parts.size() ? parts[a] : 0; }

  friend auto operator<=>(const Partition&, const Partition&) = default;
};

inline Partition make_partition(std::vector<int> parts) {
  if (!std::is_sorted(parts.rbegin(), parts.rend())) throw IndexOutOfRange("parts not decreasing");
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  return Partition{std::move(parts)};
}

namespace detail {
inline void partitions_rec(int remaining, int max_part, std::size_t max_parts,
                           std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(Partition{cur});
    return;
  }
  if (cur.size() == max_parts) return;
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, max_parts, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

/// Partitions of `size` with at most `max_parts` parts, largest first part first.
inline std::vector<Partition> enumerate_partitions(std::size_t max_parts, int size) {
  std::vector<Partition> out;
  std::vector<int> cur;
  detail::partitions_rec(size, size, max_parts, cur, out);
  return out;
}

/// Dimension of the irreducible gl_N module with highest weight nu.
inline std::uint64_t weyl_dimension(std::size_t N, const Partition& nu) {
  if (nu.length() > N) throw TooManyParts("partition has more than N parts");
  // prod_{a<b} (nu_a - nu_b + b - a) / (b - a)
  mpz_class num = 1;
  mpz_class den = 1;
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = a + 1; b < N; ++b) {
      num *= nu.part(a) - nu.part(b) + static_cast<int>(b - a);
      den *= static_cast<unsigned long>(b - a);
    }
  }
  const mpz_class q = num / den;
  return q.get_ui();
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t out = 1;
  for (std::uint64_t j = 1; j <= r; ++j) out = out * (n - r + j) / j;
  return out;
}

/// All compositions of `total` into `parts` nonnegative entries, in
/// lexicographic order.
inline std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  if (parts == 0) {
    if (total == 0) out.emplace_back();
    return out;
  }
  std::vector<int> cur(static_cast<std::size_t>(parts), 0);
  auto rec = [&](auto&& self, int idx, int left) -> void {
    if (idx == parts - 1) {
      cur[static_cast<std::size_t>(idx)] = left;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[static_cast<std::size_t>(idx)] = v;
      self(self, idx + 1, left - v);
    }
  };
  rec(rec, 0, total);
  return out;
}

}  // namespace kzdual
