#pragma once

// Reference computations that share no code with the library. Each one is
// slow and obvious; tests compare the library against them.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Big = boost::multiprecision::cpp_int;
using Matrix = std::vector<std::vector<Big>>;

inline Big big_abs(const Big& x) { return x < 0 ? Big(-x) : x; }

inline Big big_gcd(Big a, Big b) {
  a = big_abs(a);
  b = big_abs(b);
  while (b != 0) {
    Big t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Fraction-free Gaussian elimination.
inline Big bareiss_det(Matrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Big sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// Invariant factors d_k / d_{k-1} from the gcds d_k of all k x k minors;
/// zeros for ranks beyond the matrix rank. Length min(rows, cols).
inline std::vector<Big> determinantal_diagonal(const Matrix& m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  const std::size_t n = std::min(rows, cols);
  std::vector<Big> out;
  Big previous = 1;
  bool zero = false;
  for (std::size_t k = 1; k <= n; ++k) {
    if (zero) {
      out.push_back(0);
      continue;
    }
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(rows, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    Big g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        Matrix minor(k, std::vector<Big>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) minor[i][j] = m[r[i]][c[j]];
        g = big_gcd(g, bareiss_det(minor));
      }
    if (g == 0) {
      zero = true;
      out.push_back(0);
      continue;
    }
    out.push_back(g / previous);
    previous = g;
  }
  return out;
}

/// A finite abelian group as a raw list of cyclic orders (any order, 1s allowed).
using Cyclics = std::vector<std::uint64_t>;

/// Number of elements x with m x = 0.
inline std::uint64_t count_killed_by(const Cyclics& g, std::uint64_t m) {
  std::uint64_t count = 1;
  for (auto n : g) count *= std::gcd(n, m);
  return count;
}

inline std::uint64_t order(const Cyclics& g) {
  std::uint64_t o = 1;
  for (auto n : g) o *= n;
  return o;
}

/// Finite abelian groups are isomorphic iff they have the same number of
/// elements killed by every m.
inline bool isomorphic(const Cyclics& a, const Cyclics& b) {
  std::uint64_t oa = order(a), ob = order(b);
  if (oa != ob) return false;
  for (std::uint64_t m = 1; m <= oa; ++m)
    if (oa % m == 0 && count_killed_by(a, m) != count_killed_by(b, m)) return false;
  return true;
}

/// Every non-decreasing list of cyclic orders >= 2 with product n.
inline void cyclic_lists(std::uint64_t n, std::uint64_t min_part, Cyclics& cur, std::vector<Cyclics>& out) {
  if (n == 1) {
    out.push_back(cur);
    return;
  }
  for (std::uint64_t d = min_part; d <= n; ++d) {
    if (n % d) continue;
    cur.push_back(d);
    cyclic_lists(n / d, d, cur, out);
    cur.pop_back();
  }
}

/// One representative per isomorphism class of groups of order n.
inline std::vector<Cyclics> groups_of_order(std::uint64_t n) {
  std::vector<Cyclics> all, reps;
  Cyclics cur;
  cyclic_lists(n, 2, cur, all);
  for (const auto& g : all) {
    bool seen = false;
    for (const auto& r : reps) seen = seen || isomorphic(g, r);
    if (!seen) reps.push_back(g);
  }
  return reps;
}

inline Cyclics concat(Cyclics a, const Cyclics& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// Some D with whole = part + D, by search over all groups of the right order.
inline std::optional<Cyclics> complement(const Cyclics& whole, const Cyclics& part) {
  std::uint64_t ow = order(whole), op = order(part);
  if (ow % op) return std::nullopt;
  for (const auto& d : groups_of_order(ow / op))
    if (isomorphic(concat(part, d), whole)) return d;
  return std::nullopt;
}

/// Minimal generator count: max over primes of the p-rank, by brute force on prime divisors.
inline std::size_t min_generators(const Cyclics& g, std::size_t free_rank) {
  std::size_t best = 0;
  for (std::uint64_t p = 2; p <= 1000; ++p) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= p; ++d) prime = prime && p % d;
    if (!prime) continue;
    std::size_t rank = 0;
    for (auto n : g) rank += n % p == 0;
    best = std::max(best, rank);
  }
  return free_rank + best;
}

/// Heights with -1 for infinity.
inline int consum_height(int a, int b) {
  if (a == 0) return b;
  if (b == 0) return a;
  if (a == -1) return b;
  if (b == -1) return a;
  return std::min(a, b);
}

/// Torsion T is A + A (plus Z/2 when with_z2), searched over all A.
inline bool doubled(const Cyclics& t, bool with_z2) {
  std::uint64_t o = order(t);
  if (with_z2) {
    if (o % 2) return false;
    o /= 2;
  }
  std::uint64_t a = 1;
  while (a * a < o) ++a;
  if (a * a != o) return false;
  for (const auto& g : groups_of_order(a)) {
    Cyclics candidate = concat(g, g);
    if (with_z2) candidate.push_back(2);
    if (isomorphic(candidate, t)) return true;
  }
  return false;
}

inline bool is_square_mod(std::uint64_t r, std::uint64_t p) {
  for (std::uint64_t x = 1; x < p; ++x)
    if (x * x % p == r % p) return true;
  return false;
}

/// The subgroup of Z/12 generated by a, as a set.
inline std::set<int> generated(int a) {
  std::set<int> s;
  for (int k = 0; k < 12; ++k) s.insert((k * a) % 12);
  return s;
}

}  // namespace oracle
