#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sumfactor/error.hpp"
#include "sumfactor/integer.hpp"

namespace sumfactor {

// ---------------------------------------------------------------------------
// Integer matrices and Smith normal form
// ---------------------------------------------------------------------------

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
      throw InvalidArgument("matrix entry count does not match its shape");
  }
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    for (const auto& row : rows) {
      if (row.size() != cols_) throw InvalidArgument("ragged matrix literal");
      for (long long v : row) entries_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Integer>& entries() const { return entries_; }

  Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  bool is_diagonal() const {
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (r != c && (*this)(r, c) != 0) return false;
    return true;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("matrix shapes do not compose");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

inline std::string to_string(const IntMatrix& m) {
  std::string out = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += r ? ",[" : "[";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += to_string(m(r, c));
    }
    out += ']';
  }
  return out + "]";
}

/// Parses `[[a,b],[c,d]]`. `[]` is the 0x0 matrix; `0x3` style shapes are
/// written as `[](3)` for an empty matrix with 3 columns.
inline IntMatrix parse_matrix(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto fail = [&](const std::string& why) -> IntMatrix {
    throw SyntaxError("matrix literal: " + why + " in '" + std::string(text) + "'");
  };
  if (s.size() < 2 || s.front() != '[') return fail("expected '['");
  if (s.rfind("[](", 0) == 0 && s.back() == ')') {
    Integer cols = parse_integer(std::string_view(s).substr(3, s.size() - 4));
    if (cols < 0) return fail("negative column count");
    return IntMatrix(0, cols.convert_to<std::size_t>());
  }
  if (s == "[]") return IntMatrix();
  if (s.back() != ']') return fail("expected ']'");
  std::vector<std::vector<Integer>> rows;
  std::size_t pos = 1;
  while (pos < s.size() - 1) {
    if (s[pos] != '[') return fail("expected '[' at position " + std::to_string(pos));
    std::size_t close = s.find(']', pos);
    if (close == std::string::npos) return fail("unterminated row");
    std::vector<Integer> row;
    std::string_view body = std::string_view(s).substr(pos + 1, close - pos - 1);
    std::size_t start = 0;
    while (start <= body.size() && !body.empty()) {
      std::size_t comma = body.find(',', start);
      if (comma == std::string_view::npos) comma = body.size();
      row.push_back(parse_integer(body.substr(start, comma - start)));
      start = comma + 1;
      if (comma == body.size()) break;
    }
    rows.push_back(std::move(row));
    pos = close + 1;
    if (pos < s.size() - 1) {
      if (s[pos] != ',') return fail("expected ',' between rows");
      ++pos;
    }
  }
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<Integer> entries;
  for (auto& row : rows) {
    if (row.size() != cols) return fail("ragged rows");
    for (auto& v : row) entries.push_back(std::move(v));
  }
  return IntMatrix(rows.size(), cols, std::move(entries));
}

struct SmithForm {
  std::vector<Integer> diagonal;  ///< min(rows, cols) entries, d[i] | d[i+1], zeros trail
  IntMatrix left;                 ///< rows x rows, unimodular
  IntMatrix right;                ///< cols x cols, unimodular
};

namespace detail {

inline void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}
inline void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}
// row[dst] += factor * row[src]
inline void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& factor) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (m(src, c) != 0) m(dst, c) += factor * m(src, c);
}
inline void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& factor) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (m(r, src) != 0) m(r, dst) += factor * m(r, src);
}

}  // namespace detail

/// Smith normal form with transforms: left * m * right is diagonal.
inline SmithForm snf(const IntMatrix& m) {
  using detail::add_col;
  using detail::add_row;
  IntMatrix a = m;
  IntMatrix left = IntMatrix::identity(m.rows());
  IntMatrix right = IntMatrix::identity(m.cols());
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::size_t n = std::min(rows, cols);

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Smallest non-zero entry of the trailing block becomes the pivot.
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a(i, j) != 0 && (!best || abs(a(i, j)) < abs(a(best->first, best->second))))
            best = {i, j};
      if (!best) break;
      detail::swap_rows(a, t, best->first);
      detail::swap_rows(left, t, best->first);
      detail::swap_cols(a, t, best->second);
      detail::swap_cols(right, t, best->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = a(i, t) / a(t, t);
        add_row(a, i, t, -q);
        add_row(left, i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = a(t, j) / a(t, t);
        add_col(a, j, t, -q);
        add_col(right, j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the whole trailing block.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < rows && divides_all; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            add_row(a, t, i, 1);
            add_row(left, t, i, 1);
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    if (a(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) a(t, c) = -a(t, c);
      for (std::size_t c = 0; c < rows; ++c) left(t, c) = -left(t, c);
    }
  }

  SmithForm out{{}, std::move(left), std::move(right)};
  out.diagonal.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.diagonal.push_back(a(i, i));
  return out;
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups
// ---------------------------------------------------------------------------

struct PrimePower {
  Integer prime;
  unsigned exponent = 1;

  Integer value() const { return boost::multiprecision::pow(prime, exponent); }
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
  friend bool operator<(const PrimePower& a, const PrimePower& b) {
    if (a.prime != b.prime) return a.prime < b.prime;
    return a.exponent < b.exponent;
  }
};

/// Multiset of cyclic prime-power summands: (p, e) -> multiplicity.
using PrimaryMultiset = std::map<PrimePower, std::size_t>;

namespace detail {

/// The gcd/lcm sweep in machine words, when every factor fits and their
/// product stays below 2^63 (so no lcm can overflow).
inline std::optional<std::vector<std::uint64_t>> chain_u64(const std::vector<Integer>& torsion) {
  std::vector<std::uint64_t> t;
  t.reserve(torsion.size());
  std::uint64_t product = 1;
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 63;
  for (const auto& d : torsion) {
    if (d >= kLimit) return std::nullopt;
    auto v = d.convert_to<std::uint64_t>();
    if (product > kLimit / v) return std::nullopt;
    product *= v;
    t.push_back(v);
  }
  std::sort(t.begin(), t.end());
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      std::uint64_t g = std::gcd(t[i], t[j]);
      if (g == t[i]) continue;
      t[j] = t[i] / g * t[j];
      t[i] = g;
    }
  std::vector<std::uint64_t> out;
  for (auto d : t)
    if (d != 1) out.push_back(d);
  return out;
}

}  // namespace detail

/// Finitely generated abelian group Z^r + Z/d1 + ... + Z/dm in invariant-factor
/// form: every d_i >= 2 and d_i | d_{i+1}. Value equality is isomorphism.
class AbelianGroup {
 public:
  AbelianGroup() = default;

  /// Any list of cyclic orders; 0 contributes a free summand and 1 is dropped.
  static AbelianGroup from_cyclic(std::size_t free_rank, std::vector<Integer> orders) {
    AbelianGroup g;
    g.free_rank_ = free_rank;
    std::vector<Integer> torsion;
    for (auto& d : orders) {
      if (d < 0) d = -d;
      if (d == 0)
        ++g.free_rank_;
      else if (d != 1)
        torsion.push_back(std::move(d));
    }
    // (Z/a + Z/b) = (Z/gcd + Z/lcm); sweeping pairs yields a divisibility chain.
    if (auto small = detail::chain_u64(torsion)) {
      for (auto d : *small) g.factors_.emplace_back(d);
      return g;
    }
    std::sort(torsion.begin(), torsion.end());
    for (std::size_t i = 0; i < torsion.size(); ++i)
      for (std::size_t j = i + 1; j < torsion.size(); ++j) {
        Integer g_ij = gcd(torsion[i], torsion[j]);
        if (g_ij == torsion[i]) continue;
        Integer l_ij = torsion[i] / g_ij * torsion[j];
        torsion[i] = std::move(g_ij);
        torsion[j] = std::move(l_ij);
      }
    for (auto& d : torsion)
      if (d != 1) g.factors_.push_back(std::move(d));
    return g;
  }

  /// `chain` must already be a divisibility chain of factors > 1.
  static AbelianGroup from_invariant_chain(std::size_t free_rank, std::vector<Integer> chain) {
    AbelianGroup g;
    g.free_rank_ = free_rank;
    g.factors_ = std::move(chain);
    return g;
  }

  static AbelianGroup free(std::size_t rank) { return from_cyclic(rank, {}); }
  static AbelianGroup cyclic(const Integer& order) { return from_cyclic(0, {order}); }

  static AbelianGroup from_primary(std::size_t free_rank, const PrimaryMultiset& primary) {
    // Largest prime powers of each prime go to the largest invariant factor.
    std::map<Integer, std::vector<unsigned>> by_prime;
    for (const auto& [pp, count] : primary)
      for (std::size_t k = 0; k < count; ++k) by_prime[pp.prime].push_back(pp.exponent);
    std::size_t length = 0;
    for (auto& [p, exps] : by_prime) {
      std::sort(exps.rbegin(), exps.rend());
      length = std::max(length, exps.size());
    }
    std::vector<Integer> factors(length, Integer(1));
    for (const auto& [p, exps] : by_prime)
      for (std::size_t k = 0; k < exps.size(); ++k)
        factors[length - 1 - k] *= boost::multiprecision::pow(p, exps[k]);
    AbelianGroup g;
    g.free_rank_ = free_rank;
    g.factors_ = std::move(factors);
    return g;
  }

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& invariant_factors() const { return factors_; }

  Integer torsion_order() const {
    Integer order = 1;
    for (const auto& d : factors_) order *= d;
    return order;
  }

  bool is_trivial() const { return free_rank_ == 0 && factors_.empty(); }
  bool is_finite() const { return free_rank_ == 0; }
  AbelianGroup torsion() const {
    AbelianGroup g = *this;
    g.free_rank_ = 0;
    return g;
  }

  PrimaryMultiset primary() const {
    PrimaryMultiset out;
    for (const auto& d : factors_)
      for (const auto& [p, e] : factorize(d)) ++out[PrimePower{p, e}];
    return out;
  }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

  /// Canonical order: free rank, torsion order, then invariant factors.
  friend std::strong_ordering operator<=>(const AbelianGroup& a, const AbelianGroup& b) {
    if (auto c = a.free_rank_ <=> b.free_rank_; c != 0) return c;
    Integer ta = a.torsion_order(), tb = b.torsion_order();
    if (ta != tb) return ta < tb ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = a.factors_.size() <=> b.factors_.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.factors_.size(); ++i)
      if (a.factors_[i] != b.factors_[i])
        return a.factors_[i] < b.factors_[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> factors_;
};

/// Z^cols modulo the row span of m.
inline AbelianGroup cokernel(const IntMatrix& m) {
  SmithForm form = snf(m);
  std::size_t nonzero = 0;
  std::vector<Integer> torsion;
  for (const auto& d : form.diagonal) {
    if (d == 0) continue;
    ++nonzero;
    if (d != 1) torsion.push_back(d);
  }
  return AbelianGroup::from_cyclic(m.cols() - nonzero, std::move(torsion));
}

inline AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
  if (b.invariant_factors().empty()) return AbelianGroup::from_invariant_chain(a.free_rank() + b.free_rank(), a.invariant_factors());
  if (a.invariant_factors().empty()) return AbelianGroup::from_invariant_chain(a.free_rank() + b.free_rank(), b.invariant_factors());
  std::vector<Integer> orders = a.invariant_factors();
  orders.insert(orders.end(), b.invariant_factors().begin(), b.invariant_factors().end());
  return AbelianGroup::from_cyclic(a.free_rank() + b.free_rank(), std::move(orders));
}

/// D with whole = part + D, when part is a direct summand of whole.
inline std::optional<AbelianGroup> split_summand(const AbelianGroup& whole, const AbelianGroup& part) {
  if (part.free_rank() > whole.free_rank()) return std::nullopt;
  PrimaryMultiset rest = whole.primary();
  for (const auto& [pp, count] : part.primary()) {
    auto it = rest.find(pp);
    if (it == rest.end() || it->second < count) return std::nullopt;
    it->second -= count;
    if (it->second == 0) rest.erase(it);
  }
  return AbelianGroup::from_primary(whole.free_rank() - part.free_rank(), rest);
}

/// A with t = A + A (or t = A + A + Z/2 when plus_z2), if it exists.
inline std::optional<AbelianGroup> doubled_form(const AbelianGroup& t, bool plus_z2) {
  if (!t.is_finite()) throw InvalidArgument("doubled_form expects a finite group");
  PrimaryMultiset primary = t.primary();
  if (plus_z2) {
    auto it = primary.find(PrimePower{2, 1});
    if (it == primary.end()) return std::nullopt;
    if (--it->second == 0) primary.erase(it);
  }
  PrimaryMultiset half;
  for (const auto& [pp, count] : primary) {
    if (count % 2 != 0) return std::nullopt;
    half[pp] = count / 2;
  }
  return AbelianGroup::from_primary(0, half);
}

/// d(A): free rank plus the number of invariant factors.
inline std::size_t min_generators(const AbelianGroup& a) {
  return a.free_rank() + a.invariant_factors().size();
}

namespace detail {

inline void partitions(unsigned n, unsigned max_part, std::vector<unsigned>& current,
                       std::vector<std::vector<unsigned>>& out) {
  if (n == 0) {
    out.push_back(current);
    return;
  }
  for (unsigned part = std::min(n, max_part); part >= 1; --part) {
    current.push_back(part);
    partitions(n - part, part, current, out);
    current.pop_back();
  }
}

}  // namespace detail

/// Every finite abelian group of order <= max_order (trivial group included),
/// in canonical order.
inline std::vector<AbelianGroup> enumerate_finite_groups(std::size_t max_order) {
  std::vector<AbelianGroup> out;
  for (std::size_t n = 1; n <= max_order; ++n) {
    std::vector<PrimaryMultiset> shapes{PrimaryMultiset{}};
    for (const auto& [p, e] : factorize(Integer(n))) {
      std::vector<std::vector<unsigned>> parts;
      std::vector<unsigned> scratch;
      detail::partitions(e, e, scratch, parts);
      std::vector<PrimaryMultiset> next;
      for (const auto& shape : shapes)
        for (const auto& part : parts) {
          PrimaryMultiset extended = shape;
          for (unsigned exponent : part) ++extended[PrimePower{p, exponent}];
          next.push_back(std::move(extended));
        }
      shapes = std::move(next);
    }
    for (const auto& shape : shapes) out.push_back(AbelianGroup::from_primary(0, shape));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Literals: `Z^r + Z/d1 + Z/d2`, trivial group `1`
// ---------------------------------------------------------------------------

inline std::string to_string(const AbelianGroup& g) {
  if (g.is_trivial()) return "1";
  std::string out;
  if (g.free_rank() == 1)
    out = "Z";
  else if (g.free_rank() > 1)
    out = "Z^" + std::to_string(g.free_rank());
  for (const auto& d : g.invariant_factors()) {
    if (!out.empty()) out += '+';
    out += "Z/" + to_string(d);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const AbelianGroup& g) { return os << to_string(g); }

inline AbelianGroup parse_group(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw SyntaxError("empty group literal");
  std::size_t rank = 0;
  std::vector<Integer> orders;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t plus = s.find('+', pos);
    if (plus == std::string::npos) plus = s.size();
    std::string term = s.substr(pos, plus - pos);
    auto fail = [&] {
      throw SyntaxError("bad group term '" + term + "' at position " + std::to_string(pos) + " in '" +
                        std::string(text) + "'");
    };
    if (term == "1" || term == "0") {
      // trivial summand
    } else if (term == "Z") {
      ++rank;
    } else if (term.rfind("Z^", 0) == 0) {
      Integer r = parse_integer(std::string_view(term).substr(2));
      if (r < 0) fail();
      rank += r.convert_to<std::size_t>();
    } else if (term.rfind("Z/", 0) == 0) {
      Integer d = parse_integer(std::string_view(term).substr(2));
      if (d < 0) fail();
      orders.push_back(d);
    } else {
      fail();
    }
    if (plus == s.size()) break;
    pos = plus + 1;
  }
  return AbelianGroup::from_cyclic(rank, std::move(orders));
}

}  // namespace sumfactor
