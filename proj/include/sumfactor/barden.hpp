#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sumfactor/abgroup.hpp"
#include "sumfactor/error.hpp"

namespace sumfactor::barden {

/// Barden height: 0 (spin), 1, 2, ... or infinity.
class Height {
 public:
  constexpr Height() = default;
  constexpr Height(unsigned value) : value_(value) {}  // NOLINT: heights read naturally as integers
  static constexpr Height infinite() {
    Height h;
    h.value_ = kInfinite;
    return h;
  }

  constexpr bool is_infinite() const { return value_ == kInfinite; }
  constexpr unsigned value() const { return value_; }

  friend constexpr bool operator==(Height, Height) = default;
  friend constexpr auto operator<=>(Height, Height) = default;

 private:
  static constexpr unsigned kInfinite = std::numeric_limits<unsigned>::max();
  unsigned value_ = 0;
};

inline std::string to_string(Height h) { return h.is_infinite() ? "inf" : std::to_string(h.value()); }

inline Height parse_height(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s == "inf" || s == "∞" || s == "infinity") return Height::infinite();
  Integer v = parse_integer(s);
  if (v < 0 || v > 1000) throw SyntaxError("height out of range: '" + std::string(text) + "'");
  return Height(v.convert_to<unsigned>());
}

/// The height table of a connected sum.
constexpr Height consum_height(Height a, Height b) {
  if (a == Height(0)) return b;
  if (b == Height(0)) return a;
  return std::min(a, b);
}

enum class Realizability { ok, not_realizable, unsupported_height };

/// Which (H2, height) pairs occur. Torsion is A+A, or A+A+Z/2 at height 1;
/// a finite height k >= 1 needs a Z/2^k summand, height inf needs free rank.
inline Realizability realizability(const AbelianGroup& h2, Height height) {
  const AbelianGroup torsion = h2.torsion();
  const bool doubled = doubled_form(torsion, false).has_value();
  if (height == Height(1)) {
    if (doubled_form(torsion, true)) return Realizability::ok;
    if (!doubled) return Realizability::not_realizable;
    return torsion.primary().contains(PrimePower{2, 1}) ? Realizability::ok
                                                         : Realizability::unsupported_height;
  }
  if (!doubled) return Realizability::not_realizable;
  if (height.is_infinite()) return h2.free_rank() >= 1 ? Realizability::ok : Realizability::unsupported_height;
  if (height.value() >= 2 && !torsion.primary().contains(PrimePower{2, height.value()}))
    return Realizability::unsupported_height;
  return Realizability::ok;
}

/// Diffeomorphism class of a simply connected 5-manifold, held as its
/// complete invariants (H2, height).
class Manifold5 {
 public:
  /// S^5.
  Manifold5() = default;

  static Manifold5 validate(AbelianGroup h2, Height height) {
    switch (realizability(h2, height)) {
      case Realizability::ok:
        break;
      case Realizability::not_realizable:
        throw NotRealizable("torsion of " + to_string(h2) + " has the wrong shape for height " +
                            to_string(height));
      case Realizability::unsupported_height:
        throw UnsupportedHeight(to_string(h2) + " has no summand supporting height " + to_string(height));
    }
    return Manifold5(std::move(h2), height);
  }

  static std::optional<Manifold5> try_make(AbelianGroup h2, Height height) {
    if (realizability(h2, height) != Realizability::ok) return std::nullopt;
    return Manifold5(std::move(h2), height);
  }

  static Manifold5 sphere() { return {}; }
  static Manifold5 wu() { return Manifold5(AbelianGroup::cyclic(2), Height(1)); }

  const AbelianGroup& h2() const { return h2_; }
  Height height() const { return height_; }
  bool is_spin() const { return height_ == Height(0); }
  bool is_sphere() const { return h2_.is_trivial(); }

  friend bool operator==(const Manifold5&, const Manifold5&) = default;
  friend std::strong_ordering operator<=>(const Manifold5& a, const Manifold5& b) {
    if (auto c = a.h2_ <=> b.h2_; c != 0) return c;
    return a.height_ <=> b.height_;
  }

  friend Manifold5 consum(const Manifold5& m, const Manifold5& n) {
    return Manifold5(direct_sum(m.h2_, n.h2_), consum_height(m.height_, n.height_));
  }

 private:
  Manifold5(AbelianGroup h2, Height height) : h2_(std::move(h2)), height_(height) {}

  AbelianGroup h2_;
  Height height_;
};

inline std::string to_string(const Manifold5& m) {
  return "M5(H2=" + to_string(m.h2()) + ", h=" + to_string(m.height()) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const Manifold5& m) { return os << to_string(m); }

/// Parses `M5(H2=<group>, h=<nat|inf>)`.
inline Manifold5 parse_manifold(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto fail = [&](const std::string& why) -> Manifold5 {
    throw SyntaxError("manifold literal: " + why + " in '" + std::string(text) + "'");
  };
  if (s.rfind("M5(", 0) != 0 || s.back() != ')') return fail("expected M5(...)");
  std::string body = s.substr(3, s.size() - 4);
  std::size_t comma = body.rfind(',');
  if (comma == std::string::npos) return fail("expected ', h='");
  std::string first = body.substr(0, comma), second = body.substr(comma + 1);
  if (first.rfind("H2=", 0) != 0) return fail("expected 'H2='");
  if (second.rfind("h=", 0) != 0) return fail("expected 'h='");
  return Manifold5::validate(parse_group(first.substr(3)), parse_height(second.substr(2)));
}

inline Manifold5 fold_consum(const std::vector<Manifold5>& parts) {
  Manifold5 out;
  for (const auto& p : parts) out = consum(out, p);
  return out;
}

// ---------------------------------------------------------------------------
// Divisibility
// ---------------------------------------------------------------------------

inline bool wu_divides(const Manifold5& m) { return m.height() == Height(1); }

/// L with W # L = m. Spin whenever m has an odd number of Z/2 summands.
inline Manifold5 wu_complement(const Manifold5& m) {
  if (!wu_divides(m)) throw NotDivisible("the Wu manifold divides only height-1 manifolds; got " + to_string(m));
  auto rest = split_summand(m.h2(), AbelianGroup::cyclic(2));
  for (Height h : {Height(0), Height(1)}) {
    auto candidate = Manifold5::try_make(*rest, h);
    if (candidate && consum(Manifold5::wu(), *candidate) == m) return *candidate;
  }
  throw NotDivisible("no complement of the Wu manifold in " + to_string(m));  // unreachable for valid m
}

namespace detail {

inline std::vector<Height> candidate_heights(const AbelianGroup& group, std::initializer_list<Height> extra) {
  std::set<Height> heights{Height(0), Height(1), Height::infinite()};
  heights.insert(extra.begin(), extra.end());
  for (const auto& [pp, count] : group.primary())
    if (pp.prime == 2) heights.insert(Height(pp.exponent));
  return {heights.begin(), heights.end()};
}

}  // namespace detail

/// Every L with consum(n, L) = m, canonically ordered.
inline std::vector<Manifold5> complements5(const Manifold5& n, const Manifold5& m) {
  std::vector<Manifold5> out;
  auto rest = split_summand(m.h2(), n.h2());
  if (!rest) return out;
  for (Height h : detail::candidate_heights(*rest, {n.height(), m.height()})) {
    auto candidate = Manifold5::try_make(*rest, h);
    if (candidate && consum(n, *candidate) == m) out.push_back(*candidate);
  }
  return out;
}

inline std::optional<Manifold5> divides5(const Manifold5& n, const Manifold5& m) {
  auto all = complements5(n, m);
  if (all.empty()) return std::nullopt;
  return all.front();
}

/// Every direct summand of g (up to isomorphism), canonically ordered.
inline std::vector<AbelianGroup> summands(const AbelianGroup& g) {
  const PrimaryMultiset primary = g.primary();
  std::vector<PrimaryMultiset> shapes{PrimaryMultiset{}};
  for (const auto& [pp, count] : primary) {
    std::vector<PrimaryMultiset> next;
    for (const auto& shape : shapes)
      for (std::size_t k = 0; k <= count; ++k) {
        PrimaryMultiset extended = shape;
        if (k) extended[pp] = k;
        next.push_back(std::move(extended));
      }
    shapes = std::move(next);
  }
  std::vector<AbelianGroup> out;
  for (std::size_t r = 0; r <= g.free_rank(); ++r)
    for (const auto& shape : shapes) out.push_back(AbelianGroup::from_primary(r, shape));
  std::sort(out.begin(), out.end());
  return out;
}

/// Every divisor of m (S^5 and m included), canonically ordered.
inline std::vector<Manifold5> divisors5(const Manifold5& m) {
  std::vector<Manifold5> out;
  for (const auto& part : summands(m.h2()))
    for (Height h : detail::candidate_heights(part, {m.height()})) {
      auto candidate = Manifold5::try_make(part, h);
      if (candidate && divides5(*candidate, m)) out.push_back(*candidate);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool irreducible5(const Manifold5& m) {
  if (m.is_sphere()) return false;
  for (const auto& d : divisors5(m))
    if (!d.is_sphere() && d != m) return false;
  return true;
}

/// A multiset of irreducibles whose connected sum is m. Terminates because a
/// proper factor has strictly smaller rank + torsion order.
inline std::vector<Manifold5> factorize5(const Manifold5& m) {
  if (m.is_sphere()) return {};
  for (const auto& d : divisors5(m)) {
    if (d.is_sphere() || d == m) continue;
    auto rest = divides5(d, m);
    std::vector<Manifold5> out = factorize5(d);
    std::vector<Manifold5> tail = factorize5(*rest);
    out.insert(out.end(), tail.begin(), tail.end());
    std::sort(out.begin(), out.end());
    return out;
  }
  return {m};
}

using Factorization = std::vector<Manifold5>;

/// Memoized search for every factorization into irreducibles.
class FactorizationIndex {
 public:
  const std::set<Factorization>& factorizations(const Manifold5& m) {
    if (auto it = memo_.find(m); it != memo_.end()) return it->second;
    std::set<Factorization> found;
    if (m.is_sphere()) {
      found.insert(Factorization{});
    } else {
      for (const auto& d : divisors5(m)) {
        if (d.is_sphere() || !is_irreducible(d)) continue;
        for (const auto& rest : complements5(d, m))
          for (Factorization f : factorizations(rest)) {
            f.push_back(d);
            std::sort(f.begin(), f.end());
            found.insert(std::move(f));
          }
      }
    }
    return memo_.emplace(m, std::move(found)).first->second;
  }

  bool is_irreducible(const Manifold5& m) {
    if (auto it = irreducible_.find(m); it != irreducible_.end()) return it->second;
    return irreducible_.emplace(m, irreducible5(m)).first->second;
  }

 private:
  std::map<Manifold5, std::set<Factorization>> memo_;
  std::map<Manifold5, bool> irreducible_;
};

// ---------------------------------------------------------------------------
// Enumeration and sweeps
// ---------------------------------------------------------------------------

/// Every valid manifold with free rank <= max_rank, torsion order <=
/// max_torsion and height <= max_height; height inf is added when
/// with_infinite is set (or max_height is inf itself).
inline std::vector<Manifold5> enumerate5(std::size_t max_rank, std::size_t max_torsion, Height max_height,
                                         bool with_infinite = false) {
  std::vector<Manifold5> out;
  const bool include_inf = with_infinite || max_height.is_infinite();
  for (const auto& torsion : enumerate_finite_groups(max_torsion)) {
    std::vector<Height> heights;
    for (Height h : detail::candidate_heights(torsion, {})) {
      if (h.is_infinite() ? include_inf : h <= max_height) heights.push_back(h);
    }
    if (include_inf && !std::count(heights.begin(), heights.end(), Height::infinite()))
      heights.push_back(Height::infinite());
    for (std::size_t r = 0; r <= max_rank; ++r) {
      AbelianGroup h2 = direct_sum(AbelianGroup::free(r), torsion);
      for (Height h : heights)
        if (auto m = Manifold5::try_make(h2, h)) out.push_back(*m);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct PrimeSweepEntry {
  Manifold5 candidate;
  bool prime_at_bound = true;
  std::optional<std::pair<Manifold5, Manifold5>> witness;  ///< p | m#n, p does not divide m or n
};

/// Bounded primality of every non-unit candidate over all pairs from range.
inline std::vector<PrimeSweepEntry> prime_sweep(const std::vector<Manifold5>& range) {
  std::vector<PrimeSweepEntry> out;
  for (const auto& p : range) {
    if (p.is_sphere()) continue;
    PrimeSweepEntry entry{p, true, std::nullopt};
    std::vector<char> divides_member(range.size());
    for (std::size_t i = 0; i < range.size(); ++i) divides_member[i] = divides5(p, range[i]).has_value();
    for (std::size_t i = 0; i < range.size() && entry.prime_at_bound; ++i) {
      if (divides_member[i]) continue;
      for (std::size_t j = i; j < range.size(); ++j) {
        if (divides_member[j]) continue;
        if (divides5(p, consum(range[i], range[j]))) {
          entry.prime_at_bound = false;
          entry.witness = {range[i], range[j]};
          break;
        }
      }
    }
    out.push_back(std::move(entry));
  }
  return out;
}

struct UfmSweepResult {
  bool unique = true;
  std::size_t elements = 0;
  std::size_t counterexamples = 0;
  std::optional<Manifold5> first_counterexample;
  std::vector<Factorization> first_factorizations;  ///< the distinct factorizations of it
};

inline UfmSweepResult ufm_sweep(const std::vector<Manifold5>& range) {
  UfmSweepResult result;
  FactorizationIndex index;
  for (const auto& m : range) {
    ++result.elements;
    const auto& found = index.factorizations(m);
    if (found.size() == 1) continue;
    result.unique = false;
    ++result.counterexamples;
    if (!result.first_counterexample) {
      result.first_counterexample = m;
      result.first_factorizations.assign(found.begin(), found.end());
    }
  }
  return result;
}

}  // namespace sumfactor::barden
