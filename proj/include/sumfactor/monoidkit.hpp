#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sumfactor/error.hpp"

/// Bounded decision procedures for commutative monoids: units, associates,
/// divisibility, irreducibility, primality, cancellation and unique
/// factorization, all relative to a complexity level.
namespace sumfactor::monoid {

/// A commutative monoid given by executable values.
///
/// `enumerate(L)` lists every element of complexity <= L in the monoid's
/// canonical order. `divisor_complete()` declares that every divisor of x has
/// complexity <= complexity(x); `superadditive()` declares
/// complexity(a*b) >= complexity(a) + complexity(b). Either declaration lets
/// the procedures upgrade bounded answers to exact ones.
template <class M>
concept MonoidSpec = requires(const M& m, const typename M::element_type& x, std::size_t level,
                              std::string_view text) {
  requires std::equality_comparable<typename M::element_type>;
  requires std::totally_ordered<typename M::element_type>;
  { m.name() } -> std::convertible_to<std::string>;
  { m.neutral() } -> std::convertible_to<typename M::element_type>;
  { m.compose(x, x) } -> std::convertible_to<typename M::element_type>;
  { m.complexity(x) } -> std::convertible_to<std::size_t>;
  { m.enumerate(level) } -> std::convertible_to<std::vector<typename M::element_type>>;
  { m.divisor_complete() } -> std::convertible_to<bool>;
  { m.superadditive() } -> std::convertible_to<bool>;
  { m.format(x) } -> std::convertible_to<std::string>;
  { m.parse(text) } -> std::convertible_to<typename M::element_type>;
  { m.compose_symbol() } -> std::convertible_to<std::string>;
};

enum class Answer { yes, no, unknown };

inline std::string to_string(Answer a) {
  switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    case Answer::unknown: return "unknown";
  }
  return "?";
}

/// Outcome of a bounded query. A "no" always carries a witness tuple; for
/// ufm_check it also carries the competing factorizations.
template <class E>
struct Verdict {
  Answer answer = Answer::unknown;
  std::size_t bound = 0;
  bool exact = false;  ///< the answer holds beyond the bound
  std::vector<E> witness;
  std::vector<std::vector<E>> factorizations;
};

template <MonoidSpec M>
using VerdictOf = Verdict<typename M::element_type>;

/// `answer=.. bound=.. witness=(..) scope=exact|bounded`; factorization
/// witnesses print as `x:f1=f2`.
template <MonoidSpec M>
std::string format_verdict(const M& m, const VerdictOf<M>& v) {
  std::string out = "answer=" + to_string(v.answer) + " bound=" + std::to_string(v.bound) + " witness=";
  if (!v.factorizations.empty()) {
    out += (v.witness.empty() ? std::string("-") : m.format(v.witness.front())) + ":";
    for (std::size_t k = 0; k < v.factorizations.size(); ++k) {
      const auto& f = v.factorizations[k];
      if (k) out += '=';
      if (f.empty()) out += m.format(m.neutral());
      for (std::size_t i = 0; i < f.size(); ++i) out += (i ? m.compose_symbol() : "") + m.format(f[i]);
    }
  } else if (v.witness.empty()) {
    out += "-";
  } else {
    out += '(';
    for (std::size_t i = 0; i < v.witness.size(); ++i) out += (i ? "," : "") + m.format(v.witness[i]);
    out += ')';
  }
  out += v.exact ? " scope=exact" : " scope=bounded";
  return out;
}

namespace detail {

template <MonoidSpec M>
void require_within(const M& m, const typename M::element_type& x, std::size_t bound) {
  if (m.complexity(x) > bound)
    throw OutOfBound(m.format(x) + " has complexity " + std::to_string(m.complexity(x)) + " > bound " +
                     std::to_string(bound));
}

template <MonoidSpec M>
std::optional<typename M::element_type> find_cofactor(const M& m, const typename M::element_type& d,
                                                      const typename M::element_type& x,
                                                      const std::vector<typename M::element_type>& pool) {
  for (const auto& c : pool)
    if (m.compose(d, c) == x) return c;
  return std::nullopt;
}

}  // namespace detail

/// Units found within the bound, and whether that list is provably complete.
template <MonoidSpec M>
std::pair<std::vector<typename M::element_type>, bool> units(const M& m, std::size_t bound) {
  // A unit divides the neutral element, so under either declaration it has complexity 0.
  const bool complete = m.divisor_complete() || m.superadditive();
  const auto pool = m.enumerate(complete ? 0 : bound);
  std::vector<typename M::element_type> out;
  for (const auto& u : pool)
    if (detail::find_cofactor(m, u, m.neutral(), pool)) out.push_back(u);
  return {out, complete};
}

template <MonoidSpec M>
VerdictOf<M> is_unit(const M& m, const typename M::element_type& x, std::size_t bound) {
  detail::require_within(m, x, bound);
  VerdictOf<M> v{Answer::unknown, bound, false, {}, {}};
  const bool complete = m.divisor_complete() || m.superadditive();
  if (complete && m.complexity(x) > 0) {
    v.answer = Answer::no;
    v.exact = true;
    v.witness = {x};
    return v;
  }
  const auto pool = m.enumerate(complete ? 0 : bound);
  if (auto y = detail::find_cofactor(m, x, m.neutral(), pool)) {
    v.answer = Answer::yes;
    v.exact = true;
    v.witness = {*y};
  } else if (complete) {
    v.answer = Answer::no;
    v.exact = true;
    v.witness = {x};
  }
  return v;
}

template <MonoidSpec M>
VerdictOf<M> are_associated(const M& m, const typename M::element_type& x, const typename M::element_type& y,
                            std::size_t bound) {
  detail::require_within(m, x, bound);
  detail::require_within(m, y, bound);
  VerdictOf<M> v{Answer::unknown, bound, false, {}, {}};
  auto [unit_list, complete] = units(m, bound);
  for (const auto& u : unit_list)
    if (m.compose(u, y) == x) {
      v.answer = Answer::yes;
      v.exact = true;
      v.witness = {u};
      return v;
    }
  if (complete) {
    v.answer = Answer::no;
    v.exact = true;
    v.witness = {x, y};
  }
  return v;
}

template <MonoidSpec M>
VerdictOf<M> divides(const M& m, const typename M::element_type& d, const typename M::element_type& x,
                     std::size_t bound) {
  detail::require_within(m, d, bound);
  detail::require_within(m, x, bound);
  VerdictOf<M> v{Answer::unknown, bound, false, {}, {}};
  if (auto c = detail::find_cofactor(m, d, x, m.enumerate(bound))) {
    v.answer = Answer::yes;
    v.exact = true;
    v.witness = {*c};
  } else if (m.divisor_complete() || m.superadditive()) {
    v.answer = Answer::no;
    v.exact = true;
    v.witness = {d, x};
  }
  return v;
}

/// Not a unit, and every divisor is a unit or associated to x.
template <MonoidSpec M>
VerdictOf<M> is_irreducible(const M& m, const typename M::element_type& x, std::size_t bound) {
  detail::require_within(m, x, bound);
  VerdictOf<M> v{Answer::unknown, bound, false, {}, {}};
  auto unit = is_unit(m, x, bound);
  if (unit.answer == Answer::yes) {
    v.answer = Answer::no;
    v.exact = true;
    v.witness = {x, unit.witness.front()};
    return v;
  }
  auto [unit_list, units_complete] = units(m, bound);
  auto is_listed_unit = [&](const auto& a) { return std::find(unit_list.begin(), unit_list.end(), a) != unit_list.end(); };
  auto associated_to_x = [&](const auto& a) {
    for (const auto& u : unit_list)
      if (m.compose(u, a) == x) return true;
    return false;
  };
  const auto pool = m.enumerate(bound);
  for (const auto& a : pool)
    for (const auto& c : pool) {
      if (m.compose(a, c) != x) continue;
      if (is_listed_unit(a) || associated_to_x(a)) continue;
      v.answer = Answer::no;
      v.exact = true;
      v.witness = {a, c};
      return v;
    }
  v.answer = Answer::yes;
  v.exact = unit.exact && units_complete && (m.divisor_complete() || m.superadditive());
  return v;
}

/// p | a*b implies p | a or p | b, for all a, b and cofactors within the bound.
template <MonoidSpec M>
VerdictOf<M> is_prime(const M& m, const typename M::element_type& p, std::size_t bound) {
  using E = typename M::element_type;
  detail::require_within(m, p, bound);
  if (is_unit(m, p, bound).answer == Answer::yes) throw InvalidArgument(m.format(p) + " is a unit");
  VerdictOf<M> v{Answer::yes, bound, false, {}, {}};
  const auto pool = m.enumerate(bound);
  std::map<E, E> multiples;  // p*c -> c
  for (const auto& c : pool) multiples.emplace(m.compose(p, c), c);
  std::vector<char> divisible(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) divisible[i] = multiples.contains(pool[i]);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (divisible[i]) continue;
    for (std::size_t j = i; j < pool.size(); ++j) {
      if (divisible[j]) continue;
      auto it = multiples.find(m.compose(pool[i], pool[j]));
      if (it == multiples.end()) continue;
      v.answer = Answer::no;
      v.exact = true;
      v.witness = {pool[i], pool[j], it->second};
      return v;
    }
  }
  return v;
}

/// a*b = a*c implies b = c, for all b, c within the bound.
template <MonoidSpec M>
VerdictOf<M> is_cancellable(const M& m, const typename M::element_type& a, std::size_t bound) {
  using E = typename M::element_type;
  detail::require_within(m, a, bound);
  VerdictOf<M> v{Answer::yes, bound, false, {}, {}};
  std::map<E, E> seen;
  for (const auto& b : m.enumerate(bound)) {
    auto [it, inserted] = seen.emplace(m.compose(a, b), b);
    if (inserted) continue;
    v.answer = Answer::no;
    v.exact = true;
    v.witness = {it->second, b};
    return v;
  }
  return v;
}

/// Associate classes, irreducibles and factorizations of one bounded fragment.
template <MonoidSpec M>
class FactorizationTable {
 public:
  using E = typename M::element_type;

  FactorizationTable(const M& m, std::size_t bound) : m_(m), bound_(bound), pool_(m.enumerate(bound)) {
    for (std::size_t i = 0; i < pool_.size(); ++i) index_.emplace(pool_[i], i);
    auto [unit_list, complete] = units(m, bound);
    units_ = std::move(unit_list);
    exact_ = complete && m.divisor_complete();
    representative_.resize(pool_.size());
    for (std::size_t i = 0; i < pool_.size(); ++i) {
      representative_[i] = i;
      for (const auto& u : units_) {
        auto it = index_.find(m.compose(u, pool_[i]));
        if (it != index_.end()) representative_[i] = std::min(representative_[i], it->second);
      }
    }
    for (std::size_t i = 0; i < pool_.size(); ++i) {
      if (representative_[i] != i) continue;
      if (is_irreducible(m, pool_[i], bound).answer == Answer::yes) irreducibles_.push_back(i);
    }
    factorizations_.resize(pool_.size());
    std::vector<std::size_t> current;
    search(0, m.neutral(), current);
    for (auto& f : factorizations_) {
      std::sort(f.begin(), f.end());
      f.erase(std::unique(f.begin(), f.end()), f.end());
    }
  }

  const std::vector<E>& elements() const { return pool_; }
  const std::vector<E>& unit_list() const { return units_; }
  /// Canonical representative of the associate class of element i.
  std::size_t representative(std::size_t i) const { return representative_[i]; }
  const std::vector<std::size_t>& irreducibles() const { return irreducibles_; }
  /// Distinct factorizations of element i, as sorted lists of irreducible element indices.
  const std::vector<std::vector<std::size_t>>& factorizations(std::size_t i) const { return factorizations_[i]; }
  bool exact() const { return exact_ && !truncated_; }
  std::optional<std::size_t> index_of(const E& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  // Multisets are grown with non-decreasing irreducible positions; once a
  // product leaves the fragment it stays out (divisor completeness).
  void search(std::size_t start, const E& product, std::vector<std::size_t>& current) {
    auto it = index_.find(product);
    if (it == index_.end()) return;
    factorizations_[representative_[it->second]].push_back(current);
    if (current.size() > pool_.size()) {
      truncated_ = true;
      return;
    }
    for (std::size_t k = start; k < irreducibles_.size(); ++k) {
      current.push_back(irreducibles_[k]);
      search(k, m_.compose(product, pool_[irreducibles_[k]]), current);
      current.pop_back();
    }
  }

  const M& m_;
  std::size_t bound_;
  std::vector<E> pool_;
  std::map<E, std::size_t> index_;
  std::vector<E> units_;
  std::vector<std::size_t> representative_;
  std::vector<std::size_t> irreducibles_;
  std::vector<std::vector<std::vector<std::size_t>>> factorizations_;
  bool exact_ = false;
  bool truncated_ = false;
};

/// Every element within the bound has exactly one factorization into
/// irreducibles up to associates.
template <MonoidSpec M>
VerdictOf<M> ufm_check(const M& m, std::size_t bound) {
  FactorizationTable<M> table(m, bound);
  VerdictOf<M> v{Answer::yes, bound, false, {}, {}};
  const auto& pool = table.elements();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto& found = table.factorizations(table.representative(i));
    if (found.size() == 1) continue;
    v.answer = Answer::no;
    v.exact = true;
    v.witness = {pool[i]};
    for (std::size_t k = 0; k < std::min<std::size_t>(found.size(), 2); ++k) {
      std::vector<typename M::element_type> f;
      for (std::size_t idx : found[k]) f.push_back(pool[idx]);
      v.factorizations.push_back(std::move(f));
    }
    return v;
  }
  return v;
}

}  // namespace sumfactor::monoid
