#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sumfactor/barden.hpp"
#include "sumfactor/error.hpp"
#include "sumfactor/integer.hpp"
#include "sumfactor/monoidkit.hpp"
#include "sumfactor/wallhc.hpp"

namespace sumfactor::monoid {

namespace detail {

inline std::int64_t parse_small(std::string_view text) {
  Integer v = parse_integer(text);
  if (abs(v) > Integer(1) << 62) throw OutOfBound("literal too large: " + std::string(text));
  return v.convert_to<std::int64_t>();
}

}  // namespace detail

/// (N, +) with complexity x.
struct NaturalsAdditive {
  using element_type = std::uint64_t;
  std::string name() const { return "nat-add"; }
  element_type neutral() const { return 0; }
  element_type compose(element_type a, element_type b) const { return a + b; }
  std::size_t complexity(element_type x) const { return x; }
  std::vector<element_type> enumerate(std::size_t level) const {
    std::vector<element_type> out;
    for (element_type x = 0; x <= level; ++x) out.push_back(x);
    return out;
  }
  bool divisor_complete() const { return true; }
  bool superadditive() const { return true; }
  std::string format(element_type x) const { return std::to_string(x); }
  element_type parse(std::string_view text) const {
    auto v = detail::parse_small(text);
    if (v < 0) throw InvalidArgument("nat-add elements are non-negative");
    return static_cast<element_type>(v);
  }
  std::string compose_symbol() const { return "+"; }
};

/// (N_{>=1}, *) with complexity n - 1.
struct NaturalsMultiplicative {
  using element_type = std::uint64_t;
  std::string name() const { return "nat-mul"; }
  element_type neutral() const { return 1; }
  element_type compose(element_type a, element_type b) const { return a * b; }
  std::size_t complexity(element_type x) const { return x - 1; }
  std::vector<element_type> enumerate(std::size_t level) const {
    std::vector<element_type> out;
    for (element_type x = 1; x <= level + 1; ++x) out.push_back(x);
    return out;
  }
  bool divisor_complete() const { return true; }
  bool superadditive() const { return true; }
  std::string format(element_type x) const { return std::to_string(x); }
  element_type parse(std::string_view text) const {
    auto v = detail::parse_small(text);
    if (v < 1) throw InvalidArgument("nat-mul elements are positive");
    return static_cast<element_type>(v);
  }
  std::string compose_symbol() const { return "*"; }
};

/// Nonzero integers under multiplication modulo x ~ -x for |x| >= 2. Carrier
/// {1, -1} u {n >= 2}; the product takes its absolute value once |n| >= 2.
/// Two units, cancellation fails (2*(-1) = 2*1), yet the quotient by units is
/// (N_{>=1}, *), a free monoid on the primes.
struct SignQuotient {
  using element_type = std::int64_t;
  std::string name() const { return "sign-quotient"; }
  element_type neutral() const { return 1; }
  element_type compose(element_type a, element_type b) const {
    element_type p = a * b;
    return (p >= 2 || p <= -2) ? (p < 0 ? -p : p) : p;
  }
  std::size_t complexity(element_type x) const { return (x == 1 || x == -1) ? 0 : static_cast<std::size_t>(x); }
  std::vector<element_type> enumerate(std::size_t level) const {
    std::vector<element_type> out{1, -1};
    for (element_type x = 2; x <= static_cast<element_type>(level); ++x) out.push_back(x);
    return out;
  }
  bool divisor_complete() const { return true; }
  bool superadditive() const { return false; }
  std::string format(element_type x) const { return std::to_string(x); }
  element_type parse(std::string_view text) const {
    auto v = detail::parse_small(text);
    if (v == 0) throw InvalidArgument("0 is not in the carrier");
    return v <= -2 ? -v : v;
  }
  std::string compose_symbol() const { return "*"; }
};

/// Highly connected 2k-manifolds for one residue of k mod 8, complexity half the middle rank.
class HcMonoid {
 public:
  using element_type = wallhc::HcClass;
  explicit HcMonoid(unsigned k_mod_8) : r_(k_mod_8) {
    if (r_ > 7) throw InvalidArgument("k mod 8 must lie in 0..7");
  }
  std::string name() const { return "hc" + std::to_string(r_); }
  element_type neutral() const { return element_type::neutral(r_); }
  element_type compose(const element_type& a, const element_type& b) const { return wallhc::consum_hc(a, b); }
  std::size_t complexity(const element_type& x) const { return x.half_rank(); }
  std::vector<element_type> enumerate(std::size_t level) const {
    using wallhc::HcClass;
    std::vector<element_type> out;
    for (std::size_t g = 0; g <= level; ++g) {
      std::vector<std::optional<unsigned>> arfs{std::nullopt}, types{std::nullopt};
      std::vector<std::optional<long long>> sigs{std::nullopt};
      if (HcClass::has_arf(r_)) arfs = g ? decltype(arfs){0u, 1u} : decltype(arfs){0u};
      if (HcClass::has_type(r_)) types = g ? decltype(types){0u, 1u} : decltype(types){1u};
      if (HcClass::has_signature(r_)) {
        sigs.clear();
        const long long bound = static_cast<long long>(2 * g);
        for (long long s = -(bound / 8) * 8; s <= bound; s += 8) sigs.push_back(s);
      }
      for (auto a : arfs)
        for (auto t : types)
          for (auto s : sigs) out.push_back(HcClass::make(r_, g, a, t, s));
    }
    return out;
  }
  bool divisor_complete() const { return true; }
  bool superadditive() const { return true; }
  std::string format(const element_type& x) const { return wallhc::to_string(x); }
  element_type parse(std::string_view text) const {
    auto c = wallhc::parse_hc(text);
    if (c.k_mod_8() != r_) throw wallhc_mismatch(c);
    return c;
  }
  std::string compose_symbol() const { return "#"; }

 private:
  ResidueMismatch wallhc_mismatch(const element_type& c) const {
    return ResidueMismatch("literal has k = " + std::to_string(c.k_mod_8()) + " mod 8, monoid has " +
                           std::to_string(r_));
  }
  unsigned r_;
};

/// Simply connected 5-manifolds, complexity rank(H2) + |torsion H2| - 1.
struct BardenMonoid {
  using element_type = barden::Manifold5;
  std::string name() const { return "barden"; }
  element_type neutral() const { return element_type::sphere(); }
  element_type compose(const element_type& a, const element_type& b) const { return consum(a, b); }
  std::size_t complexity(const element_type& x) const {
    Integer t = x.h2().torsion_order();
    if (t > Integer(1) << 40) return std::size_t(1) << 40;
    return x.h2().free_rank() + t.convert_to<std::size_t>() - 1;
  }
  std::vector<element_type> enumerate(std::size_t level) const {
    std::vector<element_type> out;
    for (auto& m : barden::enumerate5(level, level + 1, barden::Height(64), true))
      if (complexity(m) <= level) out.push_back(std::move(m));
    return out;
  }
  bool divisor_complete() const { return true; }
  bool superadditive() const { return true; }
  std::string format(const element_type& x) const { return barden::to_string(x); }
  element_type parse(std::string_view text) const { return barden::parse_manifold(text); }
  std::string compose_symbol() const { return "#"; }
};

/// Words in three tokens A, B, S subject to A#S = B#S: the relation a
/// non-cancellation witness asserts, with S the stabilizing summand. Normal
/// form moves every B to A once an S is present.
class WitnessMonoid {
 public:
  struct Element {
    std::size_t a = 0, b = 0, s = 0;
    friend bool operator==(const Element&, const Element&) = default;
    friend auto operator<=>(const Element&, const Element&) = default;
  };
  using element_type = Element;

  static Element normalize(Element e) {
    if (e.s > 0) {
      e.a += e.b;
      e.b = 0;
    }
    return e;
  }

  explicit WitnessMonoid(std::string family) : family_(std::move(family)) {}
  std::string name() const { return "witness-" + family_; }
  Element neutral() const { return {}; }
  Element compose(const Element& x, const Element& y) const { return normalize({x.a + y.a, x.b + y.b, x.s + y.s}); }
  std::size_t complexity(const Element& x) const { return x.a + x.b + x.s; }
  std::vector<Element> enumerate(std::size_t level) const {
    std::vector<Element> out;
    for (std::size_t total = 0; total <= level; ++total)
      for (std::size_t s = 0; s <= total; ++s)
        for (std::size_t b = 0; b + s <= total; ++b) {
          Element e{total - s - b, b, s};
          if (normalize(e) == e) out.push_back(e);
        }
    return out;
  }
  bool divisor_complete() const { return true; }
  bool superadditive() const { return true; }
  std::string format(const Element& x) const {
    if (x == Element{}) return "1";
    std::string out;
    auto emit = [&](std::size_t count, const char* token) {
      for (std::size_t i = 0; i < count; ++i) out += (out.empty() ? "" : "#") + std::string(token);
    };
    emit(x.a, "A");
    emit(x.b, "B");
    emit(x.s, "S");
    return out;
  }
  Element parse(std::string_view text) const {
    Element e;
    std::string token;
    auto flush = [&] {
      if (token == "A") ++e.a;
      else if (token == "B") ++e.b;
      else if (token == "S") ++e.s;
      else if (token != "1") throw SyntaxError("expected A, B, S or 1, got '" + token + "'");
      token.clear();
    };
    for (char ch : text) {
      if (std::isspace(static_cast<unsigned char>(ch))) continue;
      if (ch == '#') flush();
      else token += ch;
    }
    flush();
    return normalize(e);
  }
  std::string compose_symbol() const { return "#"; }

 private:
  std::string family_;
};

static_assert(MonoidSpec<NaturalsAdditive>);
static_assert(MonoidSpec<NaturalsMultiplicative>);
static_assert(MonoidSpec<SignQuotient>);
static_assert(MonoidSpec<HcMonoid>);
static_assert(MonoidSpec<BardenMonoid>);
static_assert(MonoidSpec<WitnessMonoid>);

}  // namespace sumfactor::monoid
