#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sumfactor/error.hpp"
#include "sumfactor/integer.hpp"

namespace sumfactor::wallhc {

/// Invariants of a (k-1)-connected 2k-manifold that the cancellation and
/// factorization arguments use. Which fields exist depends on k mod 8:
/// the Arf-Kervaire bit for odd k, the type bit for k = 1 mod 8, and the
/// signature of the (even) intersection form for even k. Equality is equality
/// of these invariants only.
class HcClass {
 public:
  static bool has_arf(unsigned k_mod_8) { return k_mod_8 % 2 == 1; }
  static bool has_type(unsigned k_mod_8) { return k_mod_8 == 1; }
  static bool has_signature(unsigned k_mod_8) { return k_mod_8 % 2 == 0; }

  static HcClass make(unsigned k_mod_8, std::size_t half_rank, std::optional<unsigned> arf = std::nullopt,
                      std::optional<unsigned> type_bit = std::nullopt,
                      std::optional<long long> signature = std::nullopt) {
    if (k_mod_8 > 7) throw InvalidArgument("k mod 8 must lie in 0..7");
    auto check_presence = [&](bool expected, bool present, const char* field) {
      if (expected != present)
        throw InvalidArgument(std::string(field) + (expected ? " is required" : " is undefined") +
                              " for k = " + std::to_string(k_mod_8) + " mod 8");
    };
    check_presence(has_arf(k_mod_8), arf.has_value(), "arf");
    check_presence(has_type(k_mod_8), type_bit.has_value(), "type");
    check_presence(has_signature(k_mod_8), signature.has_value(), "signature");
    if (arf && *arf > 1) throw InvalidArgument("arf must be 0 or 1");
    if (type_bit && *type_bit > 1) throw InvalidArgument("type must be 0 or 1");
    if (half_rank == 0) {
      if ((arf && *arf != 0) || (type_bit && *type_bit != 1) || (signature && *signature != 0))
        throw InvalidArgument("empty middle homology forces arf=0, type=1, signature=0");
    }
    if (signature) {
      long long s = *signature;
      if (s % 8 != 0) throw InvalidArgument("an even unimodular form has signature divisible by 8");
      if (static_cast<std::size_t>(s < 0 ? -s : s) > 2 * half_rank)
        throw InvalidArgument("|signature| exceeds the rank of the form");
    }
    HcClass c;
    c.k_mod_8_ = k_mod_8;
    c.half_rank_ = half_rank;
    c.arf_ = arf;
    c.type_bit_ = type_bit;
    c.signature_ = signature;
    return c;
  }

  /// The sphere S^2k.
  static HcClass neutral(unsigned k_mod_8) {
    return make(k_mod_8, 0, has_arf(k_mod_8) ? std::optional<unsigned>(0) : std::nullopt,
                has_type(k_mod_8) ? std::optional<unsigned>(1) : std::nullopt,
                has_signature(k_mod_8) ? std::optional<long long>(0) : std::nullopt);
  }

  unsigned k_mod_8() const { return k_mod_8_; }
  std::size_t half_rank() const { return half_rank_; }
  std::optional<unsigned> arf() const { return arf_; }
  std::optional<unsigned> type_bit() const { return type_bit_; }
  std::optional<long long> signature() const { return signature_; }
  /// Even k: the intersection form is definite.
  bool is_definite() const {
    return signature_ && half_rank_ > 0 &&
           static_cast<std::size_t>(*signature_ < 0 ? -*signature_ : *signature_) == 2 * half_rank_;
  }

  friend bool operator==(const HcClass&, const HcClass&) = default;
  friend auto operator<=>(const HcClass&, const HcClass&) = default;

 private:
  unsigned k_mod_8_ = 0;
  std::size_t half_rank_ = 0;
  std::optional<unsigned> arf_;
  std::optional<unsigned> type_bit_;
  std::optional<long long> signature_;
};

/// Rank adds, Arf adds mod 2, signature adds, and the sum has type 1 iff both
/// summands do.
inline HcClass consum_hc(const HcClass& a, const HcClass& b) {
  if (a.k_mod_8() != b.k_mod_8())
    throw ResidueMismatch("cannot add classes with k = " + std::to_string(a.k_mod_8()) + " and k = " +
                          std::to_string(b.k_mod_8()) + " mod 8");
  auto arf = a.arf() ? std::optional<unsigned>((*a.arf() + *b.arf()) % 2) : std::nullopt;
  auto type = a.type_bit() ? std::optional<unsigned>(*a.type_bit() & *b.type_bit()) : std::nullopt;
  auto sig = a.signature() ? std::optional<long long>(*a.signature() + *b.signature()) : std::nullopt;
  return HcClass::make(a.k_mod_8(), a.half_rank() + b.half_rank(), arf, type, sig);
}

inline std::string to_string(const HcClass& c) {
  std::string out = "HC(k=" + std::to_string(c.k_mod_8()) + " mod 8, g=" + std::to_string(c.half_rank());
  if (c.arf()) out += ", arf=" + std::to_string(*c.arf());
  if (c.type_bit()) out += ", type=" + std::to_string(*c.type_bit());
  if (c.signature()) out += ", sig=" + std::to_string(*c.signature());
  return out + ")";
}

/// Parses the to_string form, e.g. `HC(k=1 mod 8, g=1, arf=0, type=0)`.
inline HcClass parse_hc(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.rfind("HC(", 0) != 0 || s.back() != ')') throw SyntaxError("expected HC(...) in '" + std::string(text) + "'");
  std::string body = s.substr(3, s.size() - 4);
  std::optional<unsigned> k, arf, type;
  std::optional<std::size_t> g;
  std::optional<long long> sig;
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t comma = body.find(',', pos);
    if (comma == std::string::npos) comma = body.size();
    std::string field = body.substr(pos, comma - pos);
    std::size_t eq = field.find('=');
    if (eq == std::string::npos) throw SyntaxError("expected key=value, got '" + field + "'");
    std::string key = field.substr(0, eq), value = field.substr(eq + 1);
    if (key == "k") {
      if (value.size() > 4 && value.substr(value.size() - 4) == "mod8") value.resize(value.size() - 4);
      k = parse_integer(value).convert_to<unsigned>() % 8;
    } else if (key == "g") {
      g = parse_integer(value).convert_to<std::size_t>();
    } else if (key == "arf") {
      arf = parse_integer(value).convert_to<unsigned>();
    } else if (key == "type") {
      type = parse_integer(value).convert_to<unsigned>();
    } else if (key == "sig") {
      sig = parse_integer(value).convert_to<long long>();
    } else {
      throw SyntaxError("unknown field '" + key + "'");
    }
    pos = comma + 1;
  }
  if (!k || !g) throw SyntaxError("HC literal needs k and g");
  return HcClass::make(*k, *g, arf, type, sig);
}

// ---------------------------------------------------------------------------
// Case table for unique factorization
// ---------------------------------------------------------------------------

enum class Status { ufm, not_ufm, open };

/// The argument that rules unique factorization out (or none).
enum class Obstruction { none, cp2_relation, definite_form, kervaire_invariant, arf_kervaire, type_bit };

struct KervaireDimension {
  unsigned k;
  bool conditional;  ///< exists only if there is a Kervaire sphere in dimension 126
};

/// Values of k for which a smooth 2k-manifold of Kervaire invariant one exists.
inline constexpr std::array<KervaireDimension, 6> kKervaireDimensions{
    {{1, false}, {3, false}, {7, false}, {15, false}, {31, false}, {63, true}}};

struct CategoryCase {
  Status status = Status::open;
  Obstruction obstruction = Obstruction::none;
  std::string reason;
};

struct WallCase {
  unsigned k = 0;
  CategoryCase diff;
  CategoryCase pl;
  bool diff_cancellation = false;  ///< cancellation holds in the smooth monoid
};

inline WallCase ufm_case(unsigned k) {
  if (k == 0) throw InvalidArgument("k must be at least 1");
  WallCase out;
  out.k = k;
  const unsigned r = k % 8;
  const bool smooth_iso_n = (r == 3 || r == 5 || r == 7);
  out.diff_cancellation = (k == 1 || smooth_iso_n);

  if (k % 2 == 0) {
    CategoryCase even =
        k == 2 ? CategoryCase{Status::not_ufm, Obstruction::cp2_relation,
                              "(S2xS2)#CP2 = CP2#CP2bar#CP2 while the forms of S2xS2 and CP2#CP2bar differ"}
               : CategoryCase{Status::not_ufm, Obstruction::definite_form,
                              "M#-M = m(S^kxS^k)#Sigma for a definite even M, and S^kxS^k divides neither M nor -M"};
    out.diff = even;
    out.pl = even;
    return out;
  }

  // Smooth category, k odd.
  if (k == 1 || k == 3 || k == 7) {
    out.diff = {Status::ufm, Obstruction::none, "isomorphic to N via half the rank of H_k"};
  } else if (k == 15 || k == 31) {
    out.diff = {Status::not_ufm, Obstruction::kervaire_invariant,
                "a Kervaire-invariant-one manifold M has M#M splitting into Arf-zero hyperbolic summands"};
  } else if (k == 63) {
    out.diff = {Status::open, Obstruction::kervaire_invariant,
                "depends on the existence of a Kervaire sphere in dimension 126"};
  } else if (r == 1) {
    out.diff = {Status::not_ufm, Obstruction::type_bit,
                "W0#W1 = W0#W0 for irreducibles differing only in the type bit"};
  } else {
    out.diff = {Status::ufm, Obstruction::none, "isomorphic to N via half the rank of H_k"};
  }

  // PL category, k odd.
  if (k == 1 || k == 3) {
    out.pl = {Status::ufm, Obstruction::none, "isomorphic to N via half the rank of H_k"};
  } else if (k == 7) {
    out.pl = {Status::open, Obstruction::none, "unique factorization possibly holds"};
  } else {
    out.pl = {Status::not_ufm, Obstruction::arf_kervaire,
              "a PL manifold with Arf-Kervaire invariant one gives M#M with two decompositions"};
  }
  return out;
}

inline std::string to_string(Status s) {
  switch (s) {
    case Status::ufm: return "ufm";
    case Status::not_ufm: return "not-ufm";
    case Status::open: return "open";
  }
  return "?";
}

inline std::string to_string(Obstruction o) {
  switch (o) {
    case Obstruction::none: return "none";
    case Obstruction::cp2_relation: return "cp2-relation";
    case Obstruction::definite_form: return "definite-form";
    case Obstruction::kervaire_invariant: return "kervaire-invariant";
    case Obstruction::arf_kervaire: return "arf-kervaire";
    case Obstruction::type_bit: return "type-bit";
  }
  return "?";
}

struct TypeWitness {
  HcClass w0;
  HcClass w1;
  HcClass mixed;   ///< W0 # W1
  HcClass doubled; ///< W0 # W0
  bool holds() const { return mixed == doubled && w0 != w1; }
};

/// k = 1 mod 8: W0 and W1 agree except for the type bit, and W0#W1 = W0#W0.
inline TypeWitness type_noncancellation_witness(std::size_t g, unsigned arf) {
  if (g == 0) throw ParameterViolation("the type witness needs g >= 1");
  if (arf > 1) throw ParameterViolation("arf must be 0 or 1");
  HcClass w0 = HcClass::make(1, g, arf, 0u);
  HcClass w1 = HcClass::make(1, g, arf, 1u);
  return {w0, w1, consum_hc(w0, w1), consum_hc(w0, w0)};
}

}  // namespace sumfactor::wallhc
