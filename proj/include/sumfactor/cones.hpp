#pragma once

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "sumfactor/error.hpp"

/// Mapping cones of torsion classes in pi_7(S^4). The torsion subgroup is
/// Z/12 and lies in the suspension image, so a class is a residue mod 12.
namespace sumfactor::cones {

inline constexpr int kOrder = 12;

class ConeClass {
 public:
  constexpr ConeClass() = default;
  /// Any integer; reduced into 0..11.
  constexpr explicit ConeClass(long long alpha) : alpha_(static_cast<int>(((alpha % kOrder) + kOrder) % kOrder)) {}
  constexpr int alpha() const { return alpha_; }
  constexpr ConeClass negated() const { return ConeClass(-alpha_); }
  constexpr int subgroup_index() const { return std::gcd(alpha_, kOrder); }
  friend constexpr bool operator==(ConeClass, ConeClass) = default;
  friend constexpr auto operator<=>(ConeClass, ConeClass) = default;

 private:
  int alpha_ = 0;
};

/// C_a ~ C_b iff b = +-a.
constexpr bool cone_homotopy_equiv(ConeClass a, ConeClass b) { return b == a || b == a.negated(); }

/// C_a v S^8 ~ C_b v S^8 when a and b generate the same subgroup.
constexpr bool cone_stable_equiv(ConeClass a, ConeClass b) { return a.subgroup_index() == b.subgroup_index(); }

using ConePair = std::pair<int, int>;

/// Unordered pairs {a, b}, a < b, that are stably but not homotopy
/// equivalent, with one representative per orbit of (a, b) -> (-a, -b).
/// The representative is the lexicographically smallest sorted pair.
inline std::vector<ConePair> cone_witness_pairs() {
  std::vector<ConePair> out;
  for (int a = 0; a < kOrder; ++a)
    for (int b = a + 1; b < kOrder; ++b) {
      ConeClass ca(a), cb(b);
      if (!cone_stable_equiv(ca, cb) || cone_homotopy_equiv(ca, cb)) continue;
      ConePair mirror{std::min(ca.negated().alpha(), cb.negated().alpha()),
                      std::max(ca.negated().alpha(), cb.negated().alpha())};
      if (mirror < ConePair{a, b}) continue;
      out.emplace_back(a, b);
    }
  return out;
}

inline std::string to_string(const ConePair& p) {
  return "{" + std::to_string(p.first) + "," + std::to_string(p.second) + "}";
}

/// Throws InvalidWitnessPair unless {a, b} is stably but not homotopy equivalent.
inline void require_witness_pair(ConeClass a, ConeClass b) {
  if (cone_homotopy_equiv(a, b))
    throw InvalidWitnessPair("C_" + std::to_string(a.alpha()) + " and C_" + std::to_string(b.alpha()) +
                             " are homotopy equivalent");
  if (!cone_stable_equiv(a, b))
    throw InvalidWitnessPair(std::to_string(a.alpha()) + " and " + std::to_string(b.alpha()) +
                             " generate different subgroups of Z/12");
}

}  // namespace sumfactor::cones
