#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sumfactor/abgroup.hpp"
#include "sumfactor/certificate.hpp"
#include "sumfactor/cones.hpp"
#include "sumfactor/error.hpp"
#include "sumfactor/grouppres.hpp"
#include "sumfactor/integer.hpp"

namespace sumfactor::mfd {

using sumfactor::to_string;

// ---------------------------------------------------------------------------
// Free products
// ---------------------------------------------------------------------------

/// A non-abelian free factor known only through a name, its abelianization
/// and, when known, its minimal number of generators.
struct PresentedFactor {
  std::string name;
  AbelianGroup abelianization;
  std::optional<std::size_t> generators;
  friend bool operator==(const PresentedFactor&, const PresentedFactor&) = default;
  friend auto operator<=>(const PresentedFactor& a, const PresentedFactor& b) {
    if (auto c = a.name <=> b.name; c != 0) return c;
    if (auto c = a.abelianization <=> b.abelianization; c != 0) return c;
    return a.generators <=> b.generators;
  }
};

/// The quaternion group of order 28: abelianization Z/4, not cyclic.
inline PresentedFactor q28_factor() { return {"Q28", AbelianGroup::cyclic(4), 2}; }

/// F_r * A_1 * ... * A_m * P_1 * ... Factors are sorted; trivial factors are
/// dropped and a Z factor is absorbed into the free rank.
class FreeProductDesc {
 public:
  FreeProductDesc() = default;

  static FreeProductDesc free(std::size_t rank) {
    FreeProductDesc f;
    f.free_rank_ = rank;
    return f;
  }

  static FreeProductDesc of(std::vector<AbelianGroup> abelian, std::size_t free_rank = 0,
                            std::vector<PresentedFactor> presented = {}) {
    FreeProductDesc f;
    f.free_rank_ = free_rank;
    for (auto& g : abelian) f.add(std::move(g));
    f.presented_ = std::move(presented);
    std::sort(f.presented_.begin(), f.presented_.end());
    return f;
  }

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<AbelianGroup>& abelian_factors() const { return abelian_; }
  const std::vector<PresentedFactor>& presented_factors() const { return presented_; }
  bool is_trivial() const { return free_rank_ == 0 && abelian_.empty() && presented_.empty(); }

  /// d of the free product: the sum over factors (Grushko). Absent when a
  /// presented factor has unknown d.
  std::optional<std::size_t> min_generators() const {
    std::size_t d = free_rank_;
    for (const auto& a : abelian_) d += sumfactor::min_generators(a);
    for (const auto& p : presented_) {
      if (!p.generators) return std::nullopt;
      d += *p.generators;
    }
    return d;
  }

  AbelianGroup abelianization() const {
    AbelianGroup out = AbelianGroup::free(free_rank_);
    for (const auto& a : abelian_) out = direct_sum(out, a);
    for (const auto& p : presented_) out = direct_sum(out, p.abelianization);
    return out;
  }

  friend FreeProductDesc free_product(const FreeProductDesc& a, const FreeProductDesc& b) {
    // Both factor lists are already sorted.
    FreeProductDesc out;
    out.free_rank_ = a.free_rank_ + b.free_rank_;
    out.abelian_.reserve(a.abelian_.size() + b.abelian_.size());
    std::merge(a.abelian_.begin(), a.abelian_.end(), b.abelian_.begin(), b.abelian_.end(),
               std::back_inserter(out.abelian_));
    std::merge(a.presented_.begin(), a.presented_.end(), b.presented_.begin(), b.presented_.end(),
               std::back_inserter(out.presented_));
    return out;
  }

  friend bool operator==(const FreeProductDesc&, const FreeProductDesc&) = default;

 private:
  void add(AbelianGroup g) {
    if (g.is_trivial()) return;
    if (g == AbelianGroup::free(1)) {
      ++free_rank_;
      return;
    }
    abelian_.insert(std::upper_bound(abelian_.begin(), abelian_.end(), g), std::move(g));
  }

  std::vector<AbelianGroup> abelian_;
  std::vector<PresentedFactor> presented_;
  std::size_t free_rank_ = 0;
};

/// `1`, or factors joined by ` * `: `F<r>`, group literals, presented names.
inline std::string to_string(const FreeProductDesc& f) {
  if (f.is_trivial()) return "1";
  std::vector<std::string> parts;
  if (f.free_rank()) parts.push_back("F" + std::to_string(f.free_rank()));
  for (const auto& a : f.abelian_factors()) parts.push_back(to_string(a));
  for (const auto& p : f.presented_factors()) parts.push_back(p.name);
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " * " : "") + parts[i];
  return out;
}

inline FreeProductDesc parse_free_product(std::string_view text) {
  std::vector<AbelianGroup> abelian;
  std::vector<PresentedFactor> presented;
  std::size_t free_rank = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t star = text.find('*', pos);
    if (star == std::string_view::npos) star = text.size();
    std::string token;
    for (char ch : text.substr(pos, star - pos))
      if (!std::isspace(static_cast<unsigned char>(ch))) token += ch;
    pos = star + 1;
    if (token.empty()) throw SyntaxError("empty free factor in '" + std::string(text) + "'");
    if (token == "1") continue;
    if (token == "Q28") {
      presented.push_back(q28_factor());
    } else if (token[0] == 'F') {
      free_rank += parse_integer(token.substr(1)).convert_to<std::size_t>();
    } else {
      abelian.push_back(parse_group(token));
    }
  }
  return FreeProductDesc::of(std::move(abelian), free_rank, std::move(presented));
}

// ---------------------------------------------------------------------------
// Finite complexes
// ---------------------------------------------------------------------------

/// A finite CW complex described by its shape: a sphere, a presentation
/// complex, a three-cell mapping cone S^4 u e^8, or a wedge of these.
class ComplexDescriptor {
 public:
  enum class Kind { sphere, cayley, cone, wedge };

  static ComplexDescriptor sphere(unsigned n) {
    if (n == 0) throw InvalidArgument("S^0 is not connected");
    ComplexDescriptor c;
    c.kind_ = Kind::sphere;
    c.dim_ = n;
    c.chi_ = n % 2 == 0 ? 2 : 0;
    c.pi1_ = n == 1 ? FreeProductDesc::free(1) : FreeProductDesc();
    c.label_ = "S^" + std::to_string(n);
    return c;
  }

  /// Presentation complex with the given fundamental group descriptor.
  static ComplexDescriptor cayley(const pres::Presentation& p, FreeProductDesc pi1, std::string label) {
    ComplexDescriptor c;
    c.kind_ = Kind::cayley;
    c.dim_ = p.relators().empty() ? 1 : 2;
    c.chi_ = pres::euler_char(p);
    c.pi1_ = std::move(pi1);
    c.label_ = std::move(label);
    return c;
  }

  /// A user presentation: pi1 is free when there are no relators, otherwise
  /// opaque apart from its abelianization.
  static ComplexDescriptor cayley(const pres::Presentation& p) {
    std::string literal = pres::to_string(p);
    FreeProductDesc pi1 = p.relators().empty()
                              ? FreeProductDesc::free(p.generator_count())
                              : FreeProductDesc::of({}, 0, {{"pi1" + literal, pres::abelianization(p), std::nullopt}});
    return cayley(p, std::move(pi1), "X" + literal);
  }

  static ComplexDescriptor metzler(const Integer& p, std::size_t s, const Integer& q) {
    auto pres = pres::metzler_presentation(p, s, q);
    std::vector<AbelianGroup> cyclic(s, AbelianGroup::cyclic(p));
    AbelianGroup group;
    for (const auto& g : cyclic) group = direct_sum(group, g);
    return cayley(pres, FreeProductDesc::of({group}),
                  "Xmetzler(" + to_string(p) + "," + std::to_string(s) + "," + to_string(q) + ")");
  }

  static ComplexDescriptor q28(unsigned which) {
    if (which != 1 && which != 2) throw InvalidArgument("Q28 presentations are numbered 1 and 2");
    auto pair = pres::q28_presentations();
    return cayley(which == 1 ? pair.first : pair.second, FreeProductDesc::of({}, 0, {q28_factor()}),
                  "Xq28(" + std::to_string(which) + ")");
  }

  static ComplexDescriptor cone(cones::ConeClass alpha) {
    ComplexDescriptor c;
    c.kind_ = Kind::cone;
    c.dim_ = 8;
    c.chi_ = 3;
    c.label_ = "C(" + std::to_string(alpha.alpha()) + ")";
    return c;
  }

  friend ComplexDescriptor wedge(const ComplexDescriptor& a, const ComplexDescriptor& b) {
    ComplexDescriptor c;
    c.kind_ = Kind::wedge;
    for (const auto* side : {&a, &b}) {
      if (side->kind_ == Kind::wedge) c.parts_.insert(c.parts_.end(), side->parts_.begin(), side->parts_.end());
      else c.parts_.push_back(*side);
    }
    std::sort(c.parts_.begin(), c.parts_.end(),
              [](const ComplexDescriptor& x, const ComplexDescriptor& y) { return x.label_ < y.label_; });
    c.dim_ = 0;
    c.chi_ = 1;
    for (const auto& part : c.parts_) {
      c.dim_ = std::max(c.dim_, part.dim_);
      c.chi_ += part.chi_ - 1;
      c.pi1_ = free_product(c.pi1_, part.pi1_);
    }
    for (std::size_t i = 0; i < c.parts_.size(); ++i) c.label_ += (i ? " v " : "") + c.parts_[i].label_;
    return c;
  }

  Kind kind() const { return kind_; }
  unsigned dim() const { return dim_; }
  long long euler_char() const { return chi_; }
  const FreeProductDesc& pi1() const { return pi1_; }
  const std::string& label() const { return label_; }
  const std::vector<ComplexDescriptor>& parts() const { return parts_; }

  friend bool operator==(const ComplexDescriptor& a, const ComplexDescriptor& b) { return a.label_ == b.label_; }

 private:
  Kind kind_ = Kind::sphere;
  unsigned dim_ = 0;
  long long chi_ = 1;
  FreeProductDesc pi1_;
  std::string label_;
  std::vector<ComplexDescriptor> parts_;
};

inline std::string to_string(const ComplexDescriptor& c) { return c.label(); }

namespace detail {

/// Splits at `sep` occurring outside (), <> and [].
inline std::vector<std::string> split_top(std::string_view text, std::string_view sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(' || c == '<' || c == '[') ++depth;
    else if (c == ')' || c == '>' || c == ']') --depth;
    else if (depth == 0 && text.substr(i, sep.size()) == sep) {
      out.emplace_back(text.substr(start, i - start));
      start = i + sep.size();
      i = start - 1;
    }
  }
  out.emplace_back(text.substr(start));
  return out;
}

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

/// Arguments of `name(a,b,...)`, or nullopt when text does not start with `name(`.
inline std::optional<std::vector<std::string>> call_args(const std::string& text, std::string_view name) {
  if (text.rfind(std::string(name) + "(", 0) != 0) return std::nullopt;
  if (text.back() != ')') throw SyntaxError("missing ')' in '" + text + "'");
  std::string inner = text.substr(name.size() + 1, text.size() - name.size() - 2);
  std::vector<std::string> out;
  for (auto& part : split_top(inner, ",")) out.push_back(trim(part));
  return out;
}

inline unsigned parse_unsigned(std::string_view s) {
  Integer v = parse_integer(s);
  if (v < 0 || v > 100000) throw SyntaxError("expected a small non-negative integer, got '" + std::string(s) + "'");
  return v.convert_to<unsigned>();
}

}  // namespace detail

/// Literals: `S^n`, `X<presentation>`, `Xmetzler(p,s,q)`, `Xq28(1|2)`,
/// `C(a)`, joined by ` v ` for wedges.
inline ComplexDescriptor parse_complex(std::string_view text) {
  auto parts = detail::split_top(text, " v ");
  if (parts.size() > 1) {
    ComplexDescriptor out = parse_complex(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) out = wedge(out, parse_complex(parts[i]));
    return out;
  }
  std::string t = detail::trim(text);
  if (t.empty()) throw SyntaxError("empty complex literal");
  if (t.rfind("S^", 0) == 0) return ComplexDescriptor::sphere(detail::parse_unsigned(t.substr(2)));
  if (t.rfind("X<", 0) == 0) return ComplexDescriptor::cayley(pres::parse_presentation(t.substr(1)));
  if (auto args = detail::call_args(t, "Xmetzler")) {
    if (args->size() != 3) throw SyntaxError("Xmetzler takes (p,s,q)");
    return ComplexDescriptor::metzler(parse_integer((*args)[0]), detail::parse_unsigned((*args)[1]),
                                      parse_integer((*args)[2]));
  }
  if (auto args = detail::call_args(t, "Xq28")) {
    if (args->size() != 1) throw SyntaxError("Xq28 takes one index");
    return ComplexDescriptor::q28(detail::parse_unsigned((*args)[0]));
  }
  if (auto args = detail::call_args(t, "C")) {
    if (args->size() != 1) throw SyntaxError("C takes one residue");
    return ComplexDescriptor::cone(cones::ConeClass(parse_integer((*args)[0]).convert_to<long long>()));
  }
  throw SyntaxError("unrecognized complex literal '" + t + "'");
}

// ---------------------------------------------------------------------------
// Manifold descriptors
// ---------------------------------------------------------------------------

/// Invariant-level description of a closed oriented n-manifold: pi1 as a free
/// product, H_1..H_{n-1} (absent entries are opaque) and the sorted list of
/// connected summand tokens it was built from. Equality compares invariants
/// only; the summand tokens are provenance.
class ManifoldDescriptor {
 public:
  static ManifoldDescriptor make(unsigned dim, FreeProductDesc pi1, std::vector<std::optional<AbelianGroup>> homology,
                                 std::vector<std::string> summands, std::string provenance) {
    if (dim < 3) throw InvalidArgument("descriptor dimension must be at least 3");
    if (homology.size() > dim - 1) throw InvalidArgument("too many homology groups for dimension " + std::to_string(dim));
    homology.resize(dim - 1);
    AbelianGroup h1 = pi1.abelianization();
    if (homology[0] && *homology[0] != h1)
      throw InvalidArgument("H1 = " + to_string(*homology[0]) + " differs from the abelianization " + to_string(h1) +
                            " of pi1");
    homology[0] = std::move(h1);
    return assemble(dim, std::move(pi1), std::move(homology), std::move(summands), std::move(provenance));
  }

  static ManifoldDescriptor sphere(unsigned n) { return make(n, {}, std::vector<std::optional<AbelianGroup>>(n - 1, AbelianGroup()), {}, "sphere"); }

  unsigned dim() const { return dim_; }
  const FreeProductDesc& pi1() const { return pi1_; }
  /// H_i for 1 <= i <= dim - 1; absent when opaque.
  const std::optional<AbelianGroup>& homology(unsigned i) const { return homology_.at(i - 1); }
  const std::vector<std::optional<AbelianGroup>>& homology() const { return homology_; }
  bool has_full_homology() const {
    return std::all_of(homology_.begin(), homology_.end(), [](const auto& h) { return h.has_value(); });
  }
  const std::vector<std::string>& summands() const { return summands_; }
  const std::string& provenance() const { return provenance_; }

  friend bool operator==(const ManifoldDescriptor& a, const ManifoldDescriptor& b) {
    return a.dim_ == b.dim_ && a.pi1_ == b.pi1_ && a.homology_ == b.homology_;
  }

  friend ManifoldDescriptor consum_descriptor(const ManifoldDescriptor& a, const ManifoldDescriptor& b);

 private:
  /// Requires homology[0] to be the abelianization of pi1.
  static ManifoldDescriptor assemble(unsigned dim, FreeProductDesc pi1, std::vector<std::optional<AbelianGroup>> homology,
                                     std::vector<std::string> summands, std::string provenance) {
    ManifoldDescriptor m;
    m.dim_ = dim;
    m.pi1_ = std::move(pi1);
    m.homology_ = std::move(homology);
    m.summands_ = std::move(summands);
    std::sort(m.summands_.begin(), m.summands_.end());
    m.provenance_ = std::move(provenance);
    return m;
  }

  unsigned dim_ = 3;
  FreeProductDesc pi1_;
  std::vector<std::optional<AbelianGroup>> homology_;
  std::vector<std::string> summands_;
  std::string provenance_;
};

/// Summand tokens joined by ` # `; `S^n` for the sphere.
inline std::string to_string(const ManifoldDescriptor& m) {
  if (m.summands().empty()) return "S^" + std::to_string(m.dim());
  std::string out;
  for (std::size_t i = 0; i < m.summands().size(); ++i) out += (i ? " # " : "") + m.summands()[i];
  return out;
}

inline ManifoldDescriptor consum_descriptor(const ManifoldDescriptor& a, const ManifoldDescriptor& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("cannot form a connected sum of dimensions " + std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
  std::vector<std::optional<AbelianGroup>> homology(a.dim() - 1);
  for (unsigned i = 1; i < a.dim(); ++i)
    if (a.homology(i) && b.homology(i)) homology[i - 1] = direct_sum(*a.homology(i), *b.homology(i));
  std::vector<std::string> summands = a.summands();
  summands.insert(summands.end(), b.summands().begin(), b.summands().end());
  // H1 of both sides is always present, and H1(A # B) = H1(A) + H1(B) is the abelianization of pi1(A) * pi1(B).
  return ManifoldDescriptor::assemble(a.dim(), free_product(a.pi1(), b.pi1()), std::move(homology),
                                      std::move(summands), "consum");
}

inline std::string sphere_product_token(unsigned n, unsigned m) {
  return "S^" + std::to_string(std::min(n, m)) + "xS^" + std::to_string(std::max(n, m));
}

/// S^n x S^m by the Kunneth formula.
inline ManifoldDescriptor sphere_product(unsigned n, unsigned m) {
  if (n < 1 || m < 1 || n + m < 3) throw InvalidArgument("sphere_product needs n, m >= 1 and n + m >= 3");
  const unsigned dim = n + m;
  std::vector<std::optional<AbelianGroup>> homology(dim - 1, AbelianGroup());
  for (unsigned i : {n, m}) homology[i - 1] = direct_sum(*homology[i - 1], AbelianGroup::free(1));
  FreeProductDesc pi1 = (n == 1 || m == 1) ? FreeProductDesc::free(1) : FreeProductDesc();
  return ManifoldDescriptor::make(dim, std::move(pi1), std::move(homology), {sphere_product_token(n, m)},
                                  "sphere-product");
}

/// The Wu manifold SU(3)/SO(3): H2 = Z/2, all else trivial.
inline ManifoldDescriptor wu_descriptor() {
  std::vector<std::optional<AbelianGroup>> homology(4, AbelianGroup());
  homology[1] = AbelianGroup::cyclic(2);
  return ManifoldDescriptor::make(5, {}, std::move(homology), {"Wu"}, "user");
}

/// Boundary of the (k+1)-dimensional thickening of x. Wedges become connected
/// sums and spheres become sphere products; any other complex gives an opaque
/// token carrying pi1 and H1 only.
inline ManifoldDescriptor boundary_thickening(const ComplexDescriptor& x, unsigned k) {
  if (k < 5 || k < 2 * x.dim())
    throw DimensionTooSmall("M^k(X) needs k >= 5 and k >= 2 dim X; got k = " + std::to_string(k) +
                            ", dim X = " + std::to_string(x.dim()));
  switch (x.kind()) {
    case ComplexDescriptor::Kind::sphere:
      return sphere_product(x.dim(), k - x.dim());
    case ComplexDescriptor::Kind::wedge: {
      ManifoldDescriptor out = ManifoldDescriptor::sphere(k);
      for (const auto& part : x.parts()) out = consum_descriptor(out, boundary_thickening(part, k));
      return out;
    }
    default:
      return ManifoldDescriptor::make(k, x.pi1(), {}, {"M^" + std::to_string(k) + "(" + x.label() + ")"},
                                      "boundary-thickening");
  }
}

namespace detail {

inline ManifoldDescriptor parse_generic(const std::string& t) {
  // D(n; pi1=<free product>; H=<H1>,<H2>,...,<H_{n-1}>), `?` marks an opaque group.
  std::string inner = t.substr(2, t.size() - 3);
  auto fields = split_top(inner, ";");
  if (fields.empty()) throw SyntaxError("D(...) needs a dimension");
  unsigned dim = parse_unsigned(trim(fields[0]));
  FreeProductDesc pi1;
  std::vector<std::optional<AbelianGroup>> homology;
  bool homology_given = false;
  for (std::size_t i = 1; i < fields.size(); ++i) {
    std::string f = trim(fields[i]);
    if (f.rfind("pi1=", 0) == 0) {
      pi1 = parse_free_product(f.substr(4));
    } else if (f.rfind("H=", 0) == 0) {
      homology_given = true;
      for (auto& g : split_top(f.substr(2), ",")) {
        std::string lit = trim(g);
        if (lit == "?") homology.emplace_back();
        else homology.emplace_back(parse_group(lit));
      }
    } else {
      throw SyntaxError("unknown D(...) field '" + f + "'");
    }
  }
  if (dim < 3) throw InvalidArgument("descriptor dimension must be at least 3");
  if (homology_given && homology.size() != dim - 1)
    throw InvalidArgument("H= lists " + std::to_string(homology.size()) + " groups; dimension " +
                          std::to_string(dim) + " needs " + std::to_string(dim - 1));
  auto probe = ManifoldDescriptor::make(dim, pi1, homology, {}, "user");
  std::string token = "D(" + std::to_string(dim) + "; pi1=" + to_string(probe.pi1()) + "; H=";
  for (unsigned i = 1; i < dim; ++i)
    token += (i > 1 ? "," : "") + (probe.homology(i) ? to_string(*probe.homology(i)) : std::string("?"));
  token += ")";
  return ManifoldDescriptor::make(dim, probe.pi1(), probe.homology(), {token}, "user");
}

inline ManifoldDescriptor parse_summand(const std::string& t) {
  if (t == "Wu") return wu_descriptor();
  if (t.rfind("D(", 0) == 0 && t.back() == ')') return parse_generic(t);
  if (t.rfind("M^", 0) == 0) {
    std::size_t open = t.find('(');
    if (open == std::string::npos || t.back() != ')') throw SyntaxError("expected M^k(<complex>)");
    unsigned k = parse_unsigned(t.substr(2, open - 2));
    return boundary_thickening(parse_complex(t.substr(open + 1, t.size() - open - 2)), k);
  }
  if (t.rfind("S^", 0) == 0) {
    std::size_t x = t.find("xS^");
    if (x == std::string::npos) return ManifoldDescriptor::sphere(parse_unsigned(t.substr(2)));
    return sphere_product(parse_unsigned(t.substr(2, x - 2)), parse_unsigned(t.substr(x + 3)));
  }
  throw SyntaxError("unrecognized manifold literal '" + t + "'");
}

}  // namespace detail

/// Summands joined by `#`: `S^n`, `S^axS^b`, `Wu`, `M^k(<complex>)`,
/// `D(n; pi1=...; H=...)`.
inline ManifoldDescriptor parse_descriptor(std::string_view text) {
  auto parts = detail::split_top(text, "#");
  std::optional<ManifoldDescriptor> out;
  for (const auto& part : parts) {
    std::string t = detail::trim(part);
    if (t.empty()) throw SyntaxError("empty summand in '" + std::string(text) + "'");
    auto m = detail::parse_summand(t);
    out = out ? consum_descriptor(*out, m) : m;
  }
  return *out;
}

// ---------------------------------------------------------------------------
// Complexity
// ---------------------------------------------------------------------------

/// (d(pi1), total rank of H_1..H_{n-1}, total torsion order). The torsion
/// component is the exact order; its logarithm is display only.
struct Complexity {
  std::optional<std::size_t> d;
  std::optional<std::size_t> rank_sum;
  std::optional<Integer> torsion_order;

  bool complete() const { return d && rank_sum && torsion_order; }
  bool is_zero() const { return complete() && *d == 0 && *rank_sum == 0 && *torsion_order == 1; }
  friend bool operator==(const Complexity&, const Complexity&) = default;
};

inline Complexity complexity(const ManifoldDescriptor& m) {
  Complexity c;
  c.d = m.pi1().min_generators();
  if (m.has_full_homology()) {
    std::size_t rank = 0;
    Integer torsion = 1;
    for (const auto& h : m.homology()) {
      rank += h->free_rank();
      torsion *= h->torsion_order();
    }
    c.rank_sum = rank;
    c.torsion_order = torsion;
  }
  return c;
}

/// Componentwise: d and rank add, torsion orders multiply.
inline Complexity combine(const Complexity& a, const Complexity& b) {
  Complexity c;
  if (a.d && b.d) c.d = *a.d + *b.d;
  if (a.rank_sum && b.rank_sum) c.rank_sum = *a.rank_sum + *b.rank_sum;
  if (a.torsion_order && b.torsion_order) c.torsion_order = *a.torsion_order * *b.torsion_order;
  return c;
}

/// `(d, rank, torsion)` with `?` for unknown components; with display_ln the
/// torsion logarithm follows to 6 decimals.
inline std::string to_string(const Complexity& c, bool display_ln = false) {
  auto show = [](const auto& v) { return v ? sumfactor::to_string(Integer(*v)) : std::string("?"); };
  std::string out = "(" + show(c.d) + "," + show(c.rank_sum) + "," + show(c.torsion_order) + ")";
  if (display_ln && c.torsion_order) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6Lf", ln(*c.torsion_order));
    out += " t=" + std::string(buf);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Non-cancellation witnesses
// ---------------------------------------------------------------------------

enum class Family { metzler, q28, cone };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::metzler: return "metzler";
    case Family::q28: return "q28";
    case Family::cone: return "cone";
  }
  return "?";
}

inline Family parse_family(std::string_view s) {
  if (s == "metzler") return Family::metzler;
  if (s == "q28") return Family::q28;
  if (s == "cone") return Family::cone;
  throw InvalidArgument("unknown witness family '" + std::string(s) + "'");
}

struct WitnessParams {
  Integer p = 5;
  std::size_t s = 3;
  Integer q = 1;
  Integer q2 = 2;
  long long a = 1;
  long long b = 5;
};

namespace citation {
inline constexpr const char* kThickening =
    "Wall 1966, Kreck-Schafer 1984: for k >= 2n and k >= 5, finite n-complexes X, Y with X not ~ Y and "
    "X v S^n ~s Y v S^n give M^k(X) not ~ M^k(Y) and M^k(X) # S^n x S^(k-n) = M^k(Y) # S^n x S^(k-n)";
inline constexpr const char* kFiveThickening =
    "Wall 1966: a finite 2-complex has 5-dimensional thickenings, and simple homotopy equivalent complexes have "
    "s-cobordant thickening boundaries";
inline constexpr const char* kStabilization =
    "Wall 1964: s-cobordant closed 4-manifolds become diffeomorphic after # r(S^2xS^2) for some r >= 1";
inline constexpr const char* kFourInequivalence =
    "Kreck-Schafer 1984: the 4-dimensional thickening boundaries are not homotopy equivalent";
inline constexpr const char* kToda = "Toda 1962: pi_6(S^3) = Z/12 and suspension maps it onto the torsion of pi_7(S^4)";
inline constexpr const char* kHilton =
    "Hilton 1967: for suspension classes of finite order, C_a ~ C_b iff b = +-a, and classes generating the same "
    "subgroup give C_a v S^m ~ C_b v S^m";
inline constexpr const char* kLemma =
    "non-homotopy-equivalent M, N with M # W = N # W show W is not cancellable and unique factorization fails";
}  // namespace citation

/// A non-cancellation instance M # S = N # S with M, N not homotopy equivalent.
struct Witness {
  Family family = Family::metzler;
  unsigned k = 5;
  ManifoldDescriptor first;
  ManifoldDescriptor second;
  std::string stabilizer;
  Certificate certificate;
};

namespace detail {

/// Rewrites the token `from` to `to` whenever `stabilizer` is present, then sorts.
inline std::vector<std::string> normalize_tokens(std::vector<std::string> tokens, const std::string& from,
                                                 const std::string& to, const std::string& stabilizer) {
  if (std::find(tokens.begin(), tokens.end(), stabilizer) != tokens.end())
    std::replace(tokens.begin(), tokens.end(), from, to);
  std::sort(tokens.begin(), tokens.end());
  return tokens;
}

inline std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) out += (i ? " # " : "") + tokens[i];
  return out;
}

}  // namespace detail

inline Witness make_witness(Family family, const WitnessParams& params, unsigned k) {
  Witness w;
  w.family = family;
  w.k = k;
  Certificate& c = w.certificate;
  c.set("family", to_string(family));
  std::optional<ComplexDescriptor> x, y;
  unsigned cell_dim = 2;
  switch (family) {
    case Family::metzler: {
      if (k < 4) throw ParameterViolation("the metzler family needs k >= 5, or k = 4");
      x = ComplexDescriptor::metzler(params.p, params.s, params.q);
      y = ComplexDescriptor::metzler(params.p, params.s, params.q2);
      c.set("p", to_string(params.p));
      c.set("s", std::to_string(params.s));
      c.set("q", to_string(params.q));
      c.set("q2", to_string(params.q2));
      break;
    }
    case Family::q28: {
      if (k < 4) throw ParameterViolation("the q28 family needs k >= 5, or k = 4");
      x = ComplexDescriptor::q28(1);
      y = ComplexDescriptor::q28(2);
      break;
    }
    case Family::cone: {
      if (k < 17) throw ParameterViolation("the cone family needs k >= 17");
      cones::ConeClass a(params.a), b(params.b);
      cones::require_witness_pair(a, b);
      x = ComplexDescriptor::cone(a);
      y = ComplexDescriptor::cone(b);
      cell_dim = 8;
      c.set("a", std::to_string(a.alpha()));
      c.set("b", std::to_string(b.alpha()));
      break;
    }
  }
  c.set("k", std::to_string(k));
  c.set("complex.first", x->label());
  c.set("complex.second", y->label());
  c.set("complex.euler_char", std::to_string(x->euler_char()) + "," + std::to_string(y->euler_char()));
  if (x->euler_char() != y->euler_char()) throw ParameterViolation("Euler characteristics differ");

  if (k == 4) {
    // 5-dimensional thickenings are not unique; their boundaries are named by token only.
    auto token = [](const ComplexDescriptor& cx) {
      return ManifoldDescriptor::make(4, cx.pi1(), {}, {"dA(" + cx.label() + ")"}, "boundary-thickening");
    };
    w.first = token(*x);
    w.second = token(*y);
    w.stabilizer = "r(S^2xS^2)";
    c.set("stabilizer", w.stabilizer);
    c.set("stabilizer.r", "exists r >= 1");
  } else {
    w.first = boundary_thickening(*x, k);
    w.second = boundary_thickening(*y, k);
    w.stabilizer = sphere_product_token(cell_dim, k - cell_dim);
    c.set("stabilizer", w.stabilizer);
  }
  c.set("first", to_string(w.first));
  c.set("second", to_string(w.second));
  c.set("pi1", to_string(w.first.pi1()) + "," + to_string(w.second.pi1()));
  c.set("relation", to_string(w.first) + " # " + w.stabilizer + " = " + to_string(w.second) + " # " + w.stabilizer);

  const std::string from = w.second.summands().front(), to = w.first.summands().front();
  auto stabilized = [&](const ManifoldDescriptor& m) {
    std::vector<std::string> tokens = m.summands();
    tokens.push_back(w.stabilizer);
    return detail::join_tokens(detail::normalize_tokens(tokens, from, to, w.stabilizer));
  };
  c.set("normal_form.first", stabilized(w.first));
  c.set("normal_form.second", stabilized(w.second));

  switch (family) {
    case Family::metzler: {
      auto rec = pres::metzler_distinct(params.p, params.q, params.q2);
      if (!rec.distinct())
        throw ParameterViolation("q*q'^-1 = " + to_string(rec.r) + " is a square mod " + to_string(params.p));
      c.set("obstruction", "quadratic-residue");
      pres::write_qr(c, rec);
      c.citations.push_back(pres::citation::kBias);
      c.citations.push_back(pres::citation::kStable);
      break;
    }
    case Family::q28:
      c.set("obstruction", "cited");
      c.set("abelianization", to_string(pres::abelianization(pres::q28_presentations().first)) + "," +
                                  to_string(pres::abelianization(pres::q28_presentations().second)));
      c.citations.push_back(pres::citation::kQ28);
      c.citations.push_back(pres::citation::kStable);
      break;
    case Family::cone: {
      cones::ConeClass a(params.a), b(params.b);
      c.set("obstruction", "mod-12");
      c.set("mod12.pm_a", std::to_string(a.alpha()) + "," + std::to_string(a.negated().alpha()));
      c.set("mod12.gcd", std::to_string(a.subgroup_index()) + "," + std::to_string(b.subgroup_index()));
      c.set("mod12.homotopy", "inequivalent");
      c.set("mod12.stable", "equivalent");
      c.citations.push_back(citation::kToda);
      c.citations.push_back(citation::kHilton);
      break;
    }
  }
  if (k == 4) {
    c.citations.push_back(citation::kFiveThickening);
    c.citations.push_back(citation::kStabilization);
    c.citations.push_back(citation::kFourInequivalence);
  } else {
    c.citations.push_back(citation::kThickening);
  }
  c.citations.push_back(citation::kLemma);
  c.set("conclusion", "first and second are not homotopy equivalent; " + w.stabilizer + " is not cancellable");
  return w;
}

struct ReplayResult {
  bool inequivalent = false;        ///< the obstruction record recomputes to "inequivalent"
  bool stabilized_equal = false;    ///< both normal forms agree
  bool fields_match = false;        ///< regenerating the certificate reproduces every field
  std::string message;
  bool ok() const { return inequivalent && stabilized_equal && fields_match; }
};

inline ReplayResult replay_witness(const Certificate& c) {
  ReplayResult r;
  try {
    Family family = parse_family(c.at("family"));
    WitnessParams params;
    if (family == Family::metzler) {
      params.p = parse_integer(c.at("p"));
      params.s = parse_integer(c.at("s")).convert_to<std::size_t>();
      params.q = parse_integer(c.at("q"));
      params.q2 = parse_integer(c.at("q2"));
    } else if (family == Family::cone) {
      params.a = parse_integer(c.at("a")).convert_to<long long>();
      params.b = parse_integer(c.at("b")).convert_to<long long>();
    }
    unsigned k = parse_integer(c.at("k")).convert_to<unsigned>();
    switch (family) {
      case Family::metzler: r.inequivalent = pres::read_qr(c).distinct(); break;
      case Family::q28:
        r.inequivalent = std::find(c.citations.begin(), c.citations.end(), pres::citation::kQ28) != c.citations.end();
        break;
      case Family::cone: {
        cones::ConeClass a(params.a), b(params.b);
        r.inequivalent = !cones::cone_homotopy_equiv(a, b) && cones::cone_stable_equiv(a, b);
        break;
      }
    }
    r.stabilized_equal = c.at("normal_form.first") == c.at("normal_form.second");
    Witness again = make_witness(family, params, k);
    r.fields_match = again.certificate == c;
    r.message = r.ok() ? "replayed" : "certificate does not replay";
  } catch (const Error& e) {
    r.message = std::string(e.name()) + ": " + e.what();
  }
  return r;
}

}  // namespace sumfactor::mfd
