#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sumfactor/abgroup.hpp"
#include "sumfactor/certificate.hpp"
#include "sumfactor/error.hpp"
#include "sumfactor/integer.hpp"

namespace sumfactor::pres {

using sumfactor::to_string;

struct Letter {
  std::size_t generator = 0;
  long long exponent = 0;  ///< nonzero
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A freely reduced word: no zero exponents, no two adjacent letters on the same generator.
class Word {
 public:
  Word() = default;

  static Word letter(std::size_t generator, long long exponent = 1) {
    Word w;
    w.append(generator, exponent);
    return w;
  }

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }

  Word operator*(const Word& rhs) const {
    Word out = *this;
    for (const auto& l : rhs.letters_) out.append(l.generator, l.exponent);
    return out;
  }

  Word inverse() const {
    Word out;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.append(it->generator, -it->exponent);
    return out;
  }

  Word power(long long n) const {
    Word base = n < 0 ? inverse() : *this;
    Word out;
    for (long long i = 0; i < (n < 0 ? -n : n); ++i) out = out * base;
    return out;
  }

  /// Exponent sum of each generator, over `generators` columns.
  std::vector<long long> exponent_sums(std::size_t generators) const {
    std::vector<long long> sums(generators, 0);
    for (const auto& l : letters_) sums.at(l.generator) += l.exponent;
    return sums;
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  void append(std::size_t generator, long long exponent) {
    if (exponent == 0) return;
    if (!letters_.empty() && letters_.back().generator == generator) {
      letters_.back().exponent += exponent;
      if (letters_.back().exponent == 0) letters_.pop_back();
      return;
    }
    letters_.push_back({generator, exponent});
  }

  std::vector<Letter> letters_;
};

/// [a, b] = a b a^-1 b^-1.
inline Word commutator(const Word& a, const Word& b) { return a * b * a.inverse() * b.inverse(); }

class Presentation {
 public:
  Presentation() = default;
  Presentation(std::vector<std::string> generators, std::vector<Word> relators, std::string family = "user")
      : generators_(std::move(generators)), relators_(std::move(relators)), family_(std::move(family)) {
    for (const auto& r : relators_)
      for (const auto& l : r.letters())
        if (l.generator >= generators_.size()) throw InvalidArgument("relator uses an undeclared generator");
  }

  std::size_t generator_count() const { return generators_.size(); }
  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }
  const std::string& family() const { return family_; }

  /// Equality ignores the family tag.
  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.generators_ == b.generators_ && a.relators_ == b.relators_;
  }

 private:
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
  std::string family_ = "user";
};

inline long long deficiency(const Presentation& p) {
  return static_cast<long long>(p.generator_count()) - static_cast<long long>(p.relators().size());
}

/// Euler characteristic of the presentation (Cayley) complex: one 0-cell,
/// one 1-cell per generator, one 2-cell per relator.
inline long long euler_char(const Presentation& p) { return 1 - deficiency(p); }

inline IntMatrix exponent_matrix(const Presentation& p) {
  IntMatrix m(p.relators().size(), p.generator_count());
  for (std::size_t r = 0; r < p.relators().size(); ++r) {
    auto sums = p.relators()[r].exponent_sums(p.generator_count());
    for (std::size_t c = 0; c < sums.size(); ++c) m(r, c) = sums[c];
  }
  return m;
}

inline AbelianGroup abelianization(const Presentation& p) { return cokernel(exponent_matrix(p)); }

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

inline std::string to_string(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += names.at(l.generator);
    if (l.exponent != 1) out += "^" + std::to_string(l.exponent);
  }
  return out;
}

inline std::string to_string(const Presentation& p) {
  std::string out = "<";
  for (std::size_t i = 0; i < p.generators().size(); ++i) out += (i ? "," : "") + p.generators()[i];
  out += " | ";
  for (std::size_t i = 0; i < p.relators().size(); ++i)
    out += (i ? ", " : "") + to_string(p.relators()[i], p.generators());
  return out + ">";
}

namespace detail {

class PresentationParser {
 public:
  explicit PresentationParser(std::string_view text) : text_(text) {}

  Presentation parse() {
    expect('<');
    std::vector<std::string> names;
    skip_space();
    if (peek() != '|' && peek() != '>') {
      names.push_back(identifier());
      while (consume(',')) names.push_back(identifier());
    }
    for (std::size_t i = 0; i < names.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (names[i] == names[j]) fail("duplicate generator '" + names[i] + "'");
    names_ = names;
    std::vector<Word> relators;
    if (consume('|')) {
      skip_space();
      if (peek() != '>') {
        relators.push_back(relator());
        while (consume(',')) relators.push_back(relator());
      }
    }
    expect('>');
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return Presentation(std::move(names), std::move(relators));
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what + " at position " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool consume(char c) {
    skip_space();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string identifier() {
    skip_space();
    if (!ident_start(peek())) fail("expected a generator name");
    std::size_t start = pos_;
    while (ident_char(peek())) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Word relator() {
    Word lhs = product();
    if (consume('=')) return lhs * product().inverse();
    return lhs;
  }

  bool at_factor() {
    skip_space();
    char c = peek();
    return ident_start(c) || c == '(' || c == '[' || c == '1';
  }

  Word product() {
    if (!at_factor()) fail("expected a word");
    Word w;
    while (at_factor()) w = w * factor();
    return w;
  }

  Word factor() {
    Word base = atom();
    skip_space();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      std::size_t start = pos_;
      if (peek() == '-' || peek() == '+') ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer exponent");
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      Integer e = parse_integer(text_.substr(start, pos_ - start));
      if (abs(e) > 1000000) fail("exponent too large");
      base = base.power(e.convert_to<long long>());
    }
    return base;
  }

  Word atom() {
    skip_space();
    char c = peek();
    if (c == '1' && !std::isdigit(static_cast<unsigned char>(pos_ + 1 < text_.size() ? text_[pos_ + 1] : ' '))) {
      ++pos_;
      return Word();
    }
    if (c == '(') {
      ++pos_;
      Word w = product();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word a = product();
      expect(',');
      Word b = product();
      expect(']');
      return commutator(a, b);
    }
    return generator();
  }

  // Juxtaposed names are split by longest prefix match against the declared generators.
  Word generator() {
    std::size_t best = 0, best_len = 0;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const auto& n = names_[i];
      if (n.size() > best_len && text_.substr(pos_, n.size()) == n) {
        best = i;
        best_len = n.size();
      }
    }
    if (best_len == 0) {
      std::size_t end = pos_;
      while (end < text_.size() && ident_char(text_[end])) ++end;
      throw UnknownGenerator("unknown generator '" + std::string(text_.substr(pos_, end - pos_)) +
                             "' at position " + std::to_string(pos_));
    }
    pos_ += best_len;
    return Word::letter(best);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> names_;
};

}  // namespace detail

/// Grammar: `<g1,...,gn | rel1, rel2, ...>`; a relator is a word or `u=v`
/// (stored as u v^-1); words juxtapose generators, `(w)`, `[u,v]` and `1`,
/// each optionally raised to an integer power with `^`.
inline Presentation parse_presentation(std::string_view text) { return detail::PresentationParser(text).parse(); }

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

/// <x1..xs | xi^p, [x1^q, x2], [xi, xj] for i < j, (i,j) != (1,2)>, a presentation of (Z/p)^s.
inline Presentation metzler_presentation(const Integer& p, std::size_t s, const Integer& q) {
  if (!is_prime(p)) throw ParameterViolation("p = " + to_string(p) + " is not prime");
  if (mod(p, 4) != 1) throw ParameterViolation("p = " + to_string(p) + " is not 1 mod 4");
  if (s < 3 || s % 2 == 0) throw ParameterViolation("s = " + std::to_string(s) + " is not an odd number >= 3");
  if (q < 1) throw ParameterViolation("q must be positive");
  if (mod(q, p) == 0) throw ParameterViolation("p divides q");
  if (p > 1000000 || q > 1000000) throw ParameterViolation("p and q are limited to 10^6");
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= s; ++i) names.push_back("x" + std::to_string(i));
  const long long pe = p.convert_to<long long>(), qe = q.convert_to<long long>();
  std::vector<Word> relators;
  for (std::size_t i = 0; i < s; ++i) relators.push_back(Word::letter(i, pe));
  relators.push_back(commutator(Word::letter(0, qe), Word::letter(1)));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j)
      if (!(i == 0 && j == 1)) relators.push_back(commutator(Word::letter(i), Word::letter(j)));
  return Presentation(std::move(names), std::move(relators), "metzler");
}

/// Euler's criterion for one residue: r^((p-1)/2) mod p.
struct EulerLine {
  Integer base;
  Integer exponent;
  Integer value;  ///< 1 for a square, p - 1 for a non-square
};

inline std::string to_string(const EulerLine& e, const Integer& p) {
  std::string out = to_string(e.base) + "^" + to_string(e.exponent) + " ≡ " + to_string(e.value);
  if (e.value == p - 1 && e.value != 1) out += " ≡ -1";
  return out + " mod " + to_string(p);
}

struct QrRecord {
  Integer p, q, q2;
  Integer r;          ///< q * q2^-1 mod p
  Integer r_inverse;  ///< q2 * q^-1 mod p
  EulerLine euler;
  EulerLine euler_inverse;
  bool residue = false;

  /// Homotopy inequivalence of the two presentation complexes.
  bool distinct() const { return !residue; }
};

inline EulerLine euler_line(const Integer& r, const Integer& p) {
  Integer e = (p - 1) / 2;
  return {r, e, powmod(r, e, p)};
}

inline QrRecord metzler_distinct(const Integer& p, const Integer& q, const Integer& q2) {
  if (p < 3 || !is_prime(p)) throw ParameterViolation("p = " + to_string(p) + " is not an odd prime");
  if (mod(q, p) == 0) throw ParameterViolation("p divides q");
  if (mod(q2, p) == 0) throw ParameterViolation("p divides q'");
  QrRecord rec;
  rec.p = p;
  rec.q = q;
  rec.q2 = q2;
  rec.r = mod(q * modinv(q2, p), p);
  rec.r_inverse = mod(q2 * modinv(q, p), p);
  rec.euler = euler_line(rec.r, p);
  rec.euler_inverse = euler_line(rec.r_inverse, p);
  if (rec.euler.value != 1 && rec.euler.value != p - 1)
    throw ParameterViolation("Euler's criterion returned " + to_string(rec.euler.value) + "; p is not prime");
  rec.residue = rec.euler.value == 1;
  return rec;
}

/// Recomputes the record from its inputs and compares.
inline bool replay(const QrRecord& rec) {
  QrRecord again = metzler_distinct(rec.p, rec.q, rec.q2);
  return again.r == rec.r && again.r_inverse == rec.r_inverse && again.euler.value == rec.euler.value &&
         again.euler_inverse.value == rec.euler_inverse.value && again.residue == rec.residue;
}

inline void write_qr(Certificate& c, const QrRecord& rec) {
  c.set("qr.p", to_string(rec.p));
  c.set("qr.q", to_string(rec.q));
  c.set("qr.q2", to_string(rec.q2));
  c.set("qr.r", to_string(rec.r) + " = " + to_string(rec.q) + "*" + to_string(rec.q2) + "^-1 mod " + to_string(rec.p));
  c.set("qr.r_inverse",
        to_string(rec.r_inverse) + " = " + to_string(rec.q2) + "*" + to_string(rec.q) + "^-1 mod " + to_string(rec.p));
  c.set("qr.euler", to_string(rec.euler, rec.p));
  c.set("qr.euler_inverse", to_string(rec.euler_inverse, rec.p));
  c.set("qr.status", rec.residue ? "residue" : "non-residue");
}

inline QrRecord read_qr(const Certificate& c) {
  QrRecord rec = metzler_distinct(parse_integer(c.at("qr.p")), parse_integer(c.at("qr.q")),
                                  parse_integer(c.at("qr.q2")));
  Certificate check;
  write_qr(check, rec);
  for (const auto& [k, v] : check.fields)
    if (c.at(k) != v) throw InvalidArgument("certificate field " + k + " does not replay: expected '" + v + "'");
  return rec;
}

namespace citation {
inline constexpr const char* kBias = "Metzler 1976: the bias invariant separates X_Pq and X_Pq' when q/q' is a non-square mod p";
inline constexpr const char* kQ28 =
    "Mannan-Popiel 2019: the two Q28 presentation complexes are not homotopy equivalent";
inline constexpr const char* kStable =
    "Browning 1979, Hambleton-Kreck 1993: finite 2-complexes with isomorphic finite pi1 and equal Euler characteristic "
    "satisfy X v S2 ~s Y v S2";
}  // namespace citation

struct Q28Pair {
  Presentation first;
  Presentation second;
  Certificate certificate;
};

/// Two balanced presentations of the quaternion group of order 28.
inline Q28Pair q28_presentations() {
  Q28Pair out;
  out.first = parse_presentation("<x,y | x^7=y^2, yxy^-1=x^-1>");
  out.second = parse_presentation("<x,y | x^7=y^2, y^-1xyx^2=x^3y^-1x^2y>");
  out.first = Presentation(out.first.generators(), out.first.relators(), "q28");
  out.second = Presentation(out.second.generators(), out.second.relators(), "q28");
  if (deficiency(out.first) != deficiency(out.second)) throw InvalidArgument("Q28 deficiencies differ");
  Certificate& c = out.certificate;
  c.set("family", "q28");
  c.set("first", to_string(out.first));
  c.set("second", to_string(out.second));
  c.set("deficiency", std::to_string(deficiency(out.first)) + "," + std::to_string(deficiency(out.second)));
  c.set("abelianization", to_string(abelianization(out.first)) + "," + to_string(abelianization(out.second)));
  c.set("inequivalence", "cited");
  c.citations.push_back(citation::kQ28);
  return out;
}

/// Certificate that X_a v S2 and X_b v S2 are simple homotopy equivalent. The
/// caller asserts that the common fundamental group is finite and isomorphic;
/// the tool only checks the necessary conditions it can compute.
inline Certificate stable_equiv_certificate(const Presentation& a, const Presentation& b, bool finite_pi1_assertion) {
  if (!finite_pi1_assertion) throw Refusal("finiteness of pi1 is not asserted");
  if (euler_char(a) != euler_char(b))
    throw Refusal("Euler characteristics differ: " + std::to_string(euler_char(a)) + " vs " +
                  std::to_string(euler_char(b)));
  AbelianGroup ab_a = abelianization(a), ab_b = abelianization(b);
  if (ab_a != ab_b) throw Refusal("abelianizations differ: " + to_string(ab_a) + " vs " + to_string(ab_b));
  if (!ab_a.is_finite()) throw Refusal("abelianization is infinite, so pi1 is not finite");
  Certificate c;
  c.set("first", to_string(a));
  c.set("second", to_string(b));
  c.set("euler_char", std::to_string(euler_char(a)));
  c.set("abelianization", to_string(ab_a));
  c.set("finite_pi1", "asserted");
  c.set("conclusion", "X_first v S2 ~s X_second v S2");
  c.citations.push_back(citation::kStable);
  return c;
}

}  // namespace sumfactor::pres
