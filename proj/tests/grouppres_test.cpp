#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sumfactor/grouppres.hpp"

using namespace sumfactor;
using namespace sumfactor::pres;

namespace {

Word random_word(std::mt19937_64& rng, std::size_t generators, std::size_t max_length) {
  std::uniform_int_distribution<std::size_t> length(0, max_length), gen(0, generators - 1);
  std::uniform_int_distribution<int> exponent(-3, 3);
  Word w;
  for (std::size_t i = length(rng); i > 0; --i) {
    int e = exponent(rng);
    if (e) w = w * Word::letter(gen(rng), e);
  }
  return w;
}

Presentation random_presentation(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> gens(1, 3), rels(0, 4);
  const std::size_t s = gens(rng);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < s; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<Word> relators;
  for (std::size_t i = rels(rng); i > 0; --i) {
    Word w = random_word(rng, s, 6);
    if (!w.empty()) relators.push_back(w);
  }
  return Presentation(names, relators);
}

/// Abelianization from raw exponent sums and the determinantal-divisor oracle.
oracle::Cyclics oracle_abelian_torsion(const Presentation& p, std::size_t& free_rank) {
  oracle::Matrix m;
  for (const auto& r : p.relators()) {
    std::vector<oracle::Big> row(p.generator_count());
    for (const auto& l : r.letters()) row[l.generator] += l.exponent;
    m.push_back(row);
  }
  auto diagonal = oracle::determinantal_diagonal(m);
  oracle::Cyclics torsion;
  std::size_t nonzero = 0;
  for (const auto& d : diagonal)
    if (d != 0) {
      ++nonzero;
      if (d != 1) torsion.push_back(d.convert_to<std::uint64_t>());
    }
  free_rank = p.generator_count() - nonzero;
  return torsion;
}

}  // namespace

TEST(PresWord, FreeReductionAndInverse) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    Word a = random_word(rng, 3, 8), b = random_word(rng, 3, 8);
    EXPECT_TRUE((a * a.inverse()).empty());
    EXPECT_EQ((a * b).inverse(), b.inverse() * a.inverse());
    for (std::size_t i = 1; i < a.letters().size(); ++i)
      EXPECT_NE(a.letters()[i].generator, a.letters()[i - 1].generator);
    EXPECT_EQ(a.power(3), a * a * a);
  }
  EXPECT_EQ(commutator(Word::letter(0), Word::letter(1)).letters().size(), 4u);
}

TEST(PresParse, Examples) {
  auto q28 = parse_presentation("<x,y | x^7=y^2, yxy^-1=x^-1>");
  EXPECT_EQ(q28.generator_count(), 2u);
  ASSERT_EQ(q28.relators().size(), 2u);
  EXPECT_EQ(to_string(q28.relators()[0], q28.generators()), "x^7 y^-2");
  EXPECT_EQ(to_string(q28.relators()[1], q28.generators()), "y x y^-1 x");
  auto z = parse_presentation("<x | >");
  EXPECT_EQ(z.generator_count(), 1u);
  EXPECT_TRUE(z.relators().empty());
  EXPECT_EQ(abelianization(parse_presentation("<x,y | x y x^-1 y^-1>")), AbelianGroup::free(2));
  EXPECT_EQ(parse_presentation("<a,b | [a,b]>"), parse_presentation("<a,b | a b a^-1 b^-1>"));
  EXPECT_EQ(parse_presentation("<a,b | (ab)^2>"), parse_presentation("<a,b | a b a b>"));
}

TEST(PresParse, Errors) {
  EXPECT_THROW(parse_presentation("<x | y>"), UnknownGenerator);
  EXPECT_THROW(parse_presentation("<x | x^>"), SyntaxError);
  EXPECT_THROW(parse_presentation("x | x"), SyntaxError);
  try {
    parse_presentation("<x | x^>");
  } catch (const SyntaxError& e) {
    EXPECT_NE(std::string(e.what()).find("position"), std::string::npos);
  }
}

TEST(PresParse, PrintRoundTrip) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    Presentation p = random_presentation(rng);
    EXPECT_EQ(parse_presentation(to_string(p)), p) << to_string(p);
  }
  auto pair = q28_presentations();
  for (const auto& p : {pair.first, pair.second, metzler_presentation(5, 3, 1), metzler_presentation(13, 5, 2)})
    EXPECT_EQ(parse_presentation(to_string(p)), p);
}

TEST(PresInvariants, Examples) {
  auto q28 = q28_presentations();
  EXPECT_EQ(deficiency(q28.first), 0);
  EXPECT_EQ(euler_char(q28.first), 1);
  EXPECT_EQ(deficiency(q28.second), 0);
  EXPECT_EQ(abelianization(q28.first), AbelianGroup::cyclic(4));
  EXPECT_EQ(abelianization(q28.second), AbelianGroup::cyclic(4));
  auto m = metzler_presentation(5, 3, 1);
  EXPECT_EQ(deficiency(m), -3);
  EXPECT_EQ(abelianization(m), parse_group("Z/5+Z/5+Z/5"));
  auto free = parse_presentation("<x|>");
  EXPECT_EQ(deficiency(free), 1);
  EXPECT_EQ(euler_char(free), 0);
  EXPECT_EQ(abelianization(parse_presentation("<x,y|>")), AbelianGroup::free(2));
}

TEST(PresInvariants, AbelianizationMatchesOracle) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 300; ++trial) {
    Presentation p = random_presentation(rng);
    std::size_t free_rank = 0;
    auto torsion = oracle_abelian_torsion(p, free_rank);
    AbelianGroup got = abelianization(p);
    EXPECT_EQ(got.free_rank(), free_rank) << to_string(p);
    oracle::Cyclics got_torsion;
    for (const auto& d : got.invariant_factors()) got_torsion.push_back(d.convert_to<std::uint64_t>());
    EXPECT_TRUE(oracle::isomorphic(got_torsion, torsion)) << to_string(p);
  }
}

TEST(PresMetzler, Shape) {
  auto m = metzler_presentation(5, 3, 2);
  EXPECT_EQ(m.generator_count(), 3u);
  ASSERT_EQ(m.relators().size(), 6u);
  EXPECT_EQ(m.relators()[3], commutator(Word::letter(0, 2), Word::letter(1)));
  EXPECT_EQ(m.relators()[0], Word::letter(0, 5));
  for (std::size_t s : {3u, 5u, 7u})
    for (long long q : {1, 2, 3, 4}) {
      auto p = metzler_presentation(13, s, q);
      EXPECT_EQ(deficiency(p), -static_cast<long long>(s * (s - 1) / 2));
      EXPECT_EQ(euler_char(p), euler_char(metzler_presentation(13, s, 1)));
    }
  EXPECT_THROW(metzler_presentation(7, 3, 1), ParameterViolation);
  EXPECT_THROW(metzler_presentation(5, 4, 1), ParameterViolation);
  EXPECT_THROW(metzler_presentation(5, 3, 10), ParameterViolation);
  EXPECT_THROW(metzler_presentation(9, 3, 1), ParameterViolation);
}

TEST(PresMetzler, DistinctExamples) {
  auto rec = metzler_distinct(5, 1, 2);
  EXPECT_TRUE(rec.distinct());
  EXPECT_EQ(rec.r, 3);
  EXPECT_EQ(rec.r_inverse, 2);
  EXPECT_EQ(to_string(rec.euler_inverse, rec.p), "2^2 ≡ 4 ≡ -1 mod 5");
  EXPECT_FALSE(metzler_distinct(5, 1, 4).distinct());
  EXPECT_FALSE(metzler_distinct(5, 2, 3).distinct());
  EXPECT_THROW(metzler_distinct(5, 5, 1), ParameterViolation);
}

TEST(PresMetzler, SymmetricTwoClassesAgainstBruteForceSquares) {
  for (long long p = 3; p <= 97; ++p) {
    if (!oracle::is_square_mod(1, p) || !is_prime(Integer(p))) continue;
    std::set<bool> classes;
    for (long long q = 1; q < p; ++q)
      for (long long q2 = 1; q2 < p; ++q2) {
        auto rec = metzler_distinct(p, q, q2);
        EXPECT_EQ(rec.distinct(), metzler_distinct(p, q2, q).distinct());
        // q ~ q2 iff q * q2 is a square, since q2^-1 and q2 share a square class.
        EXPECT_EQ(rec.distinct(), !oracle::is_square_mod(static_cast<std::uint64_t>(q * q2 % p), p));
        EXPECT_TRUE(replay(rec));
        if (q == 1) classes.insert(rec.distinct());
      }
    EXPECT_EQ(classes.size(), 2u) << p;
  }
}

TEST(PresMetzler, CertificateRoundTrip) {
  Certificate c;
  write_qr(c, metzler_distinct(5, 1, 2));
  EXPECT_EQ(c.at("qr.euler"), "3^2 ≡ 4 ≡ -1 mod 5");
  auto back = read_qr(parse_certificate(serialize(c)));
  EXPECT_EQ(back.r, 3);
  c.set("qr.r", "4 = 1*2^-1 mod 5");
  EXPECT_THROW(read_qr(c), InvalidArgument);
}

TEST(PresStable, Certificates) {
  auto a = metzler_presentation(5, 3, 1), b = metzler_presentation(5, 3, 2);
  auto c = stable_equiv_certificate(a, b, true);
  EXPECT_EQ(c.at("euler_char"), "4");
  ASSERT_EQ(c.citations.size(), 1u);
  auto q28 = q28_presentations();
  EXPECT_NO_THROW(stable_equiv_certificate(q28.first, q28.second, true));
  EXPECT_EQ(q28.certificate.at("deficiency"), "0,0");
  EXPECT_EQ(q28.certificate.at("abelianization"), "Z/4,Z/4");
  EXPECT_THROW(stable_equiv_certificate(a, q28.first, true), Refusal);
  EXPECT_THROW(stable_equiv_certificate(a, b, false), Refusal);
}
