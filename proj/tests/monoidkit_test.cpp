#include <gtest/gtest.h>

#include "sumfactor/monoid_specs.hpp"
#include "sumfactor/monoidkit.hpp"

using namespace sumfactor;
using namespace sumfactor::monoid;
using sumfactor::wallhc::HcClass;

namespace {

bool trial_division_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

template <MonoidSpec M>
void check_laws(const M& m, std::size_t bound) {
  const auto pool = m.enumerate(bound);
  for (const auto& a : pool) {
    EXPECT_EQ(m.compose(a, m.neutral()), a) << m.format(a);
    for (const auto& b : pool) {
      EXPECT_EQ(m.compose(a, b), m.compose(b, a));
      for (const auto& c : pool) EXPECT_EQ(m.compose(m.compose(a, b), c), m.compose(a, m.compose(b, c)));
    }
  }
}

/// Every "no" verdict carries a witness that re-composes to the violating equality.
template <MonoidSpec M>
void check_witness_replay(const M& m, std::size_t bound) {
  for (const auto& x : m.enumerate(bound)) {
    auto cancel = is_cancellable(m, x, bound);
    if (cancel.answer == Answer::no) {
      ASSERT_EQ(cancel.witness.size(), 2u);
      EXPECT_NE(cancel.witness[0], cancel.witness[1]);
      EXPECT_EQ(m.compose(x, cancel.witness[0]), m.compose(x, cancel.witness[1]));
    }
    auto irreducible = is_irreducible(m, x, bound);
    if (irreducible.answer == Answer::no) {
      ASSERT_EQ(irreducible.witness.size(), 2u);
      const auto product = m.compose(irreducible.witness[0], irreducible.witness[1]);
      EXPECT_TRUE(product == x || product == m.neutral()) << m.format(x);
    }
    if (is_unit(m, x, bound).answer == Answer::yes) continue;
    auto prime = is_prime(m, x, bound);
    if (prime.answer == Answer::no) {
      ASSERT_EQ(prime.witness.size(), 3u);
      const auto &a = prime.witness[0], &b = prime.witness[1], &cofactor = prime.witness[2];
      EXPECT_EQ(m.compose(x, cofactor), m.compose(a, b));
      EXPECT_NE(divides(m, x, a, bound).answer, Answer::yes);
      EXPECT_NE(divides(m, x, b, bound).answer, Answer::yes);
    }
    if (prime.answer == Answer::yes && cancel.answer == Answer::yes) {
      EXPECT_EQ(irreducible.answer, Answer::yes) << m.format(x);
    }
  }
  auto ufm = ufm_check(m, bound);
  if (ufm.answer == Answer::no) {
    ASSERT_EQ(ufm.factorizations.size(), 2u);
    EXPECT_NE(ufm.factorizations[0], ufm.factorizations[1]);
    for (const auto& f : ufm.factorizations) {
      auto product = m.neutral();
      for (const auto& p : f) product = m.compose(product, p);
      EXPECT_EQ(product, ufm.witness.front());
    }
  }
}

/// With unique factorization, ab = ac forces b and c to be associated.
template <MonoidSpec M>
void check_ufm_cancels_on_classes(const M& m, std::size_t bound) {
  if (ufm_check(m, bound).answer != Answer::yes) return;
  const auto pool = m.enumerate(bound);
  for (const auto& a : pool)
    for (const auto& b : pool)
      for (const auto& c : pool)
        if (m.compose(a, b) == m.compose(a, c)) { EXPECT_EQ(are_associated(m, b, c, bound).answer, Answer::yes); }
}

}  // namespace

TEST(MonoidUnit, Examples) {
  NaturalsAdditive nat;
  EXPECT_EQ(is_unit(nat, 0, 10).answer, Answer::yes);
  auto one = is_unit(nat, 1, 10);
  EXPECT_EQ(one.answer, Answer::no);
  EXPECT_TRUE(one.exact);
  SignQuotient sq;
  auto minus = is_unit(sq, -1, 10);
  EXPECT_EQ(minus.answer, Answer::yes);
  EXPECT_EQ(minus.witness, std::vector<SignQuotient::element_type>{-1});
  EXPECT_THROW(is_unit(nat, 11, 10), OutOfBound);
}

TEST(MonoidAssociated, Examples) {
  NaturalsAdditive nat;
  SignQuotient sq;
  EXPECT_EQ(are_associated(nat, 4, 4, 10).answer, Answer::yes);
  EXPECT_EQ(are_associated(sq, 2, 3, 10).answer, Answer::no);
  EXPECT_EQ(are_associated(sq, 2, 2, 10).answer, Answer::yes);
  EXPECT_EQ(are_associated(sq, sq.parse("-2"), 2, 10).answer, Answer::yes);
  EXPECT_EQ(are_associated(nat, 2, 3, 10).answer, Answer::no);
}

TEST(MonoidDivides, Examples) {
  NaturalsAdditive nat;
  NaturalsMultiplicative mul;
  SignQuotient sq;
  auto v = divides(nat, 2, 5, 10);
  EXPECT_EQ(v.answer, Answer::yes);
  EXPECT_EQ(v.witness, std::vector<NaturalsAdditive::element_type>{3});
  EXPECT_EQ(divides(mul, 2, 5, 10).answer, Answer::no);
  EXPECT_EQ(divides(sq, 2, 6, 10).answer, Answer::yes);
}

TEST(MonoidIrreducible, Examples) {
  NaturalsAdditive nat;
  EXPECT_EQ(is_irreducible(nat, 1, 10).answer, Answer::yes);
  auto two = is_irreducible(nat, 2, 10);
  EXPECT_EQ(two.answer, Answer::no);
  EXPECT_EQ(two.witness, (std::vector<NaturalsAdditive::element_type>{1, 1}));
  BardenMonoid barden;
  auto wu = is_irreducible(barden, barden::Manifold5::wu(), 4);
  EXPECT_EQ(wu.answer, Answer::yes);
  EXPECT_TRUE(wu.exact);
}

TEST(MonoidIrreducible, MultiplicativeAgreesWithTrialDivision) {
  NaturalsMultiplicative mul;
  SignQuotient sq;
  for (long long n = 2; n <= 60; ++n) {
    EXPECT_EQ(is_irreducible(mul, n, 60).answer == Answer::yes, trial_division_prime(n)) << n;
    EXPECT_EQ(is_irreducible(sq, n, 60).answer == Answer::yes, trial_division_prime(n)) << n;
    EXPECT_EQ(is_prime(mul, n, 60).answer == Answer::yes, trial_division_prime(n)) << n;
  }
}

TEST(MonoidPrime, Examples) {
  NaturalsAdditive nat;
  EXPECT_EQ(is_prime(nat, 1, 20).answer, Answer::yes);
  BardenMonoid barden;
  EXPECT_EQ(is_prime(barden, barden::Manifold5::wu(), 4).answer, Answer::yes);
  HcMonoid even(0);
  auto v = is_prime(even, even.parse("HC(k=0 mod 8, g=1, sig=0)"), 8);
  EXPECT_EQ(v.answer, Answer::no);
  ASSERT_EQ(v.witness.size(), 3u);
  // M # -M for a definite M.
  EXPECT_TRUE(v.witness[0].is_definite());
  EXPECT_EQ(*v.witness[0].signature(), -*v.witness[1].signature());
  EXPECT_THROW(is_prime(nat, 0, 20), InvalidArgument);
}

TEST(MonoidCancellable, Examples) {
  NaturalsAdditive nat;
  for (NaturalsAdditive::element_type a = 0; a <= 10; ++a) EXPECT_EQ(is_cancellable(nat, a, 10).answer, Answer::yes);
  SignQuotient sq;
  auto v = is_cancellable(sq, 2, 10);
  EXPECT_EQ(v.answer, Answer::no);
  EXPECT_EQ(v.witness, (std::vector<SignQuotient::element_type>{1, -1}));
  WitnessMonoid cone("cone");
  auto s = is_cancellable(cone, cone.parse("S"), 4);
  EXPECT_EQ(s.answer, Answer::no);
  EXPECT_EQ(format_verdict(cone, s), "answer=no bound=4 witness=(A,B) scope=exact");
}

TEST(MonoidUfm, Examples) {
  EXPECT_EQ(ufm_check(NaturalsAdditive{}, 20).answer, Answer::yes);
  EXPECT_EQ(ufm_check(SignQuotient{}, 30).answer, Answer::yes);
  HcMonoid one(1);
  auto v = ufm_check(one, 3);
  EXPECT_EQ(v.answer, Answer::no);
  EXPECT_EQ(format_verdict(one, v).substr(0, 20), "answer=no bound=3 wi");
  const auto w0 = one.parse("HC(k=1 mod 8, g=1, arf=0, type=0)");
  const auto w1 = one.parse("HC(k=1 mod 8, g=1, arf=0, type=1)");
  EXPECT_EQ(v.witness.front(), one.compose(w0, w0));
  EXPECT_EQ(one.compose(w0, w1), one.compose(w0, w0));
}

// With both Arf values present, M # M = (S^k x S^k) # (S^k x S^k) for Arf-one M:
// every element cancels, yet factorization is not unique.
TEST(MonoidUfm, OddResiduesCancelButArfOneBreaksUniqueness) {
  for (unsigned r : {3u, 5u, 7u}) {
    HcMonoid hc(r);
    for (const auto& x : hc.enumerate(3)) EXPECT_EQ(is_cancellable(hc, x, 6).answer, Answer::yes);
    auto v = ufm_check(hc, 4);
    ASSERT_EQ(v.answer, Answer::no) << r;
    const auto one = HcClass::make(r, 1, 1u), plain = HcClass::make(r, 1, 0u);
    EXPECT_EQ(v.witness.front(), hc.compose(one, one));
    EXPECT_EQ(hc.compose(one, one), hc.compose(plain, plain));
  }
}

TEST(MonoidVerdict, Format) {
  NaturalsAdditive nat;
  EXPECT_EQ(format_verdict(nat, is_unit(nat, 0, 5)), "answer=yes bound=5 witness=(0) scope=exact");
  EXPECT_EQ(format_verdict(nat, is_prime(nat, 1, 5)), "answer=yes bound=5 witness=- scope=bounded");
}

TEST(MonoidLaws, BuiltInSpecs) {
  check_laws(NaturalsAdditive{}, 30);
  check_laws(NaturalsMultiplicative{}, 30);
  check_laws(SignQuotient{}, 30);
  for (unsigned r = 0; r < 8; ++r) check_laws(HcMonoid(r), 3);
  check_laws(BardenMonoid{}, 4);
  check_laws(WitnessMonoid("cone"), 5);
}

TEST(MonoidProperties, WitnessReplayAndPrimeCancellableIrreducible) {
  check_witness_replay(NaturalsAdditive{}, 12);
  check_witness_replay(NaturalsMultiplicative{}, 30);
  check_witness_replay(SignQuotient{}, 30);
  for (unsigned r = 0; r < 8; ++r) check_witness_replay(HcMonoid(r), 3);
  check_witness_replay(BardenMonoid{}, 4);
  check_witness_replay(WitnessMonoid("cone"), 4);
}

TEST(MonoidProperties, UniqueFactorizationCancelsOnAssociateClasses) {
  check_ufm_cancels_on_classes(NaturalsAdditive{}, 12);
  check_ufm_cancels_on_classes(SignQuotient{}, 30);
  check_ufm_cancels_on_classes(HcMonoid(3), 3);
}

TEST(MonoidSpecs, LiteralRoundTrip) {
  WitnessMonoid cone("cone");
  for (const auto& e : cone.enumerate(4)) EXPECT_EQ(cone.parse(cone.format(e)), e);
  for (unsigned r = 0; r < 8; ++r) {
    HcMonoid hc(r);
    for (const auto& e : hc.enumerate(3)) EXPECT_EQ(hc.parse(hc.format(e)), e);
  }
  BardenMonoid barden;
  for (const auto& e : barden.enumerate(4)) EXPECT_EQ(barden.parse(barden.format(e)), e);
  EXPECT_THROW(HcMonoid(1).parse("HC(k=3 mod 8, g=1, arf=0)"), ResidueMismatch);
  EXPECT_EQ(SignQuotient{}.parse("-7"), 7);
}
