#include <gtest/gtest.h>

#include "sumfactor/wallhc.hpp"

using namespace sumfactor;
using namespace sumfactor::wallhc;

namespace {

std::vector<HcClass> classes(unsigned r, std::size_t max_g) {
  std::vector<HcClass> out;
  for (std::size_t g = 0; g <= max_g; ++g)
    for (unsigned arf : {0u, 1u})
      for (unsigned type : {0u, 1u}) {
        if (g == 0 && (arf || !type)) continue;
        auto a = HcClass::has_arf(r) ? std::optional<unsigned>(arf) : std::nullopt;
        auto t = HcClass::has_type(r) ? std::optional<unsigned>(type) : std::nullopt;
        auto s = HcClass::has_signature(r) ? std::optional<long long>(0) : std::nullopt;
        if ((!a && arf) || (!t && !type)) continue;
        out.push_back(HcClass::make(r, g, a, t, s));
      }
  return out;
}

}  // namespace

TEST(HcConsum, Examples) {
  auto sum = consum_hc(HcClass::make(3, 1, 0u), HcClass::make(3, 2, 1u));
  EXPECT_EQ(sum, HcClass::make(3, 3, 1u));
  auto mixed = consum_hc(HcClass::make(1, 1, 0u, 0u), HcClass::make(1, 1, 0u, 1u));
  EXPECT_EQ(mixed, HcClass::make(1, 2, 0u, 0u));
  for (unsigned r = 0; r < 8; ++r)
    for (const auto& x : classes(r, 3)) EXPECT_EQ(consum_hc(HcClass::neutral(r), x), x);
  EXPECT_THROW(consum_hc(HcClass::neutral(1), HcClass::neutral(3)), ResidueMismatch);
}

TEST(HcConsum, MonoidLawsExhaustive) {
  for (unsigned r = 0; r < 8; ++r) {
    auto all = classes(r, 10);
    for (const auto& a : all)
      for (const auto& b : all) {
        EXPECT_EQ(consum_hc(a, b), consum_hc(b, a));
        if (a.half_rank() + b.half_rank() > 10) continue;
        for (const auto& c : all) EXPECT_EQ(consum_hc(consum_hc(a, b), c), consum_hc(a, consum_hc(b, c)));
      }
  }
}

TEST(HcConsum, OddResiduesAreComponentwiseAddition) {
  for (unsigned r : {3u, 5u, 7u}) {
    auto all = classes(r, 10);
    for (const auto& a : all)
      for (const auto& b : all) {
        auto s = consum_hc(a, b);
        EXPECT_EQ(s.half_rank(), a.half_rank() + b.half_rank());
        EXPECT_EQ(*s.arf(), (*a.arf() + *b.arf()) % 2);
        // (half_rank, arf) determines the class, so cancellation holds.
        for (const auto& c : all)
          if (consum_hc(a, c) == s) { EXPECT_EQ(c, b); }
      }
  }
}

TEST(HcConsum, TypeIsNotAdditive) {
  auto w0 = HcClass::make(1, 1, 0u, 0u);
  // Additive mod 2 would give 0 + 0 = 0 and 0 + 1 = 1; the AND rule gives 0 both times.
  EXPECT_EQ(*consum_hc(w0, w0).type_bit(), 0u);
  EXPECT_EQ(*consum_hc(w0, HcClass::make(1, 1, 0u, 1u)).type_bit(), 0u);
}

TEST(HcMake, FieldPresence) {
  EXPECT_THROW(HcClass::make(1, 1, 0u), InvalidArgument);
  EXPECT_THROW(HcClass::make(3, 1, 0u, 1u), InvalidArgument);
  EXPECT_THROW(HcClass::make(1, 0, 0u, 0u), InvalidArgument);
  EXPECT_THROW(HcClass::make(0, 1, std::nullopt, std::nullopt, 4), InvalidArgument);
  EXPECT_THROW(HcClass::make(0, 1, std::nullopt, std::nullopt, 8), InvalidArgument);
  EXPECT_TRUE(HcClass::make(0, 4, std::nullopt, std::nullopt, 8).is_definite());
}

TEST(HcLiterals, RoundTrip) {
  for (unsigned r = 0; r < 8; ++r)
    for (const auto& x : classes(r, 3)) EXPECT_EQ(parse_hc(to_string(x)), x);
  EXPECT_EQ(to_string(HcClass::make(1, 1, 0u, 0u)), "HC(k=1 mod 8, g=1, arf=0, type=0)");
  EXPECT_THROW(parse_hc("HC(g=1)"), SyntaxError);
}

TEST(HcCase, Examples) {
  EXPECT_EQ(ufm_case(5).diff.status, Status::ufm);
  EXPECT_EQ(ufm_case(15).diff.status, Status::not_ufm);
  EXPECT_EQ(ufm_case(15).diff.obstruction, Obstruction::kervaire_invariant);
  EXPECT_EQ(ufm_case(9).diff.status, Status::not_ufm);
  EXPECT_EQ(ufm_case(9).diff.obstruction, Obstruction::type_bit);
  EXPECT_EQ(ufm_case(63).diff.status, Status::open);
  EXPECT_EQ(ufm_case(7).pl.status, Status::open);
  EXPECT_EQ(ufm_case(4).diff.obstruction, Obstruction::definite_form);
  EXPECT_EQ(ufm_case(2).diff.obstruction, Obstruction::cp2_relation);
  EXPECT_THROW(ufm_case(0), InvalidArgument);
}

TEST(HcCase, CancellationOnlyForOneAndOddFree) {
  for (unsigned k = 1; k <= 200; ++k) {
    const unsigned r = k % 8;
    EXPECT_EQ(ufm_case(k).diff_cancellation, k == 1 || r == 3 || r == 5 || r == 7) << k;
    if (k % 2 == 0) { EXPECT_EQ(ufm_case(k).diff.status, Status::not_ufm) << k; }
    if (k > 3 && k % 2 == 1) { EXPECT_NE(ufm_case(k).pl.status, Status::ufm) << k; }
  }
}

TEST(HcTypeWitness, Examples) {
  auto w = type_noncancellation_witness(1, 0);
  EXPECT_TRUE(w.holds());
  EXPECT_EQ(w.mixed, consum_hc(w.w0, w.w1));
  EXPECT_TRUE(type_noncancellation_witness(2, 1).holds());
  EXPECT_THROW(type_noncancellation_witness(0, 0), ParameterViolation);
  for (std::size_t g = 1; g <= 10; ++g)
    for (unsigned arf : {0u, 1u}) EXPECT_TRUE(type_noncancellation_witness(g, arf).holds());
}
