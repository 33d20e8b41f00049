#include <gtest/gtest.h>

#include "oracles.hpp"

namespace kgraph {
namespace {

std::vector<std::pair<std::uint32_t, std::uint32_t>> small_fields() {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t p = 2; p <= 49; ++p) {
    if (!is_prime(p))
      continue;
    for (std::uint32_t k = 1, q = p; q <= 49; ++k, q *= p)
      out.emplace_back(p, k);
  }
  return out;
}

TEST(Gf, PrimalityAndIrreducibility) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(65521));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_TRUE(is_irreducible({1, 1, 1}, 2));  // x^2 + x + 1
  EXPECT_FALSE(is_irreducible({1, 0, 1}, 2)); // (x + 1)^2
  EXPECT_EQ(irreducible_polynomials(2, 2).size(), 1U);
  EXPECT_EQ(irreducible_polynomials(2, 3).size(), 2U);
  EXPECT_EQ(irreducible_polynomials(3, 2).size(), 3U);
  EXPECT_EQ(irreducible_polynomials(2, 4).size(), 3U);
  EXPECT_EQ(irreducible_polynomials(5, 2).size(), 10U);
}

TEST(Gf, ConstructionErrors) {
  EXPECT_THROW((void)make_field(4), NotPrime);
  EXPECT_THROW((void)make_field(2, 17), FieldTooLarge);
  EXPECT_THROW((void)make_field(257, 2), FieldTooLarge);
  EXPECT_THROW((void)Field::make(2, std::vector<std::uint32_t>{1, 0, 1}),
               NotIrreducible);
  EXPECT_NO_THROW((void)make_field(2, 16));
  EXPECT_NO_THROW((void)make_field(65521));
}

TEST(Gf, DefaultModulusIsSmallestIrreducible) {
  EXPECT_EQ(make_field(2, 2).modulus(), (std::vector<std::uint32_t>{1, 1, 1}));
  EXPECT_EQ(make_field(2, 3).modulus(),
            (std::vector<std::uint32_t>{1, 0, 1, 1}));
  EXPECT_EQ(make_field(7).q(), 7U);
}

TEST(Gf, Gf4Tables) {
  const Field f = make_field(2, 2);
  // Elements 0, 1, x, x + 1 encoded base p: 0, 1, 2, 3.
  EXPECT_EQ(f.add(2, 3), 1U);
  EXPECT_EQ(f.mul(2, 2), 3U); // x^2 = x + 1
  EXPECT_EQ(f.mul(2, 3), 1U);
  EXPECT_EQ(f.inv(2), 3U);
  EXPECT_THROW((void)f.inv(0), DivisionByZero);
}

TEST(Gf, FieldAxiomsExhaustiveUpTo49) {
  for (const auto &[p, k] : small_fields()) {
    const Field f = make_field(p, k);
    const auto els = f.elements();
    ASSERT_EQ(els.size(), f.q());
    for (Element a : els) {
      EXPECT_EQ(f.add(a, 0), a);
      EXPECT_EQ(f.mul(a, 1), a);
      EXPECT_EQ(f.add(a, f.neg(a)), 0U);
      if (a != 0) {
        EXPECT_EQ(f.mul(a, f.inv(a)), 1U);
      }
      EXPECT_EQ(f.pow(a, f.q()), a) << "Frobenius in GF(" << f.q() << ")";
      for (Element b : els) {
        EXPECT_EQ(f.add(a, b), f.slow_add(a, b));
        EXPECT_EQ(f.mul(a, b), f.slow_mul(a, b));
        EXPECT_EQ(f.add(a, b), f.add(b, a));
        EXPECT_EQ(f.mul(a, b), f.mul(b, a));
        EXPECT_EQ(f.sub(f.add(a, b), b), a);
        if (b != 0) {
          EXPECT_EQ(f.mul(f.div(a, b), b), a);
        }
        for (Element c : els) {
          if (f.q() > 27 && (a + b + c) % 5 != 0)
            continue; // a fifth of the triples for the larger fields
          EXPECT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
          EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
          EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST(Gf, GeneratorHasFullOrder) {
  for (const auto &[p, k] : small_fields()) {
    const Field f = make_field(p, k);
    const Element g = f.generator();
    Element x = 1;
    for (std::uint32_t i = 1; i < f.q() - 1; ++i) {
      x = f.mul(x, g);
      EXPECT_NE(x, 1U) << "GF(" << f.q() << ") order " << i;
    }
    EXPECT_EQ(f.mul(x, g), 1U);
  }
}

TEST(Gf, LargestSupportedFieldsAgreeWithSchoolbook) {
  for (auto [p, k] : {std::pair<std::uint32_t, std::uint32_t>{2, 16},
                      {3, 10},
                      {251, 2},
                      {65521, 1}}) {
    const Field f = make_field(p, k);
    std::uint64_t seed = 12345;
    for (int i = 0; i < 2000; ++i) {
      seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
      const auto a = static_cast<Element>((seed >> 20U) % f.q());
      const auto b = static_cast<Element>((seed >> 40U) % f.q());
      EXPECT_EQ(f.add(a, b), f.slow_add(a, b));
      EXPECT_EQ(f.mul(a, b), f.slow_mul(a, b));
    }
  }
}

TEST(Gf, FieldElementWrapper) {
  const Field f = make_field(3, 2);
  const FieldElement a(f, 4), b(f, 7);
  EXPECT_EQ((a * b).value(), f.mul(4, 7));
  EXPECT_EQ((a + b).value(), f.add(4, 7));
  EXPECT_EQ((a * a.inv()).value(), 1U);
}

} // namespace
} // namespace kgraph
