#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "oracles.hpp"

namespace kgraph {
namespace {

std::vector<DataPoint> tetrahedron_counts(std::int64_t kappa,
                                          std::vector<std::uint32_t> qs = {
                                              2, 3, 4, 5, 7, 11}) {
  std::vector<Field> fields;
  for (auto q : qs) {
    std::uint32_t p = 2;
    while (q % p != 0)
      ++p;
    std::uint32_t k = 0;
    for (std::uint32_t r = q; r > 1; r /= p)
      ++k;
    fields.push_back(make_field(p, k));
  }
  std::vector<DataPoint> out;
  for (const auto &r :
       count_series(kappa_polynomial(oracle::tetrahedron()), fields, kappa))
    out.push_back({r.q, r.count});
  return out;
}

std::vector<Rational> published_fit(const std::string &kappa) {
  std::ifstream in(std::string(KGRAPH_DATA_DIR) + "/fixtures/tetrahedron.json");
  const auto fx = nlohmann::json::parse(in);
  std::vector<Rational> out;
  for (const auto &s : fx["fits"][kappa]["coefficients"]) {
    const auto text = s.get<std::string>();
    const auto slash = text.find('/');
    out.push_back(slash == std::string::npos
                      ? Rational(Integer(text))
                      : Rational(Integer(text.substr(0, slash)),
                                 Integer(text.substr(slash + 1))));
  }
  while (out.size() > 1 && out.back() == 0)
    out.pop_back();
  return out;
}

TEST(Interpolate, Square) {
  const auto fit = interpolate({{1, 1}, {2, 4}, {3, 9}});
  EXPECT_EQ(fit.degree, 2U);
  EXPECT_EQ(fit.coefficients, (std::vector<Rational>{0, 0, 1}));
  EXPECT_TRUE(fit.is_integral);
  EXPECT_TRUE(check_integrality(fit).polynomially_countable_consistent);
}

TEST(Interpolate, Errors) {
  EXPECT_THROW((void)interpolate({{1, 1}, {1, 2}}), DuplicateAbscissa);
  EXPECT_THROW((void)interpolate({{1, 1}}), TooFewPoints);
}

TEST(Interpolate, ClassicalTetrahedronGivesTheClass) {
  const auto fit = interpolate(tetrahedron_counts(0));
  EXPECT_EQ(fit.degree, 5U);
  EXPECT_EQ(fit.coefficients, (std::vector<Rational>{0, 0, -1, 1, 0, 1}));
  EXPECT_EQ(fit.coefficients, published_fit("0"));
  const auto v = check_integrality(fit);
  EXPECT_TRUE(v.polynomially_countable_consistent);
  EXPECT_EQ(verdict_label(v),
            "consistent with polynomial countability (on tested range)");
}

TEST(Interpolate, KappaOneTetrahedronReproducesPublishedQuintic) {
  const auto fit = interpolate(tetrahedron_counts(1));
  EXPECT_EQ(fit.coefficients, published_fit("1"));
  EXPECT_EQ(fit.coefficients[5], Rational(-379511, 60480));
  EXPECT_EQ(fit.coefficients[0], Rational(1188935, 72));
  const auto v = check_integrality(fit);
  EXPECT_FALSE(v.polynomially_countable_consistent);
  EXPECT_EQ(verdict_label(v), "NOT polynomially countable (on tested range)");
  EXPECT_NE(v.reason.find("q^0"), std::string::npos) << v.reason;
  bool witnessed = false;
  for (const auto &c : v.witness.coefficients)
    witnessed = witnessed || boost::multiprecision::denominator(c) != 1;
  EXPECT_TRUE(witnessed);
}

TEST(Interpolate, ExactOnItsOwnInputsAndPermutationInvariant) {
  std::mt19937_64 rng(31);
  for (int r = 0; r < 150; ++r) {
    const std::size_t m = 2 + rng() % 7;
    std::vector<DataPoint> pts;
    std::set<std::int64_t> used;
    while (pts.size() < m) {
      const auto q = static_cast<std::int64_t>(rng() % 60) - 10;
      if (!used.insert(q).second)
        continue;
      pts.push_back({q, Integer(static_cast<std::int64_t>(rng() % 2000001) -
                                1000000)});
    }
    const auto fit = interpolate(pts);
    EXPECT_EQ(fit.coefficients.size(), fit.degree + 1);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      EXPECT_EQ(fit.residuals[i], 0);
      EXPECT_EQ(evaluate(fit, Rational(pts[i].q)), Rational(pts[i].count));
    }
    auto shuffled = pts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(interpolate(shuffled).coefficients, fit.coefficients);
    // least squares at full degree is the interpolant
    if (r % 10 == 0) {
      auto ls = least_squares(pts, m - 1);
      EXPECT_EQ(ls.coefficients, fit.coefficients);
    }
  }
}

TEST(Interpolate, IntegerPolynomialsAreRecognised) {
  std::mt19937_64 rng(32);
  for (int r = 0; r < 150; ++r) {
    const std::size_t deg = rng() % 6;
    std::vector<Rational> poly;
    for (std::size_t i = 0; i <= deg; ++i)
      poly.emplace_back(static_cast<std::int64_t>(rng() % 41) - 20);
    std::vector<DataPoint> pts;
    const std::size_t m = std::max<std::size_t>(2, deg + 1 + rng() % 3);
    for (std::size_t i = 0; i < m; ++i) {
      const Integer q = 2 + 3 * static_cast<std::int64_t>(i);
      pts.push_back({q, boost::multiprecision::numerator(evaluate(poly, Rational(q)))});
    }
    const auto fit = interpolate(pts);
    EXPECT_TRUE(fit.is_integral);
    while (poly.size() > 1 && poly.back() == 0)
      poly.pop_back();
    EXPECT_EQ(fit.coefficients, poly);
    EXPECT_TRUE(check_integrality(fit).polynomially_countable_consistent);
  }
}

TEST(LeastSquares, LineThroughNoisyPoints) {
  // y = x with the last point lifted by 3.
  const auto fit = least_squares({{0, 0}, {1, 1}, {2, 2}, {3, 6}}, 1);
  EXPECT_EQ(fit.degree, 1U);
  EXPECT_EQ(fit.coefficients, (std::vector<Rational>{Rational(-3, 5), Rational(19, 10)}));
  Rational sum = 0;
  for (const auto &r : fit.residuals)
    sum += r;
  EXPECT_EQ(sum, 0); // residuals of a fit with a constant term sum to zero
}

TEST(CrossValidate, ClassicalHoldoutIsExact) {
  const auto pts = tetrahedron_counts(0, {2, 3, 4, 5, 7, 8, 9, 11});
  const auto cv = cross_validate(pts, {Integer(11)});
  ASSERT_EQ(cv.holdouts.size(), 1U);
  EXPECT_TRUE(cv.all_zero);
  EXPECT_EQ(cv.holdouts[0].residual, 0);
}

TEST(CrossValidate, KappaOneHoldoutMisses) {
  const auto pts = tetrahedron_counts(1, {2, 3, 4, 5, 7, 8, 11});
  const auto cv = cross_validate(pts, {Integer(11)});
  ASSERT_EQ(cv.holdouts.size(), 1U);
  EXPECT_FALSE(cv.all_zero);
  EXPECT_NE(cv.holdouts[0].residual, 0);
}

TEST(CrossValidate, CorruptedQuadraticPoint) {
  const auto cv = cross_validate({{1, 1}, {2, 4}, {3, 9}, {4, 17}}, {Integer(4)});
  EXPECT_EQ(cv.holdouts[0].predicted, 16);
  EXPECT_EQ(cv.holdouts[0].residual, 1);
  EXPECT_THROW((void)cross_validate({{1, 1}, {2, 4}}, {Integer(2)}), TooFewPoints);
}

TEST(FitJson, ShapeAndText) {
  const auto fit = interpolate({{0, 1}, {1, 0}, {2, Integer(1)}, {3, 5}});
  const auto v = check_integrality(fit);
  const auto j = to_json(fit, v);
  EXPECT_EQ(j["degree"], fit.degree);
  EXPECT_EQ(j["coefficients"].size(), fit.degree + 1);
  EXPECT_TRUE(j["coefficients"][0].contains("num"));
  EXPECT_TRUE(j["coefficients"][0].contains("den"));
  EXPECT_EQ(fit_to_string({Rational(1188935, 72), 0, Rational(-1), 1}),
            "q^3 - q^2 + 1188935/72");
}

} // namespace
} // namespace kgraph
