#pragma once

// Exact rational polynomial fits of point counts against q, and the
// integer-coefficient test for polynomial countability.
//
// A counting function that is a polynomial with rational coefficients has
// integer coefficients, so a non-integral interpolant through genuine counts
// rules out polynomial countability. An integral one is only consistent with
// it on the q values seen.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "kgraph/error.hpp"
#include "kgraph/multipoly.hpp"

namespace kgraph {

using Rational = boost::multiprecision::cpp_rational;

struct DataPoint {
  Integer q;
  Integer count;
};

struct RationalFit {
  std::size_t degree = 0;
  std::vector<Rational> coefficients; ///< constant term first
  std::vector<Rational> residuals;    ///< count - fit(q), per input point
  bool is_integral = false;
  std::vector<DataPoint> points;
};

struct Verdict {
  bool polynomially_countable_consistent = false;
  std::string reason;
  RationalFit witness;
};

[[nodiscard]] inline Rational evaluate(const std::vector<Rational> &coeffs,
                                       const Rational &x) {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

[[nodiscard]] inline Rational evaluate(const RationalFit &fit,
                                       const Rational &x) {
  return evaluate(fit.coefficients, x);
}

namespace detail {

inline void check_points(const std::vector<DataPoint> &points,
                         std::size_t minimum) {
  if (points.size() < minimum)
    throw TooFewPoints("need at least " + std::to_string(minimum) +
                       " points, got " + std::to_string(points.size()));
  std::vector<Integer> xs;
  for (const auto &pt : points)
    xs.push_back(pt.q);
  std::sort(xs.begin(), xs.end());
  if (auto dup = std::adjacent_find(xs.begin(), xs.end()); dup != xs.end())
    throw DuplicateAbscissa("q = " + dup->str() + " appears twice");
}

inline RationalFit finish_fit(std::vector<Rational> coeffs,
                              std::vector<DataPoint> points) {
  while (coeffs.size() > 1 && coeffs.back() == 0)
    coeffs.pop_back();
  RationalFit fit;
  fit.degree = coeffs.size() - 1;
  fit.is_integral =
      std::all_of(coeffs.begin(), coeffs.end(), [](const Rational &c) {
        return boost::multiprecision::denominator(c) == 1;
      });
  for (const auto &pt : points)
    fit.residuals.push_back(Rational(pt.count) - evaluate(coeffs, pt.q));
  fit.coefficients = std::move(coeffs);
  fit.points = std::move(points);
  return fit;
}

} // namespace detail

/// The unique polynomial of degree <= m - 1 through m points, by Newton
/// divided differences. Trailing zero top coefficients are dropped, so the
/// reported degree is the true one.
[[nodiscard]] inline RationalFit interpolate(std::vector<DataPoint> points) {
  detail::check_points(points, 2);
  const std::size_t m = points.size();
  std::vector<Rational> dd(m);
  for (std::size_t i = 0; i < m; ++i)
    dd[i] = Rational(points[i].count);
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = m - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) /
              Rational(points[i].q - points[i - level].q);

  // Horner on the Newton form: c <- c * (x - x_j) + dd[j].
  std::vector<Rational> coeffs{dd[m - 1]};
  for (std::size_t j = m - 1; j-- > 0;) {
    std::vector<Rational> next(coeffs.size() + 1, Rational(0));
    const Rational xj(points[j].q);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i + 1] += coeffs[i];
      next[i] -= coeffs[i] * xj;
    }
    next[0] += dd[j];
    coeffs = std::move(next);
  }
  return detail::finish_fit(std::move(coeffs), std::move(points));
}

/// Exact least-squares fit of the given degree through the normal equations.
/// With degree = m - 1 it coincides with interpolate().
[[nodiscard]] inline RationalFit least_squares(std::vector<DataPoint> points,
                                               std::size_t degree) {
  detail::check_points(points, degree + 1);
  const std::size_t d = degree + 1;
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d + 1, 0));
  for (const auto &pt : points) {
    std::vector<Rational> pw(2 * d, 1);
    for (std::size_t i = 1; i < pw.size(); ++i)
      pw[i] = pw[i - 1] * Rational(pt.q);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c)
        a[r][c] += pw[r + c];
      a[r][d] += pw[r] * Rational(pt.count);
    }
  }
  // Gauss-Jordan; the Gram matrix of distinct abscissas is non-singular.
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (a[pivot][col] == 0)
      ++pivot;
    std::swap(a[pivot], a[col]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || a[r][col] == 0)
        continue;
      const Rational factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= d; ++c)
        a[r][c] -= factor * a[col][c];
    }
  }
  std::vector<Rational> coeffs(d);
  for (std::size_t r = 0; r < d; ++r)
    coeffs[r] = a[r][d] / a[r][r];
  return detail::finish_fit(std::move(coeffs), std::move(points));
}

namespace detail {

inline std::string q_range(const RationalFit &fit) {
  std::vector<Integer> xs;
  for (const auto &pt : fit.points)
    xs.push_back(pt.q);
  std::sort(xs.begin(), xs.end());
  std::string s;
  for (const auto &x : xs)
    s += (s.empty() ? "" : ", ") + x.str();
  return "q in {" + s + "}";
}

} // namespace detail

[[nodiscard]] inline Verdict check_integrality(const RationalFit &fit) {
  Verdict v;
  v.witness = fit;
  for (std::size_t i = 0; i < fit.coefficients.size(); ++i) {
    const Rational &c = fit.coefficients[i];
    if (boost::multiprecision::denominator(c) != 1) {
      v.polynomially_countable_consistent = false;
      v.reason = "coefficient of q^" + std::to_string(i) + " is " + c.str() +
                 ", not an integer; the counts on " + detail::q_range(fit) +
                 " are not given by a polynomial in Z[q]";
      return v;
    }
  }
  v.polynomially_countable_consistent = true;
  v.reason = "all coefficients are integers on " + detail::q_range(fit) +
             "; consistent with polynomial countability, not a proof";
  return v;
}

[[nodiscard]] inline std::string verdict_label(const Verdict &v) {
  return v.polynomially_countable_consistent
             ? "consistent with polynomial countability (on tested range)"
             : "NOT polynomially countable (on tested range)";
}

struct Holdout {
  Integer q;
  Integer observed;
  Rational predicted;
  Rational residual; ///< observed - predicted
};

struct CrossValidation {
  RationalFit fit; ///< interpolant of the retained points
  std::vector<Holdout> holdouts;
  bool all_zero = true;
};

/// Interpolate the points whose q is not in holdout and report the exact
/// residual at each held-out q.
[[nodiscard]] inline CrossValidation
cross_validate(const std::vector<DataPoint> &points,
               const std::vector<Integer> &holdout) {
  detail::check_points(points, 2);
  std::vector<DataPoint> kept, held;
  for (const auto &pt : points)
    (std::find(holdout.begin(), holdout.end(), pt.q) != holdout.end() ? held
                                                                      : kept)
        .push_back(pt);
  if (kept.size() < 2)
    throw TooFewPoints("cross-validation needs at least 2 retained points");
  CrossValidation cv;
  cv.fit = interpolate(std::move(kept));
  for (const auto &pt : held) {
    Holdout h{pt.q, pt.count, evaluate(cv.fit, pt.q), 0};
    h.residual = Rational(h.observed) - h.predicted;
    cv.all_zero = cv.all_zero && h.residual == 0;
    cv.holdouts.push_back(std::move(h));
  }
  return cv;
}

[[nodiscard]] inline nlohmann::json rational_to_json(const Rational &r) {
  return {{"num", boost::multiprecision::numerator(r).str()},
          {"den", boost::multiprecision::denominator(r).str()}};
}

[[nodiscard]] inline nlohmann::json to_json(const RationalFit &fit,
                                            const Verdict &verdict) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto &c : fit.coefficients)
    coeffs.push_back(rational_to_json(c));
  return {{"degree", fit.degree},
          {"coefficients", std::move(coeffs)},
          {"integral", fit.is_integral},
          {"verdict", verdict_label(verdict)}};
}

/// Human-readable polynomial in q, highest power first.
[[nodiscard]] inline std::string
fit_to_string(const std::vector<Rational> &coeffs) {
  std::string out;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    const Rational &c = coeffs[i];
    if (c == 0)
      continue;
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string body;
    if (mag != 1 || i == 0)
      body = mag.str();
    if (i > 0) {
      body += body.empty() ? "" : "*";
      body += i == 1 ? "q" : "q^" + std::to_string(i);
    }
    out += body;
  }
  return out.empty() ? "0" : out;
}

} // namespace kgraph
