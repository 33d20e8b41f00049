#pragma once

// Sparse multivariate polynomials over Z in the variables k, t1, ..., tn.
// Variable 0 is always the deformation parameter k; variable i >= 1 is t_i.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kgraph/error.hpp"

namespace kgraph {

using Integer = boost::multiprecision::cpp_int;
using VarId = std::size_t;
using Exponents = std::vector<std::uint32_t>;

inline constexpr VarId kKappa = 0;

/// Canonical term order: higher total degree first; within a degree,
/// lexicographically larger first comparing t1, ..., tn and k last.
struct CanonicalOrder {
  bool operator()(const Exponents &a, const Exponents &b) const noexcept {
    std::uint64_t da = 0, db = 0;
    for (auto x : a)
      da += x;
    for (auto x : b)
      db += x;
    if (da != db)
      return da > db;
    for (std::size_t i = 1; i < a.size(); ++i)
      if (a[i] != b[i])
        return a[i] > b[i];
    return a[0] > b[0];
  }
};

struct Monomial {
  Exponents exponents;
  Integer coefficient;
};

class MultiPoly {
public:
  using TermMap = std::map<Exponents, Integer, CanonicalOrder>;

  explicit MultiPoly(std::size_t num_t_vars = 0) : num_t_vars_(num_t_vars) {}

  static MultiPoly constant(std::size_t num_t_vars, const Integer &c) {
    MultiPoly p(num_t_vars);
    p.add_term(Exponents(num_t_vars + 1, 0), c);
    return p;
  }

  static MultiPoly variable(std::size_t num_t_vars, VarId var) {
    MultiPoly p(num_t_vars);
    p.check_var(var);
    Exponents e(num_t_vars + 1, 0);
    e[var] = 1;
    p.add_term(std::move(e), 1);
    return p;
  }

  static MultiPoly monomial(std::size_t num_t_vars, Exponents e,
                            const Integer &c = 1) {
    MultiPoly p(num_t_vars);
    p.add_term(std::move(e), c);
    return p;
  }

  [[nodiscard]] std::size_t num_t_vars() const noexcept { return num_t_vars_; }
  [[nodiscard]] std::size_t num_vars() const noexcept {
    return num_t_vars_ + 1;
  }
  [[nodiscard]] const TermMap &terms() const noexcept { return terms_; }
  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }

  /// Accumulate c * x^e; zero results are dropped.
  void add_term(Exponents e, const Integer &c) {
    if (e.size() != num_vars())
      throw ArityMismatch("exponent vector of length " +
                          std::to_string(e.size()) + ", expected " +
                          std::to_string(num_vars()));
    if (c == 0)
      return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  [[nodiscard]] std::vector<Monomial> monomials() const {
    std::vector<Monomial> out;
    out.reserve(terms_.size());
    for (const auto &[e, c] : terms_)
      out.push_back({e, c});
    return out;
  }

  MultiPoly &operator+=(const MultiPoly &o) {
    check_arity(o);
    for (const auto &[e, c] : o.terms_)
      add_term(e, c);
    return *this;
  }
  MultiPoly &operator-=(const MultiPoly &o) {
    check_arity(o);
    for (const auto &[e, c] : o.terms_)
      add_term(e, -c);
    return *this;
  }
  MultiPoly &operator*=(const Integer &s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto &[e, c] : terms_)
      c *= s;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly &b) {
    return a += b;
  }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly &b) {
    return a -= b;
  }
  friend MultiPoly operator-(MultiPoly a) { return a *= -1; }
  friend MultiPoly operator*(MultiPoly a, const Integer &s) { return a *= s; }
  friend MultiPoly operator*(const Integer &s, MultiPoly a) { return a *= s; }

  friend MultiPoly operator*(const MultiPoly &a, const MultiPoly &b) {
    a.check_arity(b);
    MultiPoly out(a.num_t_vars_);
    Exponents e(a.num_vars());
    for (const auto &[ea, ca] : a.terms_)
      for (const auto &[eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i)
          e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  MultiPoly &operator*=(const MultiPoly &o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly &a, const MultiPoly &b) {
    return a.num_t_vars_ == b.num_t_vars_ && a.terms_ == b.terms_;
  }

  [[nodiscard]] MultiPoly pow(unsigned n) const {
    MultiPoly result = constant(num_t_vars_, 1);
    MultiPoly base = *this;
    while (n) {
      if (n & 1U)
        result *= base;
      n >>= 1U;
      if (n)
        base *= base;
    }
    return result;
  }

  [[nodiscard]] std::uint32_t degree_in(VarId var) const {
    check_var(var);
    std::uint32_t d = 0;
    for (const auto &[e, c] : terms_)
      d = std::max(d, e[var]);
    return d;
  }

  /// Maximum total degree over terms; k is ignored when in_t_only is set.
  [[nodiscard]] std::uint64_t total_degree(bool in_t_only = false) const {
    if (is_zero())
      throw ZeroPolynomial("degree of the zero polynomial is undefined");
    std::uint64_t best = 0;
    for (const auto &[e, c] : terms_) {
      std::uint64_t d = 0;
      for (std::size_t i = in_t_only ? 1 : 0; i < e.size(); ++i)
        d += e[i];
      best = std::max(best, d);
    }
    return best;
  }

  /// Replace var by an integer.
  [[nodiscard]] MultiPoly substitute(VarId var, const Integer &value) const {
    check_var(var);
    MultiPoly out(num_t_vars_);
    for (const auto &[e, c] : terms_) {
      Exponents r = e;
      r[var] = 0;
      out.add_term(std::move(r), c * boost::multiprecision::pow(
                                          value, static_cast<unsigned>(e[var])));
    }
    return out;
  }

  /// Replace var by a polynomial in the same variables.
  [[nodiscard]] MultiPoly substitute(VarId var, const MultiPoly &value) const {
    check_var(var);
    check_arity(value);
    std::vector<MultiPoly> powers{constant(num_t_vars_, 1)};
    MultiPoly out(num_t_vars_);
    for (const auto &[e, c] : terms_) {
      while (powers.size() <= e[var])
        powers.push_back(powers.back() * value);
      Exponents r = e;
      r[var] = 0;
      out += monomial(num_t_vars_, std::move(r), c) * powers[e[var]];
    }
    return out;
  }

  /// [P_0, ..., P_d] with p = sum_i P_i * var^i and d the degree in var.
  [[nodiscard]] std::vector<MultiPoly> coefficients_in(VarId var) const {
    std::vector<MultiPoly> out(degree_in(var) + 1, MultiPoly(num_t_vars_));
    for (const auto &[e, c] : terms_) {
      Exponents r = e;
      r[var] = 0;
      out[e[var]].add_term(std::move(r), c);
    }
    return out;
  }

  /// Move every t-variable i to target[i-1] (1-based) in a ring with
  /// new_num_t_vars t-variables. k stays variable 0.
  [[nodiscard]] MultiPoly remap_t_vars(std::span<const VarId> target,
                                       std::size_t new_num_t_vars) const {
    if (target.size() != num_t_vars_)
      throw ArityMismatch("variable map has " + std::to_string(target.size()) +
                          " entries for " + std::to_string(num_t_vars_) +
                          " variables");
    for (VarId v : target)
      if (v == kKappa || v > new_num_t_vars)
        throw ArityMismatch("variable map target out of range");
    MultiPoly out(new_num_t_vars);
    for (const auto &[e, c] : terms_) {
      Exponents r(new_num_t_vars + 1, 0);
      r[0] = e[0];
      for (std::size_t i = 1; i < e.size(); ++i)
        r[target[i - 1]] += e[i];
      out.add_term(std::move(r), c);
    }
    return out;
  }

  /// Value at a point given as [k, t1, ..., tn], reduced modulo m.
  [[nodiscard]] std::uint64_t evaluate_mod(std::span<const std::uint64_t> point,
                                           std::uint64_t m) const {
    if (point.size() != num_vars())
      throw ArityMismatch("evaluation point has wrong length");
    __extension__ using u128 = unsigned __int128;
    u128 acc = 0;
    for (const auto &[e, c] : terms_) {
      Integer r = c % m;
      if (r < 0)
        r += m;
      u128 term = static_cast<std::uint64_t>(r);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::uint32_t k = 0; k < e[i]; ++k)
          term = term * (point[i] % m) % m;
      acc = (acc + term) % m;
    }
    return static_cast<std::uint64_t>(acc);
  }

  [[nodiscard]] Integer evaluate(std::span<const Integer> point) const {
    if (point.size() != num_vars())
      throw ArityMismatch("evaluation point has wrong length");
    Integer acc = 0;
    for (const auto &[e, c] : terms_) {
      Integer term = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        term *= boost::multiprecision::pow(point[i], e[i]);
      acc += term;
    }
    return acc;
  }

  /// Canonical text, e.g. "3*k*t1^2*t3 + t2 - 1". Names default to k, t1..tn.
  [[nodiscard]] std::string to_string() const {
    return to_string(default_names());
  }

  [[nodiscard]] std::string
  to_string(const std::vector<std::string> &names) const {
    if (names.size() != num_vars())
      throw ArityMismatch("name list has wrong length");
    if (is_zero())
      return "0";
    std::string out;
    bool first = true;
    for (const auto &[e, c] : terms_) {
      const bool negative = c < 0;
      const Integer mag = negative ? Integer(-c) : c;
      if (first)
        out += negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      first = false;

      std::string body;
      auto append = [&](const std::string &factor) {
        if (!body.empty())
          body += '*';
        body += factor;
      };
      if (mag != 1)
        append(mag.str());
      // t-variables first, k last, matching the term order.
      for (std::size_t step = 1; step <= e.size(); ++step) {
        const std::size_t i = step % e.size();
        if (e[i] == 0)
          continue;
        append(e[i] == 1 ? names[i] : names[i] + "^" + std::to_string(e[i]));
      }
      out += body.empty() ? "1" : body;
    }
    return out;
  }

  [[nodiscard]] std::vector<std::string> default_names() const {
    std::vector<std::string> names{"k"};
    for (std::size_t i = 1; i <= num_t_vars_; ++i)
      names.push_back("t" + std::to_string(i));
    return names;
  }

private:
  void check_arity(const MultiPoly &o) const {
    if (o.num_t_vars_ != num_t_vars_)
      throw ArityMismatch(std::to_string(num_t_vars_) + " vs " +
                          std::to_string(o.num_t_vars_) + " t-variables");
  }
  void check_var(VarId var) const {
    if (var > num_t_vars_)
      throw ArityMismatch("variable " + std::to_string(var) +
                          " outside ring with " + std::to_string(num_t_vars_) +
                          " t-variables");
  }

  std::size_t num_t_vars_;
  TermMap terms_;
};

namespace detail {
[[noreturn]] inline void parse_fail(std::size_t pos, const std::string &why) {
  throw Error("polynomial parse error at offset " + std::to_string(pos) + ": " +
              why);
}
} // namespace detail

/// Parse the canonical text form (any term order, any spacing). Names are
/// [k, t1, ..., tn] by default; pass a custom list to read labeled output.
[[nodiscard]] inline MultiPoly
parse_polynomial(std::string_view text, std::size_t num_t_vars,
                 std::vector<std::string> names = {}) {
  MultiPoly result(num_t_vars);
  if (names.empty())
    names = result.default_names();
  if (names.size() != num_t_vars + 1)
    throw ArityMismatch("name list has wrong length");

  std::size_t pos = 0;
  auto fail = [&](const std::string &why) { detail::parse_fail(pos, why); };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  auto read_uint = [&]() -> std::string {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (start == pos)
      fail("expected digits");
    return std::string(text.substr(start, pos - start));
  };
  auto read_name = [&]() -> std::string {
    const std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos)
      fail("expected a variable name");
    return std::string(text.substr(start, pos - start));
  };

  skip();
  if (text.substr(pos) == "0")
    return result;
  bool expect_sign = false;
  while (true) {
    skip();
    if (pos == text.size())
      break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (expect_sign) {
      fail("expected '+' or '-'");
    }
    Integer coeff = sign;
    Exponents e(num_t_vars + 1, 0);
    while (true) {
      skip();
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        coeff *= Integer(read_uint());
      } else {
        const std::string name = read_name();
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end())
          fail("unknown variable '" + name + "'");
        std::uint32_t power = 1;
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          power = static_cast<std::uint32_t>(std::stoul(read_uint()));
        }
        e[static_cast<std::size_t>(it - names.begin())] += power;
      }
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    result.add_term(std::move(e), coeff);
    expect_sign = true;
  }
  return result;
}

} // namespace kgraph
