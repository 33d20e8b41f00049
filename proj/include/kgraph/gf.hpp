#pragma once

// Finite fields GF(p^k) for q <= 2^16.
//
// An element is encoded as the integer sum c_i p^i of the coefficients of
// its residue polynomial modulo a monic irreducible of degree k. The
// multiplicative group is handled with log/antilog tables and additions in
// extension fields through the Zech logarithm Z(n) = log(1 + g^n).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "kgraph/error.hpp"

namespace kgraph {

using Element = std::uint32_t;

inline constexpr std::uint64_t kMaxFieldOrder = 1U << 16U;

[[nodiscard]] inline bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

namespace detail {

using FpPoly = std::vector<std::uint32_t>; // coefficients, low degree first

inline void trim(FpPoly &f) {
  while (!f.empty() && f.back() == 0)
    f.pop_back();
}

// Remainder of f modulo a monic g over F_p.
inline FpPoly poly_mod(FpPoly f, const FpPoly &g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const std::uint64_t lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i)
      f[shift + i] = static_cast<std::uint32_t>(
          (f[shift + i] + (p - lead) * g[i]) % p);
    trim(f);
  }
  return f;
}

// Every monic polynomial of the given degree, in lexicographic order of
// (c_0, ..., c_{d-1}).
inline std::vector<FpPoly> monic_polynomials(std::uint32_t p,
                                             std::uint32_t degree) {
  std::vector<FpPoly> out;
  FpPoly f(degree + 1, 0);
  f[degree] = 1;
  while (true) {
    out.push_back(f);
    bool carry = true;
    for (std::size_t i = degree; carry && i-- > 0;) {
      carry = ++f[i] == p;
      if (carry)
        f[i] = 0;
    }
    if (carry)
      return out;
  }
}

} // namespace detail

/// Irreducibility over F_p by trial division with every monic polynomial of
/// degree 1 .. deg/2.
[[nodiscard]] inline bool is_irreducible(const std::vector<std::uint32_t> &f,
                                         std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  if (f.empty() || f.back() != 1 || n == 0)
    return false;
  for (std::uint32_t d = 1; d <= n / 2; ++d)
    for (const auto &g : detail::monic_polynomials(p, d))
      if (detail::poly_mod(f, g, p).empty())
        return false;
  return true;
}

/// All monic irreducibles of degree k over F_p, lexicographically smallest
/// first (coefficients compared low to high).
[[nodiscard]] inline std::vector<std::vector<std::uint32_t>>
irreducible_polynomials(std::uint32_t p, std::uint32_t k) {
  std::vector<std::vector<std::uint32_t>> out;
  for (auto &f : detail::monic_polynomials(p, k))
    if (is_irreducible(f, p))
      out.push_back(std::move(f));
  return out;
}

/// Description of GF(p^k) together with its arithmetic tables. Immutable
/// after construction.
class Field {
public:
  static constexpr std::int32_t kNoLog = -1;

  /// GF(p^k) with the lexicographically smallest monic irreducible modulus.
  static Field make(std::uint32_t p, std::uint32_t k = 1) {
    check_prime(p);
    if (k == 0)
      throw Error("extension degree must be positive");
    check_order(p, k);
    if (k == 1)
      return Field(p, {0, 1});
    return Field(p, irreducible_polynomials(p, k).front());
  }

  /// GF(p^k) with an explicit monic modulus of degree k.
  static Field make(std::uint32_t p, std::vector<std::uint32_t> modulus) {
    check_prime(p);
    if (modulus.size() < 2)
      throw NotIrreducible("modulus must have degree at least 1");
    check_order(p, static_cast<std::uint32_t>(modulus.size() - 1));
    for (auto c : modulus)
      if (c >= p)
        throw NotIrreducible("modulus coefficient outside F_p");
    if (modulus.size() > 2 && !is_irreducible(modulus, p))
      throw NotIrreducible("modulus is reducible over F_" + std::to_string(p));
    return Field(p, std::move(modulus));
  }

  [[nodiscard]] std::uint32_t p() const noexcept { return p_; }
  [[nodiscard]] std::uint32_t k() const noexcept { return k_; }
  [[nodiscard]] std::uint32_t q() const noexcept { return q_; }
  [[nodiscard]] const std::vector<std::uint32_t> &modulus() const noexcept {
    return modulus_;
  }
  [[nodiscard]] Element generator() const noexcept { return generator_; }

  [[nodiscard]] Element add(Element a, Element b) const {
    if (k_ == 1) {
      const Element s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (a == 0)
      return b;
    if (b == 0)
      return a;
    const std::uint32_t la = static_cast<std::uint32_t>(log_[a]);
    const std::uint32_t lb = static_cast<std::uint32_t>(log_[b]);
    const std::uint32_t d = lb >= la ? lb - la : lb + (q_ - 1) - la;
    const std::int32_t z = zech_[d];
    if (z == kNoLog)
      return 0;
    return exp_[la + static_cast<std::uint32_t>(z)];
  }

  [[nodiscard]] Element neg(Element a) const {
    if (a == 0)
      return 0;
    if (k_ == 1)
      return p_ - a;
    // -a = a * g^((q-1)/2) for odd q; -a = a in characteristic 2.
    if (p_ == 2)
      return a;
    return exp_[static_cast<std::uint32_t>(log_[a]) + (q_ - 1) / 2];
  }

  [[nodiscard]] Element sub(Element a, Element b) const {
    return add(a, neg(b));
  }

  [[nodiscard]] Element mul(Element a, Element b) const {
    if (a == 0 || b == 0)
      return 0;
    return exp_[static_cast<std::uint32_t>(log_[a]) +
                static_cast<std::uint32_t>(log_[b])];
  }

  [[nodiscard]] Element inv(Element a) const {
    if (a == 0)
      throw DivisionByZero("inverse of 0 in GF(" + std::to_string(q_) + ")");
    const auto l = static_cast<std::uint32_t>(log_[a]);
    return exp_[l == 0 ? 0 : (q_ - 1) - l];
  }

  [[nodiscard]] Element div(Element a, Element b) const {
    return mul(a, inv(b));
  }

  [[nodiscard]] Element pow(Element a, std::uint64_t n) const {
    if (n == 0)
      return 1;
    if (a == 0)
      return 0;
    const std::uint64_t l =
        static_cast<std::uint64_t>(log_[a]) * (n % (q_ - 1)) % (q_ - 1);
    return exp_[l];
  }

  /// Image of an integer under Z -> F_p -> GF(q).
  [[nodiscard]] Element from_integer(std::int64_t n) const {
    const auto pp = static_cast<std::int64_t>(p_);
    return static_cast<Element>(((n % pp) + pp) % pp);
  }

  /// Discrete log base generator(); kNoLog for 0.
  [[nodiscard]] std::int32_t log(Element a) const { return log_.at(a); }

  /// Z(n) = log(1 + g^n), kNoLog where 1 + g^n = 0.
  [[nodiscard]] std::int32_t zech(std::uint32_t n) const {
    return zech_.at(n % (q_ - 1));
  }

  /// Every element once, ascending encoding.
  [[nodiscard]] std::vector<Element> elements() const {
    std::vector<Element> out(q_);
    for (Element a = 0; a < q_; ++a)
      out[a] = a;
    return out;
  }

  /// Table-free product of two encodings by polynomial arithmetic; used to
  /// build the tables and as a cross-check.
  [[nodiscard]] Element slow_mul(Element a, Element b) const {
    detail::FpPoly fa = digits(a), fb = digits(b);
    detail::FpPoly prod(fa.size() + fb.size(), 0);
    for (std::size_t i = 0; i < fa.size(); ++i)
      for (std::size_t j = 0; j < fb.size(); ++j)
        prod[i + j] = static_cast<std::uint32_t>(
            (prod[i + j] + static_cast<std::uint64_t>(fa[i]) * fb[j]) % p_);
    return encode(detail::poly_mod(prod, modulus_, p_));
  }

  /// Digit-wise sum of two encodings.
  [[nodiscard]] Element slow_add(Element a, Element b) const {
    Element out = 0, scale = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      out += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return out;
  }

  friend bool operator==(const Field &x, const Field &y) {
    return x.p_ == y.p_ && x.modulus_ == y.modulus_;
  }

private:
  Field(std::uint32_t p, std::vector<std::uint32_t> modulus)
      : p_(p), k_(static_cast<std::uint32_t>(modulus.size() - 1)),
        modulus_(std::move(modulus)) {
    q_ = 1;
    for (std::uint32_t i = 0; i < k_; ++i)
      q_ *= p_;
    build_tables();
  }

  static void check_prime(std::uint32_t p) {
    if (p >= (1U << 20U) || !is_prime(p))
      throw NotPrime(std::to_string(p) + " is not a prime below 2^20");
  }

  static void check_order(std::uint32_t p, std::uint32_t k) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      q *= p;
      if (q > kMaxFieldOrder)
        throw FieldTooLarge(std::to_string(p) + "^" + std::to_string(k) +
                            " exceeds 2^16");
    }
  }

  [[nodiscard]] detail::FpPoly digits(Element a) const {
    detail::FpPoly f(k_, 0);
    for (std::uint32_t i = 0; i < k_; ++i) {
      f[i] = a % p_;
      a /= p_;
    }
    return f;
  }

  [[nodiscard]] Element encode(const detail::FpPoly &f) const {
    Element out = 0, scale = 1;
    for (std::size_t i = 0; i < f.size(); ++i) {
      out += f[i] * scale;
      scale *= p_;
    }
    return out;
  }

  void build_tables() {
    const std::uint32_t order = q_ - 1;
    // Smallest element of multiplicative order q - 1.
    generator_ = 0;
    for (Element g = 1; g < q_ && generator_ == 0; ++g) {
      Element x = g;
      std::uint32_t n = 1;
      while (x != 1) {
        x = slow_mul(x, g);
        ++n;
      }
      if (n == order)
        generator_ = g;
    }
    log_.assign(q_, kNoLog);
    exp_.assign(2 * static_cast<std::size_t>(order), 0);
    Element x = 1;
    for (std::uint32_t i = 0; i < order; ++i) {
      exp_[i] = exp_[i + order] = x;
      log_[x] = static_cast<std::int32_t>(i);
      x = slow_mul(x, generator_);
    }
    zech_.assign(order, kNoLog);
    for (std::uint32_t n = 0; n < order; ++n) {
      const Element s = slow_add(1, exp_[n]);
      zech_[n] = log_[s];
    }
  }

  std::uint32_t p_;
  std::uint32_t k_;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Element generator_ = 0;
  std::vector<std::int32_t> log_;
  std::vector<Element> exp_; // doubled so exp_[i + j] needs no reduction
  std::vector<std::int32_t> zech_;
};

/// GF(p^k) with the default modulus.
[[nodiscard]] inline Field make_field(std::uint32_t p, std::uint32_t k = 1) {
  return Field::make(p, k);
}

/// Value type over a Field; the field must outlive the element.
class FieldElement {
public:
  FieldElement(const Field &f, Element v) : field_(&f), value_(v) {
    if (v >= f.q())
      throw IndexOutOfRange("element encoding " + std::to_string(v) +
                            " >= q = " + std::to_string(f.q()));
  }

  [[nodiscard]] Element value() const noexcept { return value_; }
  [[nodiscard]] const Field &field() const noexcept { return *field_; }

  friend FieldElement operator+(FieldElement a, FieldElement b) {
    return {*a.field_, a.field_->add(a.value_, b.value_)};
  }
  friend FieldElement operator-(FieldElement a, FieldElement b) {
    return {*a.field_, a.field_->sub(a.value_, b.value_)};
  }
  friend FieldElement operator-(FieldElement a) {
    return {*a.field_, a.field_->neg(a.value_)};
  }
  friend FieldElement operator*(FieldElement a, FieldElement b) {
    return {*a.field_, a.field_->mul(a.value_, b.value_)};
  }
  friend FieldElement operator/(FieldElement a, FieldElement b) {
    return {*a.field_, a.field_->div(a.value_, b.value_)};
  }
  [[nodiscard]] FieldElement inv() const {
    return {*field_, field_->inv(value_)};
  }
  [[nodiscard]] FieldElement pow(std::uint64_t n) const {
    return {*field_, field_->pow(value_, n)};
  }
  friend bool operator==(FieldElement a, FieldElement b) {
    return a.value_ == b.value_ && *a.field_ == *b.field_;
  }

private:
  const Field *field_;
  Element value_;
};

} // namespace kgraph
