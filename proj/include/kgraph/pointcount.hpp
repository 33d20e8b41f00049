#pragma once

// Counting F_q-points of the affine hypersurface { t in A^n : P(t) = 0 } for
// a polynomial P with k already specialized.
//
// Two methods: a naive enumeration of all q^n points, and a fibered one that
// enumerates the other n - 1 coordinates, reduces P to a univariate
// polynomial in one chosen variable and counts its roots. The fibered
// method is split over threads into contiguous index ranges whose partial
// counts are summed in range order.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgraph/gf.hpp"
#include "kgraph/multipoly.hpp"

namespace kgraph {

/// Straight-line program evaluating a k-free polynomial over one field.
/// Registers 0 .. n-1 hold the point (register i is t_{i+1}); the result is
/// left in the accumulator register.
class EvaluationProgram {
public:
  enum class Op : std::uint8_t { load_const, load_var, mul_var, scale, add };

  struct Instr {
    Op op;
    std::uint32_t dst;
    std::uint32_t src;
    Element constant;
  };

  EvaluationProgram(const MultiPoly &poly, const Field &field)
      : field_(&field), num_vars_(poly.num_t_vars()) {
    const auto acc = static_cast<std::uint32_t>(num_vars_);
    const auto tmp = acc + 1;
    registers_ = num_vars_ + 2;
    code_.push_back({Op::load_const, acc, 0, 0});
    for (const auto &[e, c] : poly.terms()) {
      if (e[kKappa] != 0)
        throw SymbolicKappa("specialize k before compiling for counting");
      const Element coeff = reduce(c);
      if (coeff == 0)
        continue;
      bool started = false;
      for (std::size_t v = 1; v < e.size(); ++v)
        for (std::uint32_t r = 0; r < e[v]; ++r) {
          const auto reg = static_cast<std::uint32_t>(v - 1);
          code_.push_back({started ? Op::mul_var : Op::load_var, tmp, reg, 0});
          started = true;
        }
      if (!started)
        code_.push_back({Op::load_const, tmp, 0, coeff});
      else if (coeff != 1)
        code_.push_back({Op::scale, tmp, tmp, coeff});
      code_.push_back({Op::add, acc, tmp, 0});
    }
  }

  [[nodiscard]] std::size_t num_vars() const noexcept { return num_vars_; }
  [[nodiscard]] std::size_t register_count() const noexcept {
    return registers_;
  }
  [[nodiscard]] const std::vector<Instr> &code() const noexcept {
    return code_;
  }

  /// Evaluate with registers[0 .. n) already holding the point.
  [[nodiscard]] Element run(std::span<Element> registers) const {
    const Field &f = *field_;
    for (const Instr &in : code_) {
      switch (in.op) {
      case Op::load_const:
        registers[in.dst] = in.constant;
        break;
      case Op::load_var:
        registers[in.dst] = registers[in.src];
        break;
      case Op::mul_var:
        registers[in.dst] = f.mul(registers[in.dst], registers[in.src]);
        break;
      case Op::scale:
        registers[in.dst] = f.mul(registers[in.src], in.constant);
        break;
      case Op::add:
        registers[in.dst] = f.add(registers[in.dst], registers[in.src]);
        break;
      }
    }
    return registers[num_vars_];
  }

  /// Convenience: evaluate at a point of length n.
  [[nodiscard]] Element evaluate(std::span<const Element> point) const {
    std::vector<Element> regs(registers_, 0);
    std::copy(point.begin(), point.end(), regs.begin());
    return run(regs);
  }

private:
  [[nodiscard]] Element reduce(const Integer &c) const {
    Integer r = c % field_->p();
    if (r < 0)
      r += field_->p();
    return r.convert_to<Element>();
  }

  const Field *field_;
  std::size_t num_vars_;
  std::size_t registers_ = 0;
  std::vector<Instr> code_;
};

enum class CountMethod { naive, fibered };

[[nodiscard]] inline std::string to_string(CountMethod m) {
  return m == CountMethod::naive ? "naive" : "fibered";
}

/// One row of a counting experiment: #X(F_q) for one field.
struct CountRecord {
  std::uint32_t q = 0;
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  Integer count = 0;
  std::size_t n = 0;
  std::int64_t kappa_value = 0;
  double wall_time = 0.0;
  CountMethod method = CountMethod::fibered;
};

namespace detail {

inline Integer power(std::uint64_t base, std::size_t exp) {
  return boost::multiprecision::pow(Integer(base), static_cast<unsigned>(exp));
}

inline std::uint64_t checked_space(std::uint32_t q, std::size_t dims) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dims; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / q)
      throw Error("enumeration space q^" + std::to_string(dims) +
                  " does not fit in 64 bits");
    total *= q;
  }
  return total;
}

inline CountRecord make_record(const Field &f, const MultiPoly &p,
                               CountMethod m) {
  CountRecord r;
  r.q = f.q();
  r.p = f.p();
  r.k = f.k();
  r.n = p.num_t_vars();
  r.method = m;
  return r;
}

inline void require_specialized(const MultiPoly &p) {
  for (const auto &[e, c] : p.terms())
    if (e[kKappa] != 0)
      throw SymbolicKappa("polynomial still depends on k");
}

// True when every coefficient vanishes mod p, i.e. P is zero on F_q^n
// as a polynomial.
inline bool vanishes_mod_p(const MultiPoly &poly, std::uint32_t p) {
  return std::all_of(poly.terms().begin(), poly.terms().end(),
                     [p](const auto &t) { return t.second % p == 0; });
}

} // namespace detail

/// Exact count of zeros over F_q^n by enumerating every point.
[[nodiscard]] inline CountRecord count_points_naive(const MultiPoly &poly,
                                                    const Field &field) {
  const auto start = std::chrono::steady_clock::now();
  detail::require_specialized(poly);
  CountRecord rec = detail::make_record(field, poly, CountMethod::naive);
  const std::size_t n = poly.num_t_vars();
  if (detail::vanishes_mod_p(poly, field.p())) {
    rec.count = detail::power(field.q(), n);
  } else {
    const EvaluationProgram prog(poly, field);
    const std::uint64_t total = detail::checked_space(field.q(), n);
    std::vector<Element> regs(prog.register_count(), 0);
    std::uint64_t zeros = 0;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      zeros += prog.run(regs) == 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (++regs[i] < field.q())
          break;
        regs[i] = 0;
      }
    }
    rec.count = zeros;
  }
  rec.wall_time = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return rec;
}

/// Variable of lowest degree in the polynomial, ties to the highest index.
[[nodiscard]] inline VarId choose_fiber_var(const MultiPoly &poly) {
  if (poly.num_t_vars() == 0)
    throw ArityMismatch("no t-variable to fiber over");
  VarId best = poly.num_t_vars();
  for (VarId v = poly.num_t_vars(); v >= 1; --v)
    if (poly.degree_in(v) < poly.degree_in(best))
      best = v;
  return best;
}

/// Same count as count_points_naive, computed fiber by fiber over fiber_var
/// (default: choose_fiber_var). A fiber whose univariate reduction is
/// identically zero contributes q points.
[[nodiscard]] inline CountRecord
count_points_fibered(const MultiPoly &poly, const Field &field,
                     std::optional<VarId> fiber_var = std::nullopt,
                     unsigned threads = 1) {
  const auto start = std::chrono::steady_clock::now();
  detail::require_specialized(poly);
  CountRecord rec = detail::make_record(field, poly, CountMethod::fibered);
  const std::size_t n = poly.num_t_vars();
  const std::uint32_t q = field.q();

  auto finish = [&] {
    rec.wall_time = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    return rec;
  };
  if (detail::vanishes_mod_p(poly, field.p())) {
    rec.count = detail::power(q, n);
    return finish();
  }
  if (n == 0) {
    rec.count = 0; // non-zero constant
    return finish();
  }

  const VarId fv = fiber_var.value_or(choose_fiber_var(poly));
  if (fv == kKappa || fv > n)
    throw ArityMismatch("fiber variable out of range");
  const std::size_t fiber_reg = fv - 1;
  std::vector<EvaluationProgram> coeffs;
  for (const auto &c : poly.coefficients_in(fv))
    coeffs.emplace_back(c, field);

  // Outer coordinates: every register except the fiber one.
  std::vector<std::size_t> outer;
  for (std::size_t i = 0; i < n; ++i)
    if (i != fiber_reg)
      outer.push_back(i);
  const std::uint64_t total = detail::checked_space(q, outer.size());

  // powers[x * (d+1) + i] = x^i
  const std::size_t degree = coeffs.size() - 1;
  std::vector<Element> powers(static_cast<std::size_t>(q) * (degree + 1));
  for (Element x = 0; x < q; ++x)
    for (std::size_t i = 0; i <= degree; ++i)
      powers[x * (degree + 1) + i] = field.pow(x, i);

  auto count_range = [&](std::uint64_t lo, std::uint64_t hi) -> std::uint64_t {
    std::vector<Element> regs(coeffs.front().register_count(), 0);
    std::uint64_t rem = lo;
    for (std::size_t i : outer) {
      regs[i] = static_cast<Element>(rem % q);
      rem /= q;
    }
    std::vector<Element> c(degree + 1);
    std::uint64_t zeros = 0;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      bool all_zero = true;
      for (std::size_t i = 0; i <= degree; ++i) {
        c[i] = coeffs[i].run(regs);
        all_zero = all_zero && c[i] == 0;
      }
      if (all_zero) {
        zeros += q;
      } else {
        for (Element x = 0; x < q; ++x) {
          const Element *px = &powers[x * (degree + 1)];
          Element v = c[0];
          for (std::size_t i = 1; i <= degree; ++i)
            v = field.add(v, field.mul(c[i], px[i]));
          zeros += v == 0;
        }
      }
      for (std::size_t i : outer) {
        if (++regs[i] < q)
          break;
        regs[i] = 0;
      }
    }
    return zeros;
  };

  threads = std::max(1U, threads);
  const std::uint64_t chunks =
      std::min<std::uint64_t>(total, threads == 1 ? 1 : 8ULL * threads);
  std::vector<std::uint64_t> partial(chunks, 0);
  auto bounds = [&](std::uint64_t c) {
    return std::pair{total * c / chunks, total * (c + 1) / chunks};
  };
  if (threads == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) {
      auto [lo, hi] = bounds(c);
      partial[c] = count_range(lo, hi);
    }
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) {
          auto [lo, hi] = bounds(c);
          partial[c] = count_range(lo, hi);
        }
      });
  }
  Integer sum = 0;
  for (auto z : partial)
    sum += z;
  rec.count = sum;
  return finish();
}

/// Specialize k, then count over each field with the fibered method.
[[nodiscard]] inline std::vector<CountRecord>
count_series(const MultiPoly &poly, const std::vector<Field> &fields,
             std::int64_t kappa_value, unsigned threads = 1) {
  if (fields.empty())
    throw Error("count_series needs at least one field");
  const MultiPoly specialized = poly.substitute(kKappa, Integer(kappa_value));
  std::vector<CountRecord> out;
  for (const auto &f : fields) {
    CountRecord r =
        count_points_fibered(specialized, f, std::nullopt, threads);
    r.kappa_value = kappa_value;
    out.push_back(std::move(r));
  }
  return out;
}

[[nodiscard]] inline nlohmann::json to_json(const CountRecord &r) {
  return {{"q", r.q},
          {"p", r.p},
          {"k", r.k},
          {"count", r.count.str()},
          {"kappa", r.kappa_value},
          {"method", to_string(r.method)},
          {"wall_time_s", r.wall_time}};
}

inline constexpr const char *kCountCsvHeader =
    "q,p,k,count,kappa,method,wall_time_s";

[[nodiscard]] inline std::string to_csv_row(const CountRecord &r) {
  return std::to_string(r.q) + "," + std::to_string(r.p) + "," +
         std::to_string(r.k) + "," + r.count.str() + "," +
         std::to_string(r.kappa_value) + "," + to_string(r.method) + "," +
         std::to_string(r.wall_time);
}

} // namespace kgraph
