// Acceptance run: one PASS/FAIL line per criterion with the tolerance and
// the time limit it was held to. Exit status is non-zero if any line fails.
//
// Timed steps report the median of kRepeats runs, so a single scheduler
// hiccup does not decide a criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracles.hpp"

namespace {

using namespace kgraph;
using Clock = std::chrono::steady_clock;

constexpr int kRepeats = 5;
const std::vector<std::pair<std::uint32_t, std::uint32_t>> kPublishedFields{
    {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {11, 1}};

int failures = 0;

void report(const std::string &id, bool pass, const std::string &what) {
  std::cout << id << " " << (pass ? "PASS" : "FAIL") << "  " << what
            << std::endl;
  failures += pass ? 0 : 1;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Median wall time of kRepeats calls.
double median_seconds(const std::function<void()> &fn) {
  std::vector<double> t;
  for (int i = 0; i < kRepeats; ++i) {
    const auto start = Clock::now();
    fn();
    t.push_back(seconds_since(start));
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

std::string ms(double s) {
  std::ostringstream o;
  o.precision(3);
  o << std::fixed << s * 1e3 << " ms";
  return o.str();
}

nlohmann::json load_fixture() {
  std::ifstream in(std::string(KGRAPH_DATA_DIR) + "/fixtures/tetrahedron.json");
  return nlohmann::json::parse(in);
}

std::vector<std::string> names_of(const Graph &g) {
  auto n = g.names();
  n.insert(n.begin(), "k");
  return n;
}

Rational parse_rational(const std::string &s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos)
    return Rational(Integer(s));
  return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
}

void ac1(const Graph &g, const nlohmann::json &fx) {
  std::vector<SpanningTree> trees;
  const double t = median_seconds([&] { trees = spanning_trees(g); });
  std::vector<std::string> got;
  for (const auto &tr : trees) {
    std::string s;
    for (EdgeId e : tr.edge_indices)
      s += g.name(e);
    got.push_back(s);
  }
  const auto want = fx["spanning_trees"].get<std::vector<std::string>>();
  const bool exact = got == want;
  report("AC1", exact && t < 1e-3,
         "spanning trees: " + std::to_string(got.size()) +
             " trees, exact label-set match " + (exact ? "yes" : "NO") +
             "; median " + ms(t) + " (limit 1 ms)");
}

void ac2(const Graph &g, const nlohmann::json &fx) {
  MultiPoly p(6);
  const double t = median_seconds([&] { p = kappa_polynomial(g); });
  const auto want =
      parse_polynomial(fx["polynomial"].get<std::string>(), 6, names_of(g));
  std::size_t classical = 0, corrections = 0;
  bool unit = true;
  for (const auto &m : p.monomials()) {
    (m.exponents[kKappa] ? corrections : classical) += 1;
    unit = unit && m.coefficient == 1;
  }
  const bool exact = p == want;
  report("AC2", exact && classical == 16 && corrections == 16 && unit && t < 1e-2,
         "polynomial: exact symbolic equality " + std::string(exact ? "yes" : "NO") +
             ", " + std::to_string(classical) + " classical + " +
             std::to_string(corrections) + " k-terms, all coefficients 1 " +
             (unit ? "yes" : "NO") + "; median " + ms(t) + " (limit 10 ms)");
}

void ac3(const Graph &g, const nlohmann::json &fx) {
  const EdgeId e = g.edge_by_label(fx["deletion"]["edge"].get<std::string>());
  const auto dc = deletion_contraction_sides(g, e);
  const bool del = dc.deletion ==
                   parse_polynomial(fx["deletion"]["polynomial"].get<std::string>(),
                                    5, names_of(delete_edge(g, e)));
  const bool con =
      dc.contraction ==
      parse_polynomial(fx["contraction"]["polynomial"].get<std::string>(), 5,
                       names_of(contract_edge(g, e)));
  std::size_t equal_edges = 0;
  for (EdgeId x = 0; x < g.edge_count(); ++x)
    equal_edges += deletion_contraction_sides(g, x).equal;
  const auto names = names_of(g);
  const auto parts = kappa_polynomial(g).coefficients_in(e + 1);
  const bool expansion =
      parts.size() == 3 &&
      parts[0] == parse_polynomial(fx["deletion"]["polynomial"].get<std::string>(),
                                   6, names) &&
      parts[1] == parse_polynomial(fx["expansion"]["F"].get<std::string>(), 6, names) &&
      parts[2] == parse_polynomial(fx["expansion"]["E"].get<std::string>(), 6, names);
  report("AC3", del && con && equal_edges == g.edge_count() && expansion,
         std::string("deletion/contraction: U(G\\e) ") + (del ? "matches" : "DIFFERS") +
             ", U(G/e) " + (con ? "matches" : "DIFFERS") + ", identity holds on " +
             std::to_string(equal_edges) + "/" + std::to_string(g.edge_count()) +
             " edges, [G,F,E] " + (expansion ? "matches" : "DIFFERS") +
             " (exact)");
}

void ac4(const Graph &g) {
  const MultiPoly p = kappa_polynomial(g).substitute(kKappa, Integer(0));
  std::string detail;
  bool all = true;
  for (const auto &[pp, k] : kPublishedFields) {
    const Field f = make_field(pp, k);
    const Integer q = f.q();
    const Integer want = q * q * q * q * q + q * q * q - q * q;
    const Integer got = count_points_fibered(p, f).count;
    // The brute-force oracle is ground truth; it must agree too.
    const Integer oracle = q <= 7 ? Integer(oracle::count_zeros_slow(p, f))
                                  : count_points_naive(p, f).count;
    const bool ok = got == want && oracle == got;
    all = all && ok;
    detail += (detail.empty() ? "" : ", ") + std::string("q=") + q.str() + ":" +
              got.str() + (ok ? "" : "(expected " + want.str() + ", oracle " +
                                         oracle.str() + ")");
  }
  const Field f11 = make_field(11);
  const double t1 = median_seconds(
      [&] { (void)count_points_fibered(p, f11, std::nullopt, 1); });
  const double t8 = median_seconds(
      [&] { (void)count_points_fibered(p, f11, std::nullopt, 8); });
  report("AC4", all && t1 < 5.0 && t8 < 1.0,
         "classical counts = q^5 + q^3 - q^2 exactly [" + detail +
             "]; q=11 median " + ms(t1) + " on 1 thread (limit 5 s), " + ms(t8) +
             " on 8 threads (limit 1 s)");
}

void ac5(const Graph &g, const nlohmann::json &fx) {
  const auto start = Clock::now();
  std::vector<Field> fields;
  for (const auto &[pp, k] : kPublishedFields)
    fields.push_back(make_field(pp, k));
  const auto recs = count_series(kappa_polynomial(g), fields, 1, 1);
  std::vector<DataPoint> pts;
  for (const auto &r : recs)
    pts.push_back({r.q, r.count});
  const auto fit = interpolate(pts);
  const auto verdict = check_integrality(fit);
  const double t = seconds_since(start);

  std::vector<Rational> want;
  for (const auto &s : fx["fits"]["1"]["coefficients"])
    want.push_back(parse_rational(s.get<std::string>()));
  std::size_t matched = 0;
  for (std::size_t i = 0; i < want.size(); ++i)
    matched += i < fit.coefficients.size() && fit.coefficients[i] == want[i];
  // Attribute a mismatch to the counts or to the fit.
  std::string stage;
  if (matched != want.size()) {
    bool counts_on_fit = true;
    for (const auto &pt : pts)
      counts_on_fit = counts_on_fit && evaluate(want, Rational(pt.q)) == Rational(pt.count);
    stage = counts_on_fit ? " [divergence in the fit stage]"
                          : " [divergence in the counts stage]";
  }
  std::string counts;
  for (const auto &pt : pts)
    counts += (counts.empty() ? "" : ",") + pt.count.str();
  const bool not_countable = !verdict.polynomially_countable_consistent;
  report("AC5", matched == 6 && not_countable && t < 10.0,
         "k=1 counts [" + counts + "] interpolate to " + std::to_string(matched) +
             "/6 published coefficients exactly (zero tolerance)" + stage +
             ", verdict \"" + verdict_label(verdict) + "\"; total " + ms(t) +
             " (limit 10 s)");
}

void ac6() {
  std::mt19937_64 rng(20261015);
  std::vector<Graph> graphs{oracle::triangle(), oracle::theta(),
                            oracle::tetrahedron(), oracle::prism()};
  for (int i = 0; i < 12; ++i)
    graphs.push_back(oracle::random_connected_graph(rng, 2 + rng() % 4, rng() % 4));
  for (int i = 0; i < 4; ++i)
    graphs.push_back(oracle::random_trivalent_graph(rng, i % 2 ? 4 : 6));

  // 1. edge-order permutation invariance
  int perm_cases = 0, perm_ok = 0;
  for (int r = 0; r < 120; ++r, ++perm_cases) {
    const Graph &g = graphs[static_cast<std::size_t>(r) % graphs.size()];
    std::vector<EdgeId> order(g.edge_count());
    std::iota(order.begin(), order.end(), EdgeId{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<VarId> back;
    for (EdgeId old : order)
      back.push_back(old + 1);
    perm_ok += kappa_polynomial(permute_edges(g, order))
                   .remap_t_vars(back, g.edge_count()) == kappa_polynomial(g);
  }

  // 2. fibered vs naive at every q <= 9
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> small{
      {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}};
  std::vector<MultiPoly> polys;
  {
    const auto u = kappa_polynomial(oracle::tetrahedron());
    polys = {u.substitute(kKappa, Integer(0)), u.substitute(kKappa, Integer(1)),
             classical_polynomial(oracle::tetrahedron(), Convention::complement)};
    for (int i = 0; i < 12; ++i) {
      const std::size_t n = 1 + rng() % 3;
      MultiPoly p(n);
      for (int t = 0; t < 4; ++t) {
        Exponents e(n + 1, 0);
        for (std::size_t v = 1; v <= n; ++v)
          e[v] = static_cast<std::uint32_t>(rng() % 4);
        p.add_term(std::move(e), Integer(static_cast<std::int64_t>(rng() % 9) - 4));
      }
      polys.push_back(p);
    }
  }
  int count_cases = 0, count_ok = 0;
  for (const auto &p : polys)
    for (const auto &[pp, k] : small) {
      const Field f = make_field(pp, k);
      ++count_cases;
      count_ok += count_points_fibered(p, f).count == count_points_naive(p, f).count;
    }

  // 3. matrix-tree identity, 20 random points per graph
  constexpr std::uint64_t P = 2305843009213693951ULL;
  int mt_cases = 0, mt_ok = 0;
  for (const auto &g : graphs) {
    const auto psi = classical_polynomial(g, Convention::complement);
    for (int r = 0; r < 20; ++r, ++mt_cases) {
      std::vector<std::uint64_t> inv, point{0};
      std::uint64_t prod = 1;
      for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const std::uint64_t t = 1 + rng() % (P - 1);
        point.push_back(t);
        inv.push_back(oracle::pow_mod(t, P - 2, P));
        prod = oracle::mul_mod(prod, t, P);
      }
      mt_ok += psi.evaluate_mod(point, P) ==
               oracle::mul_mod(oracle::weighted_minor_det(g, inv, P), prod, P);
    }
  }

  // 4. k = 0 specialization is the classical constructor
  int k0_ok = 0;
  for (const auto &g : graphs)
    k0_ok += kappa_polynomial(g).substitute(kKappa, Integer(0)) ==
             classical_polynomial(g, Convention::tree);

  // 5. GF(8) counts across every irreducible cubic modulus
  const auto moduli = irreducible_polynomials(2, 3);
  int gf8_ok = 0;
  for (const auto &p : polys) {
    const Integer base = count_points_fibered(p, Field::make(2, moduli.front())).count;
    bool same = true;
    for (const auto &m : moduli)
      same = same && count_points_fibered(p, Field::make(2, m)).count == base;
    gf8_ok += same;
  }

  // 6. interpolation exactness on its own inputs
  int interp_cases = 0, interp_ok = 0;
  for (int r = 0; r < 120; ++r, ++interp_cases) {
    std::vector<DataPoint> pts;
    const std::size_t m = 2 + rng() % 7;
    for (std::size_t i = 0; i < m; ++i)
      pts.push_back({Integer(2 + 2 * static_cast<std::int64_t>(i) + (r % 3)),
                     Integer(static_cast<std::int64_t>(rng() % 100001) - 50000)});
    const auto fit = interpolate(pts);
    bool exact = true;
    for (std::size_t i = 0; i < m; ++i)
      exact = exact && fit.residuals[i] == 0 &&
              evaluate(fit, Rational(pts[i].q)) == Rational(pts[i].count);
    interp_ok += exact;
  }

  const auto frac = [](int ok, int n) {
    return std::to_string(ok) + "/" + std::to_string(n);
  };
  const bool pass = perm_ok == perm_cases && perm_cases >= 100 &&
                    count_ok == count_cases && mt_ok == mt_cases &&
                    k0_ok == static_cast<int>(graphs.size()) &&
                    gf8_ok == static_cast<int>(polys.size()) &&
                    interp_ok == interp_cases && interp_cases >= 100;
  report("AC6", pass,
         "properties: edge-order invariance " + frac(perm_ok, perm_cases) +
             ", fibered = naive for q <= 9 " + frac(count_ok, count_cases) +
             ", matrix-tree at 20 points x " + std::to_string(graphs.size()) +
             " graphs " + frac(mt_ok, mt_cases) + ", k=0 = classical " +
             frac(k0_ok, static_cast<int>(graphs.size())) + ", GF(8) invariant over " +
             std::to_string(moduli.size()) + " irreducible cubics " +
             frac(gf8_ok, static_cast<int>(polys.size())) +
             ", interpolation residuals zero " + frac(interp_ok, interp_cases) +
             " (all exact)");
}

void ac7() {
  std::size_t vertices = 0, passed = 0, recovered = 0;
  std::string first;
  for (const auto &[name, g] :
       std::vector<std::pair<std::string, Graph>>{{"tetrahedron", oracle::tetrahedron()},
                                                  {"prism", oracle::prism()}}) {
    const auto base = kappa_polynomial(g);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      ++vertices;
      const auto check = split_transform_check(g, v);
      passed += check.passed;
      if (!check.passed && first.empty())
        first = name + " vertex " + std::to_string(v) + ": " +
                check.first_mismatch.value_or("?");
      recovered += kappa_polynomial(collapse_triangle(check.split.graph,
                                                      check.split.triangle)) == base;
    }
  }
  report("AC7", passed == vertices && recovered == vertices,
         "split/collapse: transform check passes on " + std::to_string(passed) +
             "/" + std::to_string(vertices) +
             " trivalent vertices of the tetrahedron and prism, collapse recovers "
             "the polynomial exactly on " +
             std::to_string(recovered) + "/" + std::to_string(vertices) +
             (first.empty() ? "" : "; first failure " + first));
}

} // namespace

int main() {
  const auto fx = load_fixture();
  const Graph g = graph_from_json(fx["graph"]);
  ac1(g, fx);
  ac2(g, fx);
  ac3(g, fx);
  ac4(g);
  ac5(g, fx);
  ac6();
  ac7();
  std::cout << (failures == 0 ? "ALL ACCEPTANCE CRITERIA PASS"
                              : std::to_string(failures) + " CRITERIA FAIL")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
