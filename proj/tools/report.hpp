#pragma once

// Pipeline pieces behind the kgraph command line: field lists, polynomial
// selection, the reproduction report and its fixture comparison.

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgraph/kgraph.hpp"

namespace kgraph::cli {

using nlohmann::json;

/// Parse "2,3,4,5,7,11" or "2^2,3" into fields. A bare q must be a prime
/// power; it is split into p^k.
[[nodiscard]] inline std::vector<Field> parse_fields(const std::string &csv) {
  std::vector<Field> out;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty())
      throw Error("empty entry in field list '" + csv + "'");
    std::uint64_t p = 0, k = 1;
    try {
      if (auto caret = item.find('^'); caret != std::string::npos) {
        p = std::stoull(item.substr(0, caret));
        k = std::stoull(item.substr(caret + 1));
      } else {
        const std::uint64_t q = std::stoull(item);
        if (q < 2)
          throw NotPrime(item + " is not a prime power");
        p = q;
        for (std::uint64_t d = 2; d * d <= q; ++d)
          if (q % d == 0) {
            p = d;
            break;
          }
        std::uint64_t r = q;
        k = 0;
        while (r % p == 0) {
          r /= p;
          ++k;
        }
        if (r != 1)
          throw NotPrime(item + " is not a prime power");
      }
    } catch (const std::logic_error &) {
      throw Error("cannot parse field '" + item + "'");
    }
    if (p >= (1ULL << 20U) || k == 0 || k > 16)
      throw FieldTooLarge("field '" + item + "' is out of range");
    out.push_back(make_field(static_cast<std::uint32_t>(p),
                             static_cast<std::uint32_t>(k)));
  }
  if (out.empty())
    throw Error("field list is empty");
  return out;
}

/// [k, edge names...] for rendering polynomials of g.
[[nodiscard]] inline std::vector<std::string> var_names(const Graph &g) {
  auto names = g.names();
  names.insert(names.begin(), "k");
  return names;
}

[[nodiscard]] inline std::string tree_name(const Graph &g,
                                           const SpanningTree &t) {
  std::string s;
  const bool compact = g.has_labels() &&
                       std::all_of(g.labels().begin(), g.labels().end(),
                                   [](const auto &l) { return l.size() == 1; });
  for (EdgeId e : t.edge_indices)
    s += (s.empty() || compact ? "" : ",") + g.name(e);
  return s;
}

[[nodiscard]] inline std::vector<std::string> tree_names(const Graph &g) {
  std::vector<std::string> out;
  for (const auto &t : spanning_trees(g))
    out.push_back(tree_name(g, t));
  return out;
}

/// The polynomial a command works on: the classical complement polynomial,
/// or the k-polynomial (symbolic, or specialized when kappa is given).
[[nodiscard]] inline MultiPoly
select_polynomial(const Graph &g, Convention convention,
                  std::optional<std::int64_t> kappa) {
  if (convention == Convention::complement)
    return classical_polynomial(g, Convention::complement);
  MultiPoly p = kappa_polynomial(g);
  if (kappa)
    p = p.substitute(kKappa, Integer(*kappa));
  return p;
}

/// Same edge list, labels and edge order as the fixture graph, up to a
/// renumbering of vertices.
[[nodiscard]] inline bool same_labeled_graph(const Graph &g, const Graph &f) {
  if (g.vertex_count() != f.vertex_count() || g.labels() != f.labels() ||
      g.edge_count() != f.edge_count())
    return false;
  std::vector<VertexId> perm(g.vertex_count());
  std::iota(perm.begin(), perm.end(), VertexId{0});
  do {
    bool ok = true;
    for (EdgeId e = 0; ok && e < g.edge_count(); ++e) {
      const Edge &a = g.edges()[e], &b = f.edges()[e];
      const VertexId s = perm[a.src], d = perm[a.dst];
      ok = (s == b.src && d == b.dst) || (s == b.dst && d == b.src);
    }
    if (ok)
      return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

[[nodiscard]] inline Rational parse_rational(const std::string &s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos)
    return Rational(Integer(s));
  return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
}

struct Report {
  json document;
  bool matched = true;
};

class FixtureChecker {
public:
  void check(const std::string &name, bool pass, const std::string &detail) {
    details_.push_back({{"check", name}, {"pass", pass}, {"detail", detail}});
    matched_ = matched_ && pass;
  }
  void note(const std::string &name, const std::string &detail) {
    details_.push_back({{"check", name}, {"pass", nullptr}, {"detail", detail}});
  }
  [[nodiscard]] bool matched() const { return matched_; }
  [[nodiscard]] json to_json() const {
    return {{"matched", matched_}, {"details", details_}};
  }

private:
  json details_ = json::array();
  bool matched_ = true;
};

/// End to end: polynomial, counts, interpolation, verdict, and a comparison
/// with the embedded fixture when the input is the fixture graph.
[[nodiscard]] inline Report
build_report(const Graph &g, std::int64_t kappa, Convention convention,
             const std::vector<Field> &fields, unsigned threads,
             const json &fixture, bool record_timing) {
  const auto names = var_names(g);
  const MultiPoly symbolic = select_polynomial(g, convention, std::nullopt);
  auto counts = count_series(symbolic, fields, kappa, threads);
  if (!record_timing)
    for (auto &r : counts)
      r.wall_time = 0.0;

  std::vector<DataPoint> points;
  for (const auto &r : counts)
    points.push_back({r.q, r.count});

  Report report;
  json counts_json = json::array();
  for (const auto &r : counts)
    counts_json.push_back(to_json(r));
  report.document["polynomial"] = symbolic.to_string(names);
  report.document["kappa"] = kappa;
  report.document["convention"] =
      convention == Convention::tree ? "tree" : "complement";
  report.document["counts"] = counts_json;

  std::optional<RationalFit> fit;
  std::optional<Verdict> verdict;
  if (points.size() >= 2) {
    try {
      fit = interpolate(points);
      verdict = check_integrality(*fit);
      report.document["fit"] = to_json(*fit, *verdict);
      report.document["fit_text"] = fit_to_string(fit->coefficients);
      report.document["verdict"] = verdict_label(*verdict);
      report.document["reason"] = verdict->reason;
    } catch (const DuplicateAbscissa &ex) {
      report.document["fit"] = nullptr;
      report.document["verdict"] = std::string("no fit: ") + ex.what();
    }
  } else {
    report.document["fit"] = nullptr;
    report.document["verdict"] = "no fit: at least two fields are required";
  }

  FixtureChecker fx;
  const Graph fixture_graph = graph_from_json(fixture.at("graph"));
  if (!same_labeled_graph(g, fixture_graph)) {
    fx.note("fixture", "no published values for this graph");
    report.document["fixtures"] = fx.to_json();
    return report;
  }

  const auto fnames = var_names(fixture_graph);
  const std::size_t n = g.edge_count();
  const MultiPoly upoly = kappa_polynomial(g);
  fx.check("polynomial",
           upoly == parse_polynomial(fixture.at("polynomial").get<std::string>(),
                                     n, fnames),
           "k-corrected polynomial against the published display");
  fx.check("spanning_trees",
           tree_names(g) ==
               fixture.at("spanning_trees").get<std::vector<std::string>>(),
           "16 spanning trees as label sets");

  {
    const auto &del = fixture.at("deletion");
    const EdgeId e = g.edge_by_label(del.at("edge").get<std::string>());
    const auto dc = deletion_contraction_sides(g, e);
    const Graph gd = delete_edge(g, e), gc = contract_edge(g, e);
    fx.check("deletion", dc.deletion == parse_polynomial(
                                            del.at("polynomial").get<std::string>(),
                                            n - 1, var_names(gd)),
             "U(G \\ " + g.name(e) + ")");
    fx.check("deletion_trees",
             tree_names(gd) == del.at("trees").get<std::vector<std::string>>(),
             "spanning trees of G \\ " + g.name(e));
    const auto &con = fixture.at("contraction");
    fx.check("contraction",
             dc.contraction ==
                 parse_polynomial(con.at("polynomial").get<std::string>(),
                                  n - 1, var_names(gc)),
             "U(G / " + g.name(e) + ")");
    fx.check("contraction_trees",
             tree_names(gc) == con.at("trees").get<std::vector<std::string>>(),
             "spanning trees of G / " + g.name(e));
    const auto coeffs = upoly.coefficients_in(e + 1);
    const auto &ex = fixture.at("expansion");
    fx.check("expansion",
             coeffs.size() == 3 &&
                 coeffs[0] == parse_polynomial(del.at("polynomial").get<std::string>(), n, fnames) &&
                 coeffs[1] == parse_polynomial(ex.at("F").get<std::string>(), n, fnames) &&
                 coeffs[2] == parse_polynomial(ex.at("E").get<std::string>(), n, fnames),
             "U = G + e*F + e^2*E");
    fx.check("deletion_contraction", dc.equal,
             "U(G) = U(G \\ e) + e . U(G / e)");
  }

  const std::string key = std::to_string(kappa);
  std::vector<Integer> qs;
  for (const auto &f : fields)
    qs.push_back(f.q());
  const auto fixture_qs = fixture.at("fields").get<std::vector<int>>();
  const bool same_fields =
      qs.size() == fixture_qs.size() &&
      std::equal(qs.begin(), qs.end(), fixture_qs.begin(),
                 [](const Integer &a, int b) { return a == b; });
  if (convention != Convention::tree || !fixture.at("fits").contains(key) ||
      !same_fields || !fit) {
    fx.note("fit", "no published fit for kappa = " + key +
                       " with these fields and convention");
  } else {
    const auto &pub = fixture.at("fits").at(key);
    std::vector<Rational> expected;
    for (const auto &s : pub.at("coefficients"))
      expected.push_back(parse_rational(s.get<std::string>()));
    while (expected.size() > 1 && expected.back() == 0)
      expected.pop_back();

    // Attribute any disagreement to the counts or to the fit.
    std::string diverge;
    for (const auto &pt : points) {
      const Rational want = evaluate(expected, pt.q);
      if (want != Rational(pt.count)) {
        diverge += (diverge.empty() ? "" : "; ") + std::string("q = ") +
                   pt.q.str() + ": counted " + pt.count.str() +
                   ", published fit gives " + want.str();
      }
    }
    fx.check("counts", diverge.empty(),
             diverge.empty() ? "every count lies on the published fit"
                             : "counts diverge: " + diverge);
    const bool fit_ok = fit->coefficients == expected;
    fx.check("fit", fit_ok,
             fit_ok ? "interpolant equals " + fit_to_string(expected)
                    : "interpolant " + fit_to_string(fit->coefficients) +
                          " differs from published " + fit_to_string(expected));
    const bool want_countable = pub.at("polynomially_countable").get<bool>();
    fx.check("verdict",
             verdict->polynomially_countable_consistent == want_countable,
             verdict_label(*verdict));
  }
  report.matched = fx.matched();
  report.document["fixtures"] = fx.to_json();
  return report;
}

} // namespace kgraph::cli
