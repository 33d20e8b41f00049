// kgraph: graph polynomials, point counts over finite fields and the
// polynomial-countability test from the command line.
//
//   kgraph poly   --graph G [--kappa K] [--convention tree|complement]
//   kgraph count  --graph G [--kappa K] [--fields 2,3,4] [--threads N]
//   kgraph report --graph G [--kappa K] [--fields ...]
//   kgraph delcon --graph G --edge LABEL
//   kgraph split  --graph G --vertex V

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "report.hpp"

namespace {

using namespace kgraph;
using nlohmann::json;

struct RunConfig {
  std::string graph_path;
  std::int64_t kappa = 1;
  bool kappa_given = false;
  std::string convention = "tree";
  std::string fields = "2,3,4,5,7,11";
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  std::string output_path;
  std::string format = "text";
  bool record_timing = false;
  std::string fixture_path;
  std::string edge_label;
  std::size_t vertex = 0;
};

Convention convention_of(const RunConfig &cfg) {
  return cfg.convention == "complement" ? Convention::complement
                                        : Convention::tree;
}

void emit(const RunConfig &cfg, const std::string &body) {
  std::cout << body;
  if (!cfg.output_path.empty()) {
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out)
      throw Error("cannot write " + cfg.output_path);
    out << body;
  }
}

int cmd_poly(const RunConfig &cfg) {
  const Graph g = load_graph(cfg.graph_path);
  const auto names = cli::var_names(g);
  std::optional<std::int64_t> kappa;
  if (cfg.kappa_given)
    kappa = cfg.kappa;
  const MultiPoly p = cli::select_polynomial(g, convention_of(cfg), kappa);
  const auto trees = cli::tree_names(g);
  std::optional<std::uint64_t> bound;
  std::string bound_note;
  try {
    bound = degree_bound(g);
  } catch (const ValenceError &ex) {
    bound_note = ex.what();
  }

  std::ostringstream out;
  if (cfg.format == "json") {
    json doc{{"polynomial", p.to_string()},
             {"labeled", p.to_string(names)},
             {"variables", names},
             {"kappa", kappa ? json(*kappa) : json(nullptr)},
             {"convention", cfg.convention},
             {"terms", p.size()},
             {"tree_count", trees.size()},
             {"spanning_trees", trees},
             {"degree_bound", bound ? json(*bound) : json(nullptr)}};
    out << doc.dump(2) << "\n";
  } else {
    out << p.to_string() << "\n";
    if (g.has_labels())
      out << "labeled: " << p.to_string(names) << "\n";
    out << p.size() << " terms\n";
    out << trees.size() << " spanning trees:";
    for (const auto &t : trees)
      out << " " << t;
    out << "\n";
    if (bound)
      out << "degree bound: " << *bound << "\n";
    else
      out << "degree bound: undefined (" << bound_note << ")\n";
  }
  emit(cfg, out.str());
  return 0;
}

std::string text_row(const CountRecord &r) {
  std::ostringstream s;
  s << std::setw(6) << r.q << std::setw(4) << r.p << std::setw(3) << r.k
    << std::setw(24) << r.count.str() << std::setw(7) << r.kappa_value << "  "
    << to_string(r.method) << "  " << std::fixed << std::setprecision(6)
    << r.wall_time << "\n";
  return s.str();
}

const char *kTextHeader = "     q   p  k                   count  kappa  "
                          "method  wall_time_s\n";

int cmd_count(const RunConfig &cfg) {
  const Graph g = load_graph(cfg.graph_path);
  const auto fields = cli::parse_fields(cfg.fields);
  const MultiPoly p =
      cli::select_polynomial(g, convention_of(cfg), std::nullopt);

  // Records stream to stdout as they complete; the file gets the full list.
  std::vector<CountRecord> all;
  if (cfg.format == "csv")
    std::cout << kCountCsvHeader << "\n";
  else if (cfg.format == "text")
    std::cout << kTextHeader;
  for (const auto &f : fields) {
    CountRecord r = count_series(p, {f}, cfg.kappa, cfg.threads).front();
    if (cfg.format == "json")
      std::cout << to_json(r).dump() << "\n";
    else if (cfg.format == "csv")
      std::cout << to_csv_row(r) << "\n";
    else
      std::cout << text_row(r);
    std::cout.flush();
    all.push_back(std::move(r));
  }

  if (!cfg.output_path.empty()) {
    if (!cfg.record_timing)
      for (auto &r : all)
        r.wall_time = 0.0;
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out)
      throw Error("cannot write " + cfg.output_path);
    if (cfg.format == "json") {
      json arr = json::array();
      for (const auto &r : all)
        arr.push_back(to_json(r));
      out << arr.dump(2) << "\n";
    } else if (cfg.format == "csv") {
      out << kCountCsvHeader << "\n";
      for (const auto &r : all)
        out << to_csv_row(r) << "\n";
    } else {
      out << kTextHeader;
      for (const auto &r : all)
        out << text_row(r);
    }
  }
  return 0;
}

std::string report_text(const json &doc) {
  std::ostringstream out;
  out << "polynomial: " << doc["polynomial"].get<std::string>() << "\n";
  out << "kappa: " << doc["kappa"] << "  convention: "
      << doc["convention"].get<std::string>() << "\n\n";
  out << "     q                   count\n";
  for (const auto &r : doc["counts"])
    out << std::setw(6) << r["q"].get<int>() << std::setw(24)
        << r["count"].get<std::string>() << "\n";
  out << "\n";
  if (doc.contains("fit_text"))
    out << "interpolant: " << doc["fit_text"].get<std::string>() << "\n";
  out << "verdict: " << doc["verdict"].get<std::string>() << "\n";
  if (doc.contains("reason"))
    out << "  " << doc["reason"].get<std::string>() << "\n";
  out << "\nfixture comparison:\n";
  for (const auto &d : doc["fixtures"]["details"]) {
    const auto &pass = d["pass"];
    out << "  [" << (pass.is_null() ? "n/a " : pass.get<bool>() ? "PASS" : "FAIL")
        << "] " << d["check"].get<std::string>() << ": "
        << d["detail"].get<std::string>() << "\n";
  }
  out << (doc["fixtures"]["matched"].get<bool>() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

int cmd_report(const RunConfig &cfg) {
  const Graph g = load_graph(cfg.graph_path);
  const auto fields = cli::parse_fields(cfg.fields);
  json fixture;
  if (cfg.fixture_path.empty()) {
    fixture = json::parse(cli::kTetrahedronFixture);
  } else {
    std::ifstream in(cfg.fixture_path);
    if (!in)
      throw Error("cannot read " + cfg.fixture_path);
    try {
      fixture = json::parse(in);
    } catch (const json::parse_error &ex) {
      throw Error(cfg.fixture_path + ": " + ex.what());
    }
  }
  const auto report =
      cli::build_report(g, cfg.kappa, convention_of(cfg), fields, cfg.threads,
                        fixture, cfg.record_timing);
  emit(cfg, cfg.format == "json" ? report.document.dump(2) + "\n"
                                 : report_text(report.document));
  return report.matched ? 0 : 1;
}

EdgeId find_edge(const Graph &g, const std::string &name) {
  const auto names = g.names();
  for (EdgeId e = 0; e < names.size(); ++e)
    if (names[e] == name)
      return e;
  throw UnknownEdgeLabel("no edge named '" + name + "'");
}

int cmd_delcon(const RunConfig &cfg) {
  const Graph g = load_graph(cfg.graph_path);
  const EdgeId e = find_edge(g, cfg.edge_label);
  const auto dc = deletion_contraction_sides(g, e);
  const auto names = cli::var_names(g);
  const auto del_names = cli::var_names(delete_edge(g, e));
  const auto con_names = cli::var_names(contract_edge(g, e));

  std::ostringstream out;
  if (cfg.format == "json") {
    json doc{{"edge", g.name(e)},
             {"deletion", dc.deletion.to_string(del_names)},
             {"contraction", dc.contraction.to_string(con_names)},
             {"lhs", dc.lhs.to_string(names)},
             {"rhs", dc.rhs.to_string(names)},
             {"equal", dc.equal},
             {"literal_action_equal", dc.literal_equal}};
    out << doc.dump(2) << "\n";
  } else {
    out << "edge: " << g.name(e) << "\n"
        << "U(G \\ e): " << dc.deletion.to_string(del_names) << "\n"
        << "U(G / e): " << dc.contraction.to_string(con_names) << "\n"
        << "lhs U(G): " << dc.lhs.to_string(names) << "\n"
        << "rhs U(G \\ e) + e.U(G / e): " << dc.rhs.to_string(names) << "\n"
        << (dc.equal ? "equal" : "not equal") << "\n";
    if (!dc.literal_equal)
      out << "note: multiplying the correction of U(G / e) itself (merged-"
             "vertex pairs included) does not reproduce U(G); difference "
          << (dc.lhs - dc.literal_rhs).to_string(names) << "\n";
  }
  emit(cfg, out.str());
  return dc.equal ? 0 : 1;
}

int cmd_split(const RunConfig &cfg) {
  const Graph g = load_graph(cfg.graph_path);
  const auto check = split_transform_check(g, cfg.vertex);
  std::ostringstream out;
  if (cfg.format == "json") {
    json groups = json::array();
    for (const auto &grp : check.groups)
      groups.push_back({{"tree", cli::tree_name(g, grp.parent)},
                        {"valence", grp.valence},
                        {"members", grp.members},
                        {"classical_ok", grp.classical_ok},
                        {"correction_form", grp.form}});
    out << json{{"vertex", check.vertex},
                {"passed", check.passed},
                {"extra_trees", check.extra_trees},
                {"collapse_recovers", check.collapse_recovers},
                {"groups", groups}}
               .dump(2)
        << "\n";
  } else {
    out << "split vertex " << check.vertex << " into a triangle\n";
    for (const auto &grp : check.groups)
      out << "  tree " << cli::tree_name(g, grp.parent) << "  valence "
          << grp.valence << "  classical " << (grp.classical_ok ? "ok" : "MISMATCH")
          << "  correction " << grp.form << "\n";
    out << "trees of the split graph outside the groups: " << check.extra_trees
        << "\n"
        << "collapse recovers the graph: "
        << (check.collapse_recovers ? "yes" : "no") << "\n"
        << (check.passed ? "PASS" : "FAIL: " + check.first_mismatch.value_or(""))
        << "\n";
  }
  emit(cfg, out.str());
  return check.passed ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Kirchhoff graph polynomials with k-correction, finite-field "
               "point counts and polynomial-countability fits"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App *sub) {
    sub->add_option("--graph", cfg.graph_path, "Graph JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--convention", cfg.convention, "tree or complement")
        ->check(CLI::IsMember({"tree", "complement"}));
    sub->add_option("--out", cfg.output_path, "Also write the output here");
    sub->add_option("--format", cfg.format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
  };
  auto counting = [&](CLI::App *sub) {
    sub->add_option("--kappa", cfg.kappa, "Value of k (default 1)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--fields", cfg.fields,
                    "Comma-separated prime powers (q or p^k)");
    sub->add_option("--threads", cfg.threads, "Worker threads")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--record-timing", cfg.record_timing,
                  "Keep measured wall times in the output file");
  };

  auto *poly = app.add_subcommand("poly", "Print the graph polynomial");
  common(poly);
  auto *kappa_opt =
      poly->add_option("--kappa", cfg.kappa, "Specialize k (default symbolic)")
          ->check(CLI::NonNegativeNumber);

  auto *count = app.add_subcommand("count", "Count points over finite fields");
  common(count);
  counting(count);

  auto *report = app.add_subcommand(
      "report", "Counts, exact fit, verdict and fixture comparison");
  common(report);
  counting(report);
  report->add_option("--fixture", cfg.fixture_path,
                     "Compare against this fixture instead of the built-in one")
      ->check(CLI::ExistingFile);

  auto *delcon =
      app.add_subcommand("delcon", "Check the deletion-contraction identity");
  common(delcon);
  delcon->add_option("--edge", cfg.edge_label, "Edge label")->required();

  auto *split = app.add_subcommand(
      "split", "Check the vertex split transform of the polynomial");
  common(split);
  split->add_option("--vertex", cfg.vertex, "Trivalent vertex index")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &ex) {
    // --help exits 0; every usage error exits 2 like the other errors.
    return app.exit(ex) == 0 ? 0 : 2;
  }
  cfg.kappa_given = kappa_opt->count() > 0;

  try {
    if (*poly)
      return cmd_poly(cfg);
    if (*count)
      return cmd_count(cfg);
    if (*report)
      return cmd_report(cfg);
    if (*delcon)
      return cmd_delcon(cfg);
    if (*split)
      return cmd_split(cfg);
  } catch (const kgraph::Error &ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception &ex) {
    std::cerr << "error: fixture: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
