// lgt: command-line front end for edge-colored loop-signed graphs.
//
// Exit codes: 0 success, 1 negative verdict (not transplantable, mismatch,
// invalid graph, failed check), 2 usage or parse error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lgt/cospectral.hpp"
#include "lgt/io.hpp"
#include "lgt/linegraph.hpp"
#include "lgt/search.hpp"
#include "lgt/transplant.hpp"
#include "lgt/triangle_pair.hpp"

using namespace lgt;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ColoredGraph load_graph(const std::string& path) {
  try {
    return io::parse_graph(read_file(path));
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

int color_by_name(const ColoredGraph& g, const std::string& name) {
  for (int c = 0; c < g.k(); ++c)
    if (g.color_name(c) == name) return c;
  try {
    std::size_t used = 0;
    int idx = std::stoi(name, &used);
    if (used == name.size() && idx >= 1 && idx <= g.k()) return idx - 1;
  } catch (const std::exception&) {
  }
  throw ParseError("unknown color '" + name + "'");
}

// "s=1,w=2,z=3" (vc) or "s+w=1,w+z=2,s+z=3" (ec); a bare list "1,2,3" is
// taken in library color order.
std::vector<Rational> parse_weights(const ColoredGraph& g, Flavor flavor, const std::string& spec) {
  const std::size_t count =
      flavor == Flavor::vc ? static_cast<std::size_t>(g.k()) : static_cast<std::size_t>(g.k() * (g.k() - 1) / 2);
  std::vector<std::string> items;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) items.push_back(item);
  std::vector<Rational> out(count);
  std::vector<bool> seen(count, false);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& item = items[i];
    auto eq = item.find('=');
    std::size_t slot = i;
    std::string value = item;
    if (eq != std::string::npos) {
      const std::string key = item.substr(0, eq);
      value = item.substr(eq + 1);
      if (flavor == Flavor::vc) {
        slot = static_cast<std::size_t>(color_by_name(g, key));
      } else {
        auto plus = key.find('+');
        if (plus == std::string::npos) throw ParseError("edge-colored weight key '" + key + "' must look like c+d");
        int c = color_by_name(g, key.substr(0, plus));
        int d = color_by_name(g, key.substr(plus + 1));
        slot = pair_index(g.k(), c, d);
      }
    }
    if (slot >= count) throw ParseError("too many weights");
    if (seen[slot]) throw ParseError("weight given twice: '" + item + "'");
    out[slot] = parse_rational(value);
    seen[slot] = true;
  }
  for (std::size_t s = 0; s < count; ++s)
    if (!seen[s]) throw MissingWeight("missing weight for line-graph color " + std::to_string(s + 1));
  return out;
}

Flavor parse_flavor(const std::string& s) {
  if (s == "vc") return Flavor::vc;
  if (s == "ec") return Flavor::ec;
  throw ParseError("flavor must be vc or ec");
}

json indexing_to_json(const ColoredGraph& g, const EdgeIndexing& idx) {
  json out = json::array();
  for (const auto& e : idx.edges) {
    json item{{"color", g.color_name(e.color)}, {"kind", to_string(e.kind)}};
    if (e.kind == EdgeKind::link) item["u"] = e.u + 1;
    item["v"] = e.kind == EdgeKind::link ? e.v + 1 : e.u + 1;
    out.push_back(std::move(item));
  }
  return out;
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& path) {
  auto doc = io::parse_json(read_file(path));
  auto g = io::graph_from_json_unchecked(doc);
  if (g.valid()) {
    std::cout << "ok: n=" << g.n() << " k=" << g.k() << '\n';
    return kOk;
  }
  for (const auto& v : g.validation().violations) std::cout << "violation: " << v << '\n';
  return kNegative;
}

int cmd_linegraph(const std::string& path, const std::string& flavor_name, const std::string& weights) {
  auto g = load_graph(path);
  auto flavor = parse_flavor(flavor_name);
  auto vc = build_vc(g);
  json out;
  out["flavor"] = flavor_name;
  out["vertices"] = indexing_to_json(g, vc.indexing);
  json mats = json::array();
  if (flavor == Flavor::vc) {
    for (int c = 0; c < g.k(); ++c)
      mats.push_back({{"color", g.color_name(c)}, {"matrix", io::matrix_to_json(vc.adjacency[static_cast<std::size_t>(c)])}});
  } else {
    auto ec = build_ec(vc);
    for (std::size_t p = 0; p < ec.colors.size(); ++p)
      mats.push_back({{"color", json::array({g.color_name(ec.colors[p].first), g.color_name(ec.colors[p].second)})},
                      {"matrix", io::matrix_to_json(ec.adjacency[p])}});
  }
  out["matrices"] = std::move(mats);
  if (!weights.empty()) {
    auto d = make_weighted_digraph(g, {flavor, parse_weights(g, flavor, weights)});
    out["weighted"] = io::digraph_to_json(d);
  }
  print(out);
  return kOk;
}

json decision_json(const ColoredGraph& g, const TransplantCertificate& cert) {
  json out;
  out["verdict"] = to_string(cert.verdict);
  if (cert.dims) out["dims"] = {cert.dims->source_source, cert.dims->target_target, cert.dims->source_target};
  if (cert.refutation)
    out["refutation"] = {{"word", io::word_to_json(g, cert.refutation->word)},
                         {"trace_source", cert.refutation->trace_g},
                         {"trace_target", cert.refutation->trace_h}};
  if (cert.witness) out["T"] = io::matrix_to_json(*cert.witness);
  return out;
}

int cmd_decide(const std::string& a, const std::string& b, std::uint64_t seed) {
  auto g = load_graph(a);
  auto h = load_graph(b);
  DecideOptions opts;
  opts.seed = seed;
  opts.build_line = false;
  auto cert = decide_transplantable(g, h, opts);
  print(decision_json(g, cert));
  return cert.transplantable() ? kOk : kNegative;
}

int cmd_certify(const std::string& a, const std::string& b, const std::string& output, std::uint64_t seed) {
  auto g = load_graph(a);
  auto h = load_graph(b);
  DecideOptions opts;
  opts.seed = seed;
  auto cert = decide_transplantable(g, h, opts);
  auto doc = io::certificate_to_json(g, h, cert);
  if (output.empty()) {
    print(doc);
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + output + "'");
    out << doc.dump(2) << '\n';
    std::cerr << "wrote " << output << " (" << to_string(cert.verdict) << ")\n";
  }
  return cert.transplantable() ? kOk : kNegative;
}

int cmd_check(const std::string& path) {
  auto doc = io::parse_json(read_file(path));
  auto res = io::check_certificate(doc);
  if (res.ok()) {
    std::cout << "certificate ok\n";
    return kOk;
  }
  for (const auto& p : res.problems) std::cout << "problem: " << p << '\n';
  return kNegative;
}

int cmd_cycle_check(const std::string& a, const std::string& b, int lmax) {
  auto g = load_graph(a);
  auto h = load_graph(b);
  if (lmax <= 0) lmax = g.n() * g.n();
  auto res = cycle_equivalence_check(g, h, lmax);
  json out;
  out["lmax"] = lmax;
  out["words_checked"] = res.words_checked;
  out["equal"] = res.equal;
  if (res.mismatch)
    out["mismatch"] = {{"word", io::word_to_json(g, res.mismatch->word)},
                       {"trace_source", res.mismatch->trace_g},
                       {"trace_target", res.mismatch->trace_h}};
  print(out);
  return res.equal ? kOk : kNegative;
}

int cmd_cospectral(const std::string& a, const std::string& b, const std::string& flavor_name,
                   const std::string& weights, std::uint64_t seed) {
  auto g = load_graph(a);
  auto h = load_graph(b);
  auto flavor = parse_flavor(flavor_name);
  auto wts = parse_weights(g, flavor, weights);
  DecideOptions opts;
  opts.seed = seed;
  auto cert = decide_transplantable(g, h, opts);
  if (!cert.transplantable()) {
    print(decision_json(g, cert));
    return kNegative;
  }
  auto pair = generate_cospectral_pair(g, h, {flavor, wts}, opts);
  json out;
  out["cospectral"] = verify_cospectral(pair.first, pair.second);
  out["first"] = io::digraph_to_json(pair.first);
  out["second"] = io::digraph_to_json(pair.second);
  out["T_L"] = io::matrix_to_json(pair.line_transplantation);
  print(out);
  return out["cospectral"].get<bool>() ? kOk : kNegative;
}

int cmd_search(SearchConfig cfg) {
  for (const auto& rec : find_transplantable_pairs(cfg)) std::cout << io::pair_record_to_json(rec).dump() << '\n';
  return kOk;
}

// Recomputes every matrix of the four-triangle example and compares with the
// embedded reference data.
int cmd_demo() {
  namespace tp = triangle_pair;
  bool all = true;
  auto report = [&](const std::string& what, const auto& got, const auto& want) {
    bool same = got == want;
    all = all && same;
    std::cout << (same ? "match    " : "MISMATCH ") << what << '\n' << got;
    if (!same) std::cout << "expected\n" << want;
  };
  auto g = tp::source_graph();
  const auto t = tp::transplantation();
  std::cout << "det(T) = " << to_string(determinant(t)) << '\n';
  report("T T^T = 3 I", t * t.transpose(), ExactMatrix::identity(4) * Rational(3));
  const auto golden = tp::adjacency();
  for (int c = 0; c < 3; ++c) report("A^" + g.color_name(c), adjacency_matrix(g, c), golden[static_cast<std::size_t>(c)]);
  auto mate = conjugate(g, t);
  std::cout << "mate graph:\n" << io::serialize_graph(mate) << '\n';
  auto cert = decide_transplantable(g, mate);
  std::cout << "verdict: " << to_string(cert.verdict) << ", isomorphic: " << (isomorphism(g, mate) ? "yes" : "no") << '\n';
  all = all && cert.transplantable() && !isomorphism(g, mate);
  auto vc = build_vc(g);
  const auto vc_golden = tp::vc_adjacency();
  for (int c = 0; c < 3; ++c)
    report("L^vc color " + g.color_name(c), vc.adjacency[static_cast<std::size_t>(c)], vc_golden[static_cast<std::size_t>(c)]);
  auto ec = build_ec(vc);
  const auto ec_golden = tp::ec_adjacency();
  const auto labels = tp::ec_labels();
  for (std::size_t i = 0; i < labels.size(); ++i)
    report(std::string("L^ec color ") + labels[i].name + " = {" + g.color_name(labels[i].first) + "," +
               g.color_name(labels[i].second) + "}",
           ec.adjacency[pair_index(3, labels[i].first, labels[i].second)], ec_golden[i]);
  auto tl = build_line_transplantation(t, g, mate);
  report("T_L", tl, tp::line_transplantation());
  bool certified = verify_line_certificate(tl, g, mate);
  std::cout << "T_L certifies both line-graph families: " << (certified ? "yes" : "no") << '\n';
  all = all && certified;
  std::cout << (all ? "all matrices match" : "differences found") << '\n';
  return all ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transplantation and line-graph tools for edge-colored loop-signed graphs"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "seed for the witness search")->capture_default_str();

  std::string file_a, file_b, flavor = "vc", weights, output, check;
  int lmax = 0;

  auto* validate = app.add_subcommand("validate", "check a graph file");
  validate->add_option("graph", file_a)->required();

  auto* linegraph = app.add_subcommand("linegraph", "print the line-graph matrices");
  linegraph->add_option("graph", file_a)->required();
  linegraph->add_option("--flavor", flavor, "vc or ec")->capture_default_str();
  linegraph->add_option("--weights", weights, "also print the weighted matrix");

  auto* decide = app.add_subcommand("decide", "decide transplantability of two graphs");
  decide->add_option("first", file_a)->required();
  decide->add_option("second", file_b)->required();

  auto* certify = app.add_subcommand("certify", "emit a transplantation certificate, or check one");
  certify->add_option("first", file_a);
  certify->add_option("second", file_b);
  certify->add_option("-o,--output", output, "write the certificate here");
  certify->add_option("--check", check, "re-verify a certificate file");

  auto* cycle = app.add_subcommand("cycle-check", "compare word traces up to a length");
  cycle->add_option("first", file_a)->required();
  cycle->add_option("second", file_b)->required();
  cycle->add_option("--lmax", lmax, "maximum word length (default n^2)");

  auto* cospectral = app.add_subcommand("cospectral", "weighted cospectral digraphs from a transplantable pair");
  cospectral->add_option("first", file_a)->required();
  cospectral->add_option("second", file_b)->required();
  cospectral->add_option("--weights", weights, "e.g. s=1,w=2,z=3 or s+w=1,w+z=2,s+z=3")->required();
  cospectral->add_option("--flavor", flavor, "vc or ec")->capture_default_str();

  SearchConfig cfg;
  bool no_nloops = false, no_dloops = false, no_line_iso = false;
  std::size_t max_pairs = 0;
  double budget = 0;
  auto* search = app.add_subcommand("search", "list non-isomorphic transplantable pairs (JSON lines)");
  search->add_option("--n", cfg.n)->required();
  search->add_option("--k", cfg.k)->required();
  search->add_flag("--no-nloops", no_nloops);
  search->add_flag("--no-dloops", no_dloops);
  search->add_option("--lfilter", cfg.lfilter)->capture_default_str();
  search->add_option("--max-pairs", max_pairs);
  search->add_option("--time-budget", budget, "seconds");
  search->add_flag("--no-line-iso", no_line_iso, "skip the line-graph isomorphism flag");

  auto* demo = app.add_subcommand("demo-figure1", "rebuild the four-triangle example and compare with reference data");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*validate) return cmd_validate(file_a);
    if (*linegraph) return cmd_linegraph(file_a, flavor, weights);
    if (*decide) return cmd_decide(file_a, file_b, seed);
    if (*certify) {
      if (!check.empty()) return cmd_check(check);
      if (file_a.empty() || file_b.empty()) {
        std::cerr << "certify: need two graph files or --check FILE\n";
        return kUsage;
      }
      return cmd_certify(file_a, file_b, output, seed);
    }
    if (*cycle) return cmd_cycle_check(file_a, file_b, lmax);
    if (*cospectral) return cmd_cospectral(file_a, file_b, flavor, weights, seed);
    if (*search) {
      cfg.allow_nloops = !no_nloops;
      cfg.allow_dloops = !no_dloops;
      cfg.check_line_isomorphism = !no_line_iso;
      cfg.seed = seed;
      if (search->count("--max-pairs")) cfg.max_pairs = max_pairs;
      if (search->count("--time-budget")) cfg.time_budget_seconds = budget;
      return cmd_search(cfg);
    }
    if (*demo) return cmd_demo();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
