// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lgt/cospectral.hpp"
#include "lgt/linegraph.hpp"
#include "lgt/search.hpp"
#include "lgt/transplant.hpp"
#include "test_support.hpp"

using namespace lgt;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int failures = 0;

void report(int id, const char* name, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (out.ok && secs >= limit_s) out.fail("exceeded " + std::to_string(limit_s) + " s");
  if (!out.ok) ++failures;
  std::printf("%s criterion %d: %s (%.2f s)%s%s\n", out.ok ? "PASS" : "FAIL", id, name, secs, out.detail.empty() ? "" : ": ",
              out.detail.c_str());
  std::fflush(stdout);
}

// Decoded source graph and printed matrices, written out independently of the
// library's reference data.
ColoredGraph figure_graph() {
  return ColoredGraph(4, 3,
                      {ColoredEdge::link(0, 0, 1), ColoredEdge::dloop(0, 2), ColoredEdge::nloop(0, 3),
                       ColoredEdge::link(1, 0, 2), ColoredEdge::nloop(1, 1), ColoredEdge::dloop(1, 3),
                       ColoredEdge::link(2, 0, 3), ColoredEdge::dloop(2, 1), ColoredEdge::nloop(2, 2)},
                      {"s", "w", "z"});
}

ExactMatrix printed_t() { return ExactMatrix{{0, 1, 1, 1}, {1, 0, 1, -1}, {1, -1, 0, 1}, {1, 1, -1, 0}}; }

const std::vector<IntMatrix> kVc = {
    IntMatrix{{0, 0, 1, 1, 1, 0}, {0, 0, 0, 0, 2, 0}, {0, 0, 0, 0, 0, 0},
              {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}},
    IntMatrix{{0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 1, 1},
              {2, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}},
    IntMatrix{{0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0},
              {0, 0, 0, 0, 0, 0}, {1, 1, 1, 0, 0, 0}, {0, 0, 2, 0, 0, 0}},
};

// Printed labels a = {s,w}, b = {w,z}, c = {s,z}.
struct Labeled {
  int first, second;
  IntMatrix m;
};
const std::vector<Labeled> kEc = {
    {0, 1, IntMatrix{{0, 0, 1, 1, 0, 0}, {0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0},
                     {2, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}}},
    {1, 2, IntMatrix{{0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 1},
                     {0, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 2, 0, 0, 0}}},
    {0, 2, IntMatrix{{0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 2, 0}, {0, 0, 0, 0, 0, 0},
                     {0, 0, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}}},
};

ExactMatrix printed_tl() {
  ExactMatrix tl(6, 6);
  for (std::size_t b = 0; b < 3; ++b) {
    tl(2 * b, 2 * b) = 1;
    tl(2 * b, 2 * b + 1) = 1;
    tl(2 * b + 1, 2 * b) = 2;
    tl(2 * b + 1, 2 * b + 1) = -1;
  }
  return tl;
}

std::vector<ExactMatrix> exact_all(const std::vector<IntMatrix>& ms) {
  std::vector<ExactMatrix> out;
  for (const auto& m : ms) out.push_back(to_exact(m));
  return out;
}

// Dense row-major integer matrix with a sparse-skipping product, used to keep
// the word-trace sweeps independent of the library's matrix code.
struct Dense {
  std::size_t n = 0;
  std::vector<long long> a;

  static Dense from(const IntMatrix& m) {
    Dense d{m.rows(), std::vector<long long>(m.rows() * m.rows())};
    for (std::size_t i = 0; i < d.n; ++i)
      for (std::size_t j = 0; j < d.n; ++j) d.a[i * d.n + j] = m(i, j);
    return d;
  }
  static Dense identity(std::size_t n) {
    Dense d{n, std::vector<long long>(n * n)};
    for (std::size_t i = 0; i < n; ++i) d.a[i * n + i] = 1;
    return d;
  }
  Dense operator*(const Dense& o) const {
    Dense r{n, std::vector<long long>(n * n)};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const long long x = a[i * n + k];
        if (x == 0) continue;
        for (std::size_t j = 0; j < n; ++j) r.a[i * n + j] += x * o.a[k * n + j];
      }
    return r;
  }
  long long trace() const {
    long long t = 0;
    for (std::size_t i = 0; i < n; ++i) t += a[i * n + i];
    return t;
  }
  long long trace_of_product(const Dense& o) const {
    long long t = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) t += a[i * n + k] * o.a[k * n + i];
    return t;
  }
};

// Brute-force trace over all words up to lmax; returns a differing word.
std::optional<Word> differing_word(const ColoredGraph& g, const ColoredGraph& h, int lmax) {
  std::vector<Dense> ag, ah;
  for (const auto& m : adjacency_matrices(g)) ag.push_back(Dense::from(m));
  for (const auto& m : adjacency_matrices(h)) ah.push_back(Dense::from(m));
  const auto n = static_cast<std::size_t>(g.n());
  Word w;
  std::optional<Word> found;
  std::function<void(const Dense&, const Dense&)> rec = [&](const Dense& pg, const Dense& ph) {
    if (found || static_cast<int>(w.size()) == lmax) return;
    for (int c = 0; c < g.k() && !found; ++c) {
      const auto cu = static_cast<std::size_t>(c);
      w.push_back(c);
      if (pg.trace_of_product(ag[cu]) != ph.trace_of_product(ah[cu])) found = w;
      else rec(pg * ag[cu], ph * ah[cu]);
      w.pop_back();
    }
  };
  rec(Dense::identity(n), Dense::identity(n));
  return found;
}

void criterion1(Outcome& out) {
  auto g = figure_graph();
  auto vc = build_vc(g);
  if (vc.adjacency != kVc) out.fail("vc matrices differ");
  auto ec = build_ec(vc);
  if (ec.adjacency.size() != 3) return out.fail("expected three ec colors");
  for (const auto& l : kEc)
    if (ec.adjacency[pair_index(3, l.first, l.second)] != l.m)
      out.fail("ec matrix for pair {" + std::to_string(l.first) + "," + std::to_string(l.second) + "} differs");
}

void criterion2(Outcome& out) {
  auto g = figure_graph();
  auto h = conjugate(g, printed_t());
  if (!h.valid()) return out.fail("mate is not a valid graph");
  auto cert = decide_transplantable(g, h);
  if (!cert.transplantable()) out.fail("pair not reported transplantable");
  if (testkit::brute_force_isomorphism(g, h)) out.fail("pair is isomorphic");
  // Conjugation through (1/3) T^T A T.
  auto t = printed_t();
  auto ga = adjacency_matrices<Rational>(g), ha = adjacency_matrices<Rational>(h);
  for (std::size_t c = 0; c < 3; ++c)
    if (ha[c] * Rational(3) != t.transpose() * ga[c] * t) out.fail("mate adjacency differs from T^T A T / 3");
}

void criterion3(Outcome& out) {
  auto g = figure_graph();
  auto h = conjugate(g, printed_t());
  auto tl = build_line_transplantation(printed_t(), g, h);
  if (tl != printed_tl()) out.fail("T_L differs from the printed block matrix");
  std::vector<std::size_t> expected_blocks;
  const auto n = static_cast<std::size_t>(g.n());
  for (const auto& a : adjacency_matrices(g)) expected_blocks.push_back(static_cast<std::size_t>((IntMatrix::identity(n) + a).trace() / 2));
  if (index_edges(g).block_sizes() != expected_blocks || expected_blocks != std::vector<std::size_t>{2, 2, 2})
    out.fail("block sizes are not (2,2,2)");
  if (!intertwines(exact_all(build_vc(g).adjacency), tl, exact_all(build_vc(h).adjacency)))
    out.fail("T_L does not intertwine the vc matrices");
  if (!intertwines(exact_all(build_ec(g).adjacency), tl, exact_all(build_ec(h).adjacency)))
    out.fail("T_L does not intertwine the ec matrices");
  if (testkit::cofactor_determinant(tl) == 0) out.fail("T_L is singular");
}

void criterion4(Outcome& out) {
  std::mt19937_64 rng(20240601);
  std::size_t vc_words = 0, mixed_words = 0;
  for (int trial = 0; trial < 200 && out.ok; ++trial) {
    auto g = testkit::random_graph_upto(rng, 8, 4);
    const std::string tag = "graph " + std::to_string(trial) + ": ";
    const auto n = static_cast<std::size_t>(g.n());
    const int k = g.k();
    auto vc = build_vc(g);
    auto ec = build_ec(vc);
    const auto ag = adjacency_matrices(g);

    if (!verify_decomposition(g)) out.fail(tag + "decomposition check rejected");
    const auto b1 = incidence(g, 1), b2 = incidence(g, 2);
    const auto m = b1.b.cols();
    for (int c = 0; c < k; ++c) {
      const auto& cp = b1.projector[static_cast<std::size_t>(c)];
      if (b1.b * cp * b2.b.transpose() - IntMatrix::identity(n) != ag[static_cast<std::size_t>(c)])
        out.fail(tag + "graph incidence identity");
      if (cp * (b2.b.transpose() * b1.b - IntMatrix::identity(m) * 2) != vc.adjacency[static_cast<std::size_t>(c)])
        out.fail(tag + "line graph incidence identity");
    }

    std::vector<Dense> lv, le, shifted;
    for (const auto& a : vc.adjacency) lv.push_back(Dense::from(a));
    for (const auto& a : ec.adjacency) le.push_back(Dense::from(a));
    for (const auto& a : ag) shifted.push_back(Dense::from(a + IntMatrix::identity(n)));

    // All cyclically square-free words of length 2..6 by depth-first search
    // with shared prefix products.
    Word w;
    std::function<void(const Dense&, const Dense&, const Dense&)> rec = [&](const Dense& pv, const Dense& ps, const Dense& pe) {
      if (!out.ok) return;
      const auto len = w.size();
      if (len >= 2 && w.front() != w.back()) {
        ++vc_words;
        if (pv.trace() != ps.trace()) out.fail(tag + "vc trace identity");
        if (len >= 3 && w[0] != w[2]) {
          ++mixed_words;
          const auto close = pair_index(k, w.back(), w.front());
          if (pe.trace_of_product(le[close]) != pv.trace())
            out.fail(tag + "mixed-color cycle identity");
        }
      }
      if (len == 6) return;
      for (int c = 0; c < k; ++c) {
        if (!w.empty() && w.back() == c) continue;
        const auto cu = static_cast<std::size_t>(c);
        Dense ne = len == 0 ? pe : pe * le[pair_index(k, w.back(), c)];
        w.push_back(c);
        rec(pv * lv[cu], ps * shifted[cu], ne);
        w.pop_back();
      }
    };
    if (m > 0) rec(Dense::identity(m), Dense::identity(n), Dense::identity(m));

    for (std::size_t p = 0; p < ec.colors.size(); ++p) {
      auto [c, d] = ec.colors[p];
      IntMatrix prod = vc.adjacency[static_cast<std::size_t>(c)] * vc.adjacency[static_cast<std::size_t>(d)];
      IntMatrix lpow = IntMatrix::identity(m), vpow = IntMatrix::identity(m);
      for (int j = 1; j <= 4; ++j) {
        if ((lpow * ec.adjacency[p]).trace() != 0) out.fail(tag + "odd ec power has nonzero trace");
        lpow = lpow * ec.adjacency[p] * ec.adjacency[p];
        vpow = vpow * prod;
        if (lpow.trace() != 2 * vpow.trace()) out.fail(tag + "two-color identity at j=" + std::to_string(j));
      }
    }
  }
  if (out.ok) out.detail = std::to_string(vc_words) + " vc words, " + std::to_string(mixed_words) + " mixed words";
}

void criterion5(Outcome& out) {
  std::vector<ColoredGraph> graphs;
  for (int n = 1; n <= 3; ++n)
    for (int k = 1; k <= 2; ++k)
      for (auto& g : testkit::all_labeled_graphs(n, k)) graphs.push_back(std::move(g));
  std::size_t pairs = 0, positive = 0;
  for (std::size_t i = 0; i < graphs.size() && out.ok; ++i)
    for (std::size_t j = i; j < graphs.size() && out.ok; ++j) {
      const auto& g = graphs[i];
      const auto& h = graphs[j];
      if (g.n() != h.n() || g.k() != h.k()) continue;
      ++pairs;
      const std::string tag = "pair " + std::to_string(i) + "," + std::to_string(j) + ": ";
      DecideOptions opts;
      opts.prefilter_length = 0;
      opts.build_line = false;
      auto cert = decide_transplantable(g, h, opts);
      const bool oracle = testkit::brute_force_invertible(testkit::oracle_intertwiners(g, h), static_cast<std::size_t>(g.n())).has_value();
      if (cert.transplantable() != oracle) {
        out.fail(tag + "verdict disagrees with brute force");
        break;
      }
      if (cert.transplantable()) {
        ++positive;
        if (!cycle_equivalence_check(g, h, 9).equal) out.fail(tag + "transplantable but not cycle equal");
      } else {
        const auto dims = hom_dims(g, h);
        const bool gap = dims.gap() > 0;
        const bool word = differing_word(g, h, 9).has_value();
        if (!gap && !word) out.fail(tag + "no refuting word and no dimension gap");
        if (word != !cycle_equivalence_check(g, h, 9).equal) out.fail(tag + "cycle check disagrees with word sweep");
      }
    }
  if (out.ok) out.detail = std::to_string(pairs) + " pairs, " + std::to_string(positive) + " transplantable";
  if (pairs == 0) out.fail("no pairs enumerated");
}

void criterion6(Outcome& out) {
  auto g = figure_graph();
  auto h = conjugate(g, printed_t());
  std::vector<std::vector<Rational>> weights = {{1, 1, 1}, {1, 2, 3}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  for (int r = 0; r < 5; ++r) {
    std::vector<Rational> w;
    for (int c = 0; c < 3; ++c) {
      Rational q(num(rng), den(rng));
      q.canonicalize();
      w.push_back(q);
    }
    weights.push_back(w);
  }
  for (Flavor f : {Flavor::vc, Flavor::ec})
    for (const auto& w : weights) {
      auto a = make_weighted_digraph(g, {f, w});
      auto b = make_weighted_digraph(h, {f, w});
      if (testkit::faddeev_leverrier(a.adjacency) != testkit::faddeev_leverrier(b.adjacency))
        out.fail("characteristic polynomials differ");
      if (a.char_poly != b.char_poly) out.fail("reported characteristic polynomials differ");
      auto pair = generate_cospectral_pair(g, h, {f, w});
      if (!verify_cospectral(pair.first, pair.second)) out.fail("generated pair not verified");
    }
}

void criterion7(Outcome& out) {
  SearchConfig cfg;
  cfg.n = 4;
  cfg.k = 3;
  cfg.allow_nloops = false;
  auto pairs = find_transplantable_pairs(cfg);
  std::size_t hits = 0;
  for (const auto& p : pairs) {
    if (testkit::brute_force_isomorphism(p.a, p.b)) continue;
    if (!p.certificate.transplantable() || !p.certificate.witness || !p.certificate.line_transplantation) continue;
    const auto& t = *p.certificate.witness;
    bool ok = testkit::cofactor_determinant(t) != 0 &&
              intertwines(adjacency_matrices<Rational>(p.a), t, adjacency_matrices<Rational>(p.b)) &&
              verify_line_certificate(*p.certificate.line_transplantation, p.a, p.b) &&
              testkit::cofactor_determinant(*p.certificate.line_transplantation) != 0;
    if (!ok) return out.fail("certificate of a reported pair does not verify");
    if (!p.certificate_verified) return out.fail("pair record not marked verified");
    if (p.line_graph_isomorphic.value_or(false)) ++hits;
  }
  if (hits == 0) out.fail("no pair with isomorphic vc line graphs");
  else out.detail = std::to_string(pairs.size()) + " pairs, " + std::to_string(hits) + " with isomorphic vc line graphs";
}

void criterion8(Outcome& out) {
  auto t = printed_t();
  if (determinant(t) != -9) out.fail("det(T) != -9");
  if (testkit::cofactor_determinant(t) != -9) out.fail("cofactor det(T) != -9");
  if (t * t.transpose() != ExactMatrix::identity(4) * Rational(3)) out.fail("T T^T != 3 I");
}

}  // namespace

int main() {
  report(1, "golden line-graph matrices", 1.0, criterion1);
  report(2, "mate derivation", 1.0, criterion2);
  report(3, "line-graph transplantation", 1.0, criterion3);
  report(4, "incidence and trace identities on 200 random graphs", 60.0, criterion4);
  report(5, "decision oracle equivalence for n<=3, k<=2", 600.0, criterion5);
  report(6, "cospectral weighted line graphs", 5.0, criterion6);
  report(7, "search rediscovers a pair with isomorphic vc line graphs", 600.0, criterion7);
  report(8, "determinant and orthogonality of T", 1.0, criterion8);
  return failures == 0 ? 0 : 1;
}
