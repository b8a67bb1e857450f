#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lgt/error.hpp"
#include "lgt/graph.hpp"
#include "lgt/linalg.hpp"
#include "lgt/linegraph.hpp"
#include "lgt/matrix.hpp"

namespace lgt {

// ---------------------------------------------------------------------------
// Intertwiners

struct IntertwinerBasis {
  std::string source;  // labeled fingerprints of the two graphs
  std::string target;
  std::size_t n = 0;
  std::vector<ExactMatrix> basis;  // spans {T : A^c_g T = T A^c_h for all c}

  std::size_t dimension() const noexcept { return basis.size(); }
};

namespace detail {
inline void require_compatible(const ColoredGraph& g, const ColoredGraph& h, const char* op) {
  g.require_valid();
  h.require_valid();
  if (g.n() != h.n() || g.k() != h.k())
    throw DimensionMismatch(std::string(op) + ": graphs differ in vertex or color count");
}
}  // namespace detail

// Stacks the k*n^2 equations (A_g T - T A_h)_{ij} = 0 over the n^2 entries of
// T (row-major) and reshapes the exact nullspace.
inline IntertwinerBasis intertwiner_basis(const ColoredGraph& g, const ColoredGraph& h) {
  detail::require_compatible(g, h, "intertwiner_basis");
  const auto n = static_cast<std::size_t>(g.n());
  ExactMatrix system(static_cast<std::size_t>(g.k()) * n * n, n * n);
  std::size_t row = 0;
  for (int c = 0; c < g.k(); ++c) {
    const auto& pg = g.involution(c);
    const auto& ph = h.involution(c);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j, ++row) {
        // (A_g T)_{ij} = sign_g(i) T_{pg(i), j};  (T A_h)_{ij} = sign_h(j) T_{i, ph(j)}
        auto l = static_cast<std::size_t>(pg.image(i));
        system(row, l * n + j) += pg.sign(i);
        auto r = static_cast<std::size_t>(ph.image(j));
        system(row, i * n + r) -= ph.sign(j);
      }
  }
  IntertwinerBasis out;
  out.source = labeled_fingerprint(g);
  out.target = labeled_fingerprint(h);
  out.n = n;
  for (const auto& v : nullspace_basis(system)) {
    ExactMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t(i, j) = v(i * n + j, 0);
    out.basis.push_back(std::move(t));
  }
  return out;
}

template <class T>
bool intertwines(const std::vector<Matrix<T>>& left, const Matrix<T>& t, const std::vector<Matrix<T>>& right) {
  if (left.size() != right.size()) throw DimensionMismatch("intertwines: family sizes differ");
  for (std::size_t c = 0; c < left.size(); ++c)
    if (left[c] * t != t * right[c]) return false;
  return true;
}

// Searches sum_i a_i B_i for an invertible element. Single basis elements and
// the plain sum are tried first; then integer coefficients are drawn
// uniformly from [-B, B] with B doubling after every failed trial.
inline ExactMatrix find_invertible_intertwiner(const IntertwinerBasis& basis, std::uint64_t seed, int max_trials = 64) {
  if (basis.basis.empty())
    throw PreconditionViolated("find_invertible_intertwiner: intertwiner space is zero-dimensional");
  for (const auto& b : basis.basis)
    if (determinant(b) != 0) return b;
  auto combine = [&](const std::vector<long>& coeffs) {
    ExactMatrix t(basis.n, basis.n);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) t += basis.basis[i] * Rational(coeffs[i]);
    return t;
  };
  {
    ExactMatrix t = combine(std::vector<long>(basis.dimension(), 1));
    if (determinant(t) != 0) return t;
  }
  std::mt19937_64 rng(seed);
  long bound = std::max<long>(2, static_cast<long>(basis.n));
  for (int trial = 0; trial < max_trials; ++trial) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<long> coeffs(basis.dimension());
    for (auto& a : coeffs) a = dist(rng);
    ExactMatrix t = combine(coeffs);
    if (determinant(t) != 0) return t;
    bound = std::min<long>(bound * 2, 1L << 20);
  }
  throw WitnessSearchExhausted("no invertible intertwiner found after " + std::to_string(max_trials) +
                               " random trials (intertwiner dimension " + std::to_string(basis.dimension()) + ")");
}

// ---------------------------------------------------------------------------
// Cyclic words

inline bool cyclically_square_free(const Word& w) {
  if (w.size() < 2) return false;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] == w[(i + 1) % w.size()]) return false;
  return true;
}

// A word up to rotation (and optionally reversal), stored as the
// lexicographically least representative.
class CyclicWord {
 public:
  CyclicWord(const Word& w, bool with_reversal) : letters_(least_rotation(w, with_reversal)) {
    square_free_ = cyclically_square_free(letters_);
  }
  const Word& letters() const noexcept { return letters_; }
  bool square_free() const noexcept { return square_free_; }

  static Word least_rotation(const Word& w, bool with_reversal) {
    Word best = w;
    auto consider = [&](const Word& x) {
      Word r = x;
      for (std::size_t s = 0; s < x.size(); ++s) {
        std::rotate(r.begin(), r.begin() + 1, r.end());
        if (r < best) best = r;
      }
    };
    consider(w);
    if (with_reversal) consider(Word(w.rbegin(), w.rend()));
    return best;
  }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;

 private:
  Word letters_;
  bool square_free_ = false;
};

// Visits, in length-then-lex order, every length-1 word and one
// representative (the least under rotation, and reversal if requested) of
// every cyclically square-free word of length 2..lmax. The visitor receives
// the word and may return false to stop.
inline void for_each_cyclic_word(int k, int lmax, bool with_reversal, const std::function<bool(const Word&)>& visit) {
  for (int c = 0; c < k && lmax >= 1; ++c)
    if (!visit(Word{c})) return;
  Word w;
  bool stop = false;
  for (int len = 2; len <= lmax && !stop; ++len) {
    std::function<void()> rec = [&]() {
      if (stop) return;
      if (static_cast<int>(w.size()) == len) {
        if (w.back() == w.front()) return;
        if (CyclicWord::least_rotation(w, with_reversal) != w) return;
        if (!visit(w)) stop = true;
        return;
      }
      for (int c = 0; c < k && !stop; ++c) {
        if (!w.empty() && w.back() == c) continue;
        // A least rotation starts with its smallest letter.
        if (!w.empty() && c < w.front()) continue;
        w.push_back(c);
        rec();
        w.pop_back();
      }
    };
    rec();
  }
}

struct Mismatch {
  Word word;
  long trace_g = 0;
  long trace_h = 0;
};

struct CycleCheckResult {
  bool equal = true;
  std::optional<Mismatch> mismatch;
  std::size_t words_checked = 0;
};

// Compares tr(A^{c1}...A^{cl}) on both graphs over all length-1 words and all
// reversal/rotation classes of cyclically square-free words up to lmax. Since
// every A^c is a symmetric involution, every other word reduces to one of
// these or to the empty word.
inline CycleCheckResult cycle_equivalence_check(const ColoredGraph& g, const ColoredGraph& h, int lmax) {
  detail::require_compatible(g, h, "cycle_equivalence_check");
  if (lmax < 1) throw PreconditionViolated("cycle_equivalence_check: lmax must be at least 1");
  CycleCheckResult res;
  const auto& ig = g.involutions();
  const auto& ih = h.involutions();
  for_each_cyclic_word(g.k(), lmax, true, [&](const Word& w) {
    SignedPermutation pg = ig[static_cast<std::size_t>(w[0])];
    SignedPermutation ph = ih[static_cast<std::size_t>(w[0])];
    for (std::size_t i = 1; i < w.size(); ++i) {
      pg = pg * ig[static_cast<std::size_t>(w[i])];
      ph = ph * ih[static_cast<std::size_t>(w[i])];
    }
    ++res.words_checked;
    long tg = pg.trace(), th = ph.trace();
    if (tg != th) {
      res.equal = false;
      res.mismatch = Mismatch{w, tg, th};
      return false;
    }
    return true;
  });
  return res;
}

// ---------------------------------------------------------------------------
// Line graph transplantation

// Builds T_L from an intertwiner T (A^c_g T = T A^c_h). Blocks are indexed by
// color; for a c-colored edge e of g at v, v~ and a c-colored edge f of h at
// w, w~ the entry is T[v][w] + T[v][w~] when f is a link and T[v][w] when f is
// an N-loop. Both endpoints of e must give the same value, and D-loops on
// either side must annihilate the corresponding sums.
inline ExactMatrix build_line_transplantation(const ExactMatrix& t, const ColoredGraph& g, const ColoredGraph& h) {
  detail::require_compatible(g, h, "build_line_transplantation");
  const auto n = static_cast<std::size_t>(g.n());
  if (t.rows() != n || t.cols() != n) throw DimensionMismatch("build_line_transplantation: T must be n x n");
  if (!intertwines(adjacency_matrices<Rational>(g), t, adjacency_matrices<Rational>(h)))
    throw IntertwiningViolated("build_line_transplantation: A_g T != T A_h for some color");

  const auto ig = index_edges(g);
  const auto ih = index_edges(h);
  if (ig.block_sizes() != ih.block_sizes())
    throw ConsistencyViolated("build_line_transplantation: color block sizes differ for intertwined graphs");

  auto entry_from = [&](int v, const ColoredEdge& f) -> Rational {
    auto vi = static_cast<std::size_t>(v);
    if (f.kind == EdgeKind::link) return t(vi, static_cast<std::size_t>(f.u)) + t(vi, static_cast<std::size_t>(f.v));
    return t(vi, static_cast<std::size_t>(f.u));
  };

  ExactMatrix tl(ig.size(), ih.size());
  for (int c = 0; c < g.k(); ++c) {
    const auto cu = static_cast<std::size_t>(c);
    for (std::size_t e = ig.offset[cu]; e < ig.offset[cu + 1]; ++e) {
      const auto& ee = ig.edges[e];
      for (std::size_t f = ih.offset[cu]; f < ih.offset[cu + 1]; ++f) {
        const auto& ff = ih.edges[f];
        Rational val = entry_from(ee.u, ff);
        if (ee.kind == EdgeKind::link && entry_from(ee.v, ff) != val)
          throw ConsistencyViolated("build_line_transplantation: endpoint sums disagree");
        tl(e, f) = std::move(val);
      }
    }
    // D-loop annihilation on both sides.
    for (int v = 0; v < g.n(); ++v) {
      if (g.kind_at(c, v) != EdgeKind::dloop) continue;
      for (std::size_t f = ih.offset[cu]; f < ih.offset[cu + 1]; ++f)
        if (entry_from(v, ih.edges[f]) != 0)
          throw ConsistencyViolated("build_line_transplantation: D-loop of the source graph does not annihilate");
    }
    for (int w = 0; w < h.n(); ++w) {
      if (h.kind_at(c, w) != EdgeKind::dloop) continue;
      for (std::size_t e = ig.offset[cu]; e < ig.offset[cu + 1]; ++e) {
        const auto& ee = ig.edges[e];
        Rational sum = t(static_cast<std::size_t>(ee.u), static_cast<std::size_t>(w));
        if (ee.kind == EdgeKind::link) sum += t(static_cast<std::size_t>(ee.v), static_cast<std::size_t>(w));
        if (sum != 0) throw ConsistencyViolated("build_line_transplantation: D-loop of the target graph does not annihilate");
      }
    }
  }
  return tl;
}

// True iff T_L is invertible and intertwines both the vertex-colored and the
// edge-colored line graph families of g and h.
inline bool verify_line_certificate(const ExactMatrix& tl, const ColoredGraph& g, const ColoredGraph& h) {
  detail::require_compatible(g, h, "verify_line_certificate");
  const auto vg = build_vc(g);
  const auto vh = build_vc(h);
  if (vg.indexing.size() != vh.indexing.size() || tl.rows() != vg.indexing.size() || tl.cols() != vh.indexing.size())
    throw DimensionMismatch("verify_line_certificate: T_L shape does not match the line graphs");
  if (determinant(tl) == 0) return false;
  auto exact = [](const std::vector<IntMatrix>& ms) {
    std::vector<ExactMatrix> out;
    for (const auto& m : ms) out.push_back(to_exact(m));
    return out;
  };
  if (!intertwines(exact(vg.adjacency), tl, exact(vh.adjacency))) return false;
  return intertwines(exact(build_ec(vg).adjacency), tl, exact(build_ec(vh).adjacency));
}

// ---------------------------------------------------------------------------
// Decision

enum class Verdict { transplantable, not_transplantable };

inline const char* to_string(Verdict v) {
  return v == Verdict::transplantable ? "transplantable" : "not-transplantable";
}

struct HomDims {
  std::size_t source_source = 0;  // dim Hom(g, g)
  std::size_t target_target = 0;  // dim Hom(h, h)
  std::size_t source_target = 0;  // dim Hom(g, h)

  // Equals sum_i d_i (m_i - m'_i)^2 over the irreducible constituents, so it
  // is zero exactly for equivalent representations.
  long gap() const {
    return static_cast<long>(source_source) + static_cast<long>(target_target) - 2 * static_cast<long>(source_target);
  }
};

struct TransplantCertificate {
  Verdict verdict = Verdict::not_transplantable;
  std::optional<ExactMatrix> witness;               // invertible T with A_g T = T A_h
  std::optional<HomDims> dims;                      // absent when a trace refuted early
  std::optional<Mismatch> refutation;               // word whose traces differ
  std::vector<std::size_t> block_sizes;             // (tr(I + A^c)/2)_c
  std::optional<ExactMatrix> line_transplantation;  // T_L

  bool transplantable() const noexcept { return verdict == Verdict::transplantable; }
};

struct DecideOptions {
  int prefilter_length = 6;  // word traces compared before any linear algebra; 0 disables
  std::uint64_t seed = 1;
  int max_trials = 64;
  bool build_line = true;
};

inline HomDims hom_dims(const ColoredGraph& g, const ColoredGraph& h) {
  return {intertwiner_basis(g, g).dimension(), intertwiner_basis(h, h).dimension(),
          intertwiner_basis(g, h).dimension()};
}

// Every A^c is orthogonal, so the represented group acts unitarily and the
// representations are semisimple; equivalence is then decided by the three
// intertwiner dimensions. The random witness search only supplies T and
// never affects the verdict.
inline TransplantCertificate decide_transplantable(const ColoredGraph& g, const ColoredGraph& h,
                                                   const DecideOptions& opts = {}) {
  detail::require_compatible(g, h, "decide_transplantable");
  TransplantCertificate cert;
  const auto tg = trace_vector(g);
  const auto th = trace_vector(h);
  for (std::size_t c = 0; c < tg.size(); ++c)
    if (tg[c] != th[c]) {
      cert.refutation = Mismatch{Word{static_cast<int>(c)}, tg[c], th[c]};
      return cert;
    }
  if (opts.prefilter_length >= 2) {
    auto check = cycle_equivalence_check(g, h, opts.prefilter_length);
    if (!check.equal) {
      cert.refutation = check.mismatch;
      return cert;
    }
  }
  HomDims dims;
  dims.source_source = intertwiner_basis(g, g).dimension();
  dims.target_target = intertwiner_basis(h, h).dimension();
  auto cross = intertwiner_basis(g, h);
  dims.source_target = cross.dimension();
  cert.dims = dims;
  if (dims.gap() != 0) return cert;

  cert.verdict = Verdict::transplantable;
  cert.witness = find_invertible_intertwiner(cross, opts.seed, opts.max_trials);
  cert.block_sizes = index_edges(g).block_sizes();
  if (opts.build_line) cert.line_transplantation = build_line_transplantation(*cert.witness, g, h);
  return cert;
}

}  // namespace lgt
