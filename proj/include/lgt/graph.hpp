#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lgt/error.hpp"
#include "lgt/linalg.hpp"
#include "lgt/matrix.hpp"

// Edge-colored loop-signed graphs.
//
// Every vertex carries exactly one edge of each color: a link to another
// vertex, an N-loop, or a D-loop. The color-c adjacency matrix is therefore a
// symmetric involutive signed permutation matrix with +1 for links and
// N-loops and -1 for D-loops, the signs sitting on the diagonal only.
//
// Inside the library vertices and colors are 0-based. Files and the CLI use
// 1-based numbering.

namespace lgt {

enum class EdgeKind : std::uint8_t { link = 0, nloop = 1, dloop = 2 };

inline const char* to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::link: return "link";
    case EdgeKind::nloop: return "nloop";
    case EdgeKind::dloop: return "dloop";
  }
  return "?";
}

// A colored edge. Loops have u == v; links are stored with u < v.
struct ColoredEdge {
  int color = 0;
  EdgeKind kind = EdgeKind::link;
  int u = 0;
  int v = 0;

  static ColoredEdge link(int color, int a, int b) { return {color, EdgeKind::link, std::min(a, b), std::max(a, b)}; }
  static ColoredEdge nloop(int color, int x) { return {color, EdgeKind::nloop, x, x}; }
  static ColoredEdge dloop(int color, int x) { return {color, EdgeKind::dloop, x, x}; }

  bool is_loop() const noexcept { return kind != EdgeKind::link; }

  friend auto operator<=>(const ColoredEdge&, const ColoredEdge&) = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

// A signed permutation matrix stored by columns: column j is sign[j] times
// the unit vector e_{image[j]}.
class SignedPermutation {
 public:
  SignedPermutation() = default;
  SignedPermutation(std::vector<int> image, std::vector<std::int8_t> sign)
      : image_(std::move(image)), sign_(std::move(sign)) {
    if (image_.size() != sign_.size()) throw DimensionMismatch("signed permutation: image/sign length mismatch");
    std::vector<bool> hit(image_.size(), false);
    for (std::size_t j = 0; j < image_.size(); ++j) {
      int i = image_[j];
      if (i < 0 || static_cast<std::size_t>(i) >= image_.size() || hit[static_cast<std::size_t>(i)])
        throw Error("signed permutation: image is not a bijection");
      if (sign_[j] != 1 && sign_[j] != -1) throw Error("signed permutation: signs must be +1 or -1");
      hit[static_cast<std::size_t>(i)] = true;
    }
  }

  static SignedPermutation identity(std::size_t n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    return {std::move(img), std::vector<std::int8_t>(n, 1)};
  }

  // Recognizes a matrix with exactly one nonzero entry of magnitude 1 in every
  // row and column.
  template <class T>
  static std::optional<SignedPermutation> from_matrix(const Matrix<T>& m) {
    if (!m.is_square()) return std::nullopt;
    const std::size_t n = m.rows();
    std::vector<int> img(n, -1);
    std::vector<std::int8_t> sgn(n, 0);
    std::vector<bool> row_used(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const T& x = m(i, j);
        if (x == T(0)) continue;
        if (img[j] != -1 || row_used[i]) return std::nullopt;
        if (x == T(1)) sgn[j] = 1;
        else if (x == T(-1)) sgn[j] = -1;
        else return std::nullopt;
        img[j] = static_cast<int>(i);
        row_used[i] = true;
      }
      if (img[j] == -1) return std::nullopt;
    }
    return SignedPermutation(std::move(img), std::move(sgn));
  }

  std::size_t size() const noexcept { return image_.size(); }
  int image(std::size_t j) const { return image_[j]; }
  int sign(std::size_t j) const { return sign_[j]; }
  const std::vector<int>& images() const noexcept { return image_; }
  const std::vector<std::int8_t>& signs() const noexcept { return sign_; }

  // Matrix entry (i, j).
  int entry(std::size_t i, std::size_t j) const { return image_[j] == static_cast<int>(i) ? sign_[j] : 0; }

  long trace() const {
    long t = 0;
    for (std::size_t j = 0; j < image_.size(); ++j)
      if (image_[j] == static_cast<int>(j)) t += sign_[j];
    return t;
  }

  // Symmetric, involutive, and with negative entries only on the diagonal:
  // the shape of a color adjacency matrix.
  bool is_color_involution() const {
    for (std::size_t j = 0; j < image_.size(); ++j) {
      auto i = static_cast<std::size_t>(image_[j]);
      if (i == j) continue;
      if (image_[i] != static_cast<int>(j) || sign_[j] != 1) return false;
    }
    return true;
  }

  friend SignedPermutation operator*(const SignedPermutation& a, const SignedPermutation& b) {
    if (a.size() != b.size()) throw DimensionMismatch("signed permutation product size mismatch");
    std::vector<int> img(a.size());
    std::vector<std::int8_t> sgn(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      auto mid = static_cast<std::size_t>(b.image_[j]);
      img[j] = a.image_[mid];
      sgn[j] = static_cast<std::int8_t>(a.sign_[mid] * b.sign_[j]);
    }
    SignedPermutation out;
    out.image_ = std::move(img);
    out.sign_ = std::move(sgn);
    return out;
  }

  template <class T = std::int64_t>
  Matrix<T> matrix() const {
    Matrix<T> m(size(), size());
    for (std::size_t j = 0; j < size(); ++j) m(static_cast<std::size_t>(image_[j]), j) = T(sign_[j]);
    return m;
  }

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;

 private:
  std::vector<int> image_;
  std::vector<std::int8_t> sign_;
};

// Bijection on {0..n-1}; image(v) is where vertex v is sent.
class VertexPermutation {
 public:
  VertexPermutation() = default;
  explicit VertexPermutation(std::vector<int> image) : image_(std::move(image)) {
    std::vector<bool> hit(image_.size(), false);
    for (int x : image_) {
      if (x < 0 || static_cast<std::size_t>(x) >= image_.size() || hit[static_cast<std::size_t>(x)])
        throw Error("vertex permutation is not a bijection");
      hit[static_cast<std::size_t>(x)] = true;
    }
  }
  static VertexPermutation identity(std::size_t n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    return VertexPermutation(std::move(img));
  }

  std::size_t size() const noexcept { return image_.size(); }
  int operator()(int v) const { return image_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& images() const noexcept { return image_; }

  VertexPermutation inverse() const {
    std::vector<int> inv(image_.size());
    for (std::size_t v = 0; v < image_.size(); ++v) inv[static_cast<std::size_t>(image_[v])] = static_cast<int>(v);
    return VertexPermutation(std::move(inv));
  }

  // P with P(v, image(v)) = 1. For an isomorphism phi from g to h this
  // satisfies P^T A_g P = A_h for every color.
  template <class T = std::int64_t>
  Matrix<T> matrix() const {
    Matrix<T> m(size(), size());
    for (std::size_t v = 0; v < size(); ++v) m(v, static_cast<std::size_t>(image_[v])) = T(1);
    return m;
  }

  friend bool operator==(const VertexPermutation&, const VertexPermutation&) = default;

 private:
  std::vector<int> image_;
};

class ColoredGraph {
 public:
  ColoredGraph() = default;

  // Edges may be given in any order; validity is checked here and reported
  // through validation() rather than thrown, so malformed inputs can still be
  // inspected. Operations that need a valid graph throw InvalidGraph.
  ColoredGraph(int n, int k, std::vector<ColoredEdge> edges, std::vector<std::string> color_names = {})
      : n_(n), k_(k), edges_(std::move(edges)), names_(std::move(color_names)) {
    for (auto& e : edges_)
      if (e.kind == EdgeKind::link && e.u > e.v) std::swap(e.u, e.v);
    std::sort(edges_.begin(), edges_.end(), [](const ColoredEdge& a, const ColoredEdge& b) {
      return std::tie(a.color, a.kind, a.u, a.v) < std::tie(b.color, b.kind, b.u, b.v);
    });
    if (names_.empty())
      for (int c = 0; c < std::max(k_, 0); ++c) names_.push_back(std::to_string(c + 1));
    check();
  }

  // Builds a graph from its color involutions (e.g. after conjugation).
  static ColoredGraph from_involutions(const std::vector<SignedPermutation>& colors,
                                       std::vector<std::string> color_names = {}) {
    if (colors.empty()) throw InvalidGraph("a graph needs at least one color");
    const int n = static_cast<int>(colors.front().size());
    std::vector<ColoredEdge> edges;
    for (std::size_t c = 0; c < colors.size(); ++c) {
      const auto& p = colors[c];
      if (static_cast<int>(p.size()) != n) throw DimensionMismatch("color involutions differ in size");
      if (!p.is_color_involution())
        throw NotASignedPermutation(static_cast<int>(c), "color " + std::to_string(c + 1) + " is not a symmetric involution");
      for (int v = 0; v < n; ++v) {
        int w = p.image(static_cast<std::size_t>(v));
        if (w == v)
          edges.push_back(p.sign(static_cast<std::size_t>(v)) > 0 ? ColoredEdge::nloop(static_cast<int>(c), v)
                                                                  : ColoredEdge::dloop(static_cast<int>(c), v));
        else if (v < w)
          edges.push_back(ColoredEdge::link(static_cast<int>(c), v, w));
      }
    }
    return ColoredGraph(n, static_cast<int>(colors.size()), std::move(edges), std::move(color_names));
  }

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  const std::vector<ColoredEdge>& edges() const noexcept { return edges_; }
  const std::vector<std::string>& color_names() const noexcept { return names_; }
  const std::string& color_name(int c) const { return names_.at(static_cast<std::size_t>(c)); }

  const ValidationReport& validation() const noexcept { return report_; }
  bool valid() const noexcept { return report_.ok(); }

  void require_valid() const {
    if (!valid()) throw InvalidGraph("invalid graph: " + report_.violations.front());
  }

  // Color-c involution (the adjacency matrix in compressed form).
  const SignedPermutation& involution(int c) const {
    require_valid();
    if (c < 0 || c >= k_) throw InvalidColor("color index " + std::to_string(c + 1) + " out of range");
    return colors_[static_cast<std::size_t>(c)];
  }
  const std::vector<SignedPermutation>& involutions() const {
    require_valid();
    return colors_;
  }

  // Kind of the color-c edge at v, and the other endpoint (v itself for loops).
  EdgeKind kind_at(int c, int v) const {
    const auto& p = involution(c);
    if (p.image(static_cast<std::size_t>(v)) != v) return EdgeKind::link;
    return p.sign(static_cast<std::size_t>(v)) > 0 ? EdgeKind::nloop : EdgeKind::dloop;
  }
  int partner(int c, int v) const { return involution(c).image(static_cast<std::size_t>(v)); }

  // Structural equality of the labeled graphs; color names are ignored.
  friend bool operator==(const ColoredGraph& a, const ColoredGraph& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.edges_ == b.edges_;
  }

 private:
  void check() {
    auto& out = report_.violations;
    if (n_ < 1) out.push_back("n must be positive");
    if (k_ < 1) out.push_back("k must be positive");
    if (!out.empty()) return;
    if (static_cast<int>(names_.size()) != k_) out.push_back("expected " + std::to_string(k_) + " color names");
    auto cname = [&](int c) { return c < static_cast<int>(names_.size()) ? names_[static_cast<std::size_t>(c)] : std::to_string(c + 1); };
    std::vector<std::vector<int>> count(static_cast<std::size_t>(k_), std::vector<int>(static_cast<std::size_t>(n_), 0));
    for (const auto& e : edges_) {
      if (e.color < 0 || e.color >= k_) {
        out.push_back("edge color index " + std::to_string(e.color + 1) + " out of range");
        continue;
      }
      if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) {
        out.push_back("color-" + cname(e.color) + " edge references vertex outside 1.." + std::to_string(n_));
        continue;
      }
      if (e.kind == EdgeKind::link && e.u == e.v) {
        out.push_back("color-" + cname(e.color) + " link at vertex " + std::to_string(e.u + 1) + " joins a vertex to itself");
        continue;
      }
      if (e.kind != EdgeKind::link && e.u != e.v) {
        out.push_back("color-" + cname(e.color) + " loop has two distinct endpoints");
        continue;
      }
      ++count[static_cast<std::size_t>(e.color)][static_cast<std::size_t>(e.u)];
      if (e.u != e.v) ++count[static_cast<std::size_t>(e.color)][static_cast<std::size_t>(e.v)];
    }
    for (int c = 0; c < k_; ++c)
      for (int v = 0; v < n_; ++v) {
        int cnt = count[static_cast<std::size_t>(c)][static_cast<std::size_t>(v)];
        if (cnt == 0)
          out.push_back("vertex " + std::to_string(v + 1) + " lacks color-" + cname(c) + " edge");
        else if (cnt > 1)
          out.push_back("vertex " + std::to_string(v + 1) + " has " + std::to_string(cnt) + " color-" + cname(c) + " edges");
      }
    if (!out.empty()) return;
    colors_.reserve(static_cast<std::size_t>(k_));
    for (int c = 0; c < k_; ++c) {
      std::vector<int> img(static_cast<std::size_t>(n_));
      std::vector<std::int8_t> sgn(static_cast<std::size_t>(n_), 1);
      for (const auto& e : edges_) {
        if (e.color != c) continue;
        img[static_cast<std::size_t>(e.u)] = e.v;
        img[static_cast<std::size_t>(e.v)] = e.u;
        if (e.kind == EdgeKind::dloop) sgn[static_cast<std::size_t>(e.u)] = -1;
      }
      colors_.emplace_back(std::move(img), std::move(sgn));
    }
  }

  int n_ = 0;
  int k_ = 0;
  std::vector<ColoredEdge> edges_;
  std::vector<std::string> names_;
  ValidationReport report_;
  std::vector<SignedPermutation> colors_;
};

inline ValidationReport validate(const ColoredGraph& g) { return g.validation(); }

inline SignedPermutation adjacency(const ColoredGraph& g, int c) { return g.involution(c); }

template <class T = std::int64_t>
Matrix<T> adjacency_matrix(const ColoredGraph& g, int c) {
  return g.involution(c).template matrix<T>();
}

template <class T = std::int64_t>
std::vector<Matrix<T>> adjacency_matrices(const ColoredGraph& g) {
  std::vector<Matrix<T>> out;
  for (int c = 0; c < g.k(); ++c) out.push_back(adjacency_matrix<T>(g, c));
  return out;
}

// (tr A^c)_c, i.e. #N-loops - #D-loops per color.
inline std::vector<long> trace_vector(const ColoredGraph& g) {
  std::vector<long> t;
  for (const auto& p : g.involutions()) t.push_back(p.trace());
  return t;
}

// Returns the graph with color matrices T^{-1} A^c T.
inline ColoredGraph conjugate(const ColoredGraph& g, const ExactMatrix& t) {
  g.require_valid();
  if (!t.is_square() || t.rows() != static_cast<std::size_t>(g.n()))
    throw DimensionMismatch("conjugate: transplantation matrix must be n x n");
  ExactMatrix tinv = inverse(t);
  std::vector<SignedPermutation> colors;
  for (int c = 0; c < g.k(); ++c) {
    ExactMatrix m = tinv * adjacency_matrix<Rational>(g, c) * t;
    auto p = SignedPermutation::from_matrix(m);
    if (!p || !p->is_color_involution())
      throw NotASignedPermutation(c, "conjugated color " + g.color_name(c) + " matrix is not a signed permutation involution");
    colors.push_back(std::move(*p));
  }
  return ColoredGraph::from_involutions(colors, g.color_names());
}

// The graph in which vertex v of g is renamed phi(v).
inline ColoredGraph relabel(const ColoredGraph& g, const VertexPermutation& phi) {
  if (phi.size() != static_cast<std::size_t>(g.n())) throw DimensionMismatch("relabel: permutation size mismatch");
  std::vector<ColoredEdge> edges;
  for (const auto& e : g.edges()) {
    ColoredEdge r = e;
    r.u = phi(e.u);
    r.v = phi(e.v);
    if (r.kind == EdgeKind::link && r.u > r.v) std::swap(r.u, r.v);
    edges.push_back(r);
  }
  return ColoredGraph(g.n(), g.k(), std::move(edges), g.color_names());
}

// Searches for phi with A_h[phi(i), phi(j)] = A_g[i, j] for every color.
// Fixing the image of one vertex forces the images of its whole connected
// component, so the search branches only once per component; candidates are
// pruned by their per-color edge-kind signature.
inline std::optional<VertexPermutation> isomorphism(const ColoredGraph& g, const ColoredGraph& h) {
  g.require_valid();
  h.require_valid();
  if (g.n() != h.n() || g.k() != h.k()) throw DimensionMismatch("isomorphism: graphs differ in vertex or color count");
  const int n = g.n(), k = g.k();
  auto signature = [k](const ColoredGraph& x, int v) {
    std::vector<EdgeKind> s;
    for (int c = 0; c < k; ++c) s.push_back(x.kind_at(c, v));
    return s;
  };
  std::vector<std::vector<EdgeKind>> sig_g, sig_h;
  for (int v = 0; v < n; ++v) sig_g.push_back(signature(g, v)), sig_h.push_back(signature(h, v));

  std::vector<int> fwd(static_cast<std::size_t>(n), -1), bwd(static_cast<std::size_t>(n), -1);

  // Assigns v -> x and propagates along links; records assignments for undo.
  auto extend = [&](int v0, int x0, std::vector<int>& trail) {
    std::vector<std::pair<int, int>> stack{{v0, x0}};
    while (!stack.empty()) {
      auto [v, x] = stack.back();
      stack.pop_back();
      auto& fv = fwd[static_cast<std::size_t>(v)];
      if (fv != -1) {
        if (fv != x) return false;
        continue;
      }
      if (bwd[static_cast<std::size_t>(x)] != -1) return false;
      if (sig_g[static_cast<std::size_t>(v)] != sig_h[static_cast<std::size_t>(x)]) return false;
      fv = x;
      bwd[static_cast<std::size_t>(x)] = v;
      trail.push_back(v);
      for (int c = 0; c < k; ++c)
        if (sig_g[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)] == EdgeKind::link)
          stack.emplace_back(g.partner(c, v), h.partner(c, x));
    }
    return true;
  };
  auto undo = [&](std::vector<int>& trail) {
    for (int v : trail) {
      bwd[static_cast<std::size_t>(fwd[static_cast<std::size_t>(v)])] = -1;
      fwd[static_cast<std::size_t>(v)] = -1;
    }
    trail.clear();
  };

  std::function<bool()> search = [&]() -> bool {
    int v = 0;
    while (v < n && fwd[static_cast<std::size_t>(v)] != -1) ++v;
    if (v == n) return true;
    for (int x = 0; x < n; ++x) {
      if (bwd[static_cast<std::size_t>(x)] != -1) continue;
      std::vector<int> trail;
      if (extend(v, x, trail) && search()) return true;
      undo(trail);
    }
    return false;
  };
  if (!search()) return std::nullopt;
  return VertexPermutation(fwd);
}

// Lexicographically minimal relabeled adjacency tuple: header (n, k) followed
// by the row-major entries of every color matrix, color by color.
class CanonicalKey {
 public:
  CanonicalKey() = default;
  explicit CanonicalKey(std::vector<std::int8_t> bytes) : bytes_(std::move(bytes)) {}
  const std::vector<std::int8_t>& bytes() const noexcept { return bytes_; }

  std::string to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (auto b : bytes_) {
      auto u = static_cast<std::uint8_t>(b);
      s += digits[u >> 4];
      s += digits[u & 0xf];
    }
    return s;
  }

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;

 private:
  std::vector<std::int8_t> bytes_;
};

// Entries of the relabeled graph under order[] (new vertex a is old vertex
// order[a]), emitted in key order.
namespace detail {
inline void emit_relabeled(const ColoredGraph& g, const std::vector<int>& order, std::vector<std::int8_t>& out) {
  const auto n = static_cast<std::size_t>(g.n());
  out.clear();
  out.push_back(static_cast<std::int8_t>(g.n()));
  out.push_back(static_cast<std::int8_t>(g.k()));
  for (const auto& p : g.involutions())
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        out.push_back(static_cast<std::int8_t>(p.entry(static_cast<std::size_t>(order[a]), static_cast<std::size_t>(order[b]))));
}
}  // namespace detail

// Minimizes over all n! vertex orders, so it is meant for small graphs
// (n of at most about 9).
inline CanonicalKey canonical_form(const ColoredGraph& g, VertexPermutation* relabeling = nullptr) {
  g.require_valid();
  if (g.n() > 12) throw PreconditionViolated("canonical_form: graph too large for exhaustive minimization");
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::int8_t> best, cur;
  std::vector<int> best_order = order;
  detail::emit_relabeled(g, order, best);
  const auto& inv = g.involutions();
  while (std::next_permutation(order.begin(), order.end())) {
    // Compare lazily against the best key, stopping at the first difference.
    int cmp = 0;
    std::size_t idx = 2;
    for (const auto& p : inv) {
      for (std::size_t a = 0; a < n && cmp == 0; ++a)
        for (std::size_t b = 0; b < n; ++b, ++idx) {
          auto e = static_cast<std::int8_t>(p.entry(static_cast<std::size_t>(order[a]), static_cast<std::size_t>(order[b])));
          if (e != best[idx]) {
            cmp = e < best[idx] ? -1 : 1;
            break;
          }
        }
      if (cmp != 0) break;
    }
    if (cmp < 0) {
      detail::emit_relabeled(g, order, best);
      best_order = order;
    }
  }
  if (relabeling) {
    // new vertex a is old vertex best_order[a], so old v goes to position a.
    std::vector<int> img(n);
    for (std::size_t a = 0; a < n; ++a) img[static_cast<std::size_t>(best_order[a])] = static_cast<int>(a);
    *relabeling = VertexPermutation(std::move(img));
  }
  return CanonicalKey(std::move(best));
}

// Identity of a labeled graph (not invariant under relabeling).
inline std::string labeled_fingerprint(const ColoredGraph& g) {
  std::vector<int> order(static_cast<std::size_t>(g.n()));
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::int8_t> bytes;
  detail::emit_relabeled(g, order, bytes);
  std::uint64_t h = 1469598103934665603ull;
  for (auto b : bytes) {
    h ^= static_cast<std::uint8_t>(b);
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return s;
}

}  // namespace lgt
