#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lgt/error.hpp"
#include "lgt/matrix.hpp"
#include "lgt/rational.hpp"

namespace lgt {

// Dense univariate polynomial, coefficients lowest degree first. The zero
// polynomial has no coefficients; otherwise the last coefficient is nonzero.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(std::size_t degree, Rational c = 1) {
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = std::move(c);
    return Polynomial(std::move(v));
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  // Degree of the zero polynomial is reported as -1.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  Rational coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return Polynomial(std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + b * Rational(-1); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(v));
  }
  friend Polynomial operator*(Polynomial a, const Rational& s) {
    for (auto& c : a.coeffs_) c *= s;
    a.trim();
    return a;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  // Renders in the variable `var`, highest degree first, e.g. "x^4 - 2*x^2 + 1".
  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long d = degree(); d >= 0; --d) {
      const Rational& c = coeffs_[static_cast<std::size_t>(d)];
      if (c == 0) continue;
      Rational mag = abs(c);
      if (first) {
        if (c < 0) os << '-';
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      bool unit = mag == 1;
      if (!unit || d == 0) os << mag.get_str();
      if (d > 0) {
        if (!unit) os << '*';
        os << var;
        if (d > 1) os << '^' << d;
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Rational> coeffs_;
};

// Sequence of 0-based color indices.
using Word = std::vector<int>;

namespace detail {

inline void require_square(const ExactMatrix& m, const char* op) {
  if (!m.is_square()) throw DimensionMismatch(std::string(op) + " requires a square matrix");
}

}  // namespace detail

// Exact determinant via fraction-free Bareiss elimination. Rows are first
// scaled to integers, so all elimination happens over Z.
inline Rational determinant(const ExactMatrix& m) {
  detail::require_square(m, "determinant");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    scale *= l;
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Rational det(a[n - 1][n - 1] * sign, scale);
  det.canonicalize();
  return det;
}

// Reduced row echelon form together with the pivot column of each nonzero row.
struct RowEchelon {
  ExactMatrix reduced;
  std::vector<std::size_t> pivots;
};

inline RowEchelon row_echelon(ExactMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const ExactMatrix& m) { return row_echelon(m).pivots.size(); }

// Basis of {x : m x = 0} as column vectors, one per free column of the
// reduced echelon form. Dimension is cols - rank.
inline std::vector<ExactMatrix> nullspace_basis(const ExactMatrix& m) {
  auto [rref, pivots] = row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<ExactMatrix> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    ExactMatrix x(m.cols(), 1);
    x(f, 0) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x(pivots[r], 0) = -rref(r, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

inline ExactMatrix inverse(const ExactMatrix& m) {
  detail::require_square(m, "inverse");
  const std::size_t n = m.rows();
  ExactMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto [rref, pivots] = row_echelon(std::move(aug));
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw NotInvertible("matrix is singular");
  ExactMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = rref(i, n + j);
  return inv;
}

// Characteristic polynomial det(x I - m), computed by exact similarity
// reduction to upper Hessenberg form followed by the standard recurrence on
// its leading principal minors.
inline Polynomial char_poly(const ExactMatrix& m) {
  detail::require_square(m, "char_poly");
  const std::size_t n = m.rows();
  ExactMatrix h = m;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t p = j + 1;
    while (p < n && h(p, j) == 0) ++p;
    if (p == n) continue;
    if (p != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(p, c), h(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, p), h(r, j + 1));
    }
    for (std::size_t i = j + 2; i < n; ++i) {
      if (h(i, j) == 0) continue;
      Rational f = h(i, j) / h(j + 1, j);
      for (std::size_t c = 0; c < n; ++c) h(i, c) -= f * h(j + 1, c);
      for (std::size_t r = 0; r < n; ++r) h(r, j + 1) += f * h(r, i);
    }
  }
  // p[m] is the characteristic polynomial of the leading m x m block.
  std::vector<Polynomial> p;
  p.reserve(n + 1);
  p.emplace_back(std::vector<Rational>{1});
  const Polynomial x = Polynomial::monomial(1);
  for (std::size_t k = 1; k <= n; ++k) {
    Polynomial next = (x - Polynomial(std::vector<Rational>{h(k - 1, k - 1)})) * p[k - 1];
    Rational sub = 1;
    for (std::size_t i = k - 1; i-- > 0;) {
      sub *= h(i + 1, i);
      if (sub == 0) break;
      next = next - p[i] * (h(i, k - 1) * sub);
    }
    p.push_back(std::move(next));
  }
  return p[n];
}

// tr(M_{w1} M_{w2} ... M_{wl}); the empty word yields the common dimension.
template <class T>
T word_trace(std::span<const Matrix<T>> mats, const Word& word) {
  if (mats.empty()) {
    if (!word.empty()) throw DimensionMismatch("word_trace: no matrices");
    return T(0);
  }
  const std::size_t n = mats.front().rows();
  for (const auto& m : mats)
    if (m.rows() != n || m.cols() != n) throw DimensionMismatch("word_trace: matrices must be square of equal size");
  for (int c : word)
    if (c < 0 || static_cast<std::size_t>(c) >= mats.size()) throw InvalidColor("word_trace: color out of range");
  if (word.empty()) return T(static_cast<long>(n));
  Matrix<T> acc = mats[static_cast<std::size_t>(word[0])];
  for (std::size_t i = 1; i < word.size(); ++i) acc = acc * mats[static_cast<std::size_t>(word[i])];
  return acc.trace();
}

template <class T>
T word_trace(const std::vector<Matrix<T>>& mats, const Word& word) {
  return word_trace(std::span<const Matrix<T>>(mats), word);
}

}  // namespace lgt
