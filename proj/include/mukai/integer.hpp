#pragma once

// Integer column operations: Hermite-style echelon forms, Z-spans and
// integral kernels.

#include <cstddef>
#include <optional>
#include <utility>

#include "mukai/linalg.hpp"
#include "mukai/matrix.hpp"

namespace mukai {

using IMatrix = Matrix<Integer>;

struct ColumnEchelon {
  IMatrix H;         // A * U
  IMatrix U;         // unimodular
  std::size_t rank;  // nonzero columns of H come first
};

inline ColumnEchelon column_echelon(const IMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  IMatrix H = A, U = IMatrix::identity(n);
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m; ++i) std::swap(H(i, a), H(i, b));
    for (std::size_t i = 0; i < n; ++i) std::swap(U(i, a), U(i, b));
  };
  auto axpy = [&](std::size_t dst, const Integer& q, std::size_t src) {  // col dst -= q col src
    for (std::size_t i = 0; i < m; ++i)
      if (H(i, src) != 0) H(i, dst) -= q * H(i, src);
    for (std::size_t i = 0; i < n; ++i)
      if (U(i, src) != 0) U(i, dst) -= q * U(i, src);
  };
  std::size_t c = 0;
  for (std::size_t i = 0; i < m && c < n; ++i) {
    while (true) {
      std::size_t best = n;
      for (std::size_t k = c; k < n; ++k)
        if (H(i, k) != 0 && (best == n || abs(H(i, k)) < abs(H(i, best)))) best = k;
      if (best == n) break;
      swap_cols(c, best);
      bool done = true;
      for (std::size_t k = c + 1; k < n; ++k) {
        if (H(i, k) == 0) continue;
        axpy(k, floor_div(H(i, k), H(i, c)), c);
        if (H(i, k) != 0) done = false;
      }
      if (done) break;
    }
    if (c < n && H(i, c) != 0) {
      if (H(i, c) < 0) {
        for (std::size_t r = 0; r < m; ++r) H(r, c) = -H(r, c);
        for (std::size_t r = 0; r < n; ++r) U(r, c) = -U(r, c);
      }
      ++c;
    }
  }
  return {std::move(H), std::move(U), c};
}

// Z-basis (columns) of the lattice spanned by the columns of A.
inline IMatrix z_span_basis(const IMatrix& A) {
  auto ce = column_echelon(A);
  return ce.H.block(0, 0, A.rows(), ce.rank);
}

// Z-basis (columns) of {x in Z^n : A x = 0}.
inline IMatrix integer_kernel(const IMatrix& A) {
  auto ce = column_echelon(A);
  return ce.U.block(0, ce.rank, A.cols(), A.cols() - ce.rank);
}

inline IMatrix to_integer(const QMatrix& m) {
  IMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_integer()) throw Error(Errc::PreconditionViolated, "non-integral entry " + m(i, j).to_string());
      r(i, j) = m(i, j).numerator();
    }
  return r;
}

inline QMatrix to_rational(const IMatrix& m) {
  QMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

inline bool is_integral(const QMatrix& m) {
  for (const auto& x : m.data())
    if (!x.is_integer()) return false;
  return true;
}
inline bool is_integral(const QVec& v) {
  for (const auto& x : v)
    if (!x.is_integer()) return false;
  return true;
}

// Integer coefficients c with B c = v, if they exist (B has full column rank).
inline std::optional<QVec> integral_coordinates(const QMatrix& B, const QVec& v) {
  QMatrix rhs(v.size(), 1);
  rhs.set_column(0, v);
  auto out = solve(B, rhs);
  if (out.status != SolveStatus::Unique) return std::nullopt;
  QVec c = out.x.column(0);
  if (!is_integral(c)) return std::nullopt;
  return c;
}

// Extended gcd over a list: returns g >= 0 and coefficients with sum x_i a_i = g.
inline std::pair<Integer, std::vector<Integer>> extended_gcd(const std::vector<Integer>& a) {
  std::vector<Integer> x(a.size(), 0);
  Integer g = 0;
  bool have = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!have) {
      g = a[i];
      x[i] = 1;
      have = true;
      continue;
    }
    Integer s, t, d;
    mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), a[i].get_mpz_t());
    for (std::size_t j = 0; j < i; ++j) x[j] *= s;
    x[i] = t;
    g = d;
  }
  if (g < 0) {
    g = -g;
    for (auto& v : x) v = -v;
  }
  return {g, x};
}

}  // namespace mukai
