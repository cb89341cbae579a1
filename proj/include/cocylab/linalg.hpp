#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cocylab/arith.hpp"
#include "cocylab/coeff.hpp"

namespace cocylab {

/// P * A * Q = D with P, Q unimodular and D diagonal, d_1 | d_2 | ... and
/// the nonzero entries first.
struct SmithForm {
  IntMatrix p;
  IntMatrix d;
  IntMatrix q;
  std::size_t rank = 0;
};

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  std::size_t rows = a.size();
  std::size_t inner = b.size();
  std::size_t cols = inner == 0 ? 0 : b.front().size();
  IntMatrix out(rows, std::vector<Integer>(cols, Integer(0)));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

inline SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a.front().size();
  SmithForm s{identity_matrix(m), a, identity_matrix(n), 0};
  auto& d = s.d;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(d[i], d[j]);
    std::swap(s.p[i], s.p[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : d) std::swap(row[i], row[j]);
    for (auto& row : s.q) std::swap(row[i], row[j]);
  };
  // row_i -= k * row_j
  auto add_row = [&](std::size_t i, std::size_t j, const Integer& k) {
    for (std::size_t c = 0; c < n; ++c) d[i][c] -= k * d[j][c];
    for (std::size_t c = 0; c < m; ++c) s.p[i][c] -= k * s.p[j][c];
  };
  auto add_col = [&](std::size_t i, std::size_t j, const Integer& k) {
    for (std::size_t r = 0; r < m; ++r) d[r][i] -= k * d[r][j];
    for (std::size_t r = 0; r < n; ++r) s.q[r][i] -= k * s.q[r][j];
  };

  std::size_t t = 0;
  while (t < m && t < n) {
    // Pivot: smallest nonzero magnitude in the remaining block.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (d[i][j] != 0 && (!best || abs(d[i][j]) < abs(d[best->first][best->second]))) best = {i, j};
    if (!best) break;
    swap_rows(t, best->first);
    swap_cols(t, best->second);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d[i][t] == 0) continue;
        Integer k = d[i][t] / d[t][t];
        add_row(i, t, k);
        if (d[i][t] != 0) {
          swap_rows(t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d[t][j] == 0) continue;
        Integer k = d[t][j] / d[t][t];
        add_col(j, t, k);
        if (d[t][j] != 0) {
          swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // Divisibility: fold a non-multiple into the pivot row and repeat.
      for (std::size_t i = t + 1; i < m && clean; ++i)
        for (std::size_t j = t + 1; j < n && clean; ++j)
          if (d[i][j] % d[t][t] != 0) {
            add_row(t, i, Integer(-1));
            clean = false;
          }
    }
    if (d[t][t] < 0) {
      for (std::size_t c = 0; c < n; ++c) d[t][c] = -d[t][c];
      for (std::size_t c = 0; c < m; ++c) s.p[t][c] = -s.p[t][c];
    }
    ++t;
  }
  s.rank = t;
  return s;
}

/// Outcome of solving A x = b: either a solution (free unknowns set to 0) or
/// a single combined row y.A x = y.b with no solution in the domain.
struct LinearResult {
  std::optional<std::vector<Rational>> solution;
  std::vector<Integer> certificate_coeffs;
  Integer certificate_rhs;
  /// (row index, multiplier) pairs combining into the certificate row.
  std::vector<std::pair<std::size_t, Integer>> certificate_rows;
};

/// True iff sum coeffs[i] x_i = rhs has no integer (resp. rational) solution.
inline bool row_unsolvable(const std::vector<Integer>& coeffs, const Integer& rhs, bool integral) {
  Integer g = 0;
  for (const auto& c : coeffs) g = gcd(g, c);
  if (g == 0) return rhs != 0;
  return integral && rhs % g != 0;
}

/// Integer matrix A (m x n), integer right-hand side b. Over Z when
/// `integral`, over Q otherwise.
inline LinearResult solve_linear(const IntMatrix& a, const std::vector<Integer>& b, bool integral, std::size_t n) {
  const std::size_t m = a.size();
  LinearResult out;
  // A single row may already be contradictory; prefer it as the certificate.
  for (std::size_t i = 0; i < m; ++i)
    if (row_unsolvable(a[i], b[i], integral)) {
      out.certificate_coeffs = a[i];
      out.certificate_rhs = b[i];
      out.certificate_rows = {{i, Integer(1)}};
      return out;
    }
  if (m == 0) {
    out.solution = std::vector<Rational>(n, Rational(0));
    return out;
  }
  SmithForm s = smith_normal_form(a);
  std::vector<Integer> c(m, Integer(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) c[i] += s.p[i][k] * b[k];

  std::vector<Rational> y(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    bool bad;
    if (i < s.rank) {
      bad = integral && c[i] % s.d[i][i] != 0;
      if (!bad) y[i] = Rational(c[i], s.d[i][i]);
    } else {
      bad = c[i] != 0;
    }
    if (bad) {
      std::vector<Integer> row(n, Integer(0));
      for (std::size_t k = 0; k < m; ++k)
        if (s.p[i][k] != 0) {
          out.certificate_rows.emplace_back(k, s.p[i][k]);
          for (std::size_t j = 0; j < n; ++j) row[j] += s.p[i][k] * a[k][j];
        }
      out.certificate_coeffs = std::move(row);
      out.certificate_rhs = c[i];
      return out;
    }
  }
  std::vector<Rational> x(n, Rational(0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < n; ++j) x[r] += Rational(s.q[r][j]) * y[j];
  out.solution = std::move(x);
  return out;
}

}  // namespace cocylab
