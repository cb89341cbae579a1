#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cocylab/arith.hpp"
#include "cocylab/error.hpp"
#include "cocylab/report.hpp"

namespace cocylab {

/// Dense square matrix over Q.
struct MatN {
  std::size_t n = 0;
  std::vector<Rational> e;

  explicit MatN(std::size_t size = 0) : n(size), e(size * size, Rational(0)) {}

  static MatN identity(std::size_t size) {
    MatN m(size);
    for (std::size_t i = 0; i < size; ++i) m(i, i) = 1;
    return m;
  }

  Rational& operator()(std::size_t i, std::size_t j) { return e[i * n + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return e[i * n + j]; }

  MatN operator*(const MatN& o) const {
    MatN out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if ((*this)(i, k) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) out(i, j) += (*this)(i, k) * o(k, j);
      }
    return out;
  }
  MatN operator+(const MatN& o) const {
    MatN out = *this;
    for (std::size_t i = 0; i < e.size(); ++i) out.e[i] += o.e[i];
    return out;
  }
  MatN scaled(const Rational& x) const {
    MatN out = *this;
    for (auto& v : out.e) v *= x;
    return out;
  }
  MatN transpose() const {
    MatN out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(j, i) = (*this)(i, j);
    return out;
  }
  bool is_zero() const {
    for (const auto& v : e)
      if (v != 0) return false;
    return true;
  }
  bool operator==(const MatN&) const = default;
};

inline nlohmann::json to_json(const MatN& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.n; ++j) row.push_back(format_rational(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

/// Root of C_n as a coefficient vector on e_1..e_n (entries in {-2..2}).
struct Root {
  std::vector<int> v;

  bool long_root() const {
    for (int c : v)
      if (c == 2 || c == -2) return true;
    return false;
  }
  Root negated() const {
    Root r = *this;
    for (int& c : r.v) c = -c;
    return r;
  }
  bool operator==(const Root&) const = default;
};

inline std::string to_string(const Root& r) {
  std::string out;
  for (std::size_t i = 0; i < r.v.size(); ++i) {
    int c = r.v[i];
    if (c == 0) continue;
    if (c < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    if (c == 2 || c == -2) out += "2";
    out += "e" + std::to_string(i + 1);
  }
  return out;
}

inline std::vector<Root> roots_cn(int n) {
  std::vector<Root> out;
  for (int i = 0; i < n; ++i) {
    Root r{std::vector<int>(n, 0)};
    r.v[i] = 2;
    out.push_back(r);
    out.push_back(r.negated());
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      for (int sj : {1, -1})
        for (int sk : {1, -1}) {
          Root r{std::vector<int>(n, 0)};
          r.v[j] = sj;
          r.v[k] = sk;
          out.push_back(r);
        }
  return out;
}

/// Sign convention for the negative-root generators. `Chevalley` is the
/// convention in which (B') holds; `Negated` flips every negative-root
/// generator and is kept to show that (B') then fails.
enum class RootConvention { Chevalley, Negated };

/// Generators of sp_2n on the basis b_-1..b_-n, b_1..b_n: b_-i sits at index
/// i-1 and b_i at index n+i-1, so the form J = [[0, I], [-I, 0]] pairs b_-i
/// with b_i.
class ChevalleySystem {
 public:
  ChevalleySystem(int n, RootConvention convention = RootConvention::Chevalley) : n_(n), convention_(convention) {
    if (n != 1 && n != 2) throw Error(ErrorKind::UnsupportedRank, "rank must be 1 or 2, got " + std::to_string(n));
  }

  int n() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(2 * n_); }

  /// Basis index of b_p, p in {+-1..+-n}.
  std::size_t index(int p) const {
    return p < 0 ? static_cast<std::size_t>(-p - 1) : static_cast<std::size_t>(n_ + p - 1);
  }

  MatN unit(int p, int q) const {
    MatN m(dim());
    m(index(p), index(q)) = 1;
    return m;
  }

  MatN form() const {
    MatN j(dim());
    for (int i = 1; i <= n_; ++i) {
      j(index(-i), index(i)) = 1;
      j(index(i), index(-i)) = -1;
    }
    return j;
  }

  std::vector<Root> roots() const { return roots_cn(n_); }

  MatN generator(const Root& r) const {
    std::vector<int> pos, neg;
    for (int i = 0; i < n_; ++i) {
      if (r.v[i] > 0) pos.push_back(i + 1);
      if (r.v[i] < 0) neg.push_back(i + 1);
    }
    Rational s = convention_ == RootConvention::Negated ? -1 : 1;
    if (pos.size() == 1 && neg.empty() && r.long_root()) {
      int i = pos[0];
      return unit(i, -i);  // X_{2e_i} = E_{i,-i}
    }
    if (neg.size() == 1 && pos.empty() && r.long_root()) {
      int i = neg[0];
      return unit(-i, i).scaled(s);  // X_{-2e_i} = E_{-i,i}
    }
    if (pos.size() == 2) {
      int i = pos[0], j = pos[1];
      return unit(i, -j) + unit(j, -i);  // X_{e_i+e_j}
    }
    if (neg.size() == 2) {
      int i = neg[0], j = neg[1];
      return (unit(-i, j) + unit(-j, i)).scaled(s);  // X_{-e_i-e_j} = E_{-i,j} + E_{-j,i}
    }
    int i = pos[0], j = neg[0];
    // e_i - e_j is a positive root iff i < j; X_{e_i-e_j} = E_{i,j} - E_{-j,-i}
    if (i < j) return unit(i, j) + unit(-j, -i).scaled(-1);
    // X_{-e_j+e_i} with j < i: X_{-e_a+e_b} = E_{b,a} - E_{-a,-b}, a = j, b = i
    return (unit(i, j) + unit(-j, -i).scaled(-1)).scaled(s);
  }

  MatN u(const Root& r, const Rational& x) const { return MatN::identity(dim()) + generator(r).scaled(x); }

  /// u_a(t) u_-a(-1/t) u_a(t)
  MatN w(const Root& r, const Rational& t) const { return u(r, t) * u(r.negated(), -1 / t) * u(r, t); }

  /// w_a(t) w_a(-1)
  MatN h(const Root& r, const Rational& t) const { return w(r, t) * w(r, Rational(-1)); }

  bool symplectic(const MatN& m) const { return m.transpose() * form() * m == form(); }

 private:
  int n_;
  RootConvention convention_;
};

/// Inverse of a symplectic matrix: -J M^t J.
inline MatN symplectic_inverse(const ChevalleySystem& sys, const MatN& m) {
  MatN j = sys.form();
  return (j * m.transpose() * j).scaled(-1);
}

/// Checks X^2 = 0 and u(x) in Sp for every root, then (A), (B') and, for long
/// roots, (C) on `samples` seeded draws per root.
inline AuditReport chevalley_audit(int n, std::size_t samples, std::uint64_t seed = 0,
                                   RootConvention convention = RootConvention::Chevalley) {
  ChevalleySystem sys(n, convention);
  AuditReport report;
  Rng rng(seed);
  auto x_json = [](const Root& r, std::initializer_list<Rational> xs) {
    nlohmann::json j{{"root", to_string(r)}};
    nlohmann::json args = nlohmann::json::array();
    for (const auto& x : xs) args.push_back(format_rational(x));
    j["args"] = args;
    return j;
  };

  for (const auto& r : sys.roots()) {
    MatN x = sys.generator(r);
    ++report.checked;
    if (!(x * x).is_zero()) report.record({"X^2=0", x_json(r, {}), to_json(x * x), to_json(MatN(sys.dim()))});
  }

  for (std::size_t s = 0; s < samples; ++s) {
    for (const auto& r : sys.roots()) {
      Rational x = rng.nonzero_rational(20, 9);
      Rational y = rng.nonzero_rational(20, 9);
      Rational t = rng.nonzero_rational(20, 9);

      MatN ux = sys.u(r, x);
      ++report.checked;
      if (!sys.symplectic(ux))
        report.record({"MtJM=J", x_json(r, {x}), to_json(ux.transpose() * sys.form() * ux), to_json(sys.form())});

      MatN lhs_a = sys.u(r, x + y);
      MatN rhs_a = sys.u(r, x) * sys.u(r, y);
      ++report.checked;
      if (lhs_a != rhs_a) report.record({"A", x_json(r, {x, y}), to_json(lhs_a), to_json(rhs_a)});

      MatN wt = sys.w(r, t);
      MatN lhs_b = wt * sys.u(r, x) * symplectic_inverse(sys, wt);
      MatN rhs_b = sys.u(r.negated(), -x / (t * t));
      ++report.checked;
      if (lhs_b != rhs_b) report.record({"B'", x_json(r, {t, x}), to_json(lhs_b), to_json(rhs_b)});

      if (r.long_root()) {
        MatN lhs_c = sys.h(r, x * y);
        MatN rhs_c = sys.h(r, x) * sys.h(r, y);
        ++report.checked;
        if (lhs_c != rhs_c) report.record({"C", x_json(r, {x, y}), to_json(lhs_c), to_json(rhs_c)});
      }
    }
  }
  return report;
}

}  // namespace cocylab
