#pragma once

// Exact integer linear algebra: Hermite/Smith normal forms with transforms,
// lattice bases, left-solving and the block sum used by corestriction.
// Everything here works on arbitrary-precision integers; no floating point.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_int/serialize.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace unram {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;
using RatVec = std::vector<Rat>;

inline IntMat identity_mat(std::size_t n) {
  IntMat m(n, IntVec(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMat diagonal_mat(const std::vector<Int>& d) {
  IntMat m(d.size(), IntVec(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
  return m;
}

inline bool is_zero_vec(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// row vector * matrix
inline IntVec vec_mat(const IntVec& v, const IntMat& a) {
  if (a.empty()) return {};
  if (v.size() != a.size()) throw std::invalid_argument("vec_mat: shape mismatch");
  IntVec out(a[0].size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    const IntVec& row = a[i];
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) out[j] += v[i] * row[j];
  }
  return out;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
  IntMat out;
  out.reserve(a.size());
  for (const auto& row : a) out.push_back(vec_mat(row, b));
  return out;
}

// output[i] = sum of the i-th consecutive block of k entries
inline IntVec block_sum(const IntVec& l, std::size_t k) {
  if (k == 0 || l.size() % k != 0)
    throw std::invalid_argument("block_sum: block size must divide length");
  IntVec out(l.size() / k);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) out[i] += l[i * k + j];
  return out;
}

namespace detail {

// One in-place row-echelon pass over Z (fraction-free, gcd pivots).
// Maintains `trans` alongside when provided (same row ops applied).
// Rows end up echelon by pivot column with positive pivots; entries above
// pivots reduced.  This is the canonical row-style Hermite normal form once
// zero rows are dropped.
inline void hermite_in_place(IntMat& m, IntMat* trans) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // find pivot: smallest |entry| != 0 in column c at or below r
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      if (piv == rows || abs(m[i][c]) < abs(m[piv][c])) piv = i;
    }
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    if (trans) std::swap((*trans)[r], (*trans)[piv]);
    // eliminate column c below r, repeating until clean (gcd descent)
    bool again = true;
    while (again) {
      again = false;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (m[i][c] == 0) continue;
        Int q = m[i][c] / m[r][c];  // truncated division is fine here
        if (q != 0) {
          for (std::size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
          if (trans)
            for (std::size_t j = 0; j < (*trans)[i].size(); ++j)
              (*trans)[i][j] -= q * (*trans)[r][j];
        }
        if (m[i][c] != 0) {
          std::swap(m[r], m[i]);
          if (trans) std::swap((*trans)[r], (*trans)[i]);
          again = true;
        }
      }
    }
    if (m[r][c] < 0) {
      for (auto& x : m[r]) x = -x;
      if (trans)
        for (auto& x : (*trans)[r]) x = -x;
    }
    ++r;
  }
  // reduce entries above each pivot into [0, pivot), ascending so that
  // spill into later pivot columns is cleaned afterwards
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t c = 0;
    while (c < cols && m[i][c] == 0) ++c;
    if (c == cols) continue;
    for (std::size_t k = 0; k < i; ++k) {
      if (m[k][c] == 0) continue;
      Int q = m[k][c] / m[i][c];
      if (m[k][c] - q * m[i][c] < 0) q -= 1;  // floor
      if (q == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) m[k][j] -= q * m[i][j];
      if (trans)
        for (std::size_t j = 0; j < (*trans)[k].size(); ++j)
          (*trans)[k][j] -= q * (*trans)[i][j];
    }
  }
}

}  // namespace detail

struct HermiteDecomposition {
  IntMat normal;    // echelon rows (zero rows kept at bottom), rank many pivots
  IntMat rowtrans;  // unimodular, rowtrans * A = normal
  std::size_t rank = 0;
};

inline HermiteDecomposition hermite_normal_form(IntMat a) {
  HermiteDecomposition h;
  h.rowtrans = identity_mat(a.size());
  detail::hermite_in_place(a, &h.rowtrans);
  h.rank = 0;
  for (const auto& row : a)
    if (!is_zero_vec(row)) ++h.rank;
  h.normal = std::move(a);
  return h;
}

// Canonical (unique) basis of the lattice generated by the given rows:
// row-style Hermite normal form with zero rows dropped.
inline IntMat lattice_basis(IntMat rows) {
  detail::hermite_in_place(rows, nullptr);
  IntMat out;
  for (auto& r : rows)
    if (!is_zero_vec(r)) out.push_back(std::move(r));
  return out;
}

struct SmithDecomposition {
  IntMat normal;    // diagonal, d1 | d2 | ...
  IntMat rowtrans;  // unimodular
  IntMat coltrans;  // unimodular, rowtrans * A * coltrans = normal
  std::size_t rank = 0;

  std::vector<Int> torsion_coefficients() const {
    std::vector<Int> t;
    for (std::size_t i = 0; i < rank; ++i)
      if (normal[i][i] > 1) t.push_back(normal[i][i]);
    return t;
  }
};

inline SmithDecomposition smith_normal_form(IntMat a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  SmithDecomposition s;
  s.rowtrans = identity_mat(rows);
  s.coltrans = identity_mat(cols);

  auto col_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows; ++i) a[i][dst] -= q * a[i][src];
    for (std::size_t i = 0; i < cols; ++i) s.coltrans[i][dst] -= q * s.coltrans[i][src];
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][x], a[i][y]);
    for (std::size_t i = 0; i < cols; ++i) std::swap(s.coltrans[i][x], s.coltrans[i][y]);
  };
  auto row_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols; ++j) a[dst][j] -= q * a[src][j];
    for (std::size_t j = 0; j < rows; ++j) s.rowtrans[dst][j] -= q * s.rowtrans[src][j];
  };
  auto row_swap = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    std::swap(a[x], a[y]);
    std::swap(s.rowtrans[x], s.rowtrans[y]);
  };

  std::size_t t = 0;
  const std::size_t lim = std::min(rows, cols);
  while (t < lim) {
    // smallest nonzero |entry| in the trailing block, tie-break by index
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        if (pi == rows || abs(a[i][j]) < abs(a[pi][pj])) {
          pi = i;
          pj = j;
        }
      }
    if (pi == rows) break;  // trailing block is zero
    row_swap(t, pi);
    col_swap(t, pj);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Int q = a[i][t] / a[t][t];
        row_sub(i, t, q);
        if (a[i][t] != 0) {
          row_swap(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Int q = a[t][j] / a[t][t];
        col_sub(j, t, q);
        if (a[t][j] != 0) {
          col_swap(t, j);
          dirty = true;
        }
      }
    }
    if (a[t][t] < 0) {
      for (std::size_t j = 0; j < cols; ++j) a[t][j] = -a[t][j];
      for (std::size_t j = 0; j < rows; ++j) s.rowtrans[t][j] = -s.rowtrans[t][j];
    }
    ++t;
  }
  s.rank = t;

  // enforce the divisibility chain d1 | d2 | ...
  bool fixed = false;
  while (!fixed) {
    fixed = true;
    for (std::size_t i = 0; i + 1 < s.rank; ++i) {
      if (a[i + 1][i + 1] % a[i][i] == 0) continue;
      fixed = false;
      // fold entry (i+1,i+1) into column i, re-clear the 2x2 block
      for (std::size_t r2 = 0; r2 < rows; ++r2) a[r2][i] += a[r2][i + 1];
      for (std::size_t r2 = 0; r2 < cols; ++r2) s.coltrans[r2][i] += s.coltrans[r2][i + 1];
      bool dirty = true;
      while (dirty) {
        dirty = false;
        if (a[i + 1][i] != 0) {
          if (abs(a[i + 1][i]) < abs(a[i][i])) row_swap(i, i + 1);
          Int q = a[i + 1][i] / a[i][i];
          row_sub(i + 1, i, q);
          if (a[i + 1][i] != 0) {
            row_swap(i, i + 1);
            dirty = true;
          }
        }
        if (a[i][i + 1] != 0) {
          Int q = a[i][i + 1] / a[i][i];
          col_sub(i + 1, i, q);
          if (a[i][i + 1] != 0) {
            col_swap(i, i + 1);
            dirty = true;
          }
        }
      }
      if (a[i][i] < 0) {
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = -a[i][j];
        for (std::size_t j = 0; j < rows; ++j) s.rowtrans[i][j] = -s.rowtrans[i][j];
      }
      if (a[i + 1][i + 1] < 0) {
        for (std::size_t j = 0; j < cols; ++j) a[i + 1][j] = -a[i + 1][j];
        for (std::size_t j = 0; j < rows; ++j) s.rowtrans[i + 1][j] = -s.rowtrans[i + 1][j];
      }
    }
  }
  s.normal = std::move(a);
  return s;
}

// Canonical basis of { x : x * A = 0 }.
inline IntMat left_kernel(const IntMat& a) {
  const std::size_t rows = a.size();
  auto h = hermite_normal_form(a);
  IntMat ker;
  for (std::size_t i = 0; i < rows; ++i)
    if (is_zero_vec(h.normal[i])) ker.push_back(h.rowtrans[i]);
  return lattice_basis(std::move(ker));
}

// Inverse of a unimodular integer matrix.
inline IntMat unimodular_inverse(const IntMat& u) {
  auto h = hermite_normal_form(u);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (h.normal[i][i] != 1) throw std::invalid_argument("unimodular_inverse: matrix not unimodular");
  return h.rowtrans;
}

namespace detail {

// Shared solver core: given v, find x (support restricted to `rows` of A when
// given) with x*A = v.  Integral mode returns nullopt unless the quotients are
// exact; rational mode divides exactly over Q.
template <typename Out>
inline std::optional<std::vector<Out>> solve_left_impl(const IntVec& v, const IntMat& a,
                                                       const std::vector<std::size_t>* rows,
                                                       bool rational) {
  std::vector<std::size_t> idx;
  if (rows) {
    idx = *rows;
  } else {
    idx.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) idx[i] = i;
  }
  IntMat sub;
  sub.reserve(idx.size());
  for (auto i : idx) sub.push_back(a.at(i));
  if (!sub.empty() && v.size() != sub[0].size())
    throw std::invalid_argument("solve_left: length mismatch");
  auto h = hermite_normal_form(std::move(sub));

  const std::size_t cols = v.size();
  std::vector<Out> coef(idx.size());
  std::vector<Out> residual(cols);
  for (std::size_t j = 0; j < cols; ++j) residual[j] = Out(v[j]);
  for (std::size_t i = 0; i < h.rank; ++i) {
    std::size_t c = 0;
    while (c < cols && h.normal[i][c] == 0) ++c;
    if (c == cols) break;
    if (residual[c] == 0) continue;
    Out q;
    if (rational) {
      q = residual[c] / Out(h.normal[i][c]);
    } else {
      if constexpr (std::is_same_v<Out, Int>) {
        if (residual[c] % h.normal[i][c] != 0) return std::nullopt;
      }
      q = residual[c] / Out(h.normal[i][c]);
    }
    for (std::size_t j = 0; j < cols; ++j) residual[j] -= q * Out(h.normal[i][j]);
    for (std::size_t j = 0; j < idx.size(); ++j) coef[j] += q * Out(h.rowtrans[i][j]);
  }
  for (const auto& x : residual)
    if (x != 0) return std::nullopt;

  std::vector<Out> out(a.size());
  for (std::size_t j = 0; j < idx.size(); ++j) out[idx[j]] = coef[j];
  return out;
}

}  // namespace detail

// x * A = v over the integers, x supported on the selected rows of A.
inline std::optional<IntVec> solve_left(const IntVec& v, const IntMat& a,
                                        const std::vector<std::size_t>* rows = nullptr) {
  return detail::solve_left_impl<Int>(v, a, rows, /*rational=*/false);
}

// x * A = v over the rationals, x supported on the selected rows of A.
inline std::optional<RatVec> solve_left_rational(const IntVec& v, const IntMat& a,
                                                 const std::vector<std::size_t>* rows = nullptr) {
  return detail::solve_left_impl<Rat>(v, a, rows, /*rational=*/true);
}

// Incremental row-lattice accumulator over Z^n.  Rows are kept in echelon
// form keyed by pivot column; `add` returns true when the lattice grew.
class LatticeAccumulator {
 public:
  explicit LatticeAccumulator(std::size_t n) : n_(n), pivot_row_(n, npos) {}

  std::size_t dimension() const { return n_; }
  std::size_t rank() const { return rows_.size(); }

  bool add(IntVec v) {
    if (v.size() != n_) throw std::invalid_argument("LatticeAccumulator: bad length");
    bool grew = false;
    std::size_t c = 0;
    while (true) {
      while (c < n_ && v[c] == 0) ++c;
      if (c == n_) break;
      std::size_t r = pivot_row_[c];
      if (r == npos) {
        if (v[c] < 0)
          for (auto& x : v) x = -x;
        pivot_row_[c] = rows_.size();
        rows_.push_back(std::move(v));
        grew = true;
        break;
      }
      IntVec& p = rows_[r];
      if (v[c] % p[c] == 0) {
        Int q = v[c] / p[c];
        for (std::size_t j = c; j < n_; ++j) v[j] -= q * p[j];
      } else {
        // gcd step: replace pivot by the gcd combination, continue with rest
        Int g, s, t;
        ext_gcd(p[c], v[c], g, s, t);
        Int pc = p[c] / g, vc = v[c] / g;
        IntVec gcd_row(n_);
        for (std::size_t j = c; j < n_; ++j) gcd_row[j] = s * p[j] + t * v[j];
        IntVec rest(n_);
        for (std::size_t j = c; j < n_; ++j) rest[j] = pc * v[j] - vc * p[j];
        p = std::move(gcd_row);
        v = std::move(rest);
        grew = true;
      }
    }
    return grew;
  }

  bool contains(IntVec v) const {
    std::size_t c = 0;
    while (true) {
      while (c < v.size() && v[c] == 0) ++c;
      if (c == v.size()) return true;
      std::size_t r = pivot_row_[c];
      if (r == npos) return false;
      const IntVec& p = rows_[r];
      if (v[c] % p[c] != 0) return false;
      Int q = v[c] / p[c];
      for (std::size_t j = c; j < v.size(); ++j) v[j] -= q * p[j];
    }
  }

  // canonical HNF basis of the accumulated lattice
  IntMat basis() const { return lattice_basis(rows_); }

 private:
  static void ext_gcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
    Int old_r = a, r = b, old_s = 1, s1 = 0, old_t = 0, t1 = 1;
    while (r != 0) {
      Int q = old_r / r;
      Int tmp = old_r - q * r;
      old_r = r;
      r = tmp;
      tmp = old_s - q * s1;
      old_s = s1;
      s1 = tmp;
      tmp = old_t - q * t1;
      old_t = t1;
      t1 = tmp;
    }
    if (old_r < 0) {
      old_r = -old_r;
      old_s = -old_s;
      old_t = -old_t;
    }
    g = old_r;
    s = old_s;
    t = old_t;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t n_;
  std::vector<std::size_t> pivot_row_;
  IntMat rows_;
};

// Abelian invariants (in divisibility order, entries > 1) of Z^n / rowspace(rels).
inline std::vector<Int> quotient_invariants(const IntMat& rels, std::size_t n) {
  if (rels.empty()) return {};
  for (const auto& r : rels)
    if (r.size() != n) throw std::invalid_argument("quotient_invariants: bad row length");
  auto s = smith_normal_form(rels);
  std::vector<Int> out = s.torsion_coefficients();
  return out;
}

}  // namespace unram
