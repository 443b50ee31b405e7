#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

#include "braidlab/braid.hpp"
#include "braidlab/error.hpp"

namespace braidlab {

/// Dense matrix of arbitrary-precision integers, row major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r + 1; c < cols_; ++c)
        if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
  }

  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix s = a;
    for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] += b.data_[i];
    return s;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpz_class> data_;
};

/// Loop on the closed-braid Seifert surface through the bands of two
/// consecutive crossings `lower` < `upper` (word positions) in one column.
struct ColumnLoop {
  int column = 1;
  int lower = 0;
  int upper = 0;
};

struct SeifertMatrix {
  std::vector<ColumnLoop> basis;
  IntMatrix entries;

  std::size_t rank() const noexcept { return basis.size(); }
};

/// Seifert pairing on the surface made of n stacked disks joined by one
/// half-twisted band per crossing. Split closures give block-diagonal output.
inline SeifertMatrix seifert_matrix(const BraidWord& w) {
  const auto& letters = w.letters();
  SeifertMatrix out;
  for (int col = 1; col < w.strands(); ++col) {
    int prev = -1;
    for (int k = 0; k < static_cast<int>(letters.size()); ++k) {
      if (std::abs(letters[k]) != col) continue;
      if (prev >= 0) out.basis.push_back({col, prev, k});
      prev = k;
    }
  }
  // Ordering by lower crossing keeps the matrix banded.
  std::stable_sort(out.basis.begin(), out.basis.end(),
                   [](const ColumnLoop& a, const ColumnLoop& b) { return a.lower < b.lower; });

  const std::size_t r = out.basis.size();
  out.entries = IntMatrix(r, r);
  auto sign = [&](int k) { return letters[k] > 0 ? 1 : -1; };
  for (std::size_t x = 0; x < r; ++x) {
    const ColumnLoop& g = out.basis[x];
    out.entries(x, x) = -(sign(g.lower) + sign(g.upper)) / 2;
    for (std::size_t y = 0; y < r; ++y) {
      const ColumnLoop& h = out.basis[y];
      if (h.column == g.column && h.lower == g.upper) {
        if (sign(g.upper) > 0)
          out.entries(x, y) = 1;
        else
          out.entries(y, x) = -1;
      } else if (h.column == g.column + 1) {
        if (g.lower < h.lower && h.lower < g.upper && g.upper < h.upper) out.entries(x, y) = -1;
        if (h.lower < g.lower && g.lower < h.upper && h.upper < g.upper) out.entries(x, y) = 1;
      }
    }
  }
  return out;
}

/// Signature of a symmetric integer matrix by exact congruence
/// diagonalization over Q. Zero diagonal pivots fall back to 2x2 blocks
/// [[0,b],[b,c]], which contribute nothing.
inline long symmetric_signature(const IntMatrix& m) {
  if (!m.is_symmetric()) throw DomainError("symmetric_signature needs a symmetric matrix");
  const std::size_t n = m.rows();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  std::vector<bool> done(n, false);

  long sig = 0;
  std::vector<std::size_t> support;
  std::vector<mpq_class> u, v;
  for (std::size_t k = 0; k < n; ++k) {
    if (done[k]) continue;
    if (sgn(a[k][k]) != 0) {
      support.clear();
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j] && j != k && sgn(a[k][j]) != 0) support.push_back(j);
      const mpq_class pivot = a[k][k];
      sig += sgn(pivot) > 0 ? 1 : -1;
      u.resize(support.size());
      for (std::size_t s = 0; s < support.size(); ++s) u[s] = a[k][support[s]] / pivot;
      for (std::size_t s = 0; s < support.size(); ++s) {
        const std::size_t i = support[s];
        for (std::size_t t = s; t < support.size(); ++t) {
          const std::size_t j = support[t];
          a[i][j] -= u[s] * a[k][j];
          if (i != j) a[j][i] = a[i][j];
        }
      }
      done[k] = true;
      continue;
    }
    std::size_t partner = n;
    for (std::size_t j = k + 1; j < n && partner == n; ++j)
      if (!done[j] && sgn(a[k][j]) != 0) partner = j;
    done[k] = true;
    if (partner == n) continue;  // null direction
    const std::size_t j0 = partner;
    done[j0] = true;
    const mpq_class b = a[k][j0];
    const mpq_class c = a[j0][j0];
    support.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (!done[j] && (sgn(a[k][j]) != 0 || sgn(a[j0][j]) != 0)) support.push_back(j);
    // Schur complement: A_il -= [a_ik a_ij0] P^-1 [a_kl a_j0l]^T,
    // P^-1 = -1/b^2 [[c, -b], [-b, 0]].
    const mpq_class inv_b2 = 1 / (b * b);
    u.resize(support.size());
    v.resize(support.size());
    for (std::size_t s = 0; s < support.size(); ++s) {
      const std::size_t i = support[s];
      u[s] = (-c * a[i][k] + b * a[i][j0]) * inv_b2;  // row vector [a_ik a_ij0] P^-1, first slot
      v[s] = (b * a[i][k]) * inv_b2;                   // second slot
    }
    for (std::size_t s = 0; s < support.size(); ++s) {
      const std::size_t i = support[s];
      for (std::size_t t = s; t < support.size(); ++t) {
        const std::size_t l = support[t];
        a[i][l] -= u[s] * a[k][l] + v[s] * a[j0][l];
        if (i != l) a[l][i] = a[i][l];
      }
    }
  }
  return sig;
}

/// Link signature with the sign chosen so that the positive trefoil has +2
/// and s = sigma on alternating knots: the negated signature of V + V^T.
inline long link_signature(const BraidWord& w) {
  const SeifertMatrix v = seifert_matrix(w);
  return -symmetric_signature(v.entries + v.entries.transpose());
}

}  // namespace braidlab
