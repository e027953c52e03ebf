#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "gfq.hpp"

namespace spherical {

using elem = Field::elem;

inline constexpr int kMaxDim = 10;

/// A square matrix over F_q of dimension at most kMaxDim, stored inline.
struct Mat {
  int d = 0;
  std::array<elem, kMaxDim * kMaxDim> a{};

  Mat() = default;
  explicit Mat(int dim) : d(dim) {
    if (dim < 1 || dim > kMaxDim) throw InvalidArgument("matrix dimension out of range");
  }

  elem& operator()(int i, int j) { return a[i * kMaxDim + j]; }
  elem operator()(int i, int j) const { return a[i * kMaxDim + j]; }

  bool operator==(const Mat& o) const {
    if (d != o.d) return false;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if ((*this)(i, j) != o(i, j)) return false;
    return true;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  static Mat identity(int dim) {
    Mat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1;
    return m;
  }

  bool is_identity() const {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
  }

  bool is_upper_triangular() const {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < i; ++j)
        if ((*this)(i, j) != 0) return false;
    return true;
  }

  bool is_diagonal() const {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (i != j && (*this)(i, j) != 0) return false;
    return true;
  }

  bool is_unitriangular() const {
    if (!is_upper_triangular()) return false;
    for (int i = 0; i < d; ++i)
      if ((*this)(i, i) != 1) return false;
    return true;
  }

  std::vector<std::vector<elem>> rows() const {
    std::vector<std::vector<elem>> r(d, std::vector<elem>(d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) r[i][j] = (*this)(i, j);
    return r;
  }

  static Mat from_rows(const std::vector<std::vector<elem>>& r) {
    Mat m(static_cast<int>(r.size()));
    for (int i = 0; i < m.d; ++i) {
      if (static_cast<int>(r[i].size()) != m.d) throw InvalidArgument("matrix is not square");
      for (int j = 0; j < m.d; ++j) m(i, j) = r[i][j];
    }
    return m;
  }
};

inline Mat mul(const Field& F, const Mat& A, const Mat& B) {
  const int d = A.d;
  Mat C(d);
  if (F.is_prime_field()) {
    const std::uint64_t p = F.p();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        std::uint64_t s = 0;
        for (int k = 0; k < d; ++k) s += static_cast<std::uint64_t>(A(i, k)) * B(k, j);
        C(i, j) = static_cast<elem>(s % p);
      }
    return C;
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      elem s = 0;
      for (int k = 0; k < d; ++k) s = F.add(s, F.mul(A(i, k), B(k, j)));
      C(i, j) = s;
    }
  return C;
}

inline Mat add(const Field& F, const Mat& A, const Mat& B) {
  Mat C(A.d);
  for (int i = 0; i < A.d; ++i)
    for (int j = 0; j < A.d; ++j) C(i, j) = F.add(A(i, j), B(i, j));
  return C;
}

inline Mat sub(const Field& F, const Mat& A, const Mat& B) {
  Mat C(A.d);
  for (int i = 0; i < A.d; ++i)
    for (int j = 0; j < A.d; ++j) C(i, j) = F.sub(A(i, j), B(i, j));
  return C;
}

inline Mat scale(const Field& F, elem c, const Mat& A) {
  Mat C(A.d);
  for (int i = 0; i < A.d; ++i)
    for (int j = 0; j < A.d; ++j) C(i, j) = F.mul(c, A(i, j));
  return C;
}

inline Mat transpose(const Mat& A) {
  Mat C(A.d);
  for (int i = 0; i < A.d; ++i)
    for (int j = 0; j < A.d; ++j) C(i, j) = A(j, i);
  return C;
}

/// Inverse by Gauss-Jordan; nullopt if singular.
inline std::optional<Mat> try_inverse(const Field& F, const Mat& A) {
  const int d = A.d;
  Mat M = A, R = Mat::identity(d);
  for (int c = 0; c < d; ++c) {
    int piv = -1;
    for (int r = c; r < d; ++r)
      if (M(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    if (piv != c)
      for (int k = 0; k < d; ++k) {
        std::swap(M(c, k), M(piv, k));
        std::swap(R(c, k), R(piv, k));
      }
    elem inv = F.inv(M(c, c));
    for (int k = 0; k < d; ++k) {
      M(c, k) = F.mul(inv, M(c, k));
      R(c, k) = F.mul(inv, R(c, k));
    }
    for (int r = 0; r < d; ++r) {
      if (r == c || M(r, c) == 0) continue;
      elem f = F.neg(M(r, c));
      for (int k = 0; k < d; ++k) {
        M(r, k) = F.add(M(r, k), F.mul(f, M(c, k)));
        R(r, k) = F.add(R(r, k), F.mul(f, R(c, k)));
      }
    }
  }
  return R;
}

inline Mat inverse(const Field& F, const Mat& A) {
  auto r = try_inverse(F, A);
  if (!r) throw InvalidArgument("matrix is singular");
  return *r;
}

inline elem det(const Field& F, Mat M) {
  const int d = M.d;
  elem result = 1;
  for (int c = 0; c < d; ++c) {
    int piv = -1;
    for (int r = c; r < d; ++r)
      if (M(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int k = 0; k < d; ++k) std::swap(M(c, k), M(piv, k));
      result = F.neg(result);
    }
    result = F.mul(result, M(c, c));
    elem inv = F.inv(M(c, c));
    for (int r = c + 1; r < d; ++r) {
      if (M(r, c) == 0) continue;
      elem f = F.neg(F.mul(M(r, c), inv));
      for (int k = c; k < d; ++k) M(r, k) = F.add(M(r, k), F.mul(f, M(c, k)));
    }
  }
  return result;
}

/// Characteristic polynomial det(lambda - A), coefficients from constant term up (monic).
/// Hessenberg reduction, valid in every characteristic.
inline std::vector<elem> charpoly(const Field& F, Mat H) {
  const int n = H.d;
  for (int m = 1; m < n - 1; ++m) {
    int piv = -1;
    for (int i = m; i < n; ++i)
      if (H(i, m - 1) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != m) {
      for (int k = 0; k < n; ++k) std::swap(H(piv, k), H(m, k));
      for (int k = 0; k < n; ++k) std::swap(H(k, piv), H(k, m));
    }
    elem inv = F.inv(H(m, m - 1));
    for (int i = m + 1; i < n; ++i) {
      if (H(i, m - 1) == 0) continue;
      elem f = F.mul(H(i, m - 1), inv);
      for (int k = 0; k < n; ++k) H(i, k) = F.sub(H(i, k), F.mul(f, H(m, k)));
      for (int k = 0; k < n; ++k) H(k, m) = F.add(H(k, m), F.mul(f, H(k, i)));
    }
  }
  // p_k = det(lambda - H[0..k)), recurrence over the last row of each leading block
  std::vector<std::vector<elem>> p(n + 1);
  p[0] = {1};
  for (int k = 1; k <= n; ++k) {
    std::vector<elem> next(k + 1, 0);
    // (lambda - h_kk) p_{k-1}
    for (std::size_t i = 0; i < p[k - 1].size(); ++i) {
      next[i + 1] = F.add(next[i + 1], p[k - 1][i]);
      next[i] = F.sub(next[i], F.mul(H(k - 1, k - 1), p[k - 1][i]));
    }
    elem prod = 1;
    for (int i = k - 1; i >= 1; --i) {
      prod = F.mul(prod, H(i, i - 1));
      if (prod == 0) break;
      elem c = F.mul(prod, H(i - 1, k - 1));
      for (std::size_t j = 0; j < p[i - 1].size(); ++j) next[j] = F.sub(next[j], F.mul(c, p[i - 1][j]));
    }
    p[k] = std::move(next);
  }
  return p[n];
}

/// A dense rectangular matrix over F_q for linear algebra.
struct DynMat {
  int rows = 0, cols = 0;
  std::vector<elem> a;

  DynMat() = default;
  DynMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
  elem& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  elem operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

/// Row-reduces in place; returns pivot columns.
inline std::vector<int> row_reduce(const Field& F, DynMat& M) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < M.cols && r < M.rows; ++c) {
    int piv = -1;
    for (int i = r; i < M.rows; ++i)
      if (M(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int k = 0; k < M.cols; ++k) std::swap(M(r, k), M(piv, k));
    elem inv = F.inv(M(r, c));
    for (int k = c; k < M.cols; ++k) M(r, k) = F.mul(inv, M(r, k));
    for (int i = 0; i < M.rows; ++i) {
      if (i == r || M(i, c) == 0) continue;
      elem f = F.neg(M(i, c));
      for (int k = c; k < M.cols; ++k) M(i, k) = F.add(M(i, k), F.mul(f, M(r, k)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(const Field& F, DynMat M) { return static_cast<int>(row_reduce(F, M).size()); }

/// Basis of {x : M x = 0}.
inline std::vector<std::vector<elem>> nullspace(const Field& F, DynMat M) {
  auto pivots = row_reduce(F, M);
  std::vector<bool> is_pivot(M.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<elem>> basis;
  for (int free = 0; free < M.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<elem> v(M.cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(M(static_cast<int>(r), free));
    basis.push_back(std::move(v));
  }
  return basis;
}

inline DynMat to_dyn(const Mat& A) {
  DynMat M(A.d, A.d);
  for (int i = 0; i < A.d; ++i)
    for (int j = 0; j < A.d; ++j) M(i, j) = A(i, j);
  return M;
}

/// Square integer matrix, used for the Chevalley-basis construction before reduction mod p.
struct IntMat {
  int d = 0;
  std::vector<long long> a;

  IntMat() = default;
  explicit IntMat(int dim) : d(dim), a(static_cast<std::size_t>(dim) * dim, 0) {}
  long long& operator()(int i, int j) { return a[i * d + j]; }
  long long operator()(int i, int j) const { return a[i * d + j]; }
  bool operator==(const IntMat& o) const { return d == o.d && a == o.a; }
  bool is_zero() const {
    for (auto x : a)
      if (x != 0) return false;
    return true;
  }
};

inline IntMat mul(const IntMat& A, const IntMat& B) {
  IntMat C(A.d);
  for (int i = 0; i < A.d; ++i)
    for (int k = 0; k < A.d; ++k) {
      if (A(i, k) == 0) continue;
      for (int j = 0; j < A.d; ++j) C(i, j) += A(i, k) * B(k, j);
    }
  return C;
}

inline IntMat bracket(const IntMat& A, const IntMat& B) {
  IntMat P = mul(A, B), Q = mul(B, A);
  for (std::size_t i = 0; i < P.a.size(); ++i) P.a[i] -= Q.a[i];
  return P;
}

inline Mat reduce(const Field& F, const IntMat& A) {
  Mat M(A.d);
  for (int i = 0; i < A.d; ++i)
    for (int j = 0; j < A.d; ++j) M(i, j) = F.from_int(A(i, j));
  return M;
}

}  // namespace spherical
