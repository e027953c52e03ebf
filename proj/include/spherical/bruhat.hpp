#pragma once

#include <vector>

#include "enumerate.hpp"
#include "errors.hpp"
#include "matgroup.hpp"

namespace spherical {

namespace detail {

// Reduces M to sigma * b by row operations row_i += c row_p with i < p, among rows not yet used
// as pivots. Returns sigma as column -> row; the operations are accumulated into L if given.
inline std::vector<int> eliminate(const Field& F, Mat& M, Mat* L) {
  const int d = M.d;
  std::vector<int> sigma(d, -1);
  std::vector<bool> used(d, false);
  for (int j = 0; j < d; ++j) {
    int p = -1;
    for (int i = d - 1; i >= 0; --i)
      if (!used[i] && M(i, j) != 0) {
        p = i;
        break;
      }
    if (p < 0) throw InvalidArgument("matrix is singular");
    used[p] = true;
    sigma[j] = p;
    elem inv = F.inv(M(p, j));
    for (int i = 0; i < p; ++i) {
      if (used[i] || M(i, j) == 0) continue;
      elem c = F.neg(F.mul(M(i, j), inv));
      for (int k = j; k < d; ++k) M(i, k) = F.add(M(i, k), F.mul(c, M(p, k)));
      if (L)
        for (int k = 0; k < d; ++k) (*L)(i, k) = F.add((*L)(i, k), F.mul(c, (*L)(p, k)));
    }
  }
  return sigma;
}

}  // namespace detail

/// Index (into G.weyl_elements()) of the w with g in BwB.
inline int bruhat_cell_index(const MatrixGroup& G, const Mat& g) {
  Mat M = g;
  auto sigma = detail::eliminate(G.field(), M, nullptr);
  int w = G.weyl_index_of_pattern(sigma);
  if (w < 0) throw ConsistencyError("rank pattern matches no Weyl group element");
  return w;
}

inline const WeylElement& bruhat_cell(const MatrixGroup& G, const Mat& g) {
  return G.weyl_elements()[bruhat_cell_index(G, g)];
}

/// g = u * rep(w) * t * v with u in U^w, t diagonal, v in U.
struct BruhatFactorization {
  int w = -1;
  Mat u, n, t, v;
};

inline BruhatFactorization bruhat_factor(const MatrixGroup& G, const Mat& g) {
  const Field& F = G.field();
  Mat M = g, L = Mat::identity(g.d);
  auto sigma = detail::eliminate(F, M, &L);
  BruhatFactorization f;
  f.w = G.weyl_index_of_pattern(sigma);
  if (f.w < 0) throw ConsistencyError("rank pattern matches no Weyl group element");
  f.u = inverse(F, L);
  f.n = G.weyl_rep(G.weyl_elements()[f.w]);
  Mat b = mul(F, inverse(F, f.n), M);
  f.t = Mat(g.d);
  Mat ti(g.d);
  for (int i = 0; i < g.d; ++i) {
    f.t(i, i) = b(i, i);
    ti(i, i) = F.inv(b(i, i));
  }
  f.v = mul(F, ti, b);
  return f;
}

/// Number of elements of S in each cell, indexed like G.weyl_elements().
inline std::vector<std::uint64_t> cell_census(const MatrixGroup& G, const ElementSet& S, int threads = 1) {
  const std::size_t nw = G.weyl_elements().size();
  std::vector<std::vector<std::uint64_t>> partial(std::max(1, threads), std::vector<std::uint64_t>(nw, 0));
  parallel_for(S.size(), threads, [&](std::size_t b, std::size_t e, int t) {
    for (std::size_t i = b; i < e; ++i) ++partial[t][bruhat_cell_index(G, S.at(i))];
  });
  std::vector<std::uint64_t> out(nw, 0);
  for (const auto& p : partial)
    for (std::size_t w = 0; w < nw; ++w) out[w] += p[w];
  return out;
}

}  // namespace spherical
