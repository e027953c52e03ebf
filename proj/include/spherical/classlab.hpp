#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "bruhat.hpp"
#include "enumerate.hpp"
#include "errors.hpp"
#include "matgroup.hpp"

namespace spherical {

namespace detail {

// Z-basis of {m in Z^n : A m = 0} (A has n columns), via unimodular column reduction.
inline std::vector<std::vector<long long>> integer_kernel(std::vector<std::vector<long long>> A, int n) {
  std::vector<std::vector<long long>> U(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) U[i][i] = 1;
  auto col_op = [&](int dst, int src, long long c) {  // col dst -= c * col src
    for (auto& row : A) row[dst] -= c * row[src];
    for (auto& row : U) row[dst] -= c * row[src];
  };
  auto col_swap = [&](int a, int b) {
    for (auto& row : A) std::swap(row[a], row[b]);
    for (auto& row : U) std::swap(row[a], row[b]);
  };
  int lead = 0;
  for (std::size_t r = 0; r < A.size() && lead < n; ++r) {
    while (true) {
      int best = -1;
      for (int c = lead; c < n; ++c)
        if (A[r][c] != 0 && (best < 0 || std::llabs(A[r][c]) < std::llabs(A[r][best]))) best = c;
      if (best < 0) break;
      col_swap(lead, best);
      bool done = true;
      for (int c = lead + 1; c < n; ++c)
        if (A[r][c] != 0) {
          col_op(c, lead, A[r][c] / A[r][lead]);
          if (A[r][c] != 0) done = false;
        }
      if (done) {
        ++lead;
        break;
      }
    }
  }
  std::vector<std::vector<long long>> basis;
  for (int c = lead; c < n; ++c) {
    std::vector<long long> v(n);
    for (int i = 0; i < n; ++i) v[i] = U[i][c];
    basis.push_back(v);
  }
  return basis;
}

}  // namespace detail

/// One conjugacy class of G(F_q) with its Bruhat data.
struct ConjClass {
  std::vector<std::uint32_t> members;
  std::uint64_t rep_key = 0;  // lexicographically least member
  Mat rep;
  int dim = 0;
  std::vector<std::uint64_t> cell_counts;  // indexed like G.weyl_elements()
  std::vector<int> phi_image;
  int z = -1;
  bool z_unique = false;

  std::uint64_t size() const { return members.size(); }
};

/// The unique Bruhat-maximal element of a set of Weyl indices, or (-1, false).
inline std::pair<int, bool> bruhat_maximum(const MatrixGroup& G, const std::vector<int>& image) {
  const auto& W = G.weyl_elements();
  std::vector<int> maxima;
  for (int a : image) {
    bool dominated = false;
    for (int b : image)
      if (a != b && G.weyl().bruhat_leq(W[a], W[b])) dominated = true;
    if (!dominated) maxima.push_back(a);
  }
  if (maxima.size() != 1) return {-1, false};
  return {maxima[0], true};
}

/// Conjugacy classes of an enumerated group, with per-element Bruhat cells.
class ClassCensus {
 public:
  ClassCensus(const MatrixGroup& G, ElementSet S, int threads = 1) : G_(G), S_(std::move(S)) {
    const std::size_t n = S_.size();
    cell_.assign(n, 0);
    parallel_for(n, threads, [&](std::size_t b, std::size_t e, int) {
      for (std::size_t i = b; i < e; ++i) cell_[i] = static_cast<std::uint16_t>(bruhat_cell_index(G_, S_.at(i)));
    });
    const Field& F = G_.field();
    auto gens = G_.generators();
    std::vector<Mat> inv;
    for (const auto& s : gens) inv.push_back(inverse(F, s));
    constexpr std::uint32_t unset = ~std::uint32_t{0};
    class_of_.assign(n, unset);
    std::vector<std::vector<std::uint32_t>> groups;
    for (std::size_t start = 0; start < n; ++start) {
      if (class_of_[start] != unset) continue;
      const auto id = static_cast<std::uint32_t>(groups.size());
      std::vector<std::uint32_t> members{static_cast<std::uint32_t>(start)};
      class_of_[start] = id;
      for (std::size_t k = 0; k < members.size(); ++k) {
        Mat g = S_.at(members[k]);
        for (std::size_t s = 0; s < gens.size(); ++s) {
          auto idx = S_.find(mul(F, mul(F, inv[s], g), gens[s]));
          if (idx == ElementSet::npos) throw ConsistencyError("conjugate left the enumerated group");
          if (class_of_[idx] == unset) {
            class_of_[idx] = id;
            members.push_back(idx);
          }
        }
      }
      groups.push_back(std::move(members));
    }
    const std::size_t nw = G_.weyl_elements().size();
    for (auto& members : groups) {
      ConjClass c;
      c.members = std::move(members);
      c.rep_key = S_.key(c.members[0]);
      for (auto i : c.members) c.rep_key = std::min(c.rep_key, S_.key(i));
      c.rep = S_.codec().decode(c.rep_key);
      c.dim = G_.class_dimension(c.rep);
      c.cell_counts.assign(nw, 0);
      for (auto i : c.members) ++c.cell_counts[cell_[i]];
      for (std::size_t w = 0; w < nw; ++w)
        if (c.cell_counts[w]) c.phi_image.push_back(static_cast<int>(w));
      std::tie(c.z, c.z_unique) = bruhat_maximum(G_, c.phi_image);
      classes_.push_back(std::move(c));
    }
    std::sort(classes_.begin(), classes_.end(), [](const ConjClass& a, const ConjClass& b) {
      if (a.dim != b.dim) return a.dim < b.dim;
      if (a.size() != b.size()) return a.size() < b.size();
      return a.rep_key < b.rep_key;
    });
    for (std::size_t c = 0; c < classes_.size(); ++c)
      for (auto i : classes_[c].members) class_of_[i] = static_cast<std::uint32_t>(c);
  }

  const MatrixGroup& group() const { return G_; }
  const ElementSet& elements() const { return S_; }
  const std::vector<ConjClass>& classes() const { return classes_; }
  std::uint32_t class_of(std::uint32_t element) const { return class_of_[element]; }
  int cell_of(std::uint32_t element) const { return cell_[element]; }

 private:
  const MatrixGroup& G_;
  ElementSet S_;
  std::vector<std::uint16_t> cell_;
  std::vector<std::uint32_t> class_of_;
  std::vector<ConjClass> classes_;
};

/// |C_G(x)(F_q)| by direct count over an enumerated group.
inline std::uint64_t centralizer_order(const MatrixGroup& G, const ElementSet& S, const Mat& x) {
  const Field& F = G.field();
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < S.size(); ++i) {
    Mat g = S.at(i);
    if (mul(F, g, x) == mul(F, x, g)) ++count;
  }
  return count;
}

/// All of T(F_q).
inline std::vector<Mat> torus_elements(const MatrixGroup& G) {
  const Field& F = G.field();
  const std::size_t n = G.cocharacters().size();
  std::vector<Mat> out;
  std::vector<elem> vals(n, 1);
  std::vector<std::uint64_t> expo(n, 0);
  while (true) {
    for (std::size_t k = 0; k < n; ++k) vals[k] = F.exp(expo[k]);
    out.push_back(G.torus(vals));
    std::size_t k = 0;
    while (k < n && ++expo[k] == F.q() - 1) expo[k++] = 0;
    if (k == n) break;
  }
  return out;
}

/// All products prod_{r in roots} x_r(c_r) in the given order.
inline std::vector<Mat> unipotent_elements(const MatrixGroup& G, const std::vector<int>& roots) {
  const Field& F = G.field();
  std::vector<Mat> out{Mat::identity(G.dim())};
  for (int r : roots) {
    std::vector<Mat> next;
    next.reserve(out.size() * F.q());
    for (const Mat& m : out)
      for (elem c = 0; c < F.q(); ++c) next.push_back(mul(F, m, G.x(r, c)));
    out = std::move(next);
  }
  return out;
}

inline std::vector<Mat> borel_elements(const MatrixGroup& G) {
  const Field& F = G.field();
  auto U = unipotent_elements(G, G.default_order());
  std::vector<Mat> out;
  for (const Mat& t : torus_elements(G))
    for (const Mat& u : U) out.push_back(mul(F, t, u));
  return out;
}

/// Generators of B(F_q): the torus generators and x_r(F_p-basis) for r > 0.
inline std::vector<Mat> borel_generators(const MatrixGroup& G) {
  const Field& F = G.field();
  std::vector<Mat> gens;
  for (const Mat& g : G.generators())
    if (g.is_diagonal()) gens.push_back(g);
  elem basis = 1;
  for (int k = 0; k < F.k(); ++k, basis *= F.p())
    for (int r = 0; r < G.roots().num_positive(); ++r) gens.push_back(G.x(r, basis));
  return gens;
}

inline constexpr std::uint64_t kOrbitBudget = 1000000000;

/// B(F_q)-orbits on a conjugacy class: orbit id per member (parallel to cls.members) and the
/// maximal flag per orbit (orbit inside B z B).
struct BOrbits {
  std::vector<std::uint32_t> orbit_of;
  std::vector<std::uint64_t> sizes;
  std::vector<bool> maximal;
  std::size_t count() const { return sizes.size(); }
};

inline BOrbits b_orbits(const ClassCensus& census, const ConjClass& cls, std::uint64_t budget = kOrbitBudget) {
  const MatrixGroup& G = census.group();
  const Field& F = G.field();
  std::uint64_t bsize = 1;
  for (int i = 0; i < G.rank(); ++i) bsize *= F.q() - 1;
  for (int i = 0; i < G.roots().num_positive(); ++i) bsize *= F.q();
  if (cls.size() * bsize > budget) throw BudgetExceeded("B-orbit partition exceeds the work budget");
  auto gens = borel_generators(G);
  std::vector<Mat> inv;
  for (const auto& s : gens) inv.push_back(inverse(F, s));
  std::unordered_map<std::uint32_t, std::uint32_t> where;
  for (std::uint32_t k = 0; k < cls.members.size(); ++k) where[cls.members[k]] = k;
  BOrbits out;
  constexpr std::uint32_t unset = ~std::uint32_t{0};
  out.orbit_of.assign(cls.members.size(), unset);
  const auto& S = census.elements();
  for (std::uint32_t start = 0; start < cls.members.size(); ++start) {
    if (out.orbit_of[start] != unset) continue;
    auto id = static_cast<std::uint32_t>(out.sizes.size());
    std::vector<std::uint32_t> queue{start};
    out.orbit_of[start] = id;
    for (std::size_t k = 0; k < queue.size(); ++k) {
      Mat g = S.at(cls.members[queue[k]]);
      for (std::size_t s = 0; s < gens.size(); ++s) {
        auto idx = S.find(mul(F, mul(F, gens[s], g), inv[s]));
        auto it = where.find(idx);
        if (it == where.end()) throw ConsistencyError("B-conjugate left the class");
        if (out.orbit_of[it->second] == unset) {
          out.orbit_of[it->second] = id;
          queue.push_back(it->second);
        }
      }
    }
    out.sizes.push_back(queue.size());
    out.maximal.push_back(census.cell_of(cls.members[start]) == cls.z);
  }
  return out;
}

/// A class member of the form rep(z) t v (t in T, v in U), obtained by conjugating an element
/// u rep(z) t v of the class by u in U^z.
inline std::optional<Mat> maximal_representative(const ClassCensus& census, const ConjClass& cls) {
  if (cls.z < 0) return std::nullopt;
  const MatrixGroup& G = census.group();
  const Field& F = G.field();
  for (auto i : cls.members) {
    if (census.cell_of(i) != cls.z) continue;
    Mat y = census.elements().at(i);
    auto f = bruhat_factor(G, y);
    return mul(F, mul(F, inverse(F, f.u), y), f.u);
  }
  return std::nullopt;
}

/// T^w(F_q) membership: rep(w) t rep(w)^{-1} = t.
inline bool in_fixed_torus(const MatrixGroup& G, const WeylElement& w, const Mat& t) {
  const Field& F = G.field();
  const Mat& n = G.weyl_rep(w);
  return mul(F, n, t) == mul(F, t, n);
}

/// Generators lambda(zeta) of (T^w)^o(F_q) for a Z-basis lambda of the w-fixed cocharacters.
inline std::vector<Mat> fixed_torus_identity_generators(const MatrixGroup& G, const WeylElement& w) {
  const auto& Y = G.cocharacters();
  const int d = G.dim(), n = static_cast<int>(Y.size());
  const Mat& rep = G.weyl_rep(w);
  std::vector<int> sigma(d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i)
      if (rep(i, j) != 0) sigma[j] = i;
  std::vector<std::vector<long long>> A(d, std::vector<long long>(n, 0));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < d; ++j) {
      A[sigma[j]][k] += Y[k][j];
      A[j][k] -= Y[k][j];
    }
  std::vector<Mat> gens;
  const Field& F = G.field();
  for (const auto& m : detail::integer_kernel(A, n)) {
    Mat t = Mat::identity(d);
    for (int j = 0; j < d; ++j) {
      long long e = 0;
      for (int k = 0; k < n; ++k) e += m[k] * Y[k][j];
      t(j, j) = F.pow(F.primitive(), e);
    }
    gens.push_back(t);
  }
  return gens;
}

/// B_x(F_q) by direct search over B(F_q).
inline std::vector<Mat> centralizer_in_borel(const MatrixGroup& G, const std::vector<Mat>& borel, const Mat& x) {
  const Field& F = G.field();
  std::vector<Mat> out;
  for (const Mat& b : borel)
    if (mul(F, b, x) == mul(F, x, b)) out.push_back(b);
  return out;
}

struct SandwichResult {
  bool upper = false;  // B_x inside T^w U_w
  bool lower = false;  // (T^w)^o U_w centralizes x
  std::uint64_t centralizer_size = 0;
  std::uint64_t lower_size = 0;  // |(T^w)^o(F_q)| * |U_w(F_q)|
  bool ok() const { return upper && lower; }
};

inline SandwichResult sandwich_check(const MatrixGroup& G, const std::vector<Mat>& borel, const Mat& x,
                                     const WeylElement& w) {
  const Field& F = G.field();
  const RootSystem& rs = G.roots();
  const Mat& n = G.weyl_rep(w);
  if (!mul(F, inverse(F, n), x).is_upper_triangular())
    throw InvalidArgument("representative is not in rep(w) B");
  auto inv = G.weyl().inversion_set(w);
  std::set<int> phi_w(inv.begin(), inv.end());
  SandwichResult r;
  auto Bx = centralizer_in_borel(G, borel, x);
  r.centralizer_size = Bx.size();
  r.upper = true;
  for (const Mat& b : Bx) {
    Mat t(G.dim()), ti(G.dim());
    for (int i = 0; i < G.dim(); ++i) {
      t(i, i) = b(i, i);
      ti(i, i) = F.inv(b(i, i));
    }
    if (!in_fixed_torus(G, w, t)) {
      r.upper = false;
      break;
    }
    auto c = G.decompose_unipotent(mul(F, ti, b));
    for (int a : phi_w)
      if (c[a] != 0) r.upper = false;
    if (!r.upper) break;
  }
  auto tgens = fixed_torus_identity_generators(G, w);
  r.lower = true;
  for (const Mat& t : tgens) r.lower = r.lower && mul(F, t, x) == mul(F, x, t);
  for (int a = 0; a < rs.num_positive() && r.lower; ++a) {
    if (phi_w.count(a)) continue;
    for (elem c = 1; c < F.q() && r.lower; ++c) {
      Mat u = G.x(a, c);
      r.lower = mul(F, u, x) == mul(F, x, u);
    }
  }
  r.lower_size = 1;
  for (std::size_t k = 0; k < tgens.size(); ++k) r.lower_size *= F.q() - 1;
  for (int a = 0; a < rs.num_positive(); ++a)
    if (!phi_w.count(a)) r.lower_size *= F.q();
  return r;
}

}  // namespace spherical
