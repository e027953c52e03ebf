#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "classlab.hpp"
#include "sphericity.hpp"

namespace spherical {

/// One verdict of a replicated computation; serialized as a JSON line by the CLI.
struct LabFinding {
  std::string check;
  std::string group;
  std::uint64_t q = 0;
  std::string inputs;
  bool verdict = false;
  std::string witness;

  bool operator==(const LabFinding&) const = default;
};

// ---------------------------------------------------------------------------------------------
// G_2 conjugation chains

/// Verdict on one displayed membership claim of a G_2 conjugation chain.
struct TraceStep {
  std::string chain;
  std::string claim;
  std::uint64_t q = 0;  // field actually used
  bool ok = false;
  std::string witness;
};

namespace detail {

class G2Chains {
 public:
  explicit G2Chains(std::uint64_t q) : G_(Family::G, 2, Field::of_order(q)), F_(G_.field()) {}

  const MatrixGroup& group() const { return G_; }

  // Positive root i a + j b and its negative.
  int pos(int i, int j) const { return G_.roots().index_of({i, j}); }
  int neg(int i, int j) const { return G_.roots().negate(pos(i, j)); }

  std::string root_name(int r) const {
    const RootSystem& rs = G_.roots();
    bool negative = r >= rs.num_positive();
    const auto& c = rs.coords(negative ? rs.negate(r) : r);
    std::string s = negative ? "-" : "";
    auto term = [](int k, const char* name) {
      return k == 0 ? std::string() : (k == 1 ? std::string(name) : std::to_string(k) + name);
    };
    std::string a = term(c[0], "a"), b = term(c[1], "b");
    return s + a + (a.empty() || b.empty() ? "" : (negative ? "-" : "+")) + b;
  }

  /// Torus element whose centralizer has root system exactly {r : character r trivial}.
  std::optional<Mat> semisimple_with_trivial_roots(const std::set<int>& trivial) const {
    const RootSystem& rs = G_.roots();
    for (const Mat& t : torus_elements(G_)) {
      bool ok = true;
      for (int r = 0; r < rs.num_roots() && ok; ++r) ok = (G_.character(r, t) == 1) == (trivial.count(r) > 0);
      if (ok) return t;
    }
    return std::nullopt;
  }

  Mat conj(const Mat& g, const Mat& y) const { return mul(F_, mul(F_, g, y), inverse(F_, g)); }

  /// Coefficients of y = s prod_{r in shape} x_r(c_r) with s diagonal, if y has that shape.
  std::optional<std::vector<elem>> shape(const Mat& y, const std::vector<int>& roots) const {
    const int np = G_.roots().num_positive();
    Mat si(y.d);
    for (int i = 0; i < y.d; ++i) {
      if (y(i, i) == 0) return std::nullopt;
      si(i, i) = F_.inv(y(i, i));
    }
    Mat v = mul(F_, si, y);
    if (!transpose(v).is_unitriangular()) return std::nullopt;
    std::vector<int> order = roots;
    for (int r = np; r < 2 * np; ++r)
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) order.push_back(r);
    std::vector<elem> coef;
    try {
      coef = G_.decompose_lower_unipotent(v, order);
    } catch (const InvalidArgument&) {
      return std::nullopt;
    }
    std::vector<elem> out;
    for (int r : order) {
      bool claimed = std::find(roots.begin(), roots.end(), r) != roots.end();
      if (claimed)
        out.push_back(coef[r - np]);
      else if (coef[r - np] != 0)
        return std::nullopt;
    }
    return out;
  }

  /// The first t with x_delta(t) y x_delta(-t) of the given shape.
  std::optional<std::pair<elem, Mat>> kill(const Mat& y, int delta, const std::vector<int>& roots) const {
    for (elem t = 0; t < F_.q(); ++t) {
      Mat z = conj(G_.x(delta, t), y);
      if (shape(z, roots)) return std::pair{t, z};
    }
    return std::nullopt;
  }

  WeylElement reflections(std::initializer_list<int> roots) const {
    WeylElement w = G_.weyl().identity();
    for (int r : roots) w = G_.weyl().mul(w, G_.weyl().reflection(r));
    return w;
  }

  std::string describe(const std::vector<int>& roots, const std::vector<elem>& c) const {
    std::ostringstream os;
    os << "s";
    for (std::size_t k = 0; k < roots.size(); ++k) os << " x_{" << root_name(roots[k]) << "}(" << c[k] << ")";
    return os.str();
  }

  std::string cell_name(const Mat& y) const { return G_.weyl().word_string(bruhat_cell(G_, y)); }

  bool in_cell(const Mat& y, const WeylElement& w) const { return bruhat_cell(G_, y) == w; }

 private:
  MatrixGroup G_;
  const Field& F_;
};

}  // namespace detail

/// Replays the G_2 case analysis over F_q: the subregular unipotent, the semisimple-rank-one
/// centralizers H_1, H_2 and the semisimple-rank-two centralizers H_3, H_4. A chain whose
/// semisimple element does not exist over F_q is run over F_{q^2}.
inline std::vector<TraceStep> g2_trace(std::uint64_t q) {
  (void)Field::of_order(q);
  if (q % 3 == 0) throw BadCharacteristic("G2 needs characteristic other than 2 and 3");
  if (q > 25) throw InvalidArgument("g2_trace is meant for q <= 25");
  std::vector<TraceStep> out;
  std::map<std::uint64_t, std::unique_ptr<detail::G2Chains>> labs;
  auto lab_for = [&](std::uint64_t Q) -> const detail::G2Chains& {
    auto& p = labs[Q];
    if (!p) p = std::make_unique<detail::G2Chains>(Q);
    return *p;
  };
  auto step = [&](const std::string& chain, std::uint64_t Q, const std::string& claim, bool ok,
                  const std::string& witness) { out.push_back({chain, claim, Q, ok, witness}); };

  // Semisimple element with prescribed centralizer, over F_q or F_{q^2}.
  auto find_s = [&](const std::string& chain, auto trivial_roots) -> std::optional<std::pair<std::uint64_t, Mat>> {
    for (std::uint64_t Q : {q, q * q}) {
      const auto& L = lab_for(Q);
      std::set<int> trivial;
      for (auto [i, j] : trivial_roots) {
        trivial.insert(L.pos(i, j));
        trivial.insert(L.neg(i, j));
      }
      if (auto s = L.semisimple_with_trivial_roots(trivial)) return std::pair{Q, *s};
    }
    step(chain, q, "semisimple element with the stated centralizer exists", false, "none over F_q or F_{q^2}");
    return std::nullopt;
  };

  // Runs a sequence of coefficient-killing conjugations: conjugate by X_delta into the given shape,
  // whose coefficients at the listed positions must be nonzero.
  struct Move {
    int delta;
    std::vector<int> roots;
    std::vector<int> nonzero;
  };
  auto run_moves = [&](const std::string& chain, const detail::G2Chains& L, std::uint64_t Q, Mat y,
                       const std::vector<Move>& moves) -> std::optional<Mat> {
    for (const auto& m : moves) {
      std::string claim = "conjugation by X_{" + L.root_name(m.delta) + "} gives s";
      for (int r : m.roots) claim += " x_{" + L.root_name(r) + "}";
      auto k = L.kill(y, m.delta, m.roots);
      if (!k) {
        step(chain, Q, claim, false, "no suitable element in X_{" + L.root_name(m.delta) + "}");
        return std::nullopt;
      }
      y = k->second;
      auto c = *L.shape(y, m.roots);
      bool ok = true;
      for (int i : m.nonzero) ok = ok && c[i] != 0;
      step(chain, Q, claim, ok, "t=" + std::to_string(k->first) + ": " + L.describe(m.roots, c));
      if (!ok) return std::nullopt;
    }
    return y;
  };

  auto check_start = [&](const std::string& chain, const detail::G2Chains& L, std::uint64_t Q, const Mat& y,
                         const std::vector<int>& roots, const std::vector<int>& nonzero,
                         const std::string& claim) -> bool {
    auto c = L.shape(y, roots);
    bool ok = c.has_value();
    if (ok)
      for (int k : nonzero) ok = ok && (*c)[k] != 0;
    step(chain, Q, claim, ok, c ? L.describe(roots, *c) : "shape not attained");
    return ok;
  };

  auto check_cell = [&](const std::string& chain, const detail::G2Chains& L, std::uint64_t Q, const Mat& y,
                        const WeylElement& w, const std::string& claim) {
    bool ok = L.in_cell(y, w) && !L.group().weyl().is_involution(w);
    step(chain, Q, claim, ok, "cell " + L.cell_name(y));
  };

  // Subregular unipotent.
  {
    const auto& L = lab_for(q);
    const MatrixGroup& G = L.group();
    const Field& F = G.field();
    Mat u = mul(F, G.x(L.pos(0, 1), 1), G.x(L.pos(3, 1), 1));
    int dim = G.class_dimension(u);
    step("unipotent", q, "x_b(1) x_{3a+b}(1) is not regular (class dimension < 12)", dim < 12,
         "dim=" + std::to_string(dim));
    const Mat& w0 = G.weyl_rep(G.weyl().longest());
    Mat y = mul(F, mul(F, w0, u), inverse(F, w0));
    std::vector<int> roots{L.neg(0, 1), L.neg(3, 1)};
    if (check_start("unipotent", L, q, y, roots, {0, 1}, "w0 u w0^-1 = x_{-b}(a) x_{-3a-b}(b) with ab != 0"))
      check_cell("unipotent", L, q, y, L.reflections({L.pos(0, 1), L.pos(3, 1)}),
                 "w0 u w0^-1 lies in B s_b s_{3a+b} B, a non-involution");
  }

  // H_1 = <T, X_{+-b}>.
  if (auto found = find_s("H1", std::vector<std::pair<int, int>>{{0, 1}})) {
    auto [Q, s] = *found;
    const auto& L = lab_for(Q);
    const Field& F = L.group().field();
    const MatrixGroup& G = L.group();
    Mat g = mul(F, G.x(L.neg(1, 0), 1), G.x(L.neg(1, 1), 1));
    Mat y = L.conj(g, s);
    int a = L.neg(1, 0), ab = L.neg(1, 1), a2b = L.neg(2, 1), a3b = L.neg(3, 1), a3b2 = L.neg(3, 2);
    if (check_start("H1", L, Q, y, {a, ab, a2b, a3b, a3b2}, {0, 1},
                    "s_1 = s x_{-a}(a)x_{-a-b}(b)x_{-2a-b}(c)x_{-3a-b}(d)x_{-3a-2b}(e), ab != 0"))
      if (auto y4 = run_moves("H1", L, Q, y, {{a2b, {a, ab, a3b, a3b2}, {0, 1}}, {a3b, {a, ab, a3b2}, {0, 1}}, {a3b2, {a, ab}, {0, 1}}}))
        check_cell("H1", L, Q, *y4, L.reflections({L.pos(1, 0), L.pos(1, 1)}),
                   "s_4 = s x_{-a}(a)x_{-a-b}(b) lies in B s_a s_{a+b} B, a non-involution");
  }

  // H_2 = <T, X_{+-a}>.
  if (auto found = find_s("H2", std::vector<std::pair<int, int>>{{1, 0}})) {
    auto [Q, s] = *found;
    const auto& L = lab_for(Q);
    const Field& F = L.group().field();
    const MatrixGroup& G = L.group();
    Mat g = mul(F, G.x(L.neg(3, 1), 1), G.x(L.neg(0, 1), 1));
    Mat y = L.conj(g, s);
    int b = L.neg(0, 1), a3b = L.neg(3, 1), a3b2 = L.neg(3, 2);
    if (check_start("H2", L, Q, y, {b, a3b, a3b2}, {0, 1}, "s_1 = s x_{-b}(a)x_{-3a-b}(b)x_{-3a-2b}(c), ab != 0"))
      if (auto y2 = run_moves("H2", L, Q, y, {{a3b2, {b, a3b}, {0, 1}}}))
        check_cell("H2", L, Q, *y2, L.reflections({L.pos(0, 1), L.pos(3, 1)}),
                   "s_2 = s x_{-b}(a)x_{-3a-b}(b) lies in B s_b s_{3a+b} B, a non-involution");
  }

  // H_3 = <T, X_{+-b}, X_{+-(3a+b)}, X_{+-(3a+2b)}>, x = s x_{-b}(1).
  if (auto found = find_s("H3", std::vector<std::pair<int, int>>{{0, 1}, {3, 1}, {3, 2}})) {
    auto [Q, s] = *found;
    const auto& L = lab_for(Q);
    const Field& F = L.group().field();
    const MatrixGroup& G = L.group();
    int a = L.neg(1, 0), b = L.neg(0, 1), ab = L.neg(1, 1), a2b = L.neg(2, 1), a3b = L.neg(3, 1),
        a3b2 = L.neg(3, 2);
    Mat x = mul(F, s, G.x(b, 1));
    Mat y = L.conj(G.x(a, 1), x);
    if (check_start("H3", L, Q, y, {b, ab, a2b, a3b, a3b2, a}, {5},
                    "x_1 = s x_{-b}(1)x_{-a-b}(b)x_{-2a-b}(c)x_{-3a-b}(d)x_{-3a-2b}(e)x_{-a}(f), f != 0"))
      if (auto x2 = run_moves("H3", L, Q, y,
                              {{ab, {b, a2b, a3b, a3b2, a}, {4}}, {a2b, {b, a3b, a3b2, a}, {3}}, {a3b, {b, a3b, a}, {2}}})) {
        auto c = *L.shape(*x2, {b, a3b, a});
        step("H3", Q, "x_2 = s x_{-b}(1)x_{-3a-b}(b_1)x_{-a}(f) with f != 0", c[0] == 1 && c[2] != 0,
             L.describe({b, a3b, a}, c));
        if (c[1] == 0)
          check_cell("H3", L, Q, *x2, L.reflections({L.pos(0, 1), L.pos(1, 0)}),
                     "b_1 = 0: x_2 lies in B s_b s_a B, a non-involution");
        else
          check_cell("H3", L, Q, *x2, L.reflections({L.pos(0, 1), L.pos(3, 1)}),
                     "b_1 != 0: x_2 lies in B s_b s_{3a+b} B, a non-involution");
      }
  }

  // H_4 = <T, X_{+-b}, X_{+-(2a+b)}>: y = s x_{-b}(1) and z = s x_{-2a-b}(1).
  if (auto found = find_s("H4", std::vector<std::pair<int, int>>{{0, 1}, {2, 1}})) {
    auto [Q, s] = *found;
    const auto& L = lab_for(Q);
    const Field& F = L.group().field();
    const MatrixGroup& G = L.group();
    int a = L.neg(1, 0), b = L.neg(0, 1), ab = L.neg(1, 1), a2b = L.neg(2, 1), a3b = L.neg(3, 1),
        a3b2 = L.neg(3, 2);
    Mat y = L.conj(G.x(a3b, 1), mul(F, s, G.x(b, 1)));
    if (check_start("H4/y", L, Q, y, {a3b, b, a3b2}, {0},
                    "y_1 = s x_{-3a-b}(a)x_{-b}(1)x_{-3a-2b}(b), a != 0"))
      if (auto y2 = run_moves("H4/y", L, Q, y, {{a3b2, {a3b, b}, {0, 1}}}))
        check_cell("H4/y", L, Q, *y2, L.reflections({L.pos(3, 1), L.pos(0, 1)}),
                   "y_2 = s x_{-3a-b}(a)x_{-b}(1) lies in B s_{3a+b} s_b B, a non-involution");
    Mat z = L.conj(G.x(a, 1), mul(F, s, G.x(a2b, 1)));
    if (check_start("H4/z", L, Q, z, {a, a2b, a3b}, {0}, "z_1 = s x_{-a}(a)x_{-2a-b}(1)x_{-3a-b}(c), a != 0"))
      if (auto z3 = run_moves("H4/z", L, Q, z, {{ab, {a, ab, a3b, a3b2}, {0, 1}}, {a2b, {a, ab, a3b2}, {0, 1}}, {a3b2, {a, ab}, {0, 1}}}))
        check_cell("H4/z", L, Q, *z3, L.reflections({L.pos(1, 0), L.pos(1, 1)}),
                   "z_3 = s x_{-a}(a)x_{-a-b}(d) lies in B s_a s_{a+b} B, a non-involution");
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Big-cell coefficients

struct BigCellScan {
  bool applicable = false;         // quasi-spherical with z = w_0 = -1
  std::uint64_t elements = 0;      // |O cap rep(w_0) U|
  std::size_t simple_tuples = 0;   // distinct simple-root coefficient tuples
  bool functional = true;          // non-simple coefficients are a function of the simple ones
  bool pair_condition = true;      // adjacent equal-length pairs: both zero or both discriminant roots
  std::string witness;

  bool ok() const { return functional && pair_condition; }
};

/// Scans O cap rep(w_0) U, writing each element as rep(w_0) prod x_r(c_r) in the default order.
inline BigCellScan bigcell_coefficient_scan(const ClassCensus& census, int class_id) {
  const MatrixGroup& G = census.group();
  const RootSystem& rs = G.roots();
  const WeylGroup& wg = G.weyl();
  const Field& F = G.field();
  const ConjClass& cls = census.classes()[class_id];
  BigCellScan out;
  const WeylElement& w0 = wg.longest();
  bool minus_one = true;
  for (int r = 0; r < rs.num_roots(); ++r) minus_one = minus_one && w0.perm[r] == rs.negate(r);
  out.applicable = minus_one && is_quasi_spherical(G, cls) && cls.z == G.weyl_index(w0);
  if (!out.applicable) return out;
  const int n = rs.rank(), np = rs.num_positive();
  Mat ni = inverse(F, G.weyl_rep(w0));
  std::map<std::vector<elem>, std::vector<elem>> by_simple;
  // Adjacent simple roots of equal length.
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (rs.inner(a, b) != 0 && rs.norm2(a) == rs.norm2(b)) pairs.emplace_back(a, b);
  std::vector<std::set<elem>> nonzero_values(n);
  for (auto i : cls.members) {
    Mat v = mul(F, ni, census.elements().at(i));
    if (!v.is_unitriangular()) continue;
    ++out.elements;
    auto c = G.decompose_unipotent(v);
    std::vector<elem> simple(c.begin(), c.begin() + n), rest(c.begin() + n, c.begin() + np);
    auto [it, fresh] = by_simple.emplace(simple, rest);
    if (!fresh && it->second != rest && out.functional) {
      out.functional = false;
      out.witness = "two elements share simple coefficients but differ on non-simple roots";
    }
    for (auto [a, b] : pairs) {
      int ab = rs.index_of([&] {
        Coords s = rs.coords(a);
        for (std::size_t k = 0; k < s.size(); ++k) s[k] += rs.coords(b)[k];
        return s;
      }());
      bool za = c[a] == 0, zb = c[b] == 0;
      if (za != zb || (za && c[ab] != 0)) {
        if (out.pair_condition) out.witness = "adjacent pair with exactly one zero coefficient";
        out.pair_condition = false;
      }
      if (!za) nonzero_values[a].insert(c[a]);
      if (!zb) nonzero_values[b].insert(c[b]);
    }
  }
  for (const auto& vals : nonzero_values)
    if (vals.size() > 2) {
      if (out.pair_condition) out.witness = "more than two nonzero values for a simple coefficient";
      out.pair_condition = false;
    }
  out.simple_tuples = by_simple.size();
  return out;
}

// ---------------------------------------------------------------------------------------------
// Symplectic and orthogonal families

/// x(D, A) = (0 D; -D^{-1} -D^{-1}A) in the coordinates preserving (0 I; -I 0).
inline Mat sp_family(const Field& F, const std::vector<elem>& D, const std::vector<elem>& A) {
  const int n = static_cast<int>(D.size());
  if (n < 2 || static_cast<int>(A.size()) != n) throw InvalidArgument("sp_family needs n >= 2 and |A| = |D|");
  if (2 * n > kMaxDim) throw InvalidArgument("matrix too large");
  Mat x(2 * n);
  for (int i = 0; i < n; ++i) {
    if (D[i] == 0) throw InvalidArgument("D must be invertible");
    elem di = F.inv(D[i]);
    x(i, n + i) = D[i];
    x(n + i, i) = F.neg(di);
    x(n + i, n + i) = F.neg(F.mul(di, A[i]));
  }
  return x;
}

/// Change of basis from (e_1..e_n, f_1..f_n) to the group's basis (e_1..e_n, f_n..f_1).
inline Mat sp_to_group(const Field& F, const Mat& x) {
  const int d = x.d, n = d / 2;
  Mat S(d);
  for (int k = 0; k < d; ++k) S(k < n ? k : 3 * n - k - 1, k) = 1;
  return mul(F, mul(F, inverse(F, S), x), S);
}

/// Distinct characteristic polynomials among x(D, A), A diagonal, against the number of multisets
/// of diagonal entries of D^{-1} A, for every invertible diagonal D.
struct CharpolyCount {
  int n = 0;
  std::uint64_t q = 0;
  std::uint64_t multisets = 0;
  std::vector<std::uint64_t> distinct;  // one entry per D
  bool ok() const {
    for (auto c : distinct)
      if (c != multisets) return false;
    return !distinct.empty();
  }
};

inline CharpolyCount sp_charpoly_count(int n, std::uint64_t q) {
  const Field F = Field::of_order(q);
  CharpolyCount out;
  out.n = n;
  out.q = q;
  // C(q + n - 1, n)
  std::uint64_t m = 1;
  for (int k = 1; k <= n; ++k) m = m * (q + n - k) / k;
  out.multisets = m;
  std::vector<elem> D(n, 1), A(n, 0);
  auto next = [&](std::vector<elem>& v, elem lo) {
    for (int i = 0; i < n; ++i) {
      if (++v[i] < F.q()) return true;
      v[i] = lo;
    }
    return false;
  };
  do {
    std::set<std::vector<elem>> polys;
    std::fill(A.begin(), A.end(), 0);
    do polys.insert(charpoly(F, sp_family(F, D, A)));
    while (next(A, 0));
    out.distinct.push_back(polys.size());
  } while (next(D, 1));
  return out;
}

/// Sizes of the Jordan blocks of a unipotent matrix, descending.
inline std::vector<int> jordan_partition(const Field& F, const Mat& u) {
  const int d = u.d;
  auto cp = charpoly(F, u);
  std::vector<elem> target{1};  // (x - 1)^d, low to high
  for (int k = 0; k < d; ++k) {
    std::vector<elem> next(target.size() + 1, 0);
    for (std::size_t i = 0; i < target.size(); ++i) {
      next[i] = F.sub(next[i], target[i]);
      next[i + 1] = F.add(next[i + 1], target[i]);
    }
    target = std::move(next);
  }
  if (cp != target) throw InvalidArgument("matrix is not unipotent");
  Mat N = sub(F, u, Mat::identity(d)), P = Mat::identity(d);
  std::vector<int> ranks{d};
  while (ranks.back() > 0) {
    P = mul(F, P, N);
    ranks.push_back(rank(F, to_dyn(P)));
  }
  // Blocks of size >= k: ranks[k-1] - ranks[k].
  std::vector<int> out;
  for (std::size_t k = ranks.size() - 1; k >= 1; --k) {
    int at_least = ranks[k - 1] - ranks[k];
    int larger = k + 1 < ranks.size() ? ranks[k] - ranks[k + 1] : 0;
    for (int i = 0; i < at_least - larger; ++i) out.push_back(static_cast<int>(k));
  }
  return out;
}

struct SoWitness {
  std::string name;  // x_1 .. x_4
  Mat paper;         // coordinates preserving (1 0 0; 0 0 I; 0 I 0)
  Mat x;             // in the group's basis
  bool in_group = false;
  bool in_w0_u = false;
  int dim = 0;
  bool unipotent = false;
  std::vector<int> jordan;
  std::vector<elem> charpoly;
};

struct SoWitnesses {
  int n = 0;
  std::uint64_t q = 0;
  int expected_dim = 0;  // n^2 + n
  std::vector<SoWitness> xs;
  bool charpolys_differ = false;
  std::vector<int> expected_jordan;  // of the unipotent witness
};

/// Change of basis from (e_0, e_1..e_n, f_1..f_n) to the group's basis (e_1..e_n, e_0, f_n/2..f_1/2);
/// the rescaling of the f_i turns twice the form (1 0 0; 0 0 I; 0 I 0) into the group's form.
inline Mat so_to_group(const Field& F, const Mat& x) {
  const int d = x.d, n = (d - 1) / 2;
  Mat S(d);
  const elem half = F.inv(2);
  for (int k = 0; k < d; ++k) {
    if (k < n)
      S(1 + k, k) = 1;
    else if (k == n)
      S(0, k) = 1;
    else
      S(n + (d - k), k) = half;
  }
  return mul(F, mul(F, inverse(F, S), x), S);
}

/// x(V, gamma, M) = (s 0 s gamma^t; 0 0 V^{-t}; -V gamma  V  M) with s = (-1)^n: the product
/// rep(w_0) v_1 v_2 with V unitriangular with 2's above the diagonal.
inline Mat so_family(const Field& F, int n, const std::vector<elem>& gamma, const Mat& M) {
  const int d = 2 * n + 1;
  if (d > kMaxDim) throw InvalidArgument("matrix too large");
  Mat V = Mat::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) V(i, j) = F.from_int(2);
  Mat Vit = transpose(inverse(F, V));
  elem sign = n % 2 ? F.neg(1) : 1;
  Mat x(d);
  x(0, 0) = sign;
  for (int j = 0; j < n; ++j) x(0, 1 + n + j) = F.mul(sign, gamma[j]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      x(1 + i, 1 + n + j) = Vit(i, j);
      x(1 + n + i, 1 + j) = V(i, j);
      x(1 + n + i, 1 + n + j) = M(i, j);
    }
  for (int i = 0; i < n; ++i) {
    elem s = 0;
    for (int j = 0; j < n; ++j) s = F.add(s, F.mul(V(i, j), gamma[j]));
    x(1 + n + i, 0) = F.neg(s);
  }
  return x;
}

/// The witnesses of the orthogonal case: x_1, x_2 for n even (needs zeta^2 = 2), x_3, x_4 for n odd
/// (needs xi^2 = -2).
inline SoWitnesses so_witnesses(int n, std::uint64_t q) {
  if (n != 3 && n != 4) throw InvalidArgument("so_witnesses supports n = 3, 4");
  if (q > 49) throw InvalidArgument("so_witnesses is meant for q <= 49");
  MatrixGroup G(Family::B, n, Field::of_order(q));
  const Field& F = G.field();
  const elem target = n % 2 ? F.neg(F.from_int(2)) : F.from_int(2);
  std::optional<elem> root;
  for (elem a = 1; a < F.q() && !root; ++a)
    if (F.mul(a, a) == target) root = a;
  if (!root)
    throw InvalidArgument(std::string("F_") + std::to_string(q) + " has no square root of " +
                          (n % 2 ? "-2" : "2") + "; use a field extension");
  // C_ij = 2 (-1)^j; M_1 = C - 2I, M_2 = C + 2I.
  auto C_plus = [&](long long diag) {
    Mat M(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = F.from_int((j % 2 ? -2 : 2) + (i == j ? diag : 0));
    return M;
  };
  std::vector<elem> alt(n), zero(n, 0);
  for (int j = 0; j < n; ++j) alt[j] = j % 2 ? F.neg(1) : 1;
  auto scaled = [&](elem c) {
    std::vector<elem> g(n);
    for (int j = 0; j < n; ++j) g[j] = F.mul(c, alt[j]);
    return g;
  };
  SoWitnesses out;
  out.n = n;
  out.q = q;
  out.expected_dim = n * n + n;
  std::vector<std::pair<std::string, Mat>> built;
  if (n % 2 == 0) {
    built.emplace_back("x_1", so_family(F, n, scaled(F.mul(2, *root)), C_plus(-2)));
    built.emplace_back("x_2", so_family(F, n, zero, C_plus(2)));
    out.expected_jordan = {3};
    for (int i = 0; i < n - 2; ++i) out.expected_jordan.push_back(2);
    out.expected_jordan.insert(out.expected_jordan.end(), {1, 1});
  } else {
    built.emplace_back("x_3", so_family(F, n, scaled(F.neg(F.mul(2, *root))), C_plus(2)));
    built.emplace_back("x_4", so_family(F, n, zero, C_plus(-2)));
    out.expected_jordan = {3};
    for (int i = 0; i < n - 1; ++i) out.expected_jordan.push_back(2);
  }
  const WeylElement& w0 = G.weyl().longest();
  Mat w0_paper(2 * n + 1);
  w0_paper(0, 0) = n % 2 ? F.neg(1) : 1;
  for (int i = 0; i < n; ++i) {
    w0_paper(1 + i, 1 + n + i) = 1;
    w0_paper(1 + n + i, 1 + i) = 1;
  }
  Mat w0i = inverse(F, so_to_group(F, w0_paper));
  for (auto& [name, paper] : built) {
    SoWitness w;
    w.name = name;
    w.paper = paper;
    w.x = so_to_group(F, paper);
    w.in_group = G.contains(w.x);
    w.in_w0_u = mul(F, w0i, w.x).is_unitriangular() && bruhat_cell(G, w.x) == w0;
    w.dim = w.in_group ? G.class_dimension(w.x) : -1;
    w.charpoly = charpoly(F, w.x);
    try {
      w.jordan = jordan_partition(F, w.x);
      w.unipotent = true;
    } catch (const InvalidArgument&) {
      w.unipotent = false;
    }
    out.xs.push_back(std::move(w));
  }
  out.charpolys_differ = out.xs[0].charpoly != out.xs[1].charpoly;
  return out;
}

// ---------------------------------------------------------------------------------------------
// Curves in the centralizer

/// G_x(F_q) by a scan of the enumerated group.
inline std::vector<Mat> centralizer_elements(const ClassCensus& census, const Mat& x) {
  const Field& F = census.group().field();
  const ElementSet& S = census.elements();
  std::vector<Mat> out;
  for (std::size_t i = 0; i < S.size(); ++i) {
    Mat g = S.at(i);
    if (mul(F, g, x) == mul(F, x, g)) out.push_back(g);
  }
  return out;
}

/// A class member in rep(z) U, falling back to rep(z) T U when the torus part cannot be removed.
inline std::optional<Mat> curve_representative(const ClassCensus& census, const ConjClass& cls) {
  if (cls.z < 0) return std::nullopt;
  const MatrixGroup& G = census.group();
  const Field& F = G.field();
  Mat ni = inverse(F, G.weyl_rep(G.weyl_elements()[cls.z]));
  for (auto i : cls.members) {
    Mat y = census.elements().at(i);
    if (mul(F, ni, y).is_unitriangular()) return y;
  }
  return maximal_representative(census, cls);
}

enum class CurveCase {
  fixed_simple,     // gamma in Pi: X_{-gamma} centralizes x
  phi_one_simple,   // gamma simple with w gamma = -gamma: x_gamma(c) n_gamma B meets G_x for almost all c
  sum_not_negative, // w gamma + gamma not in -Phi^+ (nor -2 Phi^+)
  sum_twice_root,   // w gamma + gamma in -2 Phi^+
  sum_negative_root // w gamma + gamma in -Phi^+
};

inline const char* curve_case_name(CurveCase c) {
  switch (c) {
    case CurveCase::fixed_simple: return "fixed_simple";
    case CurveCase::phi_one_simple: return "phi_one_simple";
    case CurveCase::sum_not_negative: return "sum_not_negative";
    case CurveCase::sum_twice_root: return "sum_twice_root";
    default: return "sum_negative_root";
  }
}

struct CurveCheck {
  int gamma = -1;
  CurveCase kind = CurveCase::fixed_simple;
  std::uint64_t good = 0;        // c in F_q for which the centralizer element exists
  std::uint64_t exceptions = 0;  // c for which it does not
  bool ok = false;
};

/// Classification of a positive root gamma relative to w = w_0 w_Pi; nullopt when no curve lemma
/// covers gamma (non-simple roots of Phi_1, or gamma in Phi(Pi) that is not simple).
inline std::optional<CurveCase> classify_curve_root(const WeylGroup& wg, const WeylElement& w, int gamma) {
  const RootSystem& rs = wg.roots();
  const int wg_img = w.perm[gamma];
  const bool simple = gamma < rs.rank();
  if (wg_img == gamma) {
    if (!simple) return std::nullopt;
    return CurveCase::fixed_simple;
  }
  if (wg_img == rs.negate(gamma)) {
    if (!simple) return std::nullopt;
    return CurveCase::phi_one_simple;
  }
  if (wg_img < rs.num_positive()) throw InvalidArgument("root outside Phi(Pi) mapped to a positive root");
  Coords sum = rs.coords(gamma), img = rs.coords(rs.negate(wg_img));
  for (std::size_t k = 0; k < sum.size(); ++k) sum[k] -= img[k];  // gamma + w gamma
  Coords neg_sum = sum;
  for (auto& v : neg_sum) v = -v;
  if (rs.index_of(neg_sum) >= 0 && rs.index_of(neg_sum) < rs.num_positive()) return CurveCase::sum_negative_root;
  bool even = true;
  for (auto& v : neg_sum) {
    even = even && v % 2 == 0;
    v /= 2;
  }
  if (even && rs.index_of(neg_sum) >= 0 && rs.index_of(neg_sum) < rs.num_positive()) return CurveCase::sum_twice_root;
  return CurveCase::sum_not_negative;
}

/// Brute-force existence of the centralizer elements the curve lemmas construct.
inline CurveCheck curve_check(const MatrixGroup& G, const std::vector<Mat>& centralizer, const Mat& x,
                              const WeylElement& w, int gamma) {
  const WeylGroup& wg = G.weyl();
  const RootSystem& rs = G.roots();
  const Field& F = G.field();
  auto kind = classify_curve_root(wg, w, gamma);
  if (!kind) throw InvalidArgument("no curve lemma covers this root for the given w");
  CurveCheck out;
  out.gamma = gamma;
  out.kind = *kind;
  auto inv = wg.inversion_set(w);
  std::set<int> phi_w(inv.begin(), inv.end());
  auto in_uw = [&](const Mat& u) {
    if (!u.is_unitriangular()) return false;
    auto c = G.decompose_unipotent(u);
    for (int r = 0; r < rs.num_positive(); ++r)
      if (c[r] != 0 && !phi_w.count(r)) return false;
    return true;
  };
  for (elem c = 0; c < F.q(); ++c) {
    bool found = false;
    switch (*kind) {
      case CurveCase::fixed_simple: {
        Mat u = G.x(rs.negate(gamma), c);
        found = mul(F, u, x) == mul(F, x, u);
        break;
      }
      case CurveCase::phi_one_simple: {
        Mat left = inverse(F, mul(F, G.x(gamma, c), G.n(gamma)));
        for (const Mat& y : centralizer)
          if (mul(F, left, y).is_upper_triangular()) {
            found = true;
            break;
          }
        break;
      }
      default: {
        Mat left = G.x(w.perm[gamma], F.neg(c));
        for (const Mat& y : centralizer)
          if (in_uw(mul(F, left, y))) {
            found = true;
            break;
          }
      }
    }
    (found ? out.good : out.exceptions)++;
  }
  // Over F_q a cofinite set of c carries no content; the curve must at least be met.
  out.ok = *kind == CurveCase::phi_one_simple ? out.good > 0 : out.exceptions == 0;
  return out;
}

/// Fraction of U^sigma(F_q) reached by the U^sigma-component of G_x cap B sigma B, for every sigma.
struct FlagCoverage {
  std::vector<std::uint64_t> reached;   // indexed like G.weyl_elements()
  std::vector<std::uint64_t> possible;  // q^{l(sigma)}
  double fraction(std::size_t w) const { return static_cast<double>(reached[w]) / static_cast<double>(possible[w]); }
  /// reached[a] <= reached[b] whenever a <= b in the Bruhat order.
  bool monotone(const MatrixGroup& G) const {
    const auto& W = G.weyl_elements();
    for (std::size_t a = 0; a < W.size(); ++a)
      for (std::size_t b = 0; b < W.size(); ++b)
        if (reached[a] > reached[b] && G.weyl().bruhat_leq(W[a], W[b])) return false;
    return true;
  }
};

inline FlagCoverage flag_dominance_probe(const MatrixGroup& G, const std::vector<Mat>& centralizer) {
  const std::size_t nw = G.weyl_elements().size();
  const MatrixCodec codec(G.dim(), G.field().q());
  std::vector<std::set<std::uint64_t>> seen(nw);
  for (const Mat& y : centralizer) {
    auto f = bruhat_factor(G, y);
    seen[f.w].insert(codec.encode(f.u));
  }
  FlagCoverage out;
  for (std::size_t w = 0; w < nw; ++w) {
    out.reached.push_back(seen[w].size());
    std::uint64_t p = 1;
    for (int k = 0; k < G.weyl_elements()[w].length; ++k) p *= G.field().q();
    out.possible.push_back(p);
  }
  return out;
}

}  // namespace spherical
