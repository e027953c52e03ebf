#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chevalley.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "weyl.hpp"

namespace spherical {

/// A split Chevalley group over F_q in a faithful matrix representation with upper-triangular Borel.
///
/// SL_{n+1} (A_n), SO_{2n+1} (B_n, quadratic form x_0^2 + sum x_i x_{-i}), Sp_{2n} (C_n, antidiagonal
/// form with signs +..+-..-), SO_{2n} (D_n, antidiagonal form) and G_2 in its 7-dimensional module.
/// Basis vectors are ordered by weight, so B is the upper-triangular subgroup.
class MatrixGroup {
 public:
  MatrixGroup(Family family, int rank, const Field& field)
      : rs_(family, rank), wg_(rs_), sc_(rs_), F_(field) {
    if (family != Family::A && family != Family::B && family != Family::C && family != Family::D &&
        family != Family::G)
      throw InvalidArgument("matrix groups exist only for types A, B, C, D, G");
    if (!is_good_odd(family, rank, F_.p()))
      throw BadCharacteristic("characteristic " + std::to_string(F_.p()) + " is not good and odd for " + rs_.name());
    build_simple();
    build_all_roots();
    build_form();
    build_exponentials();
    build_lie_basis();
    build_weyl_reps();
  }

  const RootSystem& roots() const { return rs_; }
  const WeylGroup& weyl() const { return wg_; }
  const StructureConstants& constants() const { return sc_; }
  const Field& field() const { return F_; }
  Family family() const { return rs_.family(); }
  int rank() const { return rs_.rank(); }
  int dim() const { return d_; }
  std::string name() const {
    switch (family()) {
      case Family::A: return "SL" + std::to_string(d_);
      case Family::B: return "SO" + std::to_string(d_);
      case Family::C: return "Sp" + std::to_string(d_);
      case Family::D: return "SO" + std::to_string(d_);
      default: return "G2";
    }
  }
  /// Dimension of G as a variety.
  int variety_dim() const { return rs_.num_roots() + rs_.rank(); }

  /// Integral Chevalley basis element e_r in the representation.
  const IntMat& root_matrix(int r) const { return e_[r]; }
  /// A matrix position (row, col) at which e_r is nonzero mod p; only e_r is nonzero there.
  std::pair<int, int> root_position(int r) const { return pos_[r]; }

  /// x_r(t) = exp(t e_r).
  Mat x(int r, elem t) const {
    Mat m = Mat::identity(d_);
    elem tk = 1;
    for (std::size_t k = 1; k < powers_[r].size(); ++k) {
      tk = F_.mul(tk, t);
      if (tk == 0) break;
      const Mat& P = powers_[r][k];
      for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j)
          if (P(i, j) != 0) m(i, j) = F_.add(m(i, j), F_.mul(tk, P(i, j)));
    }
    return m;
  }

  /// n_r = x_r(1) x_{-r}(-1) x_r(1).
  Mat n(int r) const { return mul(F_, mul(F_, x(r, 1), x(rs_.negate(r), F_.neg(1))), x(r, 1)); }

  /// Diagonal exponents of the cocharacter basis; the torus is the image of (F_q^*)^rank.
  const std::vector<std::vector<int>>& cocharacters() const { return cochar_; }

  Mat torus(const std::vector<elem>& values) const {
    if (values.size() != cochar_.size()) throw InvalidArgument("torus needs one value per cocharacter");
    Mat m = Mat::identity(d_);
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (values[k] == 0) throw InvalidArgument("torus parameters must be nonzero");
      for (int i = 0; i < d_; ++i) m(i, i) = F_.mul(m(i, i), F_.pow(values[k], cochar_[k][i]));
    }
    return m;
  }

  /// gamma(t) for a diagonal t.
  elem character(int r, const Mat& t) const {
    auto [i, j] = pos_[r];
    return F_.div(t(i, i), t(j, j));
  }

  /// The invariant bilinear form (B, C, D, G), if any.
  const std::optional<Mat>& form() const { return form_; }

  bool contains(const Mat& g) const {
    if (g.d != d_) return false;
    if (det(F_, g) != 1) return false;
    if (form_) {
      if (mul(F_, mul(F_, transpose(g), *form_), g) != *form_) return false;
    }
    if (family() == Family::G) {
      Mat gi = inverse(F_, g);
      for (const Mat& X : lie_)
        if (!in_lie_span(mul(F_, mul(F_, g, X), gi))) return false;
    }
    return true;
  }

  bool in_borel(const Mat& g) const { return g.is_upper_triangular(); }

  /// Generators: x_{+-alpha_i}(additive F_p-basis of F_q) and the torus at a primitive element.
  std::vector<Mat> generators() const {
    std::vector<Mat> gens;
    elem basis = 1;
    for (int k = 0; k < F_.k(); ++k, basis *= F_.p())
      for (int i = 0; i < rank(); ++i) {
        gens.push_back(x(i, basis));
        gens.push_back(x(rs_.negate(i), basis));
      }
    for (std::size_t k = 0; k < cochar_.size(); ++k) {
      std::vector<elem> v(cochar_.size(), 1);
      v[k] = F_.primitive();
      Mat t = torus(v);
      if (!t.is_identity()) gens.push_back(t);
    }
    return gens;
  }

  /// |G(F_q)| from the classical order formula, or nullopt on overflow.
  std::optional<std::uint64_t> order() const {
    unsigned __int128 q = F_.q(), r = 1;
    auto qp = [&](int e) {
      unsigned __int128 v = 1;
      for (int i = 0; i < e; ++i) v *= q;
      return v;
    };
    const int n = rank();
    r = qp(rs_.num_positive());
    auto times = [&](unsigned __int128 f) {
      if (f != 0 && r > (~static_cast<unsigned __int128>(0)) / f) return false;
      r *= f;
      return true;
    };
    bool ok = true;
    for (int deg : degrees(family(), n)) ok = ok && times(qp(deg) - 1);
    if (!ok || r > static_cast<unsigned __int128>(~std::uint64_t{0})) return std::nullopt;
    return static_cast<std::uint64_t>(r);
  }

  /// The Weyl representative: product of n_{alpha_i} along a reduced word.
  const Mat& weyl_rep(const WeylElement& w) const { return reps_[weyl_index(w)]; }
  const std::vector<WeylElement>& weyl_elements() const { return welems_; }
  int weyl_index(const WeylElement& w) const {
    auto it = windex_.find(w.perm);
    if (it == windex_.end()) throw InvalidArgument("not an element of this Weyl group");
    return it->second;
  }
  /// The Weyl element whose representative has the given column->row support, or -1.
  int weyl_index_of_pattern(const std::vector<int>& pattern) const {
    auto it = pattern_.find(pattern);
    return it == pattern_.end() ? -1 : it->second;
  }

  /// Coefficients (t_gamma) with u = prod x_gamma(t_gamma) in the given order of positive roots.
  std::vector<elem> decompose_unipotent(const Mat& u, const std::vector<int>& order) const {
    if (!u.is_unitriangular()) throw InvalidArgument("not a unipotent upper triangular matrix");
    const int np = rs_.num_positive();
    if (static_cast<int>(order.size()) != np) throw InvalidArgument("order must list every positive root once");
    std::vector<elem> coef(np, 0);
    int max_h = rs_.height(rs_.highest_root());
    for (int h = 1; h <= max_h; ++h) {
      Mat Q = Mat::identity(d_);
      for (int r : order)
        if (rs_.height(r) < h && coef[r] != 0) Q = mul(F_, Q, x(r, coef[r]));
      Mat R = mul(F_, inverse(F_, Q), u);
      for (int r = 0; r < np; ++r) {
        if (rs_.height(r) != h) continue;
        auto [i, j] = pos_[r];
        coef[r] = F_.div(R(i, j), epos_[r]);
      }
    }
    if (compose_unipotent(coef, order) != u) throw InvalidArgument("not an element of U");
    return coef;
  }

  std::vector<elem> decompose_unipotent(const Mat& u) const { return decompose_unipotent(u, default_order()); }

  /// Coordinates of a lower unitriangular v along an ordering of all negative roots; indexed by the
  /// positive root -r.
  std::vector<elem> decompose_lower_unipotent(const Mat& v, const std::vector<int>& order) const {
    if (!transpose(v).is_unitriangular()) throw InvalidArgument("not a unipotent lower triangular matrix");
    const int np = rs_.num_positive();
    if (static_cast<int>(order.size()) != np) throw InvalidArgument("order must list every negative root once");
    std::vector<elem> coef(np, 0);
    int max_h = rs_.height(rs_.highest_root());
    for (int h = 1; h <= max_h; ++h) {
      Mat Q = Mat::identity(d_);
      for (int r : order)
        if (rs_.height(r - np) < h && coef[r - np] != 0) Q = mul(F_, Q, x(r, coef[r - np]));
      Mat R = mul(F_, inverse(F_, Q), v);
      for (int r = np; r < 2 * np; ++r) {
        if (rs_.height(r - np) != h) continue;
        auto [i, j] = pos_[r];
        coef[r - np] = F_.div(R(i, j), epos_[r]);
      }
    }
    Mat m = Mat::identity(d_);
    for (int r : order)
      if (coef[r - np] != 0) m = mul(F_, m, x(r, coef[r - np]));
    if (m != v) throw InvalidArgument("not an element of U^-");
    return coef;
  }

  Mat compose_unipotent(const std::vector<elem>& coef, const std::vector<int>& order) const {
    Mat m = Mat::identity(d_);
    for (int r : order)
      if (coef[r] != 0) m = mul(F_, m, x(r, coef[r]));
    return m;
  }

  std::vector<int> default_order() const {
    std::vector<int> o(rs_.num_positive());
    for (int i = 0; i < rs_.num_positive(); ++i) o[i] = i;
    return o;
  }

  /// Lie algebra basis over F_q: e_gamma for every root, then the cocharacter diagonals.
  const std::vector<Mat>& lie_basis() const { return lie_; }

  /// Ad(g) in the Lie algebra basis (column k = coordinates of g X_k g^{-1}).
  DynMat adjoint_action(const Mat& g) const {
    const int m = static_cast<int>(lie_.size());
    Mat gi = inverse(F_, g);
    DynMat A(m, m);
    for (int k = 0; k < m; ++k) {
      auto c = lie_coordinates(mul(F_, mul(F_, g, lie_[k]), gi));
      if (!c) throw ConsistencyError("adjoint action leaves the Lie algebra");
      for (int i = 0; i < m; ++i) A(i, k) = (*c)[i];
    }
    return A;
  }

  std::optional<std::vector<elem>> lie_coordinates(const Mat& X) const {
    const int m = static_cast<int>(lie_.size());
    std::vector<elem> c(m, 0);
    for (int i = 0; i < m; ++i) {
      elem s = 0;
      for (int k = 0; k < m; ++k) {
        auto [r, col] = lie_pivots_[k];
        s = F_.add(s, F_.mul(lie_solve_(i, k), X(r, col)));
      }
      c[i] = s;
    }
    Mat Y(d_);
    for (int i = 0; i < m; ++i)
      if (c[i] != 0) Y = add(F_, Y, scale(F_, c[i], lie_[i]));
    if (Y != X) return std::nullopt;
    return c;
  }

  bool in_lie_span(const Mat& X) const { return lie_coordinates(X).has_value(); }

  /// dim of the conjugacy class of g: dim G minus the dimension of the Lie centralizer.
  /// Type A uses gl_d, so the count is valid even when p divides d.
  int class_dimension(const Mat& g) const {
    if (family() == Family::A) {
      DynMat M(d_ * d_, d_ * d_);
      for (int a = 0; a < d_; ++a)
        for (int b = 0; b < d_; ++b) {
          int col = a * d_ + b;
          // g E_ab - E_ab g
          for (int i = 0; i < d_; ++i) M(i * d_ + b, col) = F_.add(M(i * d_ + b, col), g(i, a));
          for (int j = 0; j < d_; ++j) M(a * d_ + j, col) = F_.sub(M(a * d_ + j, col), g(b, j));
        }
      return spherical::rank(F_, M);
    }
    const int m = static_cast<int>(lie_.size());
    DynMat M(d_ * d_, m);
    for (int k = 0; k < m; ++k) {
      Mat C = sub(F_, mul(F_, g, lie_[k]), mul(F_, lie_[k], g));
      for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) M(i * d_ + j, k) = C(i, j);
    }
    return spherical::rank(F_, M);
  }

  static std::vector<int> degrees(Family f, int n) {
    std::vector<int> out;
    switch (f) {
      case Family::A:
        for (int i = 2; i <= n + 1; ++i) out.push_back(i);
        break;
      case Family::B:
      case Family::C:
        for (int i = 1; i <= n; ++i) out.push_back(2 * i);
        break;
      case Family::D:
        for (int i = 1; i < n; ++i) out.push_back(2 * i);
        out.push_back(n);
        break;
      case Family::G:
        out = {2, 6};
        break;
      default: throw InvalidArgument("no matrix group for this type");
    }
    return out;
  }

 private:
  static IntMat unit(int d, int i, int j, long long c = 1) {
    IntMat m(d);
    m(i, j) = c;
    return m;
  }

  static IntMat plus(IntMat a, const IntMat& b) {
    for (std::size_t i = 0; i < a.a.size(); ++i) a.a[i] += b.a[i];
    return a;
  }

  void build_simple() {
    const int n = rank();
    e_.assign(rs_.num_roots(), IntMat());
    switch (family()) {
      case Family::A:
        d_ = n + 1;
        for (int i = 0; i < n; ++i) set_simple(i, unit(d_, i, i + 1), unit(d_, i + 1, i));
        for (int i = 0; i < n; ++i) {
          std::vector<int> c(d_, 0);
          c[i] = 1;
          c[i + 1] = -1;
          cochar_.push_back(c);
        }
        break;
      case Family::B:
      case Family::C:
      case Family::D: {
        d_ = family() == Family::B ? 2 * n + 1 : 2 * n;
        for (int i = 0; i + 1 < n; ++i) {
          IntMat e = plus(unit(d_, i, i + 1), unit(d_, d_ - 2 - i, d_ - 1 - i, -1));
          IntMat f = plus(unit(d_, i + 1, i), unit(d_, d_ - 1 - i, d_ - 2 - i, -1));
          set_simple(i, e, f);
        }
        if (family() == Family::C) {
          set_simple(n - 1, unit(d_, n - 1, n), unit(d_, n, n - 1));
        } else if (family() == Family::B) {
          set_simple(n - 1, plus(unit(d_, n - 1, n, 2), unit(d_, n, n + 1, -1)),
                     plus(unit(d_, n, n - 1), unit(d_, n + 1, n, -2)));
        } else {
          set_simple(n - 1, plus(unit(d_, n - 2, n), unit(d_, n - 1, n + 1, -1)),
                     plus(unit(d_, n, n - 2), unit(d_, n + 1, n - 1, -1)));
        }
        for (int k = 0; k < n; ++k) {
          std::vector<int> c(d_, 0);
          c[k] = 1;
          c[d_ - 1 - k] = -1;
          cochar_.push_back(c);
        }
        break;
      }
      case Family::G: {
        d_ = 7;
        IntMat ea = plus(plus(unit(7, 0, 1), unit(7, 2, 3, 2)), plus(unit(7, 3, 4), unit(7, 5, 6)));
        IntMat fa = plus(plus(unit(7, 1, 0), unit(7, 3, 2)), plus(unit(7, 4, 3, 2), unit(7, 6, 5)));
        IntMat eb = plus(unit(7, 1, 2), unit(7, 4, 5));
        IntMat fb = plus(unit(7, 2, 1), unit(7, 5, 4));
        set_simple(0, ea, fa);
        set_simple(1, eb, fb);
        for (int i = 0; i < 2; ++i) {
          IntMat h = bracket(e_[i], e_[rs_.negate(i)]);
          std::vector<int> c(7);
          for (int j = 0; j < 7; ++j) c[j] = static_cast<int>(h(j, j));
          cochar_.push_back(c);
        }
        break;
      }
      default: break;
    }
  }

  void set_simple(int i, IntMat e, IntMat f) {
    e_[i] = std::move(e);
    e_[rs_.negate(i)] = std::move(f);
  }

  static IntMat divide(const IntMat& A, long long c) {
    IntMat B(A.d);
    for (std::size_t i = 0; i < A.a.size(); ++i) {
      if (A.a[i] % c != 0) throw ConsistencyError("root vector is not integral");
      B.a[i] = A.a[i] / c;
    }
    return B;
  }

  void build_all_roots() {
    for (int xi = 0; xi < rs_.num_positive(); ++xi) {
      if (rs_.is_simple(xi)) continue;
      auto [a, b] = sc_.extraspecial(xi);
      e_[xi] = divide(bracket(e_[a], e_[b]), sc_.N(a, b));
      int na = rs_.negate(a), nb = rs_.negate(b);
      e_[rs_.negate(xi)] = divide(bracket(e_[na], e_[nb]), sc_.N(na, nb));
    }
    pos_.assign(rs_.num_roots(), {-1, -1});
    epos_.assign(rs_.num_roots(), 0);
    for (int r = 0; r < rs_.num_roots(); ++r) {
      for (int i = 0; i < d_ && pos_[r].first < 0; ++i)
        for (int j = 0; j < d_; ++j)
          if (F_.from_int(e_[r](i, j)) != 0) {
            pos_[r] = {i, j};
            epos_[r] = F_.from_int(e_[r](i, j));
            break;
          }
      if (pos_[r].first < 0) throw ConsistencyError("root vector vanishes mod p");
    }
  }

  void build_form() {
    if (family() == Family::A) return;
    Mat J(d_);
    if (family() == Family::G) {
      // Solve X^T J + J X = 0 for symmetric J over the simple generators.
      std::vector<std::pair<int, int>> vars;
      for (int i = 0; i < d_; ++i)
        for (int j = i; j < d_; ++j) vars.push_back({i, j});
      DynMat M(4 * d_ * d_, static_cast<int>(vars.size()));
      int row = 0;
      for (int g : {0, 1, rs_.negate(0), rs_.negate(1)}) {
        Mat X = reduce(F_, e_[g]);
        for (int i = 0; i < d_; ++i)
          for (int j = 0; j < d_; ++j, ++row)
            for (std::size_t v = 0; v < vars.size(); ++v) {
              auto [a, b] = vars[v];
              // coefficient of J_ab in (X^T J + J X)_{ij}
              elem c = 0;
              auto Jat = [&](int r, int s) { return (r == a && s == b) || (r == b && s == a); };
              for (int k = 0; k < d_; ++k) {
                if (Jat(k, j)) c = F_.add(c, X(k, i));
                if (Jat(i, k)) c = F_.add(c, X(k, j));
              }
              M(row, static_cast<int>(v)) = c;
            }
      }
      auto ns = nullspace(F_, M);
      if (ns.size() != 1) throw ConsistencyError("G2 invariant form is not unique");
      for (std::size_t v = 0; v < vars.size(); ++v) {
        auto [a, b] = vars[v];
        J(a, b) = J(b, a) = ns[0][v];
      }
    } else {
      for (int i = 0; i < d_; ++i) {
        elem s = 1;
        if (family() == Family::C && i >= d_ / 2) s = F_.neg(1);
        if (family() == Family::B && i == d_ / 2) s = 2;
        J(i, d_ - 1 - i) = s;
      }
    }
    form_ = J;
  }

  void build_exponentials() {
    powers_.assign(rs_.num_roots(), {});
    for (int r = 0; r < rs_.num_roots(); ++r) {
      IntMat P = e_[r];
      long long fact = 1;
      powers_[r].push_back(Mat::identity(d_));
      for (int k = 1; !P.is_zero(); ++k) {
        fact *= k;
        if (fact % F_.p() == 0) throw ConsistencyError("root vector nilpotency exceeds the characteristic");
        powers_[r].push_back(scale(F_, F_.inv(F_.from_int(fact)), reduce(F_, P)));
        P = mul(P, e_[r]);
      }
    }
  }

  void build_lie_basis() {
    for (int r = 0; r < rs_.num_roots(); ++r) lie_.push_back(reduce(F_, e_[r]));
    for (const auto& c : cochar_) {
      Mat h(d_);
      for (int i = 0; i < d_; ++i) h(i, i) = F_.from_int(c[i]);
      lie_.push_back(h);
    }
    const int m = static_cast<int>(lie_.size());
    // Choose m matrix positions at which the basis is independent, and invert that block.
    DynMat T(d_ * d_, m);
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) T(i * d_ + j, k) = lie_[k](i, j);
    DynMat Tt(m, d_ * d_);
    for (int i = 0; i < d_ * d_; ++i)
      for (int k = 0; k < m; ++k) Tt(k, i) = T(i, k);
    auto piv = row_reduce(F_, Tt);
    if (static_cast<int>(piv.size()) != m) throw ConsistencyError("Lie algebra basis is dependent mod p");
    DynMat S(m, 2 * m);
    for (int a = 0; a < m; ++a) {
      lie_pivots_.push_back({piv[a] / d_, piv[a] % d_});
      for (int k = 0; k < m; ++k) S(a, k) = T(piv[a], k);
      S(a, m + a) = 1;
    }
    row_reduce(F_, S);
    lie_solve_ = DynMat(m, m);
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k) lie_solve_(i, k) = S(i, m + k);
  }

  void build_weyl_reps() {
    welems_ = wg_.elements();
    for (std::size_t i = 0; i < welems_.size(); ++i) {
      const WeylElement& w = welems_[i];
      windex_[w.perm] = static_cast<int>(i);
      Mat m = Mat::identity(d_);
      for (int s : wg_.reduced_word(w)) m = mul(F_, m, n(s));
      reps_.push_back(m);
      std::vector<int> pat(d_, -1);
      for (int j = 0; j < d_; ++j)
        for (int r = 0; r < d_; ++r)
          if (m(r, j) != 0) {
            if (pat[j] >= 0) throw ConsistencyError("Weyl representative is not monomial");
            pat[j] = r;
          }
      if (!pattern_.emplace(pat, static_cast<int>(i)).second) throw ConsistencyError("Weyl patterns collide");
    }
  }

  RootSystem rs_;
  WeylGroup wg_;
  StructureConstants sc_;
  Field F_;
  int d_ = 0;
  std::vector<IntMat> e_;
  std::vector<std::pair<int, int>> pos_;
  std::vector<elem> epos_;
  std::vector<std::vector<int>> cochar_;
  std::optional<Mat> form_;
  std::vector<std::vector<Mat>> powers_;
  std::vector<Mat> lie_;
  std::vector<std::pair<int, int>> lie_pivots_;
  DynMat lie_solve_;
  std::vector<WeylElement> welems_;
  std::map<std::vector<int>, int> windex_;
  std::vector<Mat> reps_;
  std::map<std::vector<int>, int> pattern_;
};

}  // namespace spherical
