#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gfq.hpp"
#include "rootsys.hpp"

namespace spherical {

/// Structure constants N_{r,s} of a Chevalley basis, [e_r, e_s] = N_{r,s} e_{r+s}.
///
/// Signs are fixed by the extraspecial-pair method: for each non-simple positive root xi the
/// pair (a, b) with a + b = xi and a minimal in the root order gets N_{a,b} = +(p + 1), where
/// p is the largest integer with b - p a a root. Everything else follows from the relations
/// N_{-r,-s} = -N_{r,s}, the cyclic relation for r + s + t = 0 and the four-root relation.
class StructureConstants {
 public:
  /// A commutator factor x_{i r + j s}(coeff * a^i * b^j).
  struct Term {
    int i, j, root, coeff;
  };

  explicit StructureConstants(const RootSystem& rs) : rs_(rs), m_(rs.num_roots()) {
    extraspecial_.assign(rs_.num_positive(), {-1, -1});
    for (int xi = 0; xi < rs_.num_positive(); ++xi) {
      if (rs_.is_simple(xi)) continue;
      for (int a = 0; a < xi && extraspecial_[xi].first < 0; ++a) {
        int b = difference(xi, a);
        if (b >= 0 && rs_.is_positive(b)) extraspecial_[xi] = {a, b};
      }
    }
    table_.assign(m_ * m_, kUnset);
    for (int r = 0; r < m_; ++r)
      for (int s = 0; s < m_; ++s) compute(r, s);
    build_commutators();
  }

  const RootSystem& roots() const { return rs_; }

  int N(int r, int s) const { return table_[r * m_ + s]; }

  /// The extraspecial pair of a non-simple positive root.
  std::pair<int, int> extraspecial(int xi) const {
    if (!rs_.is_positive(xi) || rs_.is_simple(xi)) throw InvalidArgument("extraspecial pairs exist only for non-simple positive roots");
    return extraspecial_[xi];
  }

  /// x_r(a) x_s(b) = x_s(b) x_r(a) prod x_{ir+js}(c^{ij} a^i b^j), factors in order of increasing i+j.
  const std::vector<Term>& commutator_terms(int r, int s) const {
    if (r == s || r == rs_.negate(s)) throw InvalidArgument("commutator formula needs linearly independent roots");
    return commutators_[r * m_ + s];
  }

  int max_abs_commutator_coefficient() const {
    int best = 0;
    for (const auto& v : commutators_)
      for (const auto& t : v) best = std::max(best, std::abs(t.coeff));
    return best;
  }

 private:
  static constexpr int kUnset = 1 << 30;

  int difference(int r, int s) const {
    Coords c = rs_.coords(r);
    for (int i = 0; i < rs_.rank(); ++i) c[i] -= rs_.coords(s)[i];
    return rs_.index_of(c);
  }

  static int exact_div(long long num, long long den) {
    if (den == 0 || num % den != 0) throw ConsistencyError("structure constant is not integral");
    return static_cast<int>(num / den);
  }

  int compute(int r, int s) {
    int& slot = table_[r * m_ + s];
    if (slot != kUnset) return slot;
    int xi = (r == rs_.negate(s)) ? -1 : rs_.sum(r, s);
    if (xi < 0) return slot = 0;
    bool pr = rs_.is_positive(r), ps = rs_.is_positive(s);
    int value;
    if (pr && ps) {
      if (r > s) {
        value = -compute(s, r);
      } else if (extraspecial_[xi].first == r) {
        value = rs_.string_down(r, s) + 1;
      } else {
        auto [a, b] = extraspecial_[xi];
        int nr = rs_.negate(r), ns = rs_.negate(s);
        int d2 = rs_.sum(b, nr), d3 = rs_.sum(a, nr);
        // N_{-r,-s} = -(xi,xi)/N_{a,b} [N_{b,-r} N_{a,-s}/|b-r|^2 + N_{-r,a} N_{b,-s}/|a-r|^2]
        long long n2 = d2 >= 0 ? rs_.norm2(d2) : 1, n3 = d3 >= 0 ? rs_.norm2(d3) : 1;
        long long num = 0;
        if (d2 >= 0) num += static_cast<long long>(compute(b, nr)) * compute(a, ns) * n3;
        if (d3 >= 0) num += static_cast<long long>(compute(nr, a)) * compute(b, ns) * n2;
        int n_neg = exact_div(-rs_.norm2(xi) * num, compute(a, b) * n2 * n3);
        value = -n_neg;
      }
    } else if (!pr && !ps) {
      value = -compute(rs_.negate(r), rs_.negate(s));
    } else {
      int t = rs_.negate(xi);  // r + s + t = 0
      bool pt = rs_.is_positive(t);
      if (pt == ps) {
        value = exact_div(static_cast<long long>(rs_.norm2(t)) * compute(s, t), rs_.norm2(r));
      } else {
        value = exact_div(static_cast<long long>(rs_.norm2(t)) * compute(t, r), rs_.norm2(s));
      }
    }
    return table_[r * m_ + s] = value;
  }

  // M_{r,s,i} = (1/i!) N_{r,s} N_{r,r+s} ... N_{r,(i-1)r+s}.
  long long M(int r, int s, int i) const {
    long long prod = 1, fact = 1;
    int cur = s;
    for (int k = 0; k < i; ++k) {
      if (cur < 0) return 0;
      prod *= N(r, cur);
      fact *= (k + 1);
      cur = rs_.sum(r, cur);
    }
    return exact_div(prod, fact);
  }

  int combo(int i, int r, int j, int s) const {
    Coords c(rs_.rank());
    for (int k = 0; k < rs_.rank(); ++k) c[k] = i * rs_.coords(r)[k] + j * rs_.coords(s)[k];
    return rs_.index_of(c);
  }

  // Carter's constants for [x_s(u), x_r(t)] = prod x_{ir+js}(C_{ij,rs} (-t)^i u^j).
  long long carter_C(int i, int j, int r, int s) const {
    if (j == 1) return M(r, s, i);
    if (i == 1) return (j % 2 == 0 ? 1 : -1) * M(s, r, j);
    int rs = rs_.sum(r, s);
    if (i == 3 && j == 2) return exact_div(M(rs, r, 2), 3);
    if (i == 2 && j == 3) return exact_div(-2 * M(rs, s, 2), 3);
    throw ConsistencyError("unexpected commutator exponent");
  }

  void build_commutators() {
    commutators_.assign(m_ * m_, {});
    for (int a = 0; a < m_; ++a)
      for (int b = 0; b < m_; ++b) {
        if (a == b || a == rs_.negate(b)) continue;
        std::vector<Term> terms;
        // x_a(A)^{-1} x_b(B)^{-1} x_a(A) x_b(B) = [x_a(A), x_b(B)] with Carter's r = b, s = a, t = B, u = A:
        // factor for k a + l b is x(C_{l,k,b,a} (-B)^l A^k).
        for (int total = 2; total <= 5; ++total)
          for (int k = 1; k < total; ++k) {
            int l = total - k;
            int root = combo(k, a, l, b);
            if (root < 0) continue;
            long long c = carter_C(l, k, b, a) * (l % 2 == 0 ? 1 : -1);
            if (c == 0) throw ConsistencyError("vanishing commutator coefficient");
            terms.push_back({k, l, root, static_cast<int>(c)});
          }
        commutators_[a * m_ + b] = std::move(terms);
      }
  }

  RootSystem rs_;
  int m_;
  std::vector<std::pair<int, int>> extraspecial_;
  std::vector<int> table_;
  std::vector<std::vector<Term>> commutators_;
};

/// Evaluate the commutator formula over F_q: returns the factors (root, coefficient) of
/// prod x_{ir+js}(c^{ij} a^i b^j) in their order of application.
inline std::vector<std::pair<int, Field::elem>> commutator_expand(const StructureConstants& sc, const Field& F,
                                                                  int r, Field::elem a, int s, Field::elem b) {
  std::vector<std::pair<int, Field::elem>> out;
  for (const auto& t : sc.commutator_terms(r, s)) {
    Field::elem v = F.mul(F.from_int(t.coeff), F.mul(F.pow(a, t.i), F.pow(b, t.j)));
    out.emplace_back(t.root, v);
  }
  return out;
}

/// n_r = x_r(1) x_{-r}(-1) x_r(1), as a list of (root, integer coefficient) factors.
inline std::array<std::pair<int, int>, 3> n_alpha(const RootSystem& rs, int r) {
  return {{{r, 1}, {rs.negate(r), -1}, {r, 1}}};
}

}  // namespace spherical
