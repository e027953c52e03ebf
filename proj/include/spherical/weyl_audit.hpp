#pragma once

// Root-level consistency checks for involutions w = w_0 w_Pi and the sets Phi(alpha).

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "weyl.hpp"

namespace spherical {

namespace detail {

// Roots i*r + j*s with i, j >= 1.
inline std::vector<int> positive_combinations(const RootSystem& rs, int r, int s) {
  std::vector<int> out;
  if (r == rs.negate(s) || r == s) return out;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      Coords c(rs.rank());
      for (int k = 0; k < rs.rank(); ++k) c[k] = i * rs.coords(r)[k] + j * rs.coords(s)[k];
      int t = rs.index_of(c);
      if (t >= 0) out.push_back(t);
    }
  return out;
}

inline bool closed(const RootSystem& rs, const std::set<int>& s) {
  for (int a : s)
    for (int b : s)
      for (int t : positive_combinations(rs, a, b))
        if (!s.count(t)) return false;
  return true;
}

}  // namespace detail

/// Write an involution as a product of reflections in mutually orthogonal roots of Phi_1.
inline std::vector<int> orthogonal_decomposition(const WeylGroup& wg, const WeylElement& w) {
  if (!wg.is_involution(w)) throw InvalidArgument("orthogonal decomposition requires an involution");
  const RootSystem& rs = wg.roots();
  std::vector<int> gammas;
  WeylElement v = w;
  while (v.length > 0) {
    int pick = -1;
    for (int r = 0; r < rs.num_positive() && pick < 0; ++r)
      if (v.perm[r] == rs.negate(r)) pick = r;
    if (pick < 0) throw ConsistencyError("nontrivial involution with no (-1)-eigenroot");
    gammas.push_back(pick);
    v = wg.mul(wg.reflection(pick), v);
  }
  return gammas;
}

/// Properties of Pi and w = w_0 w_Pi that hold when Pi is the fixed set of an involution.
struct ParabolicAudit {
  bool admissible = false;
  bool theta_stable = false;
  bool w0_restricts_to_wpi = false;
  bool inversion_complement = false;
  bool uw_normalizes = false;
  bool fixes_parabolic = false;
  bool phi_one_characterized = false;
  bool orthogonal_product = false;

  bool all() const {
    return admissible && theta_stable && w0_restricts_to_wpi && inversion_complement && uw_normalizes &&
           fixes_parabolic && phi_one_characterized && orthogonal_product;
  }
};

inline ParabolicAudit audit_parabolic(const WeylGroup& wg, const std::vector<int>& pi) {
  const RootSystem& rs = wg.roots();
  ParabolicAudit a;
  a.admissible = wg.is_admissible(pi);
  WeylElement w0 = wg.longest(), wpi = wg.longest_parabolic(pi);
  WeylElement w = wg.mul(w0, wpi);
  auto par = wg.parabolic_roots(pi);
  std::set<int> par_set(par.begin(), par.end());

  std::set<int> pi_set(pi.begin(), pi.end()), theta_pi;
  for (int i : pi) theta_pi.insert(wg.theta(i));
  a.theta_stable = theta_pi == pi_set;

  a.w0_restricts_to_wpi = true;
  a.fixes_parabolic = true;
  for (int r : par) {
    a.w0_restricts_to_wpi = a.w0_restricts_to_wpi && w0.perm[r] == wpi.perm[r];
    a.fixes_parabolic = a.fixes_parabolic && w.perm[r] == r;
  }

  auto inv = wg.inversion_set(w);
  std::set<int> inv_set(inv.begin(), inv.end()), complement;
  for (int r = 0; r < rs.num_positive(); ++r)
    if (!par_set.count(r)) complement.insert(r);
  a.inversion_complement = inv_set == complement;

  a.uw_normalizes = true;
  for (int g : par)
    if (rs.is_positive(g))
      for (int d : inv)
        for (int t : detail::positive_combinations(rs, g, d)) a.uw_normalizes = a.uw_normalizes && inv_set.count(t);

  if (wg.is_involution(w)) {
    auto p1 = wg.phi_one(w);
    std::set<int> lhs(p1.begin(), p1.end()), rhs;
    for (int r = 0; r < rs.num_roots(); ++r) {
      bool perp = true;
      for (int i : pi) perp = perp && rs.inner(r, i) == 0;
      if (perp && wg.theta(r) == r) rhs.insert(r);
    }
    a.phi_one_characterized = lhs == rhs;
    auto gammas = orthogonal_decomposition(wg, w);
    WeylElement prod = wg.identity();
    bool ok = true;
    for (std::size_t i = 0; i < gammas.size(); ++i) {
      ok = ok && lhs.count(gammas[i]);
      for (std::size_t j = 0; j < i; ++j) ok = ok && rs.inner(gammas[i], gammas[j]) == 0;
      prod = wg.mul(prod, wg.reflection(gammas[i]));
    }
    a.orthogonal_product = ok && prod == w;
  }
  return a;
}

/// Which of the three shapes w(alpha) + alpha takes.
enum class SumKind { Generic, NegativeRoot, TwiceNegativeRoot };

/// Root-level content of the statements about U_alpha, U_alpha^- for one (w, alpha).
struct PhiAlphaAudit {
  bool plus_closed = false;
  bool minus_closed = false;
  bool disjoint_from_phi_one = false;
  bool opposite_excluded = false;
  bool mixed_closed = false;
  bool w_stable = false;
  SumKind kind = SumKind::Generic;
  int beta = -1;
  bool beta_in_minus = false;
  bool containment = false;   // w(Phi^-(alpha)) inside Phi^+(alpha), plus {beta} in the special cases
  bool beta_commutes = true;  // X_beta commutes with U_alpha (special cases only)

  bool structural() const {
    return plus_closed && minus_closed && disjoint_from_phi_one && opposite_excluded && mixed_closed && w_stable;
  }
  bool trichotomy() const {
    if (kind == SumKind::TwiceNegativeRoot) return beta_in_minus && containment && beta_commutes;
    if (kind == SumKind::NegativeRoot) return containment && beta_commutes;
    return containment;
  }
};

inline PhiAlphaAudit audit_phi_alpha(const WeylGroup& wg, const WeylElement& w, int alpha) {
  const RootSystem& rs = wg.roots();
  PhiAlphaData d = wg.phi_alpha(w, alpha);
  PhiAlphaAudit a;
  std::set<int> plus(d.plus_set.begin(), d.plus_set.end()), minus(d.minus_set.begin(), d.minus_set.end());
  auto p1 = wg.phi_one(w);
  std::set<int> phi1(p1.begin(), p1.end());

  a.plus_closed = detail::closed(rs, plus);
  a.minus_closed = detail::closed(rs, minus);

  a.disjoint_from_phi_one = true;
  for (int r : plus) a.disjoint_from_phi_one = a.disjoint_from_phi_one && !phi1.count(r);

  std::set<int> s = plus;
  for (int r : phi1)
    if (rs.is_positive(r)) s.insert(r);
  a.opposite_excluded = detail::closed(rs, s);
  for (int r : minus) a.opposite_excluded = a.opposite_excluded && !s.count(rs.negate(r));

  a.mixed_closed = true;
  for (int m : plus)
    for (int n : minus) {
      if (m == rs.negate(n)) a.mixed_closed = false;
      for (int t : detail::positive_combinations(rs, m, n))
        a.mixed_closed = a.mixed_closed && (plus.count(t) || minus.count(t));
    }

  a.w_stable = true;
  for (int r : plus) a.w_stable = a.w_stable && (plus.count(w.perm[r]) || minus.count(w.perm[r]));
  for (int r : minus) a.w_stable = a.w_stable && (plus.count(w.perm[r]) || minus.count(w.perm[r]));

  Coords sum = rs.coords(alpha);
  for (int k = 0; k < rs.rank(); ++k) sum[k] += rs.coords(w.perm[alpha])[k];
  int as_root = rs.index_of(sum);
  bool even = true;
  Coords half(rs.rank());
  for (int k = 0; k < rs.rank(); ++k) {
    even = even && sum[k] % 2 == 0;
    half[k] = sum[k] / 2;
  }
  int as_twice = even ? rs.index_of(half) : -1;
  if (as_root >= 0 && !rs.is_positive(as_root)) {
    a.kind = SumKind::NegativeRoot;
    a.beta = as_root;
  } else if (as_twice >= 0 && !rs.is_positive(as_twice)) {
    a.kind = SumKind::TwiceNegativeRoot;
    a.beta = as_twice;
  }
  a.beta_in_minus = a.beta >= 0 && minus.count(a.beta);
  a.containment = true;
  for (int r : minus) {
    int t = w.perm[r];
    a.containment = a.containment && (plus.count(t) || (a.beta >= 0 && t == a.beta));
  }
  if (a.beta >= 0)
    for (int g : plus) {
      if (g == rs.negate(a.beta)) a.beta_commutes = false;
      if (!detail::positive_combinations(rs, a.beta, g).empty()) a.beta_commutes = false;
    }
  return a;
}

/// All subsets Pi of the simple roots with w_0 w_Pi an involution fixing Pi.
inline std::vector<std::vector<int>> admissible_subsets(const WeylGroup& wg) {
  std::vector<std::vector<int>> out;
  const int n = wg.rank();
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> pi;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) pi.push_back(i);
    if (wg.is_admissible(pi)) out.push_back(pi);
  }
  return out;
}

/// Phi_2^+ = Phi^+ minus (Phi_1 union Phi(Pi)) for w = w_0 w_Pi.
inline std::vector<int> phi_two_positive(const WeylGroup& wg, const WeylElement& w) {
  const RootSystem& rs = wg.roots();
  auto par = wg.parabolic_roots(wg.fixed_simple_set(w));
  std::set<int> par_set(par.begin(), par.end());
  std::vector<int> out;
  for (int r = 0; r < rs.num_positive(); ++r)
    if (w.perm[r] != rs.negate(r) && !par_set.count(r)) out.push_back(r);
  return out;
}

}  // namespace spherical
