#pragma once

#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "classlab.hpp"
#include "weyl_audit.hpp"

namespace spherical {

/// A check that did not hold, tied to a group and class.
struct Finding {
  std::string check;
  std::string group;
  std::uint64_t q = 0;
  int class_id = -1;
  std::string detail;

  bool operator==(const Finding&) const = default;
};

/// Verdicts on the maximal representatives of one quasi-spherical class.
struct MaximalRepChecks {
  std::uint64_t representatives = 0;  // elements of O in rep(z) B examined
  bool exhaustive = true;
  bool simple_reflection_items = true;  // w s_a > w implies w a = a, v in P_a^u, X_{+-a} commutes with rep(w)
  bool support_in_phi_one = true;       // v in U_{Phi_1}
  bool minus_pi_commutes = true;        // X_{-a}, a in Pi, centralize x
  bool uw_commutes_with_rep = true;     // U_w commutes with rep(w)
  bool component_exclusion = true;      // {a} is not a connected component of Pi under the stated hypotheses
  bool big_cell_meets_rep_u = true;     // z = w_0 = -1: t a square gives a B-conjugate in rep(w_0) U
  bool sandwich = true;
  std::uint64_t centralizer_in_borel = 0;

  bool operator==(const MaximalRepChecks&) const = default;
  bool ok() const {
    return simple_reflection_items && support_in_phi_one && minus_pi_commutes && uw_commutes_with_rep &&
           component_exclusion && big_cell_meets_rep_u && sandwich;
  }
};

struct ClassReport {
  std::string group;
  char type = 'A';
  int rank = 0;
  std::uint64_t q = 0;
  int class_id = 0;
  std::vector<std::vector<std::uint32_t>> rep;
  std::uint64_t class_size = 0;
  int dim_class = 0;
  std::vector<std::vector<int>> phi_image;  // reduced words
  bool all_involutions = false;
  bool z_unique = false;
  std::vector<int> z;  // reduced word
  int len_plus_rank = 0;
  bool spherical_by_dim = false;
  bool theorem_ok = false;
  bool closure_ok = true;          // every cell met lies below z
  bool z_decomposition_ok = true;  // quasi-spherical: z = w_Pi w_0 with theta-stable Pi
  bool has_maximal_checks = false;
  MaximalRepChecks maximal;
  std::uint64_t artifact_q = 0;   // field over which a conjugate meets a non-involution cell
  std::vector<int> artifact_cell;  // reduced word of that cell

  bool operator==(const ClassReport&) const = default;
};

inline bool is_quasi_spherical(const MatrixGroup& G, const ConjClass& cls) {
  for (int w : cls.phi_image)
    if (!G.weyl().is_involution(G.weyl_elements()[w])) return false;
  return true;
}

inline int len_plus_rank(const WeylGroup& wg, const WeylElement& w) { return w.length + wg.rank_one_minus(w); }

inline bool is_spherical_by_dim(const MatrixGroup& G, const ConjClass& cls) {
  if (cls.z < 0) return false;
  return cls.dim == len_plus_rank(G.weyl(), G.weyl_elements()[cls.z]);
}

/// z = w_Pi w_0 for Pi the simple roots fixed by z, and Pi is theta-stable.
inline bool z_decomposition_check(const WeylGroup& wg, const WeylElement& z) {
  auto pi = wg.fixed_simple_set(z);
  if (wg.mul(wg.longest_parabolic(pi), wg.longest()) != z) return false;
  std::set<int> s(pi.begin(), pi.end());
  for (int a : pi)
    if (!s.count(wg.theta(a))) return false;
  return true;
}

/// The exclusion criterion: for simple a in Pi and simple b with |b| = |a|, w_0 b = -b, b not
/// orthogonal to a and b orthogonal to Pi \ {a}, the singleton {a} is not a component of Pi.
inline bool component_exclusion_holds(const WeylGroup& wg, const std::vector<int>& pi) {
  const RootSystem& rs = wg.roots();
  std::set<int> s(pi.begin(), pi.end());
  for (int a : pi) {
    bool isolated = true;
    for (int c : pi)
      if (c != a && rs.inner(a, c) != 0) isolated = false;
    if (!isolated) continue;
    for (int b = 0; b < rs.rank(); ++b) {
      if (b == a || rs.norm2(b) != rs.norm2(a) || wg.longest().perm[b] != rs.negate(b) || rs.inner(a, b) == 0) continue;
      bool perp = true;
      for (int c : pi)
        if (c != a && rs.inner(b, c) != 0) perp = false;
      if (perp) return false;
    }
  }
  return true;
}

inline constexpr std::uint64_t kMaximalRepCap = 4000;

/// Checks on x = rep(z) t v in O for a quasi-spherical class with z = w_0 w_Pi.
inline MaximalRepChecks check_maximal_representatives(const ClassCensus& census, const ConjClass& cls,
                                                      const std::vector<Mat>& borel, bool with_sandwich,
                                                      std::uint64_t cap = kMaximalRepCap) {
  const MatrixGroup& G = census.group();
  const WeylGroup& wg = G.weyl();
  const RootSystem& rs = G.roots();
  const Field& F = G.field();
  MaximalRepChecks m;
  const WeylElement& w = G.weyl_elements()[cls.z];
  const Mat& n = G.weyl_rep(w);
  Mat ni = inverse(F, n);
  auto pi = wg.fixed_simple_set(w);
  auto phi1 = wg.phi_one(w);
  std::set<int> phi1_set(phi1.begin(), phi1.end());
  auto inv = wg.inversion_set(w);
  std::set<int> phi_w(inv.begin(), inv.end());
  m.component_exclusion = component_exclusion_holds(wg, pi);

  for (int a = 0; a < rs.num_positive(); ++a)
    if (!phi_w.count(a))
      for (elem c = 1; c < F.q(); ++c)
        if (mul(F, n, G.x(a, c)) != mul(F, G.x(a, c), n)) m.uw_commutes_with_rep = false;

  std::vector<int> ascents;
  for (int a = 0; a < rs.rank(); ++a) {
    WeylElement ws = wg.mul(w, wg.simple_reflection(a));
    if (ws.length > w.length) ascents.push_back(a);
  }
  for (int a : ascents) {
    if (w.perm[a] != a) m.simple_reflection_items = false;
    for (int r : {a, rs.negate(a)})
      if (mul(F, n, G.x(r, 1)) != mul(F, G.x(r, 1), n)) m.simple_reflection_items = false;
  }

  const bool big_cell = w == wg.longest() && w.length == rs.num_positive() && [&] {
    for (int r = 0; r < rs.num_roots(); ++r)
      if (w.perm[r] != rs.negate(r)) return false;
    return true;
  }();
  std::vector<Mat> torus;
  if (big_cell) torus = torus_elements(G);

  std::vector<std::uint32_t> candidates;
  for (auto i : cls.members)
    if (census.cell_of(i) == cls.z) candidates.push_back(i);
  std::size_t stride = 1;
  if (candidates.size() > cap) {
    stride = (candidates.size() + cap - 1) / cap;
    m.exhaustive = false;
  }
  bool sandwich_done = false;
  for (std::size_t k = 0; k < candidates.size(); k += stride) {
    Mat y = census.elements().at(candidates[k]);
    auto f = bruhat_factor(G, y);
    if (big_cell) {
      // Squaring move: if t^{-1} = s^2 for s in T, then s^{-1} u^{-1} y u s lies in rep(w_0) U.
      for (const Mat& s : torus) {
        if (mul(F, mul(F, s, s), f.t).is_identity()) {
          Mat b = mul(F, inverse(F, s), inverse(F, f.u));
          Mat yb = mul(F, mul(F, b, y), inverse(F, b));
          if (!mul(F, ni, yb).is_unitriangular()) m.big_cell_meets_rep_u = false;
          break;
        }
      }
    }
    if (!f.u.is_identity()) continue;
    ++m.representatives;
    const Mat& x = y;
    auto cv = G.decompose_unipotent(f.v);
    for (int r = 0; r < rs.num_positive(); ++r)
      if (cv[r] != 0 && !phi1_set.count(r)) m.support_in_phi_one = false;
    for (int a : ascents)
      if (cv[a] != 0) m.simple_reflection_items = false;
    for (int a : pi)
      for (elem c = 1; c < F.q(); ++c) {
        Mat u = G.x(rs.negate(a), c);
        if (mul(F, u, x) != mul(F, x, u)) m.minus_pi_commutes = false;
      }
    if (with_sandwich && !sandwich_done) {
      auto s = sandwich_check(G, borel, x, w);
      m.sandwich = s.ok();
      m.centralizer_in_borel = s.centralizer_size;
      sandwich_done = true;
    }
  }
  if (with_sandwich && !sandwich_done) {
    // No candidate in rep(z) B was visited by the sampling stride; move one there.
    auto x = maximal_representative(census, cls);
    auto s = sandwich_check(G, borel, *x, w);
    m.sandwich = s.ok();
    m.centralizer_in_borel = s.centralizer_size;
  }
  return m;
}

/// A conjugate of x over the quadratic extension lying in a non-involution cell: evidence that an
/// all-involution verdict at F_q comes from the F_q-points missing part of the geometric class.
struct ExtensionWitness {
  std::uint64_t q = 0;
  std::vector<int> cell;
};

inline std::optional<ExtensionWitness> extension_witness(const MatrixGroup& G, const Mat& x, int trials = 4000,
                                                         unsigned seed = 1) {
  const Field& F0 = G.field();
  if (F0.q() != F0.p()) return std::nullopt;  // prime fields only: entries embed as integers
  MatrixGroup H(G.family(), G.rank(), Field::of_order(F0.q() * F0.q()));
  const Field& F = H.field();
  Mat y(x.d);
  for (int i = 0; i < x.d; ++i)
    for (int j = 0; j < x.d; ++j) y(i, j) = F.from_int(x(i, j));
  auto gens = H.generators();
  std::mt19937 rng(seed);
  for (int t = 0; t < trials; ++t) {
    Mat g = Mat::identity(x.d);
    for (int s = 0; s < 30; ++s) g = mul(F, g, gens[rng() % gens.size()]);
    const WeylElement& w = bruhat_cell(H, mul(F, mul(F, g, y), inverse(F, g)));
    if (!H.weyl().is_involution(w)) return ExtensionWitness{F.q(), H.weyl().reduced_word(w)};
  }
  return std::nullopt;
}

/// Full analysis of one class.
inline ClassReport theorem_check(const ClassCensus& census, int class_id, const std::vector<Mat>* borel) {
  const MatrixGroup& G = census.group();
  const WeylGroup& wg = G.weyl();
  const ConjClass& cls = census.classes()[class_id];
  ClassReport r;
  r.group = G.name();
  r.type = family_char(G.family());
  r.rank = G.rank();
  r.q = G.field().q();
  r.class_id = class_id;
  r.rep = cls.rep.rows();
  r.class_size = cls.size();
  r.dim_class = cls.dim;
  for (int w : cls.phi_image) r.phi_image.push_back(wg.reduced_word(G.weyl_elements()[w]));
  r.all_involutions = is_quasi_spherical(G, cls);
  r.z_unique = cls.z_unique;
  if (cls.z >= 0) {
    const WeylElement& z = G.weyl_elements()[cls.z];
    r.z = wg.reduced_word(z);
    r.len_plus_rank = len_plus_rank(wg, z);
    for (int w : cls.phi_image)
      if (!wg.bruhat_leq(G.weyl_elements()[w], z)) r.closure_ok = false;
    if (r.all_involutions) {
      r.z_decomposition_ok = z_decomposition_check(wg, z);
      r.has_maximal_checks = true;
      r.maximal = check_maximal_representatives(census, cls, borel ? *borel : std::vector<Mat>{},
                                                borel != nullptr && is_spherical_by_dim(G, cls));
    }
  }
  r.spherical_by_dim = is_spherical_by_dim(G, cls);
  r.theorem_ok = cls.z_unique && r.all_involutions == r.spherical_by_dim;
  if (r.all_involutions && !r.spherical_by_dim)
    if (auto wit = extension_witness(G, cls.rep)) {
      r.artifact_q = wit->q;
      r.artifact_cell = wit->cell;
    }
  return r;
}

/// Findings for a report; empty when every check held.
inline std::vector<Finding> findings_of(const ClassReport& r) {
  std::vector<Finding> out;
  auto add = [&](bool ok, const std::string& check) {
    if (!ok) out.push_back({check, r.group, r.q, r.class_id, ""});
  };
  add(r.z_unique, "z_unique");
  if (!r.theorem_ok) {
    std::string detail = "all_involutions=" + std::to_string(r.all_involutions) +
                         " dim=" + std::to_string(r.dim_class) + " l+rk=" + std::to_string(r.len_plus_rank);
    if (r.artifact_q) {
      detail += "; rational-point artifact: a conjugate over F_" + std::to_string(r.artifact_q) + " meets cell ";
      for (int i : r.artifact_cell) detail += "s" + std::to_string(i + 1);
    }
    out.push_back({"theorem", r.group, r.q, r.class_id, detail});
  }
  add(r.closure_ok, "closure");
  add(r.z_decomposition_ok, "z_decomposition");
  if (r.has_maximal_checks) {
    const auto& m = r.maximal;
    add(m.simple_reflection_items, "maximal.simple_reflection_items");
    add(m.support_in_phi_one, "maximal.support_in_phi_one");
    add(m.minus_pi_commutes, "maximal.minus_pi_commutes");
    add(m.uw_commutes_with_rep, "maximal.uw_commutes_with_rep");
    add(m.component_exclusion, "maximal.component_exclusion");
    add(m.big_cell_meets_rep_u, "maximal.big_cell_meets_rep_u");
    add(m.sandwich, "maximal.sandwich");
  }
  return out;
}

/// Verdict for a reductive group given per-simple-factor verdicts; central torus factors are
/// spherical and contribute nothing.
inline bool reduce_to_simple(const std::vector<bool>& factor_verdicts) {
  for (bool v : factor_verdicts)
    if (!v) return false;
  return true;
}

}  // namespace spherical
