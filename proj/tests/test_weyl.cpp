#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "spherical/weyl_audit.hpp"

using namespace spherical;

namespace {

const std::vector<std::pair<Family, int>> kSuiteTypes{{Family::A, 1}, {Family::A, 2}, {Family::A, 3}, {Family::A, 4},
                                                      {Family::B, 2}, {Family::B, 3}, {Family::C, 2}, {Family::C, 3},
                                                      {Family::D, 4}, {Family::G, 2}};

// Subword criterion: u <= w iff u is a product of a subword of a reduced word of w.
bool subword_leq(const WeylGroup& wg, const WeylElement& u, const WeylElement& w) {
  auto word = wg.reduced_word(w);
  const std::size_t k = word.size();
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    WeylElement v = wg.identity();
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) v = wg.mul(v, wg.simple_reflection(word[i]));
    if (v == u) return true;
  }
  return false;
}

int root_of(const RootSystem& rs, Coords c) { return rs.index_of(c); }

}  // namespace

TEST_CASE("group axioms and small examples") {
  WeylGroup a2(RootSystem(Family::A, 2));
  auto s1 = a2.simple_reflection(0), s2 = a2.simple_reflection(1);
  REQUIRE(a2.mul(s1, s1) == a2.identity());
  auto c = a2.mul(s1, s2);
  REQUIRE(c != a2.identity());
  REQUIRE(a2.mul(c, c) != a2.identity());
  REQUIRE(a2.mul(a2.mul(c, c), c) == a2.identity());
  REQUIRE_FALSE(a2.is_involution(c));
  REQUIRE(a2.mul(c, a2.inverse(c)) == a2.identity());
  // the highest-root reflection has length 3
  REQUIRE(a2.reflection(a2.roots().highest_root()).length == 3);
  REQUIRE(a2.elements().size() == 6);
  REQUIRE(a2.longest().length == 3);
}

TEST_CASE("inversion sets") {
  WeylGroup c2(RootSystem(Family::C, 2));
  const auto& rs = c2.roots();
  auto w = c2.from_word({0, 1});
  std::set<int> got;
  for (int r : c2.inversion_set(w)) got.insert(r);
  REQUIRE(got == std::set<int>{0, rs.reflect(0, 1)});
  REQUIRE(c2.inversion_set(c2.identity()).empty());
  REQUIRE(static_cast<int>(c2.inversion_set(c2.longest()).size()) == rs.num_positive());
  REQUIRE(c2.rank_one_minus(c2.longest()) == 2);
  REQUIRE(c2.rank_one_minus(c2.identity()) == 0);
  REQUIRE(c2.rank_one_minus(c2.simple_reflection(1)) == 1);
}

TEST_CASE("lengths, reduced words, inverses on every element") {
  for (auto [f, n] : kSuiteTypes) {
    WeylGroup wg(RootSystem(f, n));
    for (const auto& w : wg.elements()) {
      REQUIRE(static_cast<int>(wg.inversion_set(w).size()) == w.length);
      auto word = wg.reduced_word(w);
      REQUIRE(static_cast<int>(word.size()) == w.length);
      REQUIRE(wg.from_word(word) == w);
      REQUIRE(wg.inverse(w).length == w.length);
      REQUIRE(wg.from_images(w.images(n)) == w);
    }
  }
}

TEST_CASE("group orders") {
  REQUIRE(WeylGroup(RootSystem(Family::G, 2)).elements().size() == 12);
  REQUIRE(WeylGroup(RootSystem(Family::B, 3)).elements().size() == 48);
  REQUIRE(WeylGroup(RootSystem(Family::D, 4)).elements().size() == 192);
  REQUIRE(WeylGroup(RootSystem(Family::F, 4)).elements().size() == 1152);
}

TEST_CASE("diagram automorphisms are not Weyl elements") {
  WeylGroup a2(RootSystem(Family::A, 2));
  REQUIRE_THROWS_AS(a2.from_images({1, 0}), InvalidArgument);
  REQUIRE_THROWS_AS(a2.from_images({0, 0}), InvalidArgument);
  WeylGroup c2(RootSystem(Family::C, 2));
  REQUIRE_THROWS_AS(c2.from_images({1, 0}), InvalidArgument);
}

TEST_CASE("Bruhat order matches the subword criterion") {
  for (auto [f, n] : {std::pair{Family::A, 2}, {Family::A, 3}, {Family::B, 2}, {Family::B, 3}, {Family::G, 2}}) {
    WeylGroup wg(RootSystem(f, n));
    auto elems = wg.elements();
    BruhatTable table(wg, elems);
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = 0; j < elems.size(); ++j)
        REQUIRE(table.leq(i, j) == subword_leq(wg, elems[i], elems[j]));
  }
  WeylGroup a2(RootSystem(Family::A, 2));
  auto s1 = a2.simple_reflection(0), s12 = a2.from_word({0, 1});
  REQUIRE(a2.bruhat_leq(s1, s12));
  REQUIRE_FALSE(a2.bruhat_leq(s12, s1));
  REQUIRE(a2.bruhat_leq(a2.identity(), a2.longest()));
}

TEST_CASE("parabolic longest elements and fixed sets") {
  WeylGroup a2(RootSystem(Family::A, 2));
  REQUIRE(a2.longest_parabolic({}) == a2.identity());
  REQUIRE(a2.longest_parabolic({0, 1}) == a2.longest());
  REQUIRE(a2.longest_parabolic({0}) == a2.simple_reflection(0));
  WeylGroup a3(RootSystem(Family::A, 3));
  auto w = a3.mul(a3.longest(), a3.longest_parabolic({1}));
  REQUIRE(a3.fixed_simple_set(w) == std::vector<int>{1});
  REQUIRE(a3.fixed_simple_set(a3.identity()) == std::vector<int>{0, 1, 2});
  REQUIRE(a3.mul(a3.longest_parabolic({1}), a3.longest()) == w);
  // Pi = {alpha_1, alpha_3} is theta-stable but not fixed by w_0 w_Pi
  REQUIRE(a3.is_involution(a3.mul(a3.longest(), a3.longest_parabolic({0, 2}))));
  REQUIRE_FALSE(a3.is_admissible({0, 2}));
  for (auto [f, n] : kSuiteTypes) {
    WeylGroup wg(RootSystem(f, n));
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> pi;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) pi.push_back(i);
      auto wpi = wg.longest_parabolic(pi);
      REQUIRE(wg.is_involution(wpi));
      for (int r : wg.parabolic_roots(pi))
        if (wg.roots().is_positive(r)) REQUIRE_FALSE(wg.roots().is_positive(wpi.perm[r]));
    }
  }
}

TEST_CASE("Phi_1") {
  WeylGroup c2(RootSystem(Family::C, 2));
  REQUIRE(static_cast<int>(c2.phi_one(c2.longest()).size()) == c2.roots().num_roots());
  REQUIRE(c2.phi_one(c2.identity()).empty());
  REQUIRE_THROWS_AS(c2.phi_one(c2.from_word({0, 1})), InvalidArgument);
}

TEST_CASE("every involution is a product of orthogonal reflections in Phi_1") {
  for (auto [f, n] : {std::pair{Family::A, 2}, {Family::A, 3}, {Family::B, 2}, {Family::B, 3}, {Family::C, 3},
                      {Family::G, 2}}) {
    WeylGroup wg(RootSystem(f, n));
    for (const auto& w : wg.elements()) {
      if (!wg.is_involution(w)) continue;
      auto p1 = wg.phi_one(w);
      std::set<int> phi1(p1.begin(), p1.end());
      auto gammas = orthogonal_decomposition(wg, w);
      WeylElement prod = wg.identity();
      for (std::size_t i = 0; i < gammas.size(); ++i) {
        REQUIRE(phi1.count(gammas[i]));
        for (std::size_t j = 0; j < i; ++j) REQUIRE(wg.roots().inner(gammas[i], gammas[j]) == 0);
        prod = wg.mul(prod, wg.reflection(gammas[i]));
      }
      REQUIRE(prod == w);
      REQUIRE(static_cast<int>(gammas.size()) == wg.rank_one_minus(w));
    }
  }
}

TEST_CASE("Phi(alpha) agrees with a scan over j and the span of Phi_1") {
  for (auto [f, n] : kSuiteTypes) {
    WeylGroup wg(RootSystem(f, n));
    const auto& rs = wg.roots();
    for (auto& pi : admissible_subsets(wg)) {
      auto w = wg.mul(wg.longest(), wg.longest_parabolic(pi));
      auto p1 = wg.phi_one(w);
      std::vector<std::vector<long long>> span;
      for (int r : p1) span.emplace_back(rs.coords(r).begin(), rs.coords(r).end());
      const int base_rank = detail::rational_rank(span);
      for (int alpha : phi_two_positive(wg, w)) {
        auto d = wg.phi_alpha(w, alpha);
        std::set<int> plus(d.plus_set.begin(), d.plus_set.end()), minus(d.minus_set.begin(), d.minus_set.end());
        for (int mu = 0; mu < rs.num_roots(); ++mu) {
          bool member = false;
          for (int j = 1; j <= 4 && !member; ++j) {
            auto m = span;
            std::vector<long long> diff(n);
            for (int k = 0; k < n; ++k) diff[k] = rs.coords(mu)[k] - j * rs.coords(alpha)[k];
            m.push_back(diff);
            member = detail::rational_rank(m) == base_rank;
          }
          REQUIRE(member == (plus.count(mu) + minus.count(mu) == 1));
          if (member) REQUIRE(rs.is_positive(mu) == plus.count(mu) > 0);
        }
      }
    }
  }
}

TEST_CASE("Phi(alpha) examples and rejections") {
  WeylGroup c2(RootSystem(Family::C, 2));
  for (int r = 0; r < c2.roots().num_positive(); ++r) REQUIRE_THROWS_AS(c2.phi_alpha(c2.longest(), r), InvalidArgument);
  WeylGroup a2(RootSystem(Family::A, 2));
  // in A_2, w_0 is not -1, so alpha_1 lies in Phi_2^+
  auto d = a2.phi_alpha(a2.longest(), 0);
  REQUIRE(std::count(d.plus_set.begin(), d.plus_set.end(), 0) == 1);
  WeylGroup a3(RootSystem(Family::A, 3));
  auto w = a3.mul(a3.longest(), a3.longest_parabolic({1}));
  REQUIRE_THROWS_AS(a3.phi_alpha(w, 1), InvalidArgument);  // alpha_2 in Phi(Pi)
  REQUIRE_THROWS_AS(a3.phi_alpha(w, a3.roots().negate(0)), InvalidArgument);
  REQUIRE_NOTHROW(a3.phi_alpha(w, 0));
}

TEST_CASE("parabolic data for admissible Pi") {
  for (auto [f, n] : kSuiteTypes) {
    WeylGroup wg(RootSystem(f, n));
    auto subsets = admissible_subsets(wg);
    REQUIRE(!subsets.empty());
    for (auto& pi : subsets) {
      auto a = audit_parabolic(wg, pi);
      INFO(wg.roots().name() << " |Pi| = " << pi.size());
      REQUIRE(a.all());
    }
  }
}

TEST_CASE("U_alpha root-set statements in simply and doubly laced types") {
  for (auto [f, n] : kSuiteTypes) {
    if (f == Family::G) continue;
    WeylGroup wg(RootSystem(f, n));
    for (auto& pi : admissible_subsets(wg)) {
      auto w = wg.mul(wg.longest(), wg.longest_parabolic(pi));
      for (int alpha : phi_two_positive(wg, w)) {
        auto a = audit_phi_alpha(wg, w, alpha);
        INFO(wg.roots().name() << " alpha index " << alpha);
        REQUIRE(a.structural());
        REQUIRE(a.trichotomy());
        if (wg.roots().single_length()) REQUIRE(a.kind != SumKind::TwiceNegativeRoot);
      }
    }
  }
}

TEST_CASE("U_alpha root-set statements in G2") {
  WeylGroup wg(RootSystem(Family::G, 2));
  const auto& rs = wg.roots();
  int failures = 0;
  for (auto& pi : admissible_subsets(wg)) {
    auto w = wg.mul(wg.longest(), wg.longest_parabolic(pi));
    for (int alpha : phi_two_positive(wg, w)) {
      auto a = audit_phi_alpha(wg, w, alpha);
      REQUIRE(a.structural());
      if (!a.trichotomy()) {
        ++failures;
        // the one exception: X_{-alpha_1} fails to commute with U_{alpha_1+alpha_2}
        REQUIRE(pi == std::vector<int>{0});
        REQUIRE(alpha == root_of(rs, {1, 1}));
        REQUIRE(a.kind == SumKind::NegativeRoot);
        REQUIRE(a.containment);
        REQUIRE_FALSE(a.beta_commutes);
      }
    }
  }
  REQUIRE(failures == 1);
}
