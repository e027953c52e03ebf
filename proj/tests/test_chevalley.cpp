#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "spherical/chevalley.hpp"

using namespace spherical;

namespace {

// The Lie algebra spanned by e_r (index r) and h_i (index N + i), built only from the N table.
struct AbstractAlgebra {
  const StructureConstants& sc;
  const RootSystem& rs;
  int n_roots, rank;

  explicit AbstractAlgebra(const StructureConstants& s) : sc(s), rs(s.roots()), n_roots(rs.num_roots()), rank(rs.rank()) {}

  int dim() const { return n_roots + rank; }

  using Vec = std::map<int, long long>;

  // Coroot of r in the basis of simple coroots.
  Vec coroot(int r) const {
    Vec v;
    for (int i = 0; i < rank; ++i) {
      long long num = static_cast<long long>(rs.coords(r)[i]) * rs.norm2(i);
      if (num != 0) v[n_roots + i] = num / rs.norm2(r);
    }
    return v;
  }

  Vec bracket_basis(int x, int y) const {
    Vec out;
    bool hx = x >= n_roots, hy = y >= n_roots;
    if (hx && hy) return out;
    if (hx) {
      long long c = rs.pairing(y, x - n_roots);
      if (c) out[y] = c;
      return out;
    }
    if (hy) {
      long long c = -rs.pairing(x, y - n_roots);
      if (c) out[x] = c;
      return out;
    }
    if (x == rs.negate(y)) return coroot(x);
    int t = rs.sum(x, y);
    if (t >= 0) out[t] = sc.N(x, y);
    return out;
  }

  Vec bracket(const Vec& a, const Vec& b) const {
    Vec out;
    for (auto [x, cx] : a)
      for (auto [y, cy] : b)
        for (auto [z, cz] : bracket_basis(x, y)) out[z] += cx * cy * cz;
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
  }
};

bool jacobi_holds(const StructureConstants& sc) {
  AbstractAlgebra L(sc);
  for (int x = 0; x < L.dim(); ++x)
    for (int y = x + 1; y < L.dim(); ++y) {
      auto xy = L.bracket_basis(x, y);
      for (int z = y + 1; z < L.dim(); ++z) {
        AbstractAlgebra::Vec total;
        auto add = [&](const AbstractAlgebra::Vec& v) {
          for (auto [k, c] : v) total[k] += c;
        };
        add(L.bracket(xy, {{z, 1}}));
        add(L.bracket(L.bracket_basis(y, z), {{x, 1}}));
        add(L.bracket(L.bracket_basis(z, x), {{y, 1}}));
        for (auto [k, c] : total)
          if (c != 0) return false;
      }
    }
  return true;
}

}  // namespace

TEST_CASE("structure constants satisfy the Jacobi identity") {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::A, 1},
                                                          {Family::A, 2},
                                                          {Family::A, 3},
                                                          {Family::B, 2},
                                                          {Family::B, 3},
                                                          {Family::C, 3},
                                                          {Family::D, 4},
                                                          {Family::G, 2},
                                                          {Family::F, 4}}) {
    RootSystem rs(f, n);
    StructureConstants sc(rs);
    INFO(rs.name());
    CHECK(jacobi_holds(sc));
  }
}

TEST_CASE("structure constants have magnitude p + 1 and the expected symmetries") {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{
           {Family::A, 4}, {Family::B, 3}, {Family::C, 4}, {Family::D, 5}, {Family::G, 2}, {Family::F, 4}, {Family::E, 6}}) {
    RootSystem rs(f, n);
    StructureConstants sc(rs);
    INFO(rs.name());
    for (int r = 0; r < rs.num_roots(); ++r)
      for (int s = 0; s < rs.num_roots(); ++s) {
        int t = r == rs.negate(s) ? -1 : rs.sum(r, s);
        if (t < 0) {
          REQUIRE(sc.N(r, s) == 0);
          continue;
        }
        REQUIRE(std::abs(sc.N(r, s)) == rs.string_down(r, s) + 1);
        REQUIRE(sc.N(s, r) == -sc.N(r, s));
        REQUIRE(sc.N(rs.negate(r), rs.negate(s)) == -sc.N(r, s));
      }
    for (int xi = 0; xi < rs.num_positive(); ++xi) {
      if (rs.is_simple(xi)) continue;
      auto [a, b] = sc.extraspecial(xi);
      CHECK(sc.N(a, b) > 0);
      CHECK(rs.sum(a, b) == xi);
    }
  }
}

TEST_CASE("simply laced constants are units and G2 commutator coefficients reach 3") {
  RootSystem a2(Family::A, 2);
  StructureConstants sa(a2);
  for (int r = 0; r < a2.num_roots(); ++r)
    for (int s = 0; s < a2.num_roots(); ++s)
      if (sa.N(r, s) != 0) CHECK(std::abs(sa.N(r, s)) == 1);
  CHECK(sa.max_abs_commutator_coefficient() == 1);

  RootSystem g2(Family::G, 2);
  StructureConstants sg(g2);
  CHECK(sg.max_abs_commutator_coefficient() == 3);
  std::set<int> seen;
  for (int r = 0; r < g2.num_roots(); ++r)
    for (int s = 0; s < g2.num_roots(); ++s) {
      if (r == s || r == g2.negate(s)) continue;
      for (const auto& t : sg.commutator_terms(r, s)) seen.insert(std::abs(t.coeff));
    }
  CHECK(seen == std::set<int>{1, 2, 3});

  RootSystem b2(Family::B, 2);
  StructureConstants sb(b2);
  CHECK(sb.max_abs_commutator_coefficient() == 2);
}

TEST_CASE("commutator terms are rejected for proportional roots") {
  RootSystem rs(Family::A, 2);
  StructureConstants sc(rs);
  CHECK_THROWS_AS(sc.commutator_terms(0, 0), InvalidArgument);
  CHECK_THROWS_AS(sc.commutator_terms(0, rs.negate(0)), InvalidArgument);
  CHECK_THROWS_AS(sc.extraspecial(0), InvalidArgument);
}
