#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "spherical/rootsys.hpp"

using spherical::Coords;
using spherical::Family;
using spherical::RootSystem;

namespace {

using Vec = std::vector<int>;

// Classical roots in the orthonormal epsilon model, with the Bourbaki simple roots.
struct EpsModel {
  std::vector<Vec> roots, simple;
};

EpsModel eps_model(Family f, int n) {
  EpsModel m;
  int dim = f == Family::A ? n + 1 : n;
  auto e = [&](int i) {
    Vec v(dim, 0);
    v[i] = 1;
    return v;
  };
  auto comb = [&](int a, const Vec& x, int b, const Vec& y) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = a * x[i] + b * y[i];
    return v;
  };
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (i == j) continue;
      m.roots.push_back(comb(1, e(i), -1, e(j)));
      if (f != Family::A) {
        m.roots.push_back(comb(1, e(i), 1, e(j)));
        m.roots.push_back(comb(-1, e(i), -1, e(j)));
      }
    }
  for (int i = 0; i < dim; ++i) {
    if (f == Family::B) {
      m.roots.push_back(e(i));
      m.roots.push_back(comb(-1, e(i), 0, e(i)));
    }
    if (f == Family::C) {
      m.roots.push_back(comb(2, e(i), 0, e(i)));
      m.roots.push_back(comb(-2, e(i), 0, e(i)));
    }
  }
  std::set<Vec> uniq(m.roots.begin(), m.roots.end());
  m.roots.assign(uniq.begin(), uniq.end());
  for (int i = 0; i + 1 < (f == Family::A ? n + 1 : n); ++i) m.simple.push_back(comb(1, e(i), -1, e(i + 1)));
  if (f == Family::B) m.simple.push_back(e(n - 1));
  if (f == Family::C) m.simple.push_back(comb(2, e(n - 1), 0, e(n - 1)));
  if (f == Family::D) m.simple.push_back(comb(1, e(n - 2), 1, e(n - 1)));
  return m;
}

Vec to_eps(const EpsModel& m, const Coords& c) {
  Vec v(m.simple[0].size(), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += c[i] * m.simple[i][j];
  return v;
}

}  // namespace

TEST_CASE("root counts") {
  struct Row {
    Family f;
    int n, count;
  };
  for (auto [f, n, count] : {Row{Family::A, 1, 2}, {Family::A, 4, 20}, {Family::B, 3, 18}, {Family::C, 2, 8},
                             {Family::D, 4, 24}, {Family::D, 5, 40}, {Family::E, 6, 72}, {Family::E, 7, 126},
                             {Family::E, 8, 240}, {Family::F, 4, 48}, {Family::G, 2, 12}}) {
    RootSystem rs(f, n);
    REQUIRE(rs.num_roots() == count);
  }
}

TEST_CASE("classical roots match the epsilon model") {
  for (auto [f, n] : {std::pair{Family::A, 1}, {Family::A, 3}, {Family::B, 2}, {Family::B, 4}, {Family::C, 2},
                      {Family::C, 3}, {Family::D, 4}, {Family::D, 5}}) {
    RootSystem rs(f, n);
    auto m = eps_model(f, n);
    std::set<Vec> got;
    for (int r = 0; r < rs.num_roots(); ++r) got.insert(to_eps(m, rs.coords(r)));
    REQUIRE(got == std::set<Vec>(m.roots.begin(), m.roots.end()));
    // the form is a fixed multiple of the Euclidean one
    auto dot = [](const Vec& a, const Vec& b) {
      int s = 0;
      for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
      return s;
    };
    int scale = f == Family::B ? 2 : 1;
    for (int r = 0; r < rs.num_roots(); ++r)
      for (int s = 0; s < rs.num_roots(); ++s)
        REQUIRE(rs.inner(r, s) == scale * dot(to_eps(m, rs.coords(r)), to_eps(m, rs.coords(s))));
  }
}

TEST_CASE("highest roots") {
  REQUIRE(RootSystem(Family::G, 2).coords(5) == Coords{3, 2});
  RootSystem f4(Family::F, 4);
  REQUIRE(f4.coords(f4.highest_root()) == Coords{2, 3, 4, 2});
  RootSystem e8(Family::E, 8);
  REQUIRE(e8.coords(e8.highest_root()) == Coords{2, 3, 4, 6, 5, 4, 3, 2});
  RootSystem e6(Family::E, 6);
  REQUIRE(e6.coords(e6.highest_root()) == Coords{1, 2, 2, 3, 2, 1});
  RootSystem b3(Family::B, 3);
  REQUIRE(b3.coords(b3.highest_root()) == Coords{1, 2, 2});
}

TEST_CASE("G2 conventions") {
  RootSystem g(Family::G, 2);
  REQUIRE(g.norm2(0) == 2);
  REQUIRE(g.norm2(1) == 6);
  REQUIRE(g.inner(0, 1) == -3);
  REQUIRE(g.pairing(1, 0) == -3);
  REQUIRE(g.pairing(0, 1) == -1);
  REQUIRE(g.cartan(1, 0) == -3);
  REQUIRE(g.is_long(1));
  REQUIRE_FALSE(g.is_long(0));
  std::vector<Coords> pos;
  for (int r = 0; r < g.num_positive(); ++r) pos.push_back(g.coords(r));
  REQUIRE(pos == std::vector<Coords>{{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 2}});
}

TEST_CASE("ordering, negation and reflections") {
  for (auto [f, n] : {std::pair{Family::A, 3}, {Family::C, 3}, {Family::G, 2}, {Family::F, 4}, {Family::E, 6}}) {
    RootSystem rs(f, n);
    for (int i = 0; i < n; ++i) REQUIRE(rs.height(rs.simple(i)) == 1);
    for (int r = 1; r < rs.num_positive(); ++r) REQUIRE(rs.height(r - 1) <= rs.height(r));
    for (int r = 0; r < rs.num_roots(); ++r) {
      REQUIRE(rs.negate(rs.negate(r)) == r);
      REQUIRE(rs.height(rs.negate(r)) == -rs.height(r));
      REQUIRE(rs.reflect(r, r) == rs.negate(r));
      for (int s = 0; s < rs.num_roots(); ++s) {
        int t = rs.reflect(r, s);
        REQUIRE(rs.reflect(r, t) == s);
        REQUIRE(rs.norm2(t) == rs.norm2(s));
      }
    }
  }
}

TEST_CASE("invalid types") {
  REQUIRE_THROWS_AS(RootSystem(Family::D, 3), spherical::InvalidArgument);
  REQUIRE_THROWS_AS(RootSystem(Family::E, 9), spherical::InvalidArgument);
  REQUIRE_THROWS_AS(RootSystem(Family::G, 3), spherical::InvalidArgument);
  REQUIRE_THROWS_AS(RootSystem(Family::A, 0), spherical::InvalidArgument);
  REQUIRE_THROWS_AS(spherical::parse_family("X"), spherical::InvalidArgument);
}
