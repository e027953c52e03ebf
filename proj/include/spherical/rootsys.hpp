#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "family.hpp"

namespace spherical {

using Coords = std::vector<int>;

/// A crystallographic root system with Bourbaki numbering.
///
/// Roots are addressed by index: 0..N-1 are the positive roots sorted by height and then
/// lexicographically descending on simple-root coordinates (so index i-1 is alpha_i), and
/// N..2N-1 are their negatives in the same order. The invariant form is scaled so that
/// short roots have square length 2.
class RootSystem {
 public:
  RootSystem(Family f, int rank) : family_(f), rank_(rank) {
    check_type(f, rank);
    build_form();
    build_roots();
    build_reflections();
  }

  Family family() const { return family_; }
  int rank() const { return rank_; }
  std::string name() const { return std::string(1, family_char(family_)) + std::to_string(rank_); }

  int num_roots() const { return 2 * npos_; }
  int num_positive() const { return npos_; }

  const Coords& coords(int r) const { return roots_[r]; }
  int height(int r) const {
    int h = 0;
    for (int c : roots_[r]) h += c;
    return h;
  }
  bool is_positive(int r) const { return r < npos_; }
  int negate(int r) const { return r < npos_ ? r + npos_ : r - npos_; }
  int simple(int i) const { return i; }
  bool is_simple(int r) const { return r < rank_; }

  /// Index of the root with the given coordinates, or -1.
  int index_of(const Coords& c) const {
    auto it = index_.find(c);
    return it == index_.end() ? -1 : it->second;
  }

  /// Index of r + s if it is a root, else -1.
  int sum(int r, int s) const {
    Coords c = roots_[r];
    for (int i = 0; i < rank_; ++i) c[i] += roots_[s][i];
    return index_of(c);
  }

  int cartan(int i, int j) const { return cartan_[i][j]; }
  int simple_inner(int i, int j) const { return form_[i][j]; }

  int inner(const Coords& a, const Coords& b) const {
    int s = 0;
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) s += a[i] * form_[i][j] * b[j];
    return s;
  }
  int inner(int r, int s) const { return inner_[r * num_roots() + s]; }
  int norm2(int r) const { return inner(r, r); }

  /// <r, s^vee> = 2(r, s)/(s, s).
  int pairing(int r, int s) const { return 2 * inner(r, s) / norm2(s); }

  bool is_long(int r) const { return norm2(r) == long_norm_; }
  bool single_length() const { return long_norm_ == 2; }

  /// s_r(s) as a root index.
  int reflect(int r, int s) const { return reflect_[r * num_roots() + s]; }

  Coords reflect(int r, const Coords& v) const {
    int k = 2 * inner(roots_[r], v) / norm2(r);
    Coords out = v;
    for (int i = 0; i < rank_; ++i) out[i] -= k * roots_[r][i];
    return out;
  }

  int highest_root() const { return npos_ - 1; }

  /// Largest p with s - p r a root (r, s not proportional).
  int string_down(int r, int s) const {
    int p = 0;
    Coords c = roots_[s];
    for (;;) {
      for (int i = 0; i < rank_; ++i) c[i] -= roots_[r][i];
      if (index_of(c) < 0) return p;
      ++p;
    }
  }

 private:
  void build_form() {
    const int n = rank_;
    form_.assign(n, std::vector<int>(n, 0));
    auto link = [&](int i, int j, int v) { form_[i][j] = form_[j][i] = v; };
    switch (family_) {
      case Family::A:
        for (int i = 0; i < n; ++i) form_[i][i] = 2;
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
        break;
      case Family::B:
        for (int i = 0; i < n; ++i) form_[i][i] = 4;
        form_[n - 1][n - 1] = 2;
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -2);
        break;
      case Family::C:
        for (int i = 0; i < n; ++i) form_[i][i] = 2;
        form_[n - 1][n - 1] = 4;
        for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
        link(n - 2, n - 1, -2);
        break;
      case Family::D:
        for (int i = 0; i < n; ++i) form_[i][i] = 2;
        for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
        link(n - 3, n - 1, -1);
        break;
      case Family::E:
        for (int i = 0; i < n; ++i) form_[i][i] = 2;
        link(0, 2, -1);
        link(1, 3, -1);
        for (int i = 2; i + 1 < n; ++i) link(i, i + 1, -1);
        break;
      case Family::F:
        form_[0][0] = form_[1][1] = 4;
        form_[2][2] = form_[3][3] = 2;
        link(0, 1, -2);
        link(1, 2, -2);
        link(2, 3, -1);
        break;
      case Family::G:
        form_[0][0] = 2;
        form_[1][1] = 6;
        link(0, 1, -3);
        break;
    }
    cartan_.assign(n, std::vector<int>(n, 0));
    long_norm_ = 0;
    for (int i = 0; i < n; ++i) {
      long_norm_ = std::max(long_norm_, form_[i][i]);
      for (int j = 0; j < n; ++j) cartan_[i][j] = 2 * form_[i][j] / form_[j][j];
    }
  }

  int pair_coords(const Coords& v, int i) const {
    int s = 0;
    for (int j = 0; j < rank_; ++j) s += v[j] * cartan_[j][i];
    return s;
  }

  void build_roots() {
    const int n = rank_;
    std::map<Coords, int> seen;
    std::vector<std::vector<Coords>> by_height(1);
    for (int i = 0; i < n; ++i) {
      Coords c(n, 0);
      c[i] = 1;
      by_height[0].push_back(c);
      seen[c] = 1;
    }
    for (std::size_t h = 0; h < by_height.size(); ++h) {
      std::vector<Coords> next;
      for (const Coords& b : by_height[h]) {
        for (int i = 0; i < n; ++i) {
          Coords c = b;
          int p = 0;
          for (;;) {
            c[i] -= 1;
            if (!seen.count(c)) break;
            ++p;
          }
          if (p - pair_coords(b, i) <= 0) continue;
          Coords up = b;
          up[i] += 1;
          if (seen.emplace(up, 1).second) next.push_back(up);
        }
      }
      if (!next.empty()) by_height.push_back(next);
    }
    for (auto& level : by_height) {
      std::sort(level.begin(), level.end(), std::greater<>());
      for (auto& c : level) roots_.push_back(c);
    }
    npos_ = static_cast<int>(roots_.size());
    for (int r = 0; r < npos_; ++r) {
      Coords c = roots_[r];
      for (int& x : c) x = -x;
      roots_.push_back(c);
    }
    for (int r = 0; r < num_roots(); ++r) index_[roots_[r]] = r;
  }

  void build_reflections() {
    const int m = num_roots();
    inner_.assign(m * m, 0);
    for (int r = 0; r < m; ++r)
      for (int s = 0; s < m; ++s) inner_[r * m + s] = inner(roots_[r], roots_[s]);
    reflect_.assign(m * m, -1);
    for (int r = 0; r < m; ++r)
      for (int s = 0; s < m; ++s) {
        int t = index_of(reflect(r, roots_[s]));
        if (t < 0) throw ConsistencyError("root system not closed under reflections");
        reflect_[r * m + s] = t;
      }
  }

  Family family_;
  int rank_;
  int npos_ = 0;
  int long_norm_ = 2;
  std::vector<std::vector<int>> form_, cartan_;
  std::vector<Coords> roots_;
  std::map<Coords, int> index_;
  std::vector<int> inner_, reflect_;
};

}  // namespace spherical
