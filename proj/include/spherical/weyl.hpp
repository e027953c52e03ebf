#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rootsys.hpp"

namespace spherical {

/// An element of W, stored as the permutation it induces on root indices.
/// The first rank() entries are the images of the simple roots, which determine the rest.
struct WeylElement {
  std::vector<int> perm;
  int length = 0;

  std::vector<int> images(int rank) const { return {perm.begin(), perm.begin() + rank}; }
  bool operator==(const WeylElement& o) const { return perm == o.perm; }
  bool operator!=(const WeylElement& o) const { return perm != o.perm; }
  bool operator<(const WeylElement& o) const { return perm < o.perm; }
};

/// Phi^+(alpha) and Phi^-(alpha) for an involution w and alpha in Phi_2^+.
struct PhiAlphaData {
  int base = -1;
  std::vector<int> plus_set, minus_set;
};

namespace detail {

// Rank over Q of a small integer matrix by fraction-free elimination.
inline int rational_rank(std::vector<std::vector<long long>> m) {
  int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      long long a = m[rank][c], b = m[r][c];
      long long g = 0;
      for (int k = 0; k < cols; ++k) {
        m[r][k] = a * m[r][k] - b * m[rank][k];
        g = std::gcd(g, m[r][k] < 0 ? -m[r][k] : m[r][k]);
      }
      if (g > 1)
        for (auto& x : m[r]) x /= g;
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// The Weyl group of a root system, acting on root indices.
class WeylGroup {
 public:
  explicit WeylGroup(RootSystem rs) : rs_(std::move(rs)) {
    const int n = rs_.rank(), m = rs_.num_roots();
    simple_.resize(n);
    for (int i = 0; i < n; ++i) {
      WeylElement s;
      s.perm.resize(m);
      for (int r = 0; r < m; ++r) s.perm[r] = rs_.reflect(i, r);
      s.length = 1;
      simple_[i] = std::move(s);
    }
    w0_ = longest();
  }

  const RootSystem& roots() const { return rs_; }
  int rank() const { return rs_.rank(); }

  WeylElement identity() const {
    WeylElement e;
    e.perm.resize(rs_.num_roots());
    std::iota(e.perm.begin(), e.perm.end(), 0);
    return e;
  }

  const WeylElement& simple_reflection(int i) const {
    if (i < 0 || i >= rank()) throw InvalidArgument("simple reflection index out of range");
    return simple_[i];
  }

  WeylElement reflection(int r) const {
    WeylElement s;
    s.perm.resize(rs_.num_roots());
    for (int t = 0; t < rs_.num_roots(); ++t) s.perm[t] = rs_.reflect(r, t);
    s.length = count_length(s.perm);
    return s;
  }

  /// s_{word[0]} s_{word[1]} ... (rightmost acts first).
  WeylElement from_word(const std::vector<int>& word) const {
    WeylElement w = identity();
    for (int i : word) w = mul(w, simple_reflection(i));
    return w;
  }

  /// The element sending alpha_i to images[i]; rejects tuples not coming from W.
  WeylElement from_images(const std::vector<int>& images) const {
    const int n = rank(), m = rs_.num_roots();
    if (static_cast<int>(images.size()) != n) throw InvalidArgument("wrong number of simple-root images");
    for (int r : images)
      if (r < 0 || r >= m) throw InvalidArgument("image is not a root index");
    WeylElement w;
    w.perm.resize(m);
    std::vector<bool> hit(m, false);
    for (int r = 0; r < m; ++r) {
      Coords c(n, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c[j] += rs_.coords(r)[i] * rs_.coords(images[i])[j];
      int t = rs_.index_of(c);
      if (t < 0 || hit[t]) throw InvalidArgument("images do not define an automorphism of the root system");
      hit[t] = true;
      w.perm[r] = t;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rs_.inner(images[i], images[j]) != rs_.simple_inner(i, j))
          throw InvalidArgument("images do not preserve the form");
    w.length = count_length(w.perm);
    // strip descents; what remains must be the identity, else w is a diagram automorphism
    WeylElement v = w;
    for (bool again = true; again;) {
      again = false;
      for (int i = 0; i < n; ++i)
        if (!rs_.is_positive(v.perm[i])) {
          v = mul(v, simple_[i]);
          again = true;
        }
    }
    if (v != identity()) throw InvalidArgument("images define an automorphism outside W");
    return w;
  }

  WeylElement mul(const WeylElement& a, const WeylElement& b) const {
    WeylElement c;
    c.perm.resize(a.perm.size());
    for (std::size_t r = 0; r < a.perm.size(); ++r) c.perm[r] = a.perm[b.perm[r]];
    c.length = count_length(c.perm);
    return c;
  }

  WeylElement inverse(const WeylElement& a) const {
    WeylElement c;
    c.perm.resize(a.perm.size());
    for (std::size_t r = 0; r < a.perm.size(); ++r) c.perm[a.perm[r]] = static_cast<int>(r);
    c.length = a.length;
    return c;
  }

  int apply(const WeylElement& w, int r) const { return w.perm[r]; }

  Coords apply(const WeylElement& w, const Coords& v) const {
    const int n = rank();
    Coords out(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[j] += v[i] * rs_.coords(w.perm[i])[j];
    return out;
  }

  int length(const WeylElement& w) const { return w.length; }

  /// Phi_w = {alpha > 0 : w^{-1} alpha < 0}.
  std::vector<int> inversion_set(const WeylElement& w) const {
    WeylElement wi = inverse(w);
    std::vector<int> out;
    for (int r = 0; r < rs_.num_positive(); ++r)
      if (!rs_.is_positive(wi.perm[r])) out.push_back(r);
    return out;
  }

  /// A reduced word (i_1, ..., i_k) with w = s_{i_1} ... s_{i_k}.
  std::vector<int> reduced_word(const WeylElement& w) const {
    std::vector<int> word;
    WeylElement v = w;
    while (v.length > 0) {
      int i = 0;
      while (rs_.is_positive(v.perm[i])) ++i;
      word.push_back(i);
      v = mul(v, simple_[i]);
    }
    std::reverse(word.begin(), word.end());
    return word;
  }

  bool is_involution(const WeylElement& w) const {
    for (int i = 0; i < rank(); ++i)
      if (w.perm[w.perm[i]] != i) return false;
    return true;
  }

  /// Bruhat order, by descending along left descents of w.
  bool bruhat_leq(const WeylElement& u, const WeylElement& w) const {
    if (u.length > w.length) return false;
    if (u.length == w.length) return u == w;
    if (u.length == 0) return true;
    WeylElement wi = inverse(w), ui = inverse(u);
    int i = 0;
    while (rs_.is_positive(wi.perm[i])) ++i;
    WeylElement sw = mul(simple_[i], w);
    if (!rs_.is_positive(ui.perm[i])) return bruhat_leq(mul(simple_[i], u), sw);
    return bruhat_leq(u, sw);
  }

  /// Integer matrix of w on the simple-root basis; column j holds w(alpha_j).
  std::vector<std::vector<long long>> matrix(const WeylElement& w) const {
    const int n = rank();
    std::vector<std::vector<long long>> m(n, std::vector<long long>(n));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) m[i][j] = rs_.coords(w.perm[j])[i];
    return m;
  }

  /// rk(1 - w) in the geometric representation, exact over Q.
  int rank_one_minus(const WeylElement& w) const {
    auto m = matrix(w);
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j) m[i][j] = (i == j ? 1 : 0) - m[i][j];
    return detail::rational_rank(m);
  }

  WeylElement longest_parabolic(const std::vector<int>& pi) const {
    for (int i : pi)
      if (i < 0 || i >= rank()) throw InvalidArgument("parabolic subset contains a non-simple index");
    WeylElement w = identity();
    for (bool again = true; again;) {
      again = false;
      for (int i : pi)
        if (rs_.is_positive(w.perm[i])) {
          w = mul(w, simple_[i]);
          again = true;
        }
    }
    return w;
  }

  WeylElement longest() const {
    std::vector<int> all(rank());
    std::iota(all.begin(), all.end(), 0);
    return longest_parabolic(all);
  }

  /// theta = -w_0 on root indices.
  int theta(int r) const { return rs_.negate(w0_.perm[r]); }

  std::vector<int> fixed_simple_set(const WeylElement& w) const {
    std::vector<int> out;
    for (int i = 0; i < rank(); ++i)
      if (w.perm[i] == i) out.push_back(i);
    return out;
  }

  /// Pi such that w_0 w_Pi is an involution fixing Pi pointwise.
  bool is_admissible(const std::vector<int>& pi) const {
    WeylElement w = mul(longest(), longest_parabolic(pi));
    if (!is_involution(w)) return false;
    for (int i : pi)
      if (w.perm[i] != i) return false;
    return true;
  }

  /// Roots in the span of the simple roots indexed by pi.
  std::vector<int> parabolic_roots(const std::vector<int>& pi) const {
    std::vector<int> out;
    std::vector<bool> in(rank(), false);
    for (int i : pi) in[i] = true;
    for (int r = 0; r < rs_.num_roots(); ++r) {
      bool ok = true;
      for (int i = 0; i < rank(); ++i) ok = ok && (in[i] || rs_.coords(r)[i] == 0);
      if (ok) out.push_back(r);
    }
    return out;
  }

  /// Phi_1 = Phi cap Ker(1 + w); w must be an involution.
  std::vector<int> phi_one(const WeylElement& w) const {
    if (!is_involution(w)) throw InvalidArgument("Phi_1 requires an involution");
    std::vector<int> out;
    for (int r = 0; r < rs_.num_roots(); ++r)
      if (w.perm[r] == rs_.negate(r)) out.push_back(r);
    return out;
  }

  /// Phi^+(alpha), Phi^-(alpha): roots mu with (1+w)mu = j(1+w)alpha for an integer j > 0.
  PhiAlphaData phi_alpha(const WeylElement& w, int alpha) const {
    if (!is_involution(w)) throw InvalidArgument("Phi(alpha) requires an involution");
    if (alpha < 0 || !rs_.is_positive(alpha)) throw InvalidArgument("base root must be positive");
    if (w.perm[alpha] == alpha || w.perm[alpha] == rs_.negate(alpha))
      throw InvalidArgument("base root lies in Phi_1");
    auto pi_roots = parabolic_roots(fixed_simple_set(w));
    if (std::find(pi_roots.begin(), pi_roots.end(), alpha) != pi_roots.end())
      throw InvalidArgument("base root lies in Phi(Pi)");
    Coords va = one_plus(w, alpha);
    PhiAlphaData d;
    d.base = alpha;
    for (int r = 0; r < rs_.num_roots(); ++r) {
      Coords v = one_plus(w, r);
      // v = j * va with j a positive integer
      long long num = 0, den = 0;
      bool ok = true;
      for (int i = 0; i < rank() && ok; ++i) {
        if (va[i] == 0) {
          ok = v[i] == 0;
        } else if (den == 0) {
          num = v[i];
          den = va[i];
        } else {
          ok = static_cast<long long>(v[i]) * den == num * va[i];
        }
      }
      if (!ok || den == 0 || num * den <= 0 || num % den != 0) continue;
      (rs_.is_positive(r) ? d.plus_set : d.minus_set).push_back(r);
    }
    return d;
  }

  /// All elements, ordered by length and then by permutation.
  std::vector<WeylElement> elements(std::size_t limit = 1000000) const {
    std::vector<WeylElement> all{identity()};
    std::set<std::vector<int>> seen{all[0].images(rank())};
    for (std::size_t k = 0; k < all.size(); ++k) {
      for (int i = 0; i < rank(); ++i) {
        WeylElement v = mul(all[k], simple_[i]);
        if (seen.insert(v.images(rank())).second) {
          if (all.size() >= limit) throw BudgetExceeded("Weyl group larger than enumeration limit");
          all.push_back(std::move(v));
        }
      }
    }
    std::sort(all.begin(), all.end(), [](const WeylElement& a, const WeylElement& b) {
      return a.length != b.length ? a.length < b.length : a.perm < b.perm;
    });
    return all;
  }

  std::string word_string(const WeylElement& w) const {
    auto word = reduced_word(w);
    if (word.empty()) return "e";
    std::string s;
    for (int i : word) s += (s.empty() ? "s" : ".s") + std::to_string(i + 1);
    return s;
  }

 private:
  int count_length(const std::vector<int>& perm) const {
    int l = 0;
    for (int r = 0; r < rs_.num_positive(); ++r)
      if (!rs_.is_positive(perm[r])) ++l;
    return l;
  }

  Coords one_plus(const WeylElement& w, int r) const {
    Coords c = rs_.coords(r);
    const Coords& d = rs_.coords(w.perm[r]);
    for (int i = 0; i < rank(); ++i) c[i] += d[i];
    return c;
  }

  RootSystem rs_;
  std::vector<WeylElement> simple_;
  WeylElement w0_;
};

/// Precomputed Bruhat order on an enumerated W.
class BruhatTable {
 public:
  BruhatTable(const WeylGroup& wg, const std::vector<WeylElement>& elems) : n_(elems.size()) {
    leq_.assign(n_ * n_, false);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) leq_[i * n_ + j] = wg.bruhat_leq(elems[i], elems[j]);
  }
  bool leq(std::size_t i, std::size_t j) const { return leq_[i * n_ + j]; }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  std::vector<bool> leq_;
};

}  // namespace spherical
