#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "family.hpp"

namespace spherical {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Returns (p, k) with q = p^k, or nullopt if q is not a prime power.
inline std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(static_cast<std::uint32_t>(p), k);
}

/// p is a good odd prime for the root system of the given type.
inline bool is_good_odd(Family f, int rank, std::uint32_t p) {
  check_type(f, rank);
  if (p == 2 || !is_prime(p)) return false;
  switch (f) {
    case Family::A: case Family::B: case Family::C: case Family::D: return true;
    case Family::G: case Family::F: return p != 3;
    case Family::E: return rank == 8 ? (p != 3 && p != 5) : p != 3;
  }
  return false;
}

/// The finite field F_q, q = p^k <= 2^20, p odd.
///
/// Elements are encoded as integers sum c_i p^i, where c_0 + c_1 x + ... is the residue
/// modulo the defining polynomial. The defining polynomial is the least monic irreducible
/// of degree k when its lower coefficients are read as that same base-p integer, so for
/// k = 1 elements are ordinary residues and F_9 = F_3[x]/(x^2 + 1).
class Field {
 public:
  using elem = std::uint32_t;

  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 20;

  Field(std::uint32_t p, std::uint32_t k) : p_(p), k_(k) {
    if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
    if (p == 2) throw InvalidArgument("characteristic 2 is not supported");
    if (k == 0) throw InvalidArgument("field degree must be positive");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      q *= p;
      if (q > kMaxOrder) throw InvalidArgument("field order exceeds 2^20");
    }
    q_ = static_cast<elem>(q);
    find_modulus();
    build_tables();
  }

  static Field of_order(std::uint64_t q) {
    auto pk = prime_power(q);
    if (!pk) throw InvalidArgument(std::to_string(q) + " is not a prime power");
    return Field(pk->first, pk->second);
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  elem q() const { return q_; }
  bool is_prime_field() const { return k_ == 1; }

  /// Coefficients of the defining polynomial, constant term first, leading 1 last.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  elem primitive() const { return exp_[1]; }

  elem add(elem a, elem b) const {
    if (k_ == 1) {
      elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
    elem r = 0, place = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      r += ((a % p_ + b % p_) % p_) * place;
      a /= p_;
      b /= p_;
      place *= p_;
    }
    return r;
  }

  elem neg(elem a) const {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    elem r = 0, place = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      elem c = a % p_;
      r += (c == 0 ? 0 : p_ - c) * place;
      a /= p_;
      place *= p_;
    }
    return r;
  }

  elem sub(elem a, elem b) const { return add(a, neg(b)); }

  elem mul(elem a, elem b) const {
    if (k_ == 1) return static_cast<elem>(static_cast<std::uint64_t>(a) * b % p_);
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }

  elem inv(elem a) const {
    if (a == 0) throw InvalidArgument("division by zero in F_" + std::to_string(q_));
    std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
  }

  elem div(elem a, elem b) const { return mul(a, inv(b)); }

  elem pow(elem a, std::int64_t e) const {
    if (a == 0) {
      if (e < 0) throw InvalidArgument("zero to a negative power");
      return e == 0 ? 1 : 0;
    }
    std::int64_t m = static_cast<std::int64_t>(q_) - 1;
    std::int64_t r = (static_cast<std::int64_t>(log_[a]) * (e % m)) % m;
    if (r < 0) r += m;
    return exp_[r];
  }

  /// Image of the integer n under Z -> F_p -> F_q.
  elem from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<elem>(r);
  }

  elem frobenius(elem a) const { return pow(a, p_); }

  /// Discrete log base primitive(); a must be nonzero.
  std::uint32_t log(elem a) const {
    if (a == 0) throw InvalidArgument("log of zero");
    return log_[a];
  }
  elem exp(std::int64_t e) const {
    std::int64_t m = static_cast<std::int64_t>(q_) - 1;
    e %= m;
    if (e < 0) e += m;
    return exp_[e];
  }

  /// Multiplicative order of a nonzero element.
  std::uint32_t order(elem a) const {
    std::uint32_t l = log(a), m = q_ - 1;
    std::uint32_t g = gcd(l, m);
    return m / g;
  }

  bool is_square(elem a) const { return a == 0 || log_[a] % 2 == 0; }

  std::optional<elem> sqrt(elem a) const {
    if (a == 0) return elem{0};
    if (log_[a] % 2 != 0) return std::nullopt;
    return exp_[log_[a] / 2];
  }

  /// Base-p digits of the encoding, constant coefficient first.
  std::vector<std::uint32_t> digits(elem a) const {
    std::vector<std::uint32_t> d(k_);
    for (std::uint32_t i = 0; i < k_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

  std::string to_string(elem a) const { return std::to_string(a); }

  bool operator==(const Field& o) const { return p_ == o.p_ && k_ == o.k_; }

 private:
  using poly = std::vector<std::uint32_t>;

  static std::uint32_t gcd(std::uint32_t a, std::uint32_t b) {
    while (b) {
      std::uint32_t t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  poly decode(std::uint64_t code, std::uint32_t len) const {
    poly r(len);
    for (auto& c : r) {
      c = static_cast<std::uint32_t>(code % p_);
      code /= p_;
    }
    return r;
  }

  // Remainder of a modulo a monic polynomial m (both constant-first).
  poly poly_rem(poly a, const poly& m) const {
    std::size_t dm = m.size() - 1;
    for (std::size_t i = a.size(); i-- > dm;) {
      std::uint32_t c = a[i];
      if (c == 0) continue;
      for (std::size_t j = 0; j <= dm; ++j)
        a[i - dm + j] = static_cast<std::uint32_t>((a[i - dm + j] + (p_ - c) * std::uint64_t{m[j]}) % p_);
    }
    a.resize(std::min(a.size(), dm));
    return a;
  }

  bool irreducible(const poly& f) const {
    std::uint32_t n = static_cast<std::uint32_t>(f.size() - 1);
    for (std::uint32_t d = 1; 2 * d <= n; ++d) {
      std::uint64_t count = 1;
      for (std::uint32_t i = 0; i < d; ++i) count *= p_;
      for (std::uint64_t code = 0; code < count; ++code) {
        poly g = decode(code, d);
        g.push_back(1);
        poly r = poly_rem(f, g);
        bool zero = true;
        for (auto c : r) zero = zero && c == 0;
        if (zero) return false;
      }
    }
    return true;
  }

  void find_modulus() {
    if (k_ == 1) {
      modulus_ = {0, 1};
      return;
    }
    for (std::uint64_t code = 0; code < q_; ++code) {
      poly f = decode(code, k_);
      f.push_back(1);
      if (irreducible(f)) {
        modulus_ = f;
        return;
      }
    }
    throw ConsistencyError("no irreducible polynomial found");
  }

  elem slow_mul(elem a, elem b) const {
    poly x = decode(a, k_), y = decode(b, k_), z(2 * k_ - 1, 0);
    for (std::uint32_t i = 0; i < k_; ++i)
      for (std::uint32_t j = 0; j < k_; ++j)
        z[i + j] = static_cast<std::uint32_t>((z[i + j] + std::uint64_t{x[i]} * y[j]) % p_);
    z = poly_rem(z, modulus_);
    elem r = 0, place = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      r += (i < z.size() ? z[i] : 0) * place;
      place *= p_;
    }
    return r;
  }

  elem slow_pow(elem a, std::uint64_t e) const {
    elem r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  }

  void build_tables() {
    std::uint32_t m = q_ - 1;
    std::vector<std::uint32_t> primes;
    for (std::uint32_t r = 2, n = m; n > 1; ++r) {
      if (n % r == 0) {
        primes.push_back(r);
        while (n % r == 0) n /= r;
      }
    }
    elem g = 0;
    for (elem c = 1; c < q_ && g == 0; ++c) {
      bool prim = true;
      for (auto r : primes) prim = prim && slow_pow(c, m / r) != 1;
      if (prim) g = c;
    }
    exp_.assign(m, 0);
    log_.assign(q_, 0);
    elem x = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
      exp_[i] = x;
      log_[x] = i;
      x = slow_mul(x, g);
    }
    if (k_ > 1 && q_ <= 1024) {
      std::vector<elem> t(static_cast<std::size_t>(q_) * q_);
      for (elem a = 0; a < q_; ++a)
        for (elem b = 0; b < q_; ++b) t[static_cast<std::size_t>(a) * q_ + b] = add(a, b);
      add_table_ = std::move(t);
    }
  }

  std::uint32_t p_, k_;
  elem q_ = 0;
  poly modulus_;
  std::vector<elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<elem> add_table_;
};

}  // namespace spherical
