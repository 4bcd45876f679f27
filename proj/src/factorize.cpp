#include "dioph/ring.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace dioph {
namespace {

using boost::multiprecision::powm;

constexpr unsigned kTrialLimit = 100000;

bool miller_rabin_round(const Integer& n, const Integer& d, unsigned s, unsigned base) {
  Integer a(base);
  if (a % n == 0)
    return true;
  Integer x = powm(a, d, n);
  if (x == 1 || x == n - 1)
    return true;
  for (unsigned i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n - 1)
      return true;
  }
  return false;
}

// Deterministic below 3.3e24 with the first thirteen prime bases; beyond that
// the extra bases make a composite survivor vanishingly unlikely.
bool miller_rabin(const Integer& n) {
  static constexpr std::array<unsigned, 20> bases{2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                                  31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  Integer d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (unsigned b : bases)
    if (!miller_rabin_round(n, d, s, b))
      return false;
  return true;
}

Integer pollard_brent(const Integer& n) {
  if (n % 2 == 0)
    return Integer(2);
  for (unsigned c = 1;; ++c) {
    auto f = [&](const Integer& x) { return (x * x + c) % n; };
    Integer y(2), x(2), g(1), q(1), ys;
    std::size_t r = 1;
    constexpr std::size_t m = 64;
    while (g == 1) {
      x = y;
      for (std::size_t i = 0; i < r; ++i)
        y = f(y);
      std::size_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (std::size_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = q * abs(x - y) % n;
        }
        g = dioph::gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = dioph::gcd(Integer(abs(x - ys)), n);
      } while (g == 1);
    }
    if (g != n)
      return g;
  }
}

void split(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1)
    return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Integer f = pollard_brent(n);
  split(f, out);
  split(n / f, out);
}

} // namespace

bool is_prime(const Integer& a) {
  Integer n = abs(a);
  if (n < 2)
    return false;
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n == p)
      return true;
    if (n % p == 0)
      return false;
  }
  if (n < 41 * 41)
    return true;
  return miller_rabin(n);
}

std::vector<PrimePower<Integer>> factorize(const Integer& a) {
  if (a == 0)
    throw std::domain_error("factorize: zero has no factorization");
  Integer n = abs(a);
  std::map<Integer, unsigned> found;
  for (unsigned p = 2; p <= kTrialLimit && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++found[Integer(p)];
      n /= p;
    }
  }
  split(n, found);

  std::vector<PrimePower<Integer>> result;
  result.reserve(found.size());
  for (auto& [p, e] : found)
    result.push_back({p, e});
  return result;
}

} // namespace dioph
