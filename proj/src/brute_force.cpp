#include "dioph/verify.hpp"

#include <map>
#include <numeric>
#include <vector>

namespace dioph {
namespace {

// Largest j with p^j dividing `size`, requiring size to be an exact power.
unsigned exact_log(std::uint64_t size, std::uint64_t p) {
  unsigned j = 0;
  while (size % p == 0) {
    size /= p;
    ++j;
  }
  if (size != 1)
    throw InternalConsistencyError("brute force: subgroup index is not a prime power");
  return j;
}

} // namespace

KernelCensus brute_force_kernel_structure(const Matrix<Integer>& k, const Integer& d,
                                          std::uint64_t bound) {
  if (d <= 0)
    throw std::invalid_argument("brute force: modulus must be positive");
  const Index r = k.rows(), f = k.cols();
  std::uint64_t total = 1;
  for (Index j = 0; j < f; ++j) {
    if (Integer(total) * d > Integer(bound))
      throw BruteForceBoundExceeded("brute force: d^f exceeds the enumeration bound " +
                                    std::to_string(bound));
    total *= static_cast<std::uint64_t>(d);
  }
  const auto dd = static_cast<std::int64_t>(d);

  std::vector<std::int64_t> kmod(static_cast<std::size_t>(r * f));
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < f; ++j)
      kmod[i * f + j] = static_cast<std::int64_t>(residue(Integer(k(i, j)), d));

  // Odometer over (Z/d)^f. Every step, including a carry from d-1 to 0, adds
  // the corresponding column of K to the running product.
  std::vector<std::int64_t> alpha(f, 0), image(r, 0);
  std::map<std::int64_t, std::uint64_t> by_order;
  for (;;) {
    bool in_kernel = true;
    for (Index i = 0; i < r && in_kernel; ++i)
      in_kernel = image[i] == 0;
    if (in_kernel) {
      std::int64_t order = 1;
      for (Index j = 0; j < f; ++j)
        order = std::lcm(order, dd / std::gcd(dd, alpha[j]));
      ++by_order[order];
    }
    Index j = 0;
    for (; j < f; ++j) {
      for (Index i = 0; i < r; ++i) {
        image[i] += kmod[i * f + j];
        if (image[i] >= dd)
          image[i] -= dd;
      }
      if (++alpha[j] < dd)
        break;
      alpha[j] = 0;
    }
    if (j == f)
      break;
  }

  std::uint64_t cardinality = 0;
  for (const auto& [order, count] : by_order)
    cardinality += count;

  std::vector<PrimePower<Integer>> divisors;
  if (d > 1) {
    for (const auto& pp : factorize(d)) {
      const auto p = static_cast<std::int64_t>(pp.prime);
      // subgroup[j] = #{x : p^j x = 0}
      std::vector<std::uint64_t> subgroup(pp.exponent + 1, 0);
      std::int64_t pj = 1;
      for (unsigned j = 0; j <= pp.exponent; ++j, pj *= p)
        for (const auto& [order, count] : by_order)
          if (pj % order == 0)
            subgroup[j] += count;
      // at_least[j] = number of cyclic p-components of exponent >= j
      std::vector<unsigned> at_least(pp.exponent + 2, 0);
      for (unsigned j = 1; j <= pp.exponent; ++j) {
        if (subgroup[j] % subgroup[j - 1] != 0)
          throw InternalConsistencyError("brute force: subgroup sizes are not nested");
        at_least[j] = exact_log(subgroup[j] / subgroup[j - 1], static_cast<std::uint64_t>(p));
      }
      for (unsigned j = 1; j <= pp.exponent; ++j)
        for (unsigned c = at_least[j + 1]; c < at_least[j]; ++c)
          divisors.push_back({pp.prime, j});
    }
  }

  KernelCensus census{from_elementary_divisors(divisors), Integer(cardinality)};
  if (index(census.structure) != census.cardinality)
    throw InternalConsistencyError("brute force: structure does not account for the kernel size");
  return census;
}

} // namespace dioph
