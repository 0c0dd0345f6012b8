#include "ncfree/numeric.hpp"

namespace ncfree {

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

std::vector<BigInt> catalan_numbers(std::size_t count) {
  std::vector<BigInt> c;
  c.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    c.push_back(binomial(2 * static_cast<long>(n), static_cast<long>(n)) / (n + 1));
  }
  return c;
}

}  // namespace ncfree
