#include "lensspec/numtheory.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <string>

#include "lensspec/errors.hpp"

namespace lensspec::numtheory {

Residue::Residue(std::int64_t value, std::int64_t modulus) : value_(0), modulus_(modulus) {
  if (modulus < 1) throw std::invalid_argument("residue modulus must be positive");
  value_ = mod(value, modulus);
}

std::int64_t mod(std::int64_t a, std::int64_t q) {
  const std::int64_t r = a % q;
  return r < 0 ? r + q : r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  const std::int64_t d = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? d - 1 : d;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Residue mod_inverse(std::int64_t a, std::int64_t q) {
  if (q < 1) throw std::invalid_argument("modulus must be positive");
  if (q == 1) return Residue(0, 1);
  // Extended Euclid on (a mod q, q).
  std::int64_t old_r = mod(a, q), r = q;
  std::int64_t old_x = 1, x = 0;
  while (r != 0) {
    const std::int64_t quot = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - quot * r};
    std::tie(old_x, x) = std::pair{x, old_x - quot * x};
  }
  if (old_r != 1) {
    throw NotInvertible(std::to_string(a) + " is not invertible modulo " + std::to_string(q));
  }
  return Residue(old_x, q);
}

std::vector<Residue> units(std::int64_t q) {
  if (q < 1) throw std::invalid_argument("modulus must be positive");
  std::vector<Residue> out;
  if (q == 1) {
    out.emplace_back(0, 1);
    return out;
  }
  for (std::int64_t r = 1; r < q; ++r) {
    if (gcd(r, q) == 1) out.emplace_back(r, q);
  }
  return out;
}

BigCount binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigCount result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;  // exact: result is C(n-k+i, i) after this step
  }
  return result;
}

BigCount pow2(unsigned e) {
  BigCount r = 1;
  r <<= e;
  return r;
}

}  // namespace lensspec::numtheory
