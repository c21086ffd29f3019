#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lensspec {

/// Exact non-negative count. Multiplicities grow like k^(2m-2), so every
/// count that leaves the library is arbitrary precision.
using BigCount = boost::multiprecision::cpp_int;

namespace numtheory {

/// An element of Z/qZ stored as its least non-negative representative.
class Residue {
 public:
  Residue(std::int64_t value, std::int64_t modulus);

  std::int64_t value() const noexcept { return value_; }
  std::int64_t modulus() const noexcept { return modulus_; }

  friend bool operator==(const Residue&, const Residue&) = default;

 private:
  std::int64_t value_;
  std::int64_t modulus_;
};

/// Least non-negative residue of a modulo q (q >= 1), for negative a as well.
std::int64_t mod(std::int64_t a, std::int64_t q);

/// Floor division, rounding towards negative infinity.
std::int64_t floor_div(std::int64_t a, std::int64_t b);

std::int64_t gcd(std::int64_t a, std::int64_t b);

/// r with a*r = 1 (mod q). Every integer is a unit modulo 1 and the inverse
/// is then 0. Throws NotInvertible when gcd(a, q) != 1.
Residue mod_inverse(std::int64_t a, std::int64_t q);

/// Units of Z/qZ in ascending order; {0} for q = 1.
std::vector<Residue> units(std::int64_t q);

/// Exact binomial coefficient, 0 when k > n.
BigCount binomial(std::uint64_t n, std::uint64_t k);

/// 2^e as a BigCount.
BigCount pow2(unsigned e);

}  // namespace numtheory
}  // namespace lensspec
