#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "lensspec/lattice.hpp"
#include "lensspec/lens.hpp"
#include "lensspec/numtheory.hpp"

namespace lensspec::fixture {

inline constexpr std::uint64_t kSeed = 0x5eed1e55;

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline std::int64_t random_unit(std::mt19937_64& rng, std::int64_t q) {
  const auto u = numtheory::units(q);
  return u[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(u.size()) - 1))].value();
}

/// Random parameters in [0, 3q) coprime to q, so raw values outside [0, q) also occur.
inline std::vector<std::int64_t> random_params(std::mt19937_64& rng, std::int64_t q, int m) {
  std::vector<std::int64_t> s(m);
  for (auto& v : s) v = random_unit(rng, q) + q * uniform(rng, 0, 2);
  return s;
}

/// Random spin lens space with q in [1, q_max] and m in [m_min, m_max].
inline lens::SpinLensSpace random_space(std::mt19937_64& rng, std::int64_t q_max, int m_min, int m_max) {
  for (;;) {
    const std::int64_t q = uniform(rng, 1, q_max);
    const int m = static_cast<int>(uniform(rng, m_min, m_max));
    const auto params = lens::make_lens(q, random_params(rng, q, m));
    const auto labels = lens::spin_structures(params);
    if (labels.empty()) continue;
    return lens::make_spin_lens(params, labels[static_cast<std::size_t>(uniform(rng, 0, labels.size() - 1))]);
  }
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int m) {
  std::vector<int> p(m);
  for (int j = 0; j < m; ++j) p[j] = j;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline std::vector<int> random_signs(std::mt19937_64& rng, int m) {
  std::vector<int> e(m);
  for (auto& v : e) v = uniform(rng, 0, 1) ? 1 : -1;
  return e;
}

/// Random odd vector with entries in [-bound, bound].
inline lattice::HalfIntVector random_odd_vector(std::mt19937_64& rng, int m, std::int64_t bound) {
  std::vector<std::int64_t> a(m);
  for (auto& v : a) v = 2 * uniform(rng, -(bound + 1) / 2, (bound - 1) / 2) + 1;
  return lattice::HalfIntVector(std::move(a));
}

/// Random member of the lattice: fix all but the first coordinate, then solve
/// the congruence for the first one (s_1 is a unit mod q).
inline lattice::HalfIntVector random_member(std::mt19937_64& rng, const lattice::CongruenceLattice& lat,
                                            std::int64_t bound) {
  const std::int64_t M = lat.modulus();
  for (;;) {
    auto a = random_odd_vector(rng, lat.m(), bound).doubled();
    std::int64_t rest = 0;
    for (int j = 1; j < lat.m(); ++j) rest = numtheory::mod(rest + a[j] * numtheory::mod(lat.s[j], M), M);
    for (std::int64_t a0 = -2 * M + 1; a0 < 2 * M; a0 += 2) {
      if (numtheory::mod(a0 * lat.s[0] + rest - lat.target(), M) == 0) {
        a[0] = a0 + 2 * M * uniform(rng, -2, 2);
        return lattice::HalfIntVector(std::move(a));
      }
    }
  }
}

}  // namespace lensspec::fixture
