#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "lensspec/lens.hpp"
#include "lensspec/numtheory.hpp"

namespace lensspec::lattice {

/// mu = (a_1, ..., a_m) / 2 with every a_j odd, stored doubled.
class HalfIntVector {
 public:
  /// Throws std::invalid_argument if some entry is even.
  explicit HalfIntVector(std::vector<std::int64_t> doubled);

  const std::vector<std::int64_t>& doubled() const noexcept { return a_; }
  int m() const noexcept { return static_cast<int>(a_.size()); }
  HalfIntVector operator-() const;

  friend bool operator==(const HalfIntVector&, const HalfIntVector&) = default;

 private:
  std::vector<std::int64_t> a_;
};

struct LatticeStats {
  std::int64_t norm2;  ///< 2 * one-norm = sum |a_j|
  int negcount;        ///< number of negative coordinates

  friend bool operator==(const LatticeStats&, const LatticeStats&) = default;
};

LatticeStats stats(const HalfIntVector& mu);

enum class CongruenceMode { ModQ, Mod2Q };

/// Odd q:  sum a_j s_j = 0        (mod q).
/// Even q: sum a_j s_j = h_eff*q  (mod 2q).
struct CongruenceLattice {
  std::int64_t q = 1;
  std::vector<std::int64_t> s;
  CongruenceMode mode = CongruenceMode::ModQ;
  int h_eff = 0;

  int m() const noexcept { return static_cast<int>(s.size()); }
  std::int64_t modulus() const noexcept { return mode == CongruenceMode::ModQ ? q : 2 * q; }
  std::int64_t target() const noexcept { return mode == CongruenceMode::ModQ ? 0 : h_eff * q; }

  friend bool operator==(const CongruenceLattice&, const CongruenceLattice&) = default;
};

/// h_eff = h + h_shift for even q. Throws NoSpinStructure.
CongruenceLattice lattice_of(const lens::SpinLensSpace& x);

/// Direct construction; the mode follows the parity of q. h_eff is ignored
/// for odd q. Validates coprimality like make_lens.
CongruenceLattice make_lattice(std::int64_t q, std::vector<std::int64_t> s, int h_eff = 0);

/// Throws DimensionMismatch when mu has the wrong length.
bool contains(const CongruenceLattice& lattice, const HalfIntVector& mu);

/// Output coordinate sigma[j] is eps[j] * a_j. sigma is 0-based.
HalfIntVector apply_norm_isometry(const std::vector<int>& sigma, const std::vector<int>& eps,
                                  const HalfIntVector& mu);

/// N^red(eps, k) for 0 <= k < m*q: lattice points with every |a_j| < 2q,
/// one-norm k + m/2 and parity eps of the negative count.
class ReducedCountTable {
 public:
  ReducedCountTable() = default;
  ReducedCountTable(int m, std::int64_t q);

  int m() const noexcept { return m_; }
  std::int64_t q() const noexcept { return q_; }
  std::int64_t size() const noexcept { return static_cast<std::int64_t>(m_) * q_; }

  /// Out-of-range k reads as zero.
  const BigCount& at(int eps, std::int64_t k) const;
  BigCount& at(int eps, std::int64_t k) { return rows_[eps & 1][static_cast<std::size_t>(k)]; }
  const std::vector<BigCount>& row(int eps) const { return rows_[eps & 1]; }

  /// 64-bit FNV-1a over (m, q) and the table entries.
  std::uint64_t digest() const;

  friend bool operator==(const ReducedCountTable&, const ReducedCountTable&) = default;

 private:
  int m_ = 0;
  std::int64_t q_ = 0;
  std::array<std::vector<BigCount>, 2> rows_;
};

/// Dynamic program over the coordinates; never lists lattice points.
ReducedCountTable reduced_counts(const CongruenceLattice& lattice);

/// Both even-q tables (h_eff = 0 and 1) from one shared pass. Requires q even.
std::array<ReducedCountTable, 2> reduced_counts_both(std::int64_t q, const std::vector<std::int64_t>& s);

/// N^red(eps, k) for k < k_limit only, laid out as [eps][k] in one vector
/// of length 2 * min(k_limit, m*q). Cheap screening for the census: equal
/// tables have equal prefixes. Throws TooLarge if 64 bits might overflow.
std::vector<std::uint64_t> prefix_counts(std::int64_t q, const std::vector<std::int64_t>& s, int h_eff,
                                         std::int64_t k_limit);

/// N(eps, k) = sum_beta binom(beta+m-1, m-1) * N^red(eps, k - beta*q).
/// eps is taken mod 2.
BigCount count(const ReducedCountTable& table, int eps, std::int64_t k);

/// Convenience overload building the table first.
BigCount count(const CongruenceLattice& lattice, int eps, std::int64_t k);

}  // namespace lensspec::lattice
