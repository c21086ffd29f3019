#pragma once

#include <cstdint>
#include <vector>

#include "lensspec/lattice.hpp"
#include "lensspec/lens.hpp"
#include "lensspec/numtheory.hpp"

namespace lensspec::spectrum {

enum class Sign { Minus, Plus };

/// +-lambda_k with lambda_k = k + (2m-1)/2, kept doubled so it stays integral.
struct Eigenvalue {
  Sign sign = Sign::Plus;
  std::int64_t k = 0;
  std::int64_t value2 = 0;  ///< 2 * lambda_k = 2k + 2m - 1

  friend bool operator==(const Eigenvalue&, const Eigenvalue&) = default;
};

Eigenvalue eigenvalue(int m, std::int64_t k, Sign sign);

/// Multiplicity of the weight (doubled entries) in the k-th representation
/// of the given sign. Any even entry means an integral weight, which never
/// occurs; the result is then 0.
BigCount weight_multiplicity(int m, std::int64_t k, Sign sign, const std::vector<std::int64_t>& doubled);

/// Same from precomputed weight statistics.
BigCount weight_multiplicity(int m, std::int64_t k, Sign sign, const lattice::LatticeStats& st);

/// Multiplicity of sign*lambda_k from the full counts N(eps, k).
BigCount multiplicity(const lattice::ReducedCountTable& table, std::int64_t k, Sign sign);

BigCount multiplicity(const lens::SpinLensSpace& x, std::int64_t k, Sign sign);

struct MultiplicityRow {
  std::int64_t k = 0;
  std::int64_t value2 = 0;
  BigCount minus;
  BigCount plus;

  friend bool operator==(const MultiplicityRow&, const MultiplicityRow&) = default;
};

struct MultiplicityTable {
  int m = 0;
  std::vector<MultiplicityRow> rows;

  friend bool operator==(const MultiplicityTable&, const MultiplicityTable&) = default;
};

MultiplicityTable spectrum_table(const lattice::ReducedCountTable& table, std::int64_t k_max);
MultiplicityTable spectrum_table(const lens::SpinLensSpace& x, std::int64_t k_max);

/// The reduced count table of the space's lattice. Equal fingerprints are
/// equivalent to equal Dirac spectra.
struct SpectrumFingerprint {
  std::int64_t q = 0;
  int m = 0;
  lattice::ReducedCountTable table;

  std::uint64_t digest() const { return table.digest(); }

  friend bool operator==(const SpectrumFingerprint&, const SpectrumFingerprint&) = default;
};

SpectrumFingerprint fingerprint(const lens::SpinLensSpace& x);

/// False without computation when q or m differ.
bool dirac_isospectral(const lens::SpinLensSpace& x, const lens::SpinLensSpace& y);
bool dirac_isospectral(const SpectrumFingerprint& x, const SpectrumFingerprint& y);

/// Rows swapped: N^red_x(eps, k) = N^red_y(1 - eps, k).
bool inverse_isospectral(const lens::SpinLensSpace& x, const lens::SpinLensSpace& y);
bool inverse_isospectral(const SpectrumFingerprint& x, const SpectrumFingerprint& y);

/// 2^((n-1)/2) * binom(k+n-1, n-1) on the round sphere of odd dimension n.
BigCount sphere_multiplicity(int n, std::int64_t k);

}  // namespace lensspec::spectrum
