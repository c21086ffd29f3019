#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "lensspec/lattice.hpp"
#include "lensspec/lens.hpp"
#include "lensspec/numtheory.hpp"

// Independent reference computations, used only for cross-checking the
// lattice-count path.
namespace lensspec::oracle {

using ComplexSeries = std::vector<std::complex<double>>;

/// (chi+, chi-) via the product identity 1/2 (prod 2cos t +- prod 2i sin t).
std::pair<std::complex<double>, std::complex<double>> half_spin_characters(const std::vector<double>& thetas);

/// (chi+, chi-) as sums of exp(i <b, theta>) over b in {+-1}^m, split by the
/// parity of the number of -1 entries (even for chi+).
std::pair<std::complex<double>, std::complex<double>> half_spin_characters_by_sum(
    const std::vector<double>& thetas);

struct GeneratingSeries {
  ComplexSeries plus;   ///< numerator chi- - z chi+
  ComplexSeries minus;  ///< numerator chi+ - z chi-
};

/// Power series of the generating functions up to z^k_max, averaged over the
/// group. Evaluated in extended precision with closed-form Chebyshev series
/// for each rotation block. Throws NoSpinStructure.
GeneratingSeries generating_coeffs(const lens::SpinLensSpace& x, std::int64_t k_max);

/// N(eps, k) for k <= k_max by listing every odd vector with sum |a_j| = 2k + m.
/// Throws TooLarge when (2 k_max + m)^m exceeds `limit`.
std::array<std::vector<BigCount>, 2> brute_counts(const lattice::CongruenceLattice& lattice, std::int64_t k_max,
                                                  double limit = 5e7);

/// Which series matches mult(+lambda_k). Determined on the sphere and on
/// spaces with asymmetric spectrum; see the oracle tests.
inline constexpr bool kPlusSeriesIsMinusSpectrum = false;

struct OracleReport {
  double max_delta = 0;     ///< under the assignment that matched (or the direct one)
  double max_imag = 0;
  double max_integer_distance = 0;
  bool swapped = false;     ///< matched only with F+ <-> mult(-lambda)
  bool pass = false;
  bool consistent = false;  ///< pass, and the assignment agrees with the recorded convention
};

OracleReport oracle_compare(const lens::SpinLensSpace& x, std::int64_t k_max, double tol = 1e-6);

}  // namespace lensspec::oracle
