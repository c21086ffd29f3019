#include "lensspec/spectrum.hpp"

#include <stdexcept>

namespace lensspec::spectrum {

using numtheory::binomial;

Eigenvalue eigenvalue(int m, std::int64_t k, Sign sign) { return Eigenvalue{sign, k, 2 * k + 2 * m - 1}; }

BigCount weight_multiplicity(int m, std::int64_t k, Sign sign, const lattice::LatticeStats& st) {
  // r = k + m/2 - |mu|_1, doubled quantities: 2r = 2k + m - norm2.
  const std::int64_t twice_r = 2 * k + m - st.norm2;
  if (twice_r < 0) return 0;
  const std::int64_t r = twice_r / 2;
  const int want = sign == Sign::Plus ? static_cast<int>(r % 2) : static_cast<int>((r + 1) % 2);
  if (st.negcount % 2 != want) return 0;
  return binomial(static_cast<std::uint64_t>(r + m - 2), static_cast<std::uint64_t>(m - 2));
}

BigCount weight_multiplicity(int m, std::int64_t k, Sign sign, const std::vector<std::int64_t>& doubled) {
  if (static_cast<int>(doubled.size()) != m) throw std::invalid_argument("weight has the wrong length");
  for (std::int64_t a : doubled) {
    if (a % 2 == 0) return 0;
  }
  return weight_multiplicity(m, k, sign, lattice::stats(lattice::HalfIntVector(doubled)));
}

BigCount multiplicity(const lattice::ReducedCountTable& table, std::int64_t k, Sign sign) {
  const int m = table.m();
  const int shift = sign == Sign::Plus ? 1 : 0;
  BigCount total = 0;
  for (std::int64_t r = 0; r <= k; ++r) {
    BigCount n = lattice::count(table, static_cast<int>((r + shift) % 2), k - r);
    if (n == 0) continue;
    total += binomial(static_cast<std::uint64_t>(r + m - 2), static_cast<std::uint64_t>(m - 2)) * n;
  }
  return total;
}

BigCount multiplicity(const lens::SpinLensSpace& x, std::int64_t k, Sign sign) {
  return multiplicity(lattice::reduced_counts(lattice::lattice_of(x)), k, sign);
}

MultiplicityTable spectrum_table(const lattice::ReducedCountTable& table, std::int64_t k_max) {
  const int m = table.m();
  // Full counts once, then the weighted convolution per k.
  std::vector<BigCount> full[2];
  for (int e = 0; e < 2; ++e) {
    full[e].reserve(static_cast<std::size_t>(k_max) + 1);
    for (std::int64_t k = 0; k <= k_max; ++k) full[e].push_back(lattice::count(table, e, k));
  }
  std::vector<BigCount> weight;
  for (std::int64_t r = 0; r <= k_max; ++r) {
    weight.push_back(binomial(static_cast<std::uint64_t>(r + m - 2), static_cast<std::uint64_t>(m - 2)));
  }
  MultiplicityTable out;
  out.m = m;
  for (std::int64_t k = 0; k <= k_max; ++k) {
    MultiplicityRow row;
    row.k = k;
    row.value2 = 2 * k + 2 * m - 1;
    for (std::int64_t r = 0; r <= k; ++r) {
      row.minus += weight[r] * full[r % 2][k - r];
      row.plus += weight[r] * full[(r + 1) % 2][k - r];
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

MultiplicityTable spectrum_table(const lens::SpinLensSpace& x, std::int64_t k_max) {
  return spectrum_table(lattice::reduced_counts(lattice::lattice_of(x)), k_max);
}

SpectrumFingerprint fingerprint(const lens::SpinLensSpace& x) {
  return SpectrumFingerprint{x.q(), x.m(), lattice::reduced_counts(lattice::lattice_of(x))};
}

bool dirac_isospectral(const SpectrumFingerprint& x, const SpectrumFingerprint& y) {
  return x.q == y.q && x.m == y.m && x.table == y.table;
}

bool dirac_isospectral(const lens::SpinLensSpace& x, const lens::SpinLensSpace& y) {
  if (x.q() != y.q() || x.m() != y.m()) return false;
  return dirac_isospectral(fingerprint(x), fingerprint(y));
}

bool inverse_isospectral(const SpectrumFingerprint& x, const SpectrumFingerprint& y) {
  return x.q == y.q && x.m == y.m && x.table.row(0) == y.table.row(1) && x.table.row(1) == y.table.row(0);
}

bool inverse_isospectral(const lens::SpinLensSpace& x, const lens::SpinLensSpace& y) {
  if (x.q() != y.q() || x.m() != y.m()) return false;
  return inverse_isospectral(fingerprint(x), fingerprint(y));
}

BigCount sphere_multiplicity(int n, std::int64_t k) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("sphere dimension must be odd and at least 3");
  return numtheory::pow2(static_cast<unsigned>((n - 1) / 2)) *
         binomial(static_cast<std::uint64_t>(k + n - 1), static_cast<std::uint64_t>(n - 1));
}

}  // namespace lensspec::spectrum
