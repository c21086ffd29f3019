#include "lensspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lensspec/errors.hpp"
#include "lensspec/spectrum.hpp"

namespace lensspec::oracle {

using numtheory::mod;
using cld = std::complex<long double>;

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

std::pair<cld, cld> characters(const std::vector<long double>& thetas) {
  cld cos_prod = 1, sin_prod = 1;
  for (long double t : thetas) {
    cos_prod *= 2 * std::cos(t);
    sin_prod *= cld(0, 2 * std::sin(t));
  }
  return {(cos_prod + sin_prod) / 2.0L, (cos_prod - sin_prod) / 2.0L};
}

// Coefficients of 1 / (1 - 2cos(2 pi rho / q) z + z^2): U_n = sin((n+1)phi) / sin(phi).
std::vector<long double> chebyshev_series(std::int64_t rho, std::int64_t q, std::int64_t k_max) {
  std::vector<long double> out(static_cast<std::size_t>(k_max) + 1);
  rho = mod(rho, q);
  if (rho == 0 || 2 * rho == q) {
    for (std::int64_t n = 0; n <= k_max; ++n) {
      const long double v = static_cast<long double>(n + 1);
      out[n] = (rho != 0 && n % 2 == 1) ? -v : v;
    }
    return out;
  }
  const long double denom = std::sin(2 * kPi * rho / q);
  for (std::int64_t n = 0; n <= k_max; ++n) {
    const std::int64_t reduced = mod((n + 1) * rho, q);
    out[n] = std::sin(2 * kPi * reduced / q) / denom;
  }
  return out;
}

std::vector<long double> truncated_product(const std::vector<long double>& a, const std::vector<long double>& b) {
  std::vector<long double> out(a.size(), 0.0L);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

std::pair<std::complex<double>, std::complex<double>> half_spin_characters(const std::vector<double>& thetas) {
  std::vector<long double> wide(thetas.begin(), thetas.end());
  const auto [plus, minus] = characters(wide);
  return {std::complex<double>(plus), std::complex<double>(minus)};
}

std::pair<std::complex<double>, std::complex<double>> half_spin_characters_by_sum(
    const std::vector<double>& thetas) {
  const std::size_t m = thetas.size();
  std::complex<double> plus = 0, minus = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    double phase = 0;
    for (std::size_t j = 0; j < m; ++j) phase += ((mask >> j) & 1U) ? -thetas[j] : thetas[j];
    const std::complex<double> term = std::polar(1.0, phase);
    if (__builtin_popcountll(mask) % 2 == 0) {
      plus += term;
    } else {
      minus += term;
    }
  }
  return {plus, minus};
}

GeneratingSeries generating_coeffs(const lens::SpinLensSpace& x, std::int64_t k_max) {
  if (lens::spin_structures(x.lens).empty()) {
    throw NoSpinStructure("no spin structure (q even, m odd): " + lens::to_string(x.lens));
  }
  const std::int64_t q = x.q();
  const int m = x.m();
  const bool even = q % 2 == 0;
  const int global = even ? (x.spin.h() + lens::h_shift(x.lens)) % 2 : 0;

  std::vector<cld> plus(static_cast<std::size_t>(k_max) + 1), minus(plus.size());
  std::vector<long double> thetas(m);
  for (std::int64_t j = 0; j < q; ++j) {
    std::vector<long double> det_inv;
    for (int l = 0; l < m; ++l) {
      const std::int64_t sl = x.lens.s()[l];
      // Spin-level half angles, reduced exactly before going to floating point.
      const std::int64_t num = even ? mod(mod(j, 2 * q) * mod(sl, 2 * q), 2 * q)
                                    : mod(mod((q + 1) * j, 2 * q) * mod(sl, 2 * q), 2 * q);
      thetas[l] = kPi * num / q;
      auto block = chebyshev_series(mod(j, q) * mod(sl, q), q, k_max);
      det_inv = det_inv.empty() ? std::move(block) : truncated_product(det_inv, block);
    }
    auto [chi_plus, chi_minus] = characters(thetas);
    if (global == 1 && j % 2 == 1) {
      chi_plus = -chi_plus;
      chi_minus = -chi_minus;
    }
    for (std::int64_t n = 0; n <= k_max; ++n) {
      const long double d = det_inv[n];
      const long double d_prev = n > 0 ? det_inv[n - 1] : 0.0L;
      plus[n] += chi_minus * d - chi_plus * d_prev;
      minus[n] += chi_plus * d - chi_minus * d_prev;
    }
  }
  GeneratingSeries out;
  for (std::size_t n = 0; n < plus.size(); ++n) {
    out.plus.emplace_back(plus[n] / static_cast<long double>(q));
    out.minus.emplace_back(minus[n] / static_cast<long double>(q));
  }
  return out;
}

std::array<std::vector<BigCount>, 2> brute_counts(const lattice::CongruenceLattice& lattice, std::int64_t k_max,
                                                  double limit) {
  const int m = lattice.m();
  const double bound = std::pow(static_cast<double>(2 * k_max + m), m);
  if (bound > limit) {
    throw TooLarge("brute-force enumeration bound " + std::to_string(bound) + " exceeds limit " +
                   std::to_string(limit));
  }
  std::array<std::vector<std::uint64_t>, 2> raw;
  raw[0].assign(static_cast<std::size_t>(k_max) + 1, 0);
  raw[1].assign(static_cast<std::size_t>(k_max) + 1, 0);

  const std::int64_t modulus = lattice.modulus();
  std::vector<std::int64_t> a(m);
  // Depth-first over coordinates; `used` is the running sum of t_j.
  auto rec = [&](auto&& self, int j, std::int64_t used, std::int64_t residue, int negs) -> void {
    if (j == m) {
      if (residue == lattice.target()) ++raw[negs % 2][used];
      return;
    }
    const std::int64_t sj = mod(lattice.s[j], modulus);
    for (std::int64_t t = 0; used + t <= k_max; ++t) {
      for (int sign : {1, -1}) {
        a[j] = sign * (2 * t + 1);
        const std::int64_t next = mod(residue + mod(a[j], modulus) * sj, modulus);
        self(self, j + 1, used + t, next, negs + (sign < 0 ? 1 : 0));
      }
    }
  };
  rec(rec, 0, 0, 0, 0);

  std::array<std::vector<BigCount>, 2> out;
  for (int e = 0; e < 2; ++e) {
    for (std::uint64_t v : raw[e]) out[e].emplace_back(v);
  }
  return out;
}

OracleReport oracle_compare(const lens::SpinLensSpace& x, std::int64_t k_max, double tol) {
  const GeneratingSeries series = generating_coeffs(x, k_max);
  const spectrum::MultiplicityTable table = spectrum::spectrum_table(x, k_max);

  double direct = 0, swap = 0, imag = 0, integer_distance = 0;
  for (std::int64_t k = 0; k <= k_max; ++k) {
    const double want_plus = table.rows[k].plus.convert_to<double>();
    const double want_minus = table.rows[k].minus.convert_to<double>();
    const auto& fp = series.plus[k];
    const auto& fm = series.minus[k];
    direct = std::max({direct, std::abs(fp.real() - want_plus), std::abs(fm.real() - want_minus)});
    swap = std::max({swap, std::abs(fp.real() - want_minus), std::abs(fm.real() - want_plus)});
    imag = std::max({imag, std::abs(fp.imag()), std::abs(fm.imag())});
    for (double v : {fp.real(), fm.real()}) {
      const double nearest = std::max(0.0, std::round(v));
      integer_distance = std::max(integer_distance, std::abs(v - nearest));
    }
  }
  const bool direct_ok = direct < tol;
  const bool swap_ok = swap < tol;

  OracleReport report;
  report.max_imag = imag;
  report.max_integer_distance = integer_distance;
  report.swapped = !direct_ok && swap_ok;
  report.max_delta = report.swapped ? swap : direct;
  report.pass = direct_ok || swap_ok;
  report.consistent = kPlusSeriesIsMinusSpectrum ? swap_ok : direct_ok;
  return report;
}

}  // namespace lensspec::oracle
