#include "lensspec/lens.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "lensspec/errors.hpp"
#include "lensspec/numtheory.hpp"

namespace lensspec::lens {

using numtheory::floor_div;
using numtheory::gcd;
using numtheory::mod;

__extension__ typedef __int128 i128;

LensParams make_lens(std::int64_t q, std::vector<std::int64_t> s) {
  if (q < 1) throw std::invalid_argument("q must be positive");
  if (s.size() < 2) {
    throw DimensionTooSmall("a lens space needs m >= 2 parameters, got " + std::to_string(s.size()));
  }
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (gcd(s[j], q) != 1) {
      throw NotCoprime(j + 1, "parameter s_" + std::to_string(j + 1) + " = " + std::to_string(s[j]) +
                                  " is not coprime to q = " + std::to_string(q));
    }
  }
  return LensParams(q, std::move(s));
}

SpinLensSpace make_spin_lens(LensParams lens, SpinLabel spin) {
  const bool q_even = lens.q() % 2 == 0;
  if (q_even && lens.m() % 2 == 1) {
    throw NoSpinStructure("no spin structure (q even, m odd): " + to_string(lens));
  }
  if (q_even && spin.is_unique()) {
    throw NoSpinStructure("q is even: choose spin structure h0 or h1 for " + to_string(lens));
  }
  if (!q_even && !spin.is_unique()) {
    throw NoSpinStructure("q is odd: the spin structure is unique for " + to_string(lens));
  }
  return SpinLensSpace{std::move(lens), spin};
}

SpinLensSpace make_spin_lens(std::int64_t q, std::vector<std::int64_t> s, SpinLabel spin) {
  return make_spin_lens(make_lens(q, std::move(s)), spin);
}

std::vector<SpinLabel> spin_structures(const LensParams& lens) {
  if (lens.q() % 2 == 1) return {SpinLabel::unique()};
  if (lens.m() % 2 == 0) return {SpinLabel::even(0), SpinLabel::even(1)};
  return {};
}

int h_shift(const LensParams& lens) {
  std::int64_t total = 0;
  for (std::int64_t sj : lens.s()) total += floor_div(sj, lens.q());
  return static_cast<int>(mod(total, 2));
}

namespace {

void require_same_shape(const LensParams& a, const LensParams& b) {
  if (a.q() != b.q() || a.m() != b.m()) {
    throw Mismatch("isometry search needs equal q and m: " + to_string(a) + " vs " + to_string(b));
  }
}

bool mode_allows(IsometryMode mode, int orientation) {
  switch (mode) {
    case IsometryMode::Any: return true;
    case IsometryMode::Preserving: return orientation == 1;
    case IsometryMode::Reversing: return orientation == -1;
  }
  return false;
}

// sum_j (l*eps_j*s_j - s'_{sigma(j)}) / q, exact.
std::int64_t rho_sum(const LensParams& a, const LensParams& b, std::int64_t ell,
                     const std::vector<int>& sigma, const std::vector<int>& eps) {
  i128 total = 0;
  for (int j = 0; j < a.m(); ++j) {
    total += static_cast<i128>(ell) * eps[j] * a.s()[j] - b.s()[sigma[j]];
  }
  return static_cast<std::int64_t>(total / a.q());
}

// Core search. `accept(orientation, rho_parity)` decides whether a
// candidate (l, sigma, eps) is admissible.
//
// For q > 2 the signs are forced by sigma, and both the orientation and the
// parity of sum rho_j are the same for every sigma that solves the congruences
// for a fixed l: each is a sum of one term per source coordinate and one per
// target coordinate. So the lexicographically first sigma (greedy matching)
// is admissible iff some sigma is. For q <= 2 every residue is its own
// negative and the signs are free; they are scanned lexicographically.
template <class Accept>
std::optional<IsometryWitness> search(const LensParams& a, const LensParams& b, Accept accept) {
  require_same_shape(a, b);
  const std::int64_t q = a.q();
  const int m = a.m();

  std::vector<std::int64_t> target(m);
  for (int i = 0; i < m; ++i) target[i] = mod(b.s()[i], q);

  for (const auto& unit : numtheory::units(q)) {
    const std::int64_t ell = unit.value();
    std::vector<int> sigma(m, -1);
    std::vector<int> eps(m, 1);
    std::vector<char> used(m, 0);
    bool matched = true;
    for (int j = 0; j < m && matched; ++j) {
      const std::int64_t v = mod(static_cast<std::int64_t>(static_cast<i128>(ell) * mod(a.s()[j], q) % q), q);
      const std::int64_t neg_v = mod(-v, q);
      matched = false;
      for (int i = 0; i < m; ++i) {
        if (!used[i] && (target[i] == v || target[i] == neg_v)) {
          used[i] = 1;
          sigma[j] = i;
          eps[j] = target[i] == v ? 1 : -1;
          matched = true;
          break;
        }
      }
    }
    if (!matched) continue;

    const bool free_signs = q <= 2;
    const std::uint64_t sign_patterns = free_signs ? (std::uint64_t{1} << std::min(m, 62)) : 1;
    for (std::uint64_t x = 0; x < sign_patterns; ++x) {
      std::vector<int> e = eps;
      if (free_signs) {
        for (int j = 0; j < m; ++j) e[j] = ((x >> (m - 1 - j)) & 1U) ? -1 : 1;
      }
      const int orientation = std::accumulate(e.begin(), e.end(), 1, std::multiplies<>());
      const int rho = static_cast<int>(mod(rho_sum(a, b, ell, sigma, e), 2));
      if (accept(orientation, rho)) {
        IsometryWitness w;
        w.ell = ell;
        w.sigma = sigma;
        w.eps = std::move(e);
        w.orientation = orientation;
        if (q % 2 == 0) w.spin_shift = rho;
        return w;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<IsometryWitness> find_lens_isometry(const LensParams& a, const LensParams& b,
                                                  IsometryMode mode) {
  return search(a, b, [mode](int orientation, int) { return mode_allows(mode, orientation); });
}

std::optional<IsometryWitness> find_isometry(const SpinLensSpace& a, const SpinLensSpace& b,
                                             IsometryMode mode) {
  if (a.q() % 2 == 1) return find_lens_isometry(a.lens, b.lens, mode);
  const int base = a.spin.h() + h_shift(a.lens) + h_shift(b.lens);
  const int want = b.spin.h();
  return search(a.lens, b.lens, [&](int orientation, int rho) {
    return mode_allows(mode, orientation) && (base + rho) % 2 == want;
  });
}

bool witness_is_valid(const LensParams& a, const LensParams& b, const IsometryWitness& w) {
  if (a.q() != b.q() || a.m() != b.m()) return false;
  const std::int64_t q = a.q();
  const int m = a.m();
  if (static_cast<int>(w.sigma.size()) != m || static_cast<int>(w.eps.size()) != m) return false;
  if (gcd(w.ell, q) != 1) return false;
  std::vector<char> seen(m, 0);
  int orientation = 1;
  for (int j = 0; j < m; ++j) {
    const int i = w.sigma[j];
    if (i < 0 || i >= m || seen[i]) return false;
    seen[i] = 1;
    if (w.eps[j] != 1 && w.eps[j] != -1) return false;
    orientation *= w.eps[j];
    const i128 lhs = static_cast<i128>(w.ell) * w.eps[j] * a.s()[j] - b.s()[i];
    if (lhs % q != 0) return false;
  }
  if (orientation != w.orientation) return false;
  if (q % 2 == 0) {
    if (!w.spin_shift) return false;
    if (mod(rho_sum(a, b, w.ell, w.sigma, w.eps), 2) != *w.spin_shift) return false;
  }
  return true;
}

bool witness_is_valid(const SpinLensSpace& a, const SpinLensSpace& b, const IsometryWitness& w) {
  if (!witness_is_valid(a.lens, b.lens, w)) return false;
  if (a.q() % 2 == 1) return true;
  return (a.spin.h() + *w.spin_shift + h_shift(a.lens) + h_shift(b.lens)) % 2 == b.spin.h();
}

IsometryWitness compose(const IsometryWitness& first, const IsometryWitness& second, std::int64_t q) {
  const std::size_t m = first.sigma.size();
  if (second.sigma.size() != m) throw Mismatch("cannot compose witnesses of different m");
  IsometryWitness out;
  out.ell = mod(static_cast<std::int64_t>(static_cast<i128>(first.ell) * second.ell % q), q);
  out.sigma.resize(m);
  out.eps.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const int mid = first.sigma[j];
    out.sigma[j] = second.sigma[mid];
    out.eps[j] = first.eps[j] * second.eps[mid];
  }
  out.orientation = first.orientation * second.orientation;
  if (first.spin_shift && second.spin_shift) {
    out.spin_shift = (*first.spin_shift + *second.spin_shift) % 2;
  }
  return out;
}

namespace {

// Transported tag: h' = h + h_shift(s) + h_shift(s') + sum rho_j, where the
// canonical tuple s' lies in [1, q) so that h_shift(s') = 0.
int transported_h(const SpinLensSpace& x, std::int64_t ell, const std::vector<int>& eps,
                  const std::vector<std::int64_t>& tuple) {
  const std::int64_t q = x.q();
  i128 total = 0;
  for (int j = 0; j < x.m(); ++j) total += static_cast<i128>(ell) * eps[j] * x.lens.s()[j];
  for (std::int64_t t : tuple) total -= t;
  const auto rho = static_cast<std::int64_t>(total / q);
  return static_cast<int>(mod(x.spin.h() + h_shift(x.lens) + rho, 2));
}

// Walks the orbit images that can be minimal. For q > 2 the minimum starts
// with 1, which forces l = +-s_j^{-1} for some j, so only those l are tried.
// For every such l the sorted tuple of min(v, q - v) is formed (with the
// largest entry flipped back when an odd number of sign changes is not
// allowed) and, for even q, the smallest reachable spin tag. `visit(tuple,
// h)` returns false to stop early.
template <class Visit>
void orbit_candidates(const SpinLensSpace& x, Orientation mode, Visit visit) {
  const std::int64_t q = x.q();
  const int m = x.m();
  const bool even = q % 2 == 0;

  if (q <= 2) {
    std::vector<std::int64_t> tuple(m, 1);
    int h = 0;
    if (even) {
      h = transported_h(x, 1, std::vector<int>(m, 1), tuple);
      // A single sign change toggles the tag; only allowed without orientation.
      if (mode == Orientation::Unoriented) h = 0;
    }
    visit(tuple, h);
    return;
  }

  std::vector<std::int64_t> ells;
  for (int j = 0; j < m; ++j) {
    const std::int64_t inv = numtheory::mod_inverse(x.lens.s()[j], q).value();
    ells.push_back(inv);
    ells.push_back(q - inv);
  }
  std::sort(ells.begin(), ells.end());
  ells.erase(std::unique(ells.begin(), ells.end()), ells.end());

  std::vector<std::int64_t> w(m), tuple(m);
  std::vector<int> base_eps(m), eps(m);
  for (std::int64_t ell : ells) {
    int flips = 0;
    std::int64_t w_max = 0;
    for (int j = 0; j < m; ++j) {
      const std::int64_t v = static_cast<std::int64_t>(static_cast<i128>(ell) * mod(x.lens.s()[j], q) % q);
      const bool flip = v > q - v;
      w[j] = flip ? q - v : v;
      base_eps[j] = flip ? -1 : 1;
      flips += flip ? 1 : 0;
      w_max = std::max(w_max, w[j]);
    }
    tuple = w;
    std::sort(tuple.begin(), tuple.end());
    const bool fix_parity = mode == Orientation::Oriented && flips % 2 == 1;
    if (fix_parity) tuple.back() = q - tuple.back();  // q - w_max > q/2 stays last

    int h = 0;
    if (even) {
      if (!fix_parity) {
        h = transported_h(x, ell, base_eps, tuple);
      } else {
        h = 2;
        for (int j = 0; j < m && h != 0; ++j) {
          if (w[j] != w_max) continue;
          eps = base_eps;
          eps[j] = -eps[j];
          h = std::min(h, transported_h(x, ell, eps, tuple));
        }
      }
    }
    if (!visit(tuple, h)) return;
  }
}

}  // namespace

CanonicalKey canonical_key(const SpinLensSpace& x, Orientation mode) {
  const bool even = x.q() % 2 == 0;
  CanonicalKey best;
  best.q = x.q();
  best.mode = mode;
  bool have = false;
  int best_h = 0;
  orbit_candidates(x, mode, [&](const std::vector<std::int64_t>& tuple, int h) {
    if (!have || tuple < best.params || (tuple == best.params && h < best_h)) {
      have = true;
      best.params = tuple;
      best_h = h;
    }
    return true;
  });
  if (even) best.h = best_h;
  return best;
}

bool is_canonical(const SpinLensSpace& x, Orientation mode) {
  const std::int64_t q = x.q();
  std::vector<std::int64_t> own(x.lens.s().size());
  for (std::size_t j = 0; j < own.size(); ++j) {
    const std::int64_t s = x.lens.s()[j];
    if (s < 1 || s > q || (s == q && q != 1)) return false;
    own[j] = s;
  }
  const int own_h = q % 2 == 0 ? x.spin.h() : 0;
  bool found_self = false;
  bool below = false;
  orbit_candidates(x, mode, [&](const std::vector<std::int64_t>& tuple, int h) {
    if (tuple < own || (tuple == own && h < own_h)) {
      below = true;
      return false;
    }
    if (tuple == own && h == own_h) found_self = true;
    return true;
  });
  return !below && found_self;
}

SpinLensSpace representative(const CanonicalKey& key) {
  const SpinLabel label = key.h ? SpinLabel::even(*key.h) : SpinLabel::unique();
  return make_spin_lens(key.q, key.params, label);
}

std::string to_string(const LensParams& x) {
  std::ostringstream os;
  os << "L(" << x.q() << "; ";
  for (int j = 0; j < x.m(); ++j) os << (j ? "," : "") << x.s()[j];
  os << ")";
  return os.str();
}

std::string to_string(const SpinLensSpace& x) {
  std::string out = to_string(x.lens);
  if (!x.spin.is_unique()) out += " tau_" + std::to_string(x.spin.h());
  return out;
}

std::string spin_tag(const SpinLabel& label) {
  if (label.is_unique()) return "unique";
  return label.h() == 0 ? "h0" : "h1";
}

SpinLabel parse_spin_tag(const std::string& tag) {
  if (tag == "unique") return SpinLabel::unique();
  if (tag == "h0" || tag == "0" || tag == "tau0" || tag == "tau_0") return SpinLabel::even(0);
  if (tag == "h1" || tag == "1" || tag == "tau1" || tag == "tau_1") return SpinLabel::even(1);
  throw std::invalid_argument("unknown spin tag '" + tag + "' (expected unique, h0 or h1)");
}

}  // namespace lensspec::lens
