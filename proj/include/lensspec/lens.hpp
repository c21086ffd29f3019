#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lensspec::lens {

/// Parameters of L(q; s_1, ..., s_m). Stored exactly as given: the spin
/// label of an even-q space is read relative to the raw parameters.
class LensParams {
 public:
  std::int64_t q() const noexcept { return q_; }
  const std::vector<std::int64_t>& s() const noexcept { return s_; }
  int m() const noexcept { return static_cast<int>(s_.size()); }
  int dimension() const noexcept { return 2 * m() - 1; }

  friend bool operator==(const LensParams&, const LensParams&) = default;

 private:
  friend LensParams make_lens(std::int64_t q, std::vector<std::int64_t> s);
  LensParams(std::int64_t q, std::vector<std::int64_t> s) : q_(q), s_(std::move(s)) {}

  std::int64_t q_;
  std::vector<std::int64_t> s_;
};

/// Validates q >= 1, m >= 2 and gcd(s_j, q) = 1.
/// Throws DimensionTooSmall or NotCoprime (1-based index).
LensParams make_lens(std::int64_t q, std::vector<std::int64_t> s);

/// Spin structure tag: the unique structure (q odd) or tau_h (q, m even).
class SpinLabel {
 public:
  static SpinLabel unique() { return SpinLabel(-1); }
  static SpinLabel even(int h) { return SpinLabel(h & 1); }

  bool is_unique() const noexcept { return h_ < 0; }
  /// h in {0, 1}; only meaningful for even labels.
  int h() const noexcept { return h_ < 0 ? 0 : h_; }

  friend bool operator==(const SpinLabel&, const SpinLabel&) = default;
  friend auto operator<=>(const SpinLabel&, const SpinLabel&) = default;

 private:
  explicit SpinLabel(int h) : h_(h) {}
  int h_;
};

struct SpinLensSpace {
  LensParams lens;
  SpinLabel spin;

  std::int64_t q() const noexcept { return lens.q(); }
  int m() const noexcept { return lens.m(); }

  friend bool operator==(const SpinLensSpace&, const SpinLensSpace&) = default;
};

/// Attaches a spin label after checking admissibility. Throws NoSpinStructure.
SpinLensSpace make_spin_lens(LensParams lens, SpinLabel spin);

/// Convenience: make_lens + make_spin_lens.
SpinLensSpace make_spin_lens(std::int64_t q, std::vector<std::int64_t> s, SpinLabel spin);

/// The admissible labels: [unique] for odd q, [tau_0, tau_1] for q and m
/// even, and nothing for q even with m odd.
std::vector<SpinLabel> spin_structures(const LensParams& lens);

/// (sum_j floor(s_j / q)) mod 2.
int h_shift(const LensParams& lens);

enum class IsometryMode { Any, Preserving, Reversing };

/// Data (l, sigma, eps) with l*eps_j*s_j = s'_{sigma(j)} (mod q).
/// sigma is 0-based: coordinate j of the source goes to sigma[j].
struct IsometryWitness {
  std::int64_t ell = 1;
  std::vector<int> sigma;
  std::vector<int> eps;
  int orientation = 1;  ///< product of eps
  /// sum_j (l*eps_j*s_j - s'_{sigma(j)})/q mod 2, recorded for even q.
  std::optional<int> spin_shift;

  friend bool operator==(const IsometryWitness&, const IsometryWitness&) = default;
};

/// Exhaustive witness search between the underlying lens spaces, ignoring spin.
/// Order: l ascending, sigma lexicographic, eps lexicographic (+1 before -1).
/// Throws Mismatch when q or m differ.
std::optional<IsometryWitness> find_lens_isometry(const LensParams& a, const LensParams& b,
                                                  IsometryMode mode);

/// As find_lens_isometry, additionally requiring for even q that the witness
/// carries the spin label of `a` onto that of `b`:
///   h_b = h_a + rho + h_shift(a) + h_shift(b)  (mod 2).
std::optional<IsometryWitness> find_isometry(const SpinLensSpace& a, const SpinLensSpace& b,
                                             IsometryMode mode);

/// Re-checks a witness by direct modular arithmetic (congruences, orientation
/// bookkeeping, and for even q the spin transport between the two labels).
bool witness_is_valid(const SpinLensSpace& a, const SpinLensSpace& b, const IsometryWitness& w);

/// Lens-level variant of witness_is_valid (no spin condition).
bool witness_is_valid(const LensParams& a, const LensParams& b, const IsometryWitness& w);

/// Composition: first `first` (a -> b), then `second` (b -> c).
IsometryWitness compose(const IsometryWitness& first, const IsometryWitness& second,
                        std::int64_t q);

enum class Orientation { Oriented, Unoriented };

/// Orbit representative under l in units(q), permutations and sign changes
/// (an even number of them in Oriented mode). Residues are represented in
/// [1, q) (q itself for residue 0, which only happens when q = 1).
struct CanonicalKey {
  std::int64_t q = 1;
  std::vector<std::int64_t> params;
  std::optional<int> h;  ///< transported spin tag; empty for odd q
  Orientation mode = Orientation::Oriented;

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

CanonicalKey canonical_key(const SpinLensSpace& x, Orientation mode);

/// canonical_key(x) has exactly x's own parameters and spin tag. Faster
/// than comparing keys: stops at the first smaller orbit element.
bool is_canonical(const SpinLensSpace& x, Orientation mode);

/// The spin lens space whose parameters are exactly the key tuple.
SpinLensSpace representative(const CanonicalKey& key);

/// "L(q; s1,...,sm)" with " tau_h" appended for even q.
std::string to_string(const SpinLensSpace& x);
std::string to_string(const LensParams& x);

/// "unique", "h0" or "h1".
std::string spin_tag(const SpinLabel& label);

/// Inverse of spin_tag. Throws std::invalid_argument.
SpinLabel parse_spin_tag(const std::string& tag);

}  // namespace lensspec::lens
