#include "lensspec/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>
#include <string>

#include "lensspec/errors.hpp"

namespace lensspec::lattice {

using numtheory::mod;

__extension__ typedef unsigned __int128 u128;

HalfIntVector::HalfIntVector(std::vector<std::int64_t> doubled) : a_(std::move(doubled)) {
  for (std::int64_t a : a_) {
    if (a % 2 == 0) throw std::invalid_argument("half-integer vector needs odd doubled entries");
  }
}

HalfIntVector HalfIntVector::operator-() const {
  std::vector<std::int64_t> neg(a_.size());
  for (std::size_t j = 0; j < a_.size(); ++j) neg[j] = -a_[j];
  return HalfIntVector(std::move(neg));
}

LatticeStats stats(const HalfIntVector& mu) {
  LatticeStats st{0, 0};
  for (std::int64_t a : mu.doubled()) {
    st.norm2 += a < 0 ? -a : a;
    st.negcount += a < 0 ? 1 : 0;
  }
  return st;
}

CongruenceLattice lattice_of(const lens::SpinLensSpace& x) {
  if (lens::spin_structures(x.lens).empty()) {
    throw NoSpinStructure("no spin structure (q even, m odd): " + lens::to_string(x.lens));
  }
  CongruenceLattice out;
  out.q = x.q();
  out.s = x.lens.s();
  if (x.q() % 2 == 1) {
    out.mode = CongruenceMode::ModQ;
  } else {
    out.mode = CongruenceMode::Mod2Q;
    out.h_eff = (x.spin.h() + lens::h_shift(x.lens)) % 2;
  }
  return out;
}

CongruenceLattice make_lattice(std::int64_t q, std::vector<std::int64_t> s, int h_eff) {
  const auto checked = lens::make_lens(q, std::move(s));
  CongruenceLattice out;
  out.q = q;
  out.s = checked.s();
  out.mode = q % 2 == 1 ? CongruenceMode::ModQ : CongruenceMode::Mod2Q;
  out.h_eff = q % 2 == 1 ? 0 : (h_eff & 1);
  return out;
}

bool contains(const CongruenceLattice& lattice, const HalfIntVector& mu) {
  if (mu.m() != lattice.m()) {
    throw DimensionMismatch("vector has " + std::to_string(mu.m()) + " coordinates, lattice has " +
                            std::to_string(lattice.m()));
  }
  const std::int64_t modulus = lattice.modulus();
  std::int64_t acc = 0;
  for (int j = 0; j < lattice.m(); ++j) {
    acc = mod(acc + mod(mu.doubled()[j], modulus) * mod(lattice.s[j], modulus), modulus);
  }
  return acc == lattice.target();
}

HalfIntVector apply_norm_isometry(const std::vector<int>& sigma, const std::vector<int>& eps,
                                  const HalfIntVector& mu) {
  const std::size_t m = mu.doubled().size();
  if (sigma.size() != m || eps.size() != m) throw DimensionMismatch("isometry data has the wrong length");
  std::vector<std::int64_t> out(m, 0);
  for (std::size_t j = 0; j < m; ++j) out[sigma[j]] = eps[j] * mu.doubled()[j];
  return HalfIntVector(std::move(out));
}

ReducedCountTable::ReducedCountTable(int m, std::int64_t q) : m_(m), q_(q) {
  rows_[0].assign(static_cast<std::size_t>(m) * q, BigCount(0));
  rows_[1].assign(static_cast<std::size_t>(m) * q, BigCount(0));
}

const BigCount& ReducedCountTable::at(int eps, std::int64_t k) const {
  static const BigCount zero = 0;
  if (k < 0 || k >= size()) return zero;
  return rows_[eps & 1][static_cast<std::size_t>(k)];
}

std::uint64_t ReducedCountTable::digest() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&h](unsigned char byte) {
    h ^= byte;
    h *= 1099511628211ULL;
  };
  auto feed_u64 = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) feed(static_cast<unsigned char>(v >> (8 * i)));
  };
  feed_u64(static_cast<std::uint64_t>(m_));
  feed_u64(static_cast<std::uint64_t>(q_));
  std::vector<unsigned char> bytes;
  for (const auto& row : rows_) {
    for (const BigCount& c : row) {
      bytes.clear();
      boost::multiprecision::export_bits(c, std::back_inserter(bytes), 8);
      feed_u64(bytes.size());
      for (unsigned char b : bytes) feed(b);
    }
  }
  return h;
}

namespace {

BigCount to_big(std::uint32_t v) { return BigCount(v); }
BigCount to_big(std::uint64_t v) { return BigCount(v); }
BigCount to_big(u128 v) {
  BigCount hi = static_cast<std::uint64_t>(v >> 64);
  hi <<= 64;
  hi += static_cast<std::uint64_t>(v);
  return hi;
}
BigCount to_big(const BigCount& v) { return v; }

// dst[(i + off) mod M] += src[i]; two contiguous runs.
template <class T>
inline void rotated_add(T* __restrict dst, const T* __restrict src, std::int64_t M, std::int64_t off) {
  const std::int64_t head = M - off;
  for (std::int64_t i = 0; i < head; ++i) dst[i + off] += src[i];
  for (std::int64_t i = head; i < M; ++i) dst[i - head] += src[i];
}

// Counts over the first m-1 coordinates, indexed [parity][k][residue mod M]
// where k = sum t_j and a_j = +-(2 t_j + 1).
template <class T>
struct Partial {
  std::int64_t M = 1;
  std::int64_t kmax = 0;
  std::vector<T> cells;

  T* row(int p, std::int64_t k) { return cells.data() + (p * (kmax + 1) + k) * M; }
  const T* row(int p, std::int64_t k) const { return cells.data() + (p * (kmax + 1) + k) * M; }
};

// Only k < k_cap is tracked; k_cap = m*q keeps everything.
template <class T>
Partial<T> leading_coordinates(std::int64_t q, const std::vector<std::int64_t>& s, std::int64_t M,
                               std::int64_t k_cap) {
  const int m = static_cast<int>(s.size());
  const std::int64_t t_end = std::min(q, k_cap);
  Partial<T> cur;
  cur.M = M;
  cur.kmax = t_end - 1;
  cur.cells.assign(2 * (cur.kmax + 1) * M, T(0));
  for (std::int64_t t = 0; t < t_end; ++t) {
    const std::int64_t off = mod((2 * t + 1) % M * mod(s[0], M), M);
    cur.row(0, t)[off] += T(1);
    cur.row(1, t)[mod(-off, M)] += T(1);
  }
  for (int j = 1; j + 1 < m; ++j) {
    Partial<T> next;
    next.M = M;
    next.kmax = std::min(cur.kmax + t_end - 1, k_cap - 1);
    next.cells.assign(2 * (next.kmax + 1) * M, T(0));
    const std::int64_t sj = mod(s[j], M);
    for (std::int64_t t = 0; t < t_end; ++t) {
      const std::int64_t off = mod((2 * t + 1) % M * sj, M);
      const std::int64_t neg_off = mod(-off, M);
      for (int p = 0; p < 2; ++p) {
        for (std::int64_t k = 0; k <= cur.kmax && k + t <= next.kmax; ++k) {
          const T* src = cur.row(p, k);
          rotated_add(next.row(p, k + t), src, M, off);
          rotated_add(next.row(p ^ 1, k + t), src, M, neg_off);
        }
      }
    }
    cur = std::move(next);
  }
  return cur;
}

// Solves the last coordinate: a * s_m = target - r (mod M) with a odd and
// |a| < 2q has at most two solutions.
template <class T>
std::array<std::vector<T>, 2> finish(const Partial<T>& part, std::int64_t q, std::int64_t s_last,
                                     std::int64_t target, std::int64_t k_cap) {
  const std::int64_t M = part.M;
  const std::int64_t inv = numtheory::mod_inverse(s_last, M).value();
  std::array<std::vector<T>, 2> out;
  out[0].assign(static_cast<std::size_t>(k_cap), T(0));
  out[1].assign(static_cast<std::size_t>(k_cap), T(0));

  struct Move {
    std::int64_t t;
    int neg;
  };
  std::vector<std::vector<Move>> moves(M);
  for (std::int64_t r = 0; r < M; ++r) {
    const std::int64_t c = mod(mod(target - r, M) * inv, M);
    for (std::int64_t a = c - 4 * M; a < 2 * q; a += M) {
      if (a <= -2 * q || a % 2 == 0) continue;
      moves[r].push_back({((a < 0 ? -a : a) - 1) / 2, a < 0 ? 1 : 0});
    }
  }
  for (int p = 0; p < 2; ++p) {
    for (std::int64_t k = 0; k <= part.kmax; ++k) {
      const T* src = part.row(p, k);
      for (std::int64_t r = 0; r < M; ++r) {
        if (src[r] == T(0)) continue;
        for (const Move& mv : moves[r]) {
          if (k + mv.t < k_cap) out[p ^ mv.neg][k + mv.t] += src[r];
        }
      }
    }
  }
  return out;
}

template <class T>
ReducedCountTable to_table(const std::array<std::vector<T>, 2>& raw, int m, std::int64_t q) {
  ReducedCountTable table(m, q);
  for (int e = 0; e < 2; ++e) {
    for (std::int64_t k = 0; k < table.size(); ++k) table.at(e, k) = to_big(raw[e][k]);
  }
  return table;
}

enum class Width { U32, U64, U128, Big };

// Every cell is bounded by the number of all reduced sign vectors, (2q)^m.
Width width_for(std::int64_t q, int m) {
  const double bits = m * std::log2(2.0 * static_cast<double>(q));
  if (bits < 31.5) return Width::U32;
  if (bits < 63.5) return Width::U64;
  if (bits < 127.5) return Width::U128;
  return Width::Big;
}

template <class T>
std::array<ReducedCountTable, 2> run_targets(std::int64_t q, const std::vector<std::int64_t>& s, std::int64_t M,
                                             const std::vector<std::int64_t>& targets) {
  const int m = static_cast<int>(s.size());
  const std::int64_t k_cap = static_cast<std::int64_t>(m) * q;
  const Partial<T> part = leading_coordinates<T>(q, s, M, k_cap);
  std::array<ReducedCountTable, 2> out;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    out[i] = to_table(finish(part, q, s.back(), targets[i], k_cap), m, q);
  }
  return out;
}

std::array<ReducedCountTable, 2> dispatch(std::int64_t q, const std::vector<std::int64_t>& s, std::int64_t M,
                                          const std::vector<std::int64_t>& targets) {
  switch (width_for(q, static_cast<int>(s.size()))) {
    case Width::U32: return run_targets<std::uint32_t>(q, s, M, targets);
    case Width::U64: return run_targets<std::uint64_t>(q, s, M, targets);
    case Width::U128: return run_targets<u128>(q, s, M, targets);
    case Width::Big: break;
  }
  return run_targets<BigCount>(q, s, M, targets);
}

}  // namespace

ReducedCountTable reduced_counts(const CongruenceLattice& lattice) {
  return dispatch(lattice.q, lattice.s, lattice.modulus(), {lattice.target()})[0];
}

std::array<ReducedCountTable, 2> reduced_counts_both(std::int64_t q, const std::vector<std::int64_t>& s) {
  if (q % 2 != 0) throw std::invalid_argument("reduced_counts_both needs even q");
  return dispatch(q, s, 2 * q, {0, q});
}

std::vector<std::uint64_t> prefix_counts(std::int64_t q, const std::vector<std::int64_t>& s, int h_eff,
                                         std::int64_t k_limit) {
  const int m = static_cast<int>(s.size());
  const std::int64_t k_cap = std::min<std::int64_t>(k_limit, static_cast<std::int64_t>(m) * q);
  if (k_cap < 1) throw std::invalid_argument("prefix length must be positive");
  // Every cell is at most the number of odd vectors with all |a_j| < 2 k_cap.
  if (m * std::log2(2.0 * static_cast<double>(std::min(q, k_cap))) > 63.5) {
    throw TooLarge("prefix counts would overflow 64 bits");
  }
  const std::int64_t M = q % 2 == 1 ? q : 2 * q;
  const std::int64_t target = q % 2 == 1 ? 0 : (h_eff & 1) * q;
  const auto part = leading_coordinates<std::uint64_t>(q, s, M, k_cap);
  const auto raw = finish(part, q, s.back(), target, k_cap);
  std::vector<std::uint64_t> out(raw[0]);
  out.insert(out.end(), raw[1].begin(), raw[1].end());
  return out;
}

BigCount count(const ReducedCountTable& table, int eps, std::int64_t k) {
  BigCount total = 0;
  if (k < 0) return total;
  const int m = table.m();
  for (std::int64_t beta = 0; beta * table.q() <= k; ++beta) {
    const BigCount& reduced = table.at(eps & 1, k - beta * table.q());
    if (reduced == 0) continue;
    total += numtheory::binomial(static_cast<std::uint64_t>(beta + m - 1), static_cast<std::uint64_t>(m - 1)) *
             reduced;
  }
  return total;
}

BigCount count(const CongruenceLattice& lattice, int eps, std::int64_t k) {
  return count(reduced_counts(lattice), eps, k);
}

}  // namespace lensspec::lattice
