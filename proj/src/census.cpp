#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "lensspec/errors.hpp"
#include "lensspec/search.hpp"
#include "parallel.hpp"

namespace lensspec::search {

namespace {

int m_of(int dimension) {
  if (dimension < 3 || dimension % 2 == 0) {
    throw std::invalid_argument("dimension must be odd and at least 3, got " + std::to_string(dimension));
  }
  return (dimension + 1) / 2;
}

// Calls emit(tuple) for every (1, w_2 <= ... <= w_m) with w_j units in [1, q/2].
template <class Emit>
void sorted_unit_tuples(std::int64_t q, int m, Emit emit) {
  std::vector<std::int64_t> half;
  for (const auto& u : numtheory::units(q)) {
    if (u.value() >= 1 && u.value() <= q - u.value()) half.push_back(u.value());
  }
  std::vector<std::int64_t> tuple(m, 1);
  auto rec = [&](auto&& self, int j, std::size_t from) -> void {
    if (j == m) {
      emit(tuple);
      return;
    }
    for (std::size_t i = from; i < half.size(); ++i) {
      tuple[j] = half[i];
      self(self, j + 1, i);
    }
  };
  rec(rec, 1, 0);
}

// Grouping key for a table: in Unoriented mode the smaller of the table and
// its row swap, so that mirror images land together.
template <class Rows>
Rows oriented_or_swapped(Rows rows, std::size_t half, Orientation mode) {
  if (mode == Orientation::Oriented) return rows;
  Rows swapped(rows.begin() + static_cast<std::ptrdiff_t>(half), rows.end());
  swapped.insert(swapped.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(half));
  return std::min(rows, swapped);
}

lattice::ReducedCountTable normalized(const lattice::ReducedCountTable& table, Orientation mode) {
  if (mode == Orientation::Oriented) return table;
  const auto& r0 = table.row(0);
  const auto& r1 = table.row(1);
  if (!std::lexicographical_compare(r1.begin(), r1.end(), r0.begin(), r0.end())) return table;
  lattice::ReducedCountTable swapped(table.m(), table.q());
  for (std::int64_t k = 0; k < table.size(); ++k) {
    swapped.at(0, k) = table.at(1, k);
    swapped.at(1, k) = table.at(0, k);
  }
  return swapped;
}

// Screening depth: small enough to be cheap, deep enough to separate most classes.
std::int64_t screening_depth(std::int64_t q, int m) {
  std::int64_t depth = 8;
  while (depth > 1 && m * std::log2(2.0 * static_cast<double>(std::min(q, depth))) > 63.0) --depth;
  return depth;
}

}  // namespace

std::vector<SpinLensSpace> enumerate_classes(int dimension, std::int64_t q, Orientation mode) {
  const int m = m_of(dimension);
  if (q < 1) throw std::invalid_argument("q must be positive");
  const auto probe = lens::make_lens(q, std::vector<std::int64_t>(m, 1));
  const auto labels = lens::spin_structures(probe);
  if (labels.empty()) {
    throw NoSpinStructure("no spin structure (q even, m odd): q = " + std::to_string(q) +
                          ", dimension " + std::to_string(dimension));
  }

  std::vector<std::pair<lens::CanonicalKey, SpinLensSpace>> found;
  auto consider = [&](const std::vector<std::int64_t>& tuple) {
    for (const auto& label : labels) {
      auto x = lens::make_spin_lens(q, tuple, label);
      if (lens::is_canonical(x, mode)) {
        found.emplace_back(lens::canonical_key(x, mode), std::move(x));
      }
    }
  };
  if (q <= 2) {
    consider(std::vector<std::int64_t>(m, 1));
  } else {
    sorted_unit_tuples(q, m, [&](std::vector<std::int64_t>& tuple) {
      consider(tuple);
      if (mode == Orientation::Oriented) {
        const std::int64_t last = tuple.back();
        tuple.back() = q - last;
        consider(tuple);
        tuple.back() = last;
      }
    });
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<SpinLensSpace> out;
  out.reserve(found.size());
  for (auto& [key, x] : found) out.push_back(std::move(x));
  return out;
}

CensusResult run_census_q(int dimension, std::int64_t q, Orientation mode, const CensusOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const unsigned threads = options.threads == 0 ? default_threads() : options.threads;
  CensusResult result;
  result.dimension = dimension;
  result.q = q;
  result.mode = mode;

  const std::vector<SpinLensSpace> classes = enumerate_classes(dimension, q, mode);
  result.totals.classes = static_cast<std::int64_t>(classes.size());
  const int m = m_of(dimension);
  const bool even = q % 2 == 0;

  // Canonical parameters lie in [1, q), so h_eff is the label itself and the
  // two labels of one parameter tuple share a dynamic program.
  std::map<std::vector<std::int64_t>, std::size_t> lens_index;
  std::vector<std::vector<std::int64_t>> lenses;
  std::vector<std::size_t> lens_of(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& s = classes[i].lens.s();
    auto [it, inserted] = lens_index.try_emplace(s, lenses.size());
    if (inserted) lenses.push_back(s);
    lens_of[i] = it->second;
  }

  // Stage 1: cheap prefix of the table. Equal tables have equal prefixes.
  const std::int64_t depth = screening_depth(q, m);
  using Prefix = std::vector<std::uint64_t>;
  const auto prefixes = detail::parallel_map<std::array<Prefix, 2>>(lenses.size(), threads, [&](std::size_t i) {
    std::array<Prefix, 2> out;
    out[0] = lattice::prefix_counts(q, lenses[i], 0, depth);
    if (even) out[1] = lattice::prefix_counts(q, lenses[i], 1, depth);
    return out;
  });
  std::map<Prefix, std::vector<std::size_t>> screened;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const Prefix& raw = prefixes[lens_of[i]][even ? classes[i].spin.h() : 0];
    screened[oriented_or_swapped(raw, raw.size() / 2, mode)].push_back(i);
  }

  // Stage 2: full tables for every class that shares its prefix.
  std::vector<std::size_t> suspects;
  for (const auto& [prefix, members] : screened) {
    if (members.size() >= 2) suspects.insert(suspects.end(), members.begin(), members.end());
  }
  std::sort(suspects.begin(), suspects.end());
  std::vector<std::size_t> suspect_lenses;
  for (std::size_t i : suspects) suspect_lenses.push_back(lens_of[i]);
  std::sort(suspect_lenses.begin(), suspect_lenses.end());
  suspect_lenses.erase(std::unique(suspect_lenses.begin(), suspect_lenses.end()), suspect_lenses.end());

  const auto tables = detail::parallel_map<std::array<lattice::ReducedCountTable, 2>>(
      suspect_lenses.size(), threads, [&](std::size_t i) {
        const auto& s = lenses[suspect_lenses[i]];
        if (even) return lattice::reduced_counts_both(q, s);
        return std::array<lattice::ReducedCountTable, 2>{lattice::reduced_counts(lattice::make_lattice(q, s)),
                                                         lattice::ReducedCountTable()};
      });
  result.totals.fingerprints = static_cast<std::int64_t>(suspects.size());

  auto table_of = [&](std::size_t cls) -> const lattice::ReducedCountTable& {
    const auto pos = std::lower_bound(suspect_lenses.begin(), suspect_lenses.end(), lens_of[cls]);
    return tables[static_cast<std::size_t>(pos - suspect_lenses.begin())][even ? classes[cls].spin.h() : 0];
  };

  // Group by digest, then split each digest bucket by exact table equality.
  struct Group {
    lattice::ReducedCountTable table;
    std::vector<std::size_t> members;
  };
  std::map<std::uint64_t, std::vector<Group>> buckets;
  for (std::size_t cls : suspects) {
    lattice::ReducedCountTable key = normalized(table_of(cls), mode);
    auto& bucket = buckets[key.digest()];
    auto hit = std::find_if(bucket.begin(), bucket.end(), [&](const Group& g) { return g.table == key; });
    if (hit == bucket.end()) {
      bucket.push_back(Group{std::move(key), {cls}});
    } else {
      hit->members.push_back(cls);
    }
  }

  std::vector<std::pair<std::size_t, IsospectralFamily>> ordered;
  for (auto& [digest, bucket] : buckets) {
    for (auto& group : bucket) {
      if (group.members.size() < 2) continue;
      std::sort(group.members.begin(), group.members.end());
      IsospectralFamily family;
      family.digest = digest;
      for (std::size_t cls : group.members) family.members.push_back(classes[cls]);
      for (std::size_t a = 0; a < family.members.size(); ++a) {
        for (std::size_t b = a + 1; b < family.members.size(); ++b) {
          if (lens::find_isometry(family.members[a], family.members[b], lens::IsometryMode::Preserving)) {
            family.trivial_pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
          }
        }
      }
      family.trivial = !family.trivial_pairs.empty();
      if (options.keep_tables) family.reduced_table = group.table;
      ordered.emplace_back(group.members.front(), std::move(family));
    }
  }
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [first, family] : ordered) result.families.push_back(std::move(family));

  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<CensusResult> run_census(int dimension, std::int64_t q_min, std::int64_t q_max, Orientation mode,
                                     const CensusOptions& options) {
  const int m = m_of(dimension);
  if (q_min < 1 || q_max < q_min) throw std::invalid_argument("empty or invalid q range");
  std::vector<CensusResult> out;
  for (std::int64_t q = q_min; q <= q_max; ++q) {
    if (q % 2 == 0 && m % 2 == 1) {
      CensusResult skipped;
      skipped.dimension = dimension;
      skipped.q = q;
      skipped.mode = mode;
      skipped.note = "no spin structure (q even, m odd)";
      out.push_back(std::move(skipped));
      continue;
    }
    out.push_back(run_census_q(dimension, q, mode, options));
  }
  return out;
}

std::string mode_name(Orientation mode) { return mode == Orientation::Oriented ? "oriented" : "unoriented"; }

Orientation parse_mode(const std::string& name) {
  if (name == "oriented") return Orientation::Oriented;
  if (name == "unoriented") return Orientation::Unoriented;
  throw std::invalid_argument("unknown mode '" + name + "' (expected oriented or unoriented)");
}

}  // namespace lensspec::search
