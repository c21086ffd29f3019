#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lensspec/lattice.hpp"
#include "lensspec/lens.hpp"
#include "lensspec/spectrum.hpp"

namespace lensspec::search {

using lens::Orientation;
using lens::SpinLensSpace;

/// One representative per canonical key, in key order.
/// Throws NoSpinStructure for q even and m odd, std::invalid_argument for a
/// bad dimension.
std::vector<SpinLensSpace> enumerate_classes(int dimension, std::int64_t q, Orientation mode);

struct IsospectralFamily {
  std::uint64_t digest = 0;
  std::vector<SpinLensSpace> members;
  /// Some pair of members is related by an orientation preserving,
  /// spin-transporting isometry.
  bool trivial = false;
  std::vector<std::pair<int, int>> trivial_pairs;
  /// Fingerprint of members[0]; present only when requested.
  std::optional<lattice::ReducedCountTable> reduced_table;

  friend bool operator==(const IsospectralFamily&, const IsospectralFamily&) = default;
};

struct CensusTotals {
  std::int64_t classes = 0;
  std::int64_t fingerprints = 0;

  friend bool operator==(const CensusTotals&, const CensusTotals&) = default;
};

struct CensusResult {
  int dimension = 0;
  std::int64_t q = 0;
  Orientation mode = Orientation::Unoriented;
  std::vector<IsospectralFamily> families;
  CensusTotals totals;
  std::string note;      ///< why this q was skipped, if it was
  double seconds = 0.0;  ///< wall time; not persisted, not compared

  friend bool operator==(const CensusResult& a, const CensusResult& b) {
    return a.dimension == b.dimension && a.q == b.q && a.mode == b.mode && a.families == b.families &&
           a.totals == b.totals && a.note == b.note;
  }
};

struct CensusOptions {
  bool keep_tables = false;
  /// 0 picks LENSSPEC_THREADS or the hardware concurrency.
  unsigned threads = 0;
};

/// Fingerprints every class and groups equal fingerprints. In Unoriented
/// mode a class also joins the family of any class whose table has the two
/// parity rows swapped (equal spectra after reversing one orientation).
CensusResult run_census_q(int dimension, std::int64_t q, Orientation mode, const CensusOptions& options = {});

/// One result per q in [q_min, q_max]; q without spin structures yields an
/// empty result with a note.
std::vector<CensusResult> run_census(int dimension, std::int64_t q_min, std::int64_t q_max, Orientation mode,
                                     const CensusOptions& options = {});

// Infinite families.

/// q = 40, m = 4r + 2, members p = 0..r with spin tau_0.
std::vector<SpinLensSpace> family_thm51(int r);

/// L(32t; 1, 1+4t, 1+16t, 1+28t) with tau_0 and tau_1.
std::pair<SpinLensSpace, SpinLensSpace> family_thm52(int t);

/// L(r^2 t; 1, 1+rt, 1+2rt, 1+4rt) against L(r^2 t; 1, 1-rt, 1-2rt, 1-4rt),
/// parameters reduced into [0, q). For even q both spin pairings
/// (tau_0, tau_0') and (tau_1, tau_1') are returned. r must be odd and at
/// least 7; t > 1 needs `experimental`.
std::vector<std::pair<SpinLensSpace, SpinLensSpace>> family_thm53(int r, int t = 1, bool experimental = false);

enum class Forbid {
  None,          ///< only isospectrality is checked
  AnyIsometry,   ///< no isometry of the underlying lens spaces at all
  SpinIsometry,  ///< no isometry carrying one spin structure to the other
};

struct FamilyReport {
  std::vector<std::string> checks;
  bool pass = true;
};

/// Pairwise fingerprint equality plus the requested non-isometry check.
/// Throws VerificationFailed naming the first failing pair, Mismatch when
/// (q, m) differ, std::invalid_argument for fewer than two members.
FamilyReport verify_family(const std::vector<SpinLensSpace>& members, Forbid forbid);

// Persistence.

/// JSON document {"format_version": 1, "censuses": [...]}. Throws IoError.
void save_results(const std::vector<CensusResult>& results, const std::filesystem::path& path);

/// Throws IoError, or FormatError with line and column.
std::vector<CensusResult> load_results(const std::filesystem::path& path);

/// In-memory forms of the above.
std::string dump_results(const std::vector<CensusResult>& results);
std::vector<CensusResult> parse_results(const std::string& text);

/// One row per family member:
/// dimension,q,mode,family,digest,member,params,spin,trivial
std::string results_csv(const std::vector<CensusResult>& results);

std::string mode_name(Orientation mode);
/// "oriented" or "unoriented"; throws std::invalid_argument.
Orientation parse_mode(const std::string& name);

/// Thread count from LENSSPEC_THREADS, else hardware concurrency (at least 1).
unsigned default_threads();

}  // namespace lensspec::search
