// Acceptance run: one PASS/FAIL line per criterion. With an argument, runs
// only that criterion (ctest registers each separately).
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "lensspec/errors.hpp"
#include "lensspec/lattice.hpp"
#include "lensspec/oracle.hpp"
#include "lensspec/search.hpp"
#include "lensspec/spectrum.hpp"
#include "support.hpp"

using namespace lensspec;
using lens::Orientation;
using lens::SpinLabel;
using lens::SpinLensSpace;

namespace {

// Printed families, one block per line: "q: s ; s ; ..." with an optional
// " t0" / " t1" spin tag after each parameter list.
const std::vector<std::string> kDim7 = {
    "32: 1,3,5,15 t0 ; 1,3,5,15 t1",
    "49: 1,6,8,22 ; 1,6,8,20",
    "64: 1,7,9,31 t0 ; 1,7,9,31 t1",
    "75: 1,4,14,16 ; 1,4,11,19",
    "75: 1,4,11,34 ; 1,4,14,31",
    "80: 1,3,9,27 t0 ; 1,9,13,37 t0",
    "81: 1,8,19,37 ; 1,8,26,37",
    "81: 1,8,10,28 ; 1,8,10,26",
    "81: 1,8,10,37 ; 1,8,10,35",
    "96: 1,11,13,47 t0 ; 1,11,13,47 t1",
    "98: 1,13,15,43 t0 ; 1,13,15,41 t1",
    "98: 1,13,15,41 t0 ; 1,13,15,43 t1",
};

const std::vector<std::string> kDim11 = {
    "40: 1,1,1,11,11,11 t0 ; 1,1,9,11,11,19 t0",
    "40: 1,1,11,11,13,17 t0 ; 1,1,3,7,11,11 t0 ; 1,3,7,9,11,19 t0",
    "44: 1,3,5,7,9,19 t0 ; 1,3,5,7,13,15 t0",
    "44: 1,3,5,7,9,19 t1 ; 1,3,5,7,13,15 t1",
    "48: 1,1,5,7,7,13 t0 ; 1,5,7,11,13,19 t0 ; 1,1,7,7,11,19 t0",
    "48: 1,1,7,7,17,23 t0 ; 1,1,1,7,7,7 t0",
};

const std::vector<std::string> kDim15 = {
    "39: 1,2,4,5,7,10,14,16 ; 1,2,4,7,8,10,16,17",
    "52: 1,3,5,7,9,11,17,25 t0 ; 1,3,5,7,9,15,23,25 t1",
    "52: 1,3,5,7,9,11,19,21 t1 ; 1,3,5,7,9,11,17,23 t1",
    "52: 1,3,5,7,9,11,19,21 t0 ; 1,3,5,7,9,11,17,23 t0",
    "52: 1,3,5,7,9,15,23,25 t0 ; 1,3,5,7,9,11,17,25 t1",
    "56: 1,3,5,9,11,13,19,23 t0 ; 1,3,5,9,11,13,15,27 t0",
    "56: 1,3,5,9,11,13,15,27 t1 ; 1,3,5,9,11,13,19,23 t1",
};

const std::vector<std::string> kDim19 = {
    "24: 1,1,1,1,1,5,5,5,5,5 t0 ; 1,1,1,5,5,5,7,7,11,11 t0 ; 1,1,1,1,5,5,5,5,7,11 t0",
    "40: 1,1,1,9,9,11,11,11,19,19 t0 ; 1,1,1,1,1,11,11,11,11,11 t0 ; 1,1,1,1,9,11,11,11,11,19 t0",
    "40: 1,1,1,3,7,9,11,11,11,19 t0 ; 1,1,1,1,3,7,11,11,11,11 t0 ; 1,1,3,7,9,9,11,11,19,19 t0 ; "
    "1,1,1,9,11,11,11,13,17,19 t0 ; 1,1,1,1,11,11,11,11,13,17 t0",
    "40: 1,1,3,3,7,7,9,11,11,19 t0 ; 1,1,3,7,9,11,11,13,17,19 t0 ; 1,1,3,3,7,7,11,11,13,17 t0 ; "
    "1,1,1,3,3,7,7,11,11,11 t0 ; 1,1,1,3,7,11,11,11,13,17 t0 ; 1,1,1,11,11,11,13,13,17,17 t0",
};

using KeySet = std::set<lens::CanonicalKey>;

struct Block {
  std::int64_t q = 0;
  std::vector<SpinLensSpace> members;
  KeySet keys;
};

lens::CanonicalKey key(const SpinLensSpace& x) { return lens::canonical_key(x, Orientation::Unoriented); }

Block parse_block(const std::string& line) {
  Block b;
  const auto colon = line.find(':');
  b.q = std::stoll(line.substr(0, colon));
  std::stringstream rest(line.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ';')) {
    std::stringstream fields(item);
    std::string params, tag;
    fields >> params >> tag;
    std::vector<std::int64_t> s;
    std::stringstream ps(params);
    std::string v;
    while (std::getline(ps, v, ',')) s.push_back(std::stoll(v));
    const SpinLabel label = tag.empty() ? SpinLabel::unique() : SpinLabel::even(tag == "t1" ? 1 : 0);
    b.members.push_back(lens::make_spin_lens(b.q, std::move(s), label));
    b.keys.insert(key(b.members.back()));
  }
  return b;
}

std::string describe(const std::vector<SpinLensSpace>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + lens::to_string(xs[i]);
  return out + "}";
}

std::string describe(const KeySet& keys) {
  std::vector<SpinLensSpace> xs;
  for (const auto& k : keys) xs.push_back(lens::representative(k));
  return describe(xs);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Computed {
  std::int64_t q;
  KeySet keys;
  bool trivial;
};

std::vector<Computed> census(int dimension, std::int64_t q_max, double& seconds) {
  const auto start = std::chrono::steady_clock::now();
  const auto results = search::run_census(dimension, 1, q_max, Orientation::Unoriented);
  seconds = seconds_since(start);
  std::vector<Computed> out;
  for (const auto& r : results) {
    for (const auto& f : r.families) {
      KeySet keys;
      for (const auto& x : f.members) keys.insert(key(x));
      out.push_back({r.q, std::move(keys), f.trivial});
    }
  }
  return out;
}

// Criterion 1: the printed dimension-7 families, exactly.
bool criterion_table_dim7(std::ostream& log) {
  double secs = 0;
  const auto computed = census(7, 100, secs);
  std::set<std::pair<std::int64_t, KeySet>> printed, found;
  for (const auto& line : kDim7) {
    const auto b = parse_block(line);
    printed.emplace(b.q, b.keys);
  }
  for (const auto& c : computed) found.emplace(c.q, c.keys);
  int exact = 0;
  for (const auto& p : printed) {
    if (found.count(p)) {
      ++exact;
    } else {
      log << "  printed family not found: q=" << p.first << " " << describe(p.second) << '\n';
    }
  }
  for (const auto& f : found) {
    if (!printed.count(f)) log << "  computed family not printed: q=" << f.first << " " << describe(f.second) << '\n';
  }
  log << "  " << exact << " of " << printed.size() << " printed families reproduced; " << found.size()
      << " computed; census time " << secs << " s\n";
  return printed == found;
}

// Criterion 2: printed rows of the higher-dimensional blocks are contained in computed families.
bool criterion_table_higher(std::ostream& log) {
  bool ok = true;
  const std::vector<std::tuple<int, std::int64_t, const std::vector<std::string>*>> runs{
      {11, 50, &kDim11}, {15, 60, &kDim15}, {19, 40, &kDim19}};
  for (const auto& [dim, q_max, lines] : runs) {
    double secs = 0;
    const auto computed = census(dim, q_max, secs);
    int matched = 0;
    std::set<std::size_t> used;
    for (const auto& line : *lines) {
      const auto b = parse_block(line);
      bool hit = false;
      for (std::size_t i = 0; i < computed.size(); ++i) {
        const auto& c = computed[i];
        if (c.q == b.q && std::includes(c.keys.begin(), c.keys.end(), b.keys.begin(), b.keys.end())) {
          hit = true;
          used.insert(i);
          if (c.keys != b.keys) {
            log << "  n=" << dim << " q=" << b.q << ": printed " << describe(b.keys) << " lies in the larger family "
                << describe(c.keys) << '\n';
          }
        }
      }
      matched += hit;
      if (!hit) {
        ok = false;
        log << "  n=" << dim << " printed family not found: q=" << b.q << " " << describe(b.keys) << '\n';
      }
    }
    for (std::size_t i = 0; i < computed.size(); ++i) {
      if (!used.count(i)) {
        log << "  n=" << dim << " note: computed family not printed: q=" << computed[i].q << " "
            << describe(computed[i].keys) << (computed[i].trivial ? " [trivial]" : "") << '\n';
      }
    }
    log << "  n=" << dim << ", q<=" << q_max << ": " << matched << " of " << lines->size()
        << " printed families contained in " << computed.size() << " computed; " << secs << " s\n";
  }
  return ok;
}

// Criterion 3: the sphere, m = 2..8, k = 0..100.
bool criterion_sphere(std::ostream& log) {
  int checked = 0;
  for (int m = 2; m <= 8; ++m) {
    const auto x = lens::make_spin_lens(1, std::vector<std::int64_t>(m, 1), SpinLabel::unique());
    const auto table = spectrum::spectrum_table(x, 100);
    for (const auto& row : table.rows) {
      const BigCount want = numtheory::pow2(m - 1) * numtheory::binomial(row.k + 2 * m - 2, 2 * m - 2);
      if (row.plus != want || row.minus != want) {
        log << "  m=" << m << " k=" << row.k << ": got " << row.minus << "/" << row.plus << ", want " << want << '\n';
        return false;
      }
      checked += 2;
    }
  }
  log << "  " << checked << " multiplicities exact\n";
  return true;
}

// Criterion 4: the generating-function oracle on 25 random spaces, every spin label.
bool criterion_oracle(std::ostream& log) {
  std::mt19937_64 rng(fixture::kSeed);
  double worst_delta = 0, worst_imag = 0;
  int spaces = 0, runs = 0;
  bool ok = true;
  while (spaces < 25) {
    const std::int64_t q = fixture::uniform(rng, 1, 30);
    const int m = static_cast<int>(fixture::uniform(rng, 2, 4));
    const auto params = lens::make_lens(q, fixture::random_params(rng, q, m));
    const auto labels = lens::spin_structures(params);
    if (labels.empty()) continue;
    ++spaces;
    for (const auto& label : labels) {
      const auto x = lens::make_spin_lens(params, label);
      const auto rep = oracle::oracle_compare(x, 40, 1e-6);
      ++runs;
      worst_delta = std::max(worst_delta, rep.max_delta);
      worst_imag = std::max(worst_imag, rep.max_imag);
      if (!rep.pass || !rep.consistent || rep.max_imag >= 1e-8) {
        ok = false;
        log << "  mismatch on " << lens::to_string(x) << ": delta " << rep.max_delta << " imag " << rep.max_imag
            << (rep.swapped ? " (matches only swapped)" : "") << '\n';
      }
    }
  }
  log << "  " << spaces << " spaces, " << runs << " spin structures; max |delta| " << worst_delta << ", max |imag| "
      << worst_imag << '\n';
  return ok;
}

// Criterion 5: counts against brute force for every parameter tuple with q <= 8, m <= 3.
bool criterion_brute(std::ostream& log) {
  int lattices = 0, values = 0;
  for (std::int64_t q = 1; q <= 8; ++q) {
    for (int m = 2; m <= 3; ++m) {
      const auto u = numtheory::units(q);
      std::vector<std::int64_t> s(m);
      std::function<bool(int)> rec = [&](int j) -> bool {
        if (j == m) {
          for (const auto& label : lens::spin_structures(lens::make_lens(q, s))) {
            const auto lat = lattice::lattice_of(lens::make_spin_lens(q, s, label));
            const auto table = lattice::reduced_counts(lat);
            const auto brute = oracle::brute_counts(lat, 3 * q);
            ++lattices;
            for (int e : {0, 1}) {
              for (std::int64_t k = 0; k <= 3 * q; ++k) {
                ++values;
                if (lattice::count(table, e, k) != brute[e][k]) {
                  log << "  q=" << q << " s=" << lens::to_string(lens::make_lens(q, s)) << " eps=" << e << " k=" << k
                      << ": " << lattice::count(table, e, k) << " vs " << brute[e][k] << '\n';
                  return false;
                }
              }
            }
          }
          return true;
        }
        for (const auto& v : u) {
          s[j] = v.value() == 0 ? q : v.value();
          if (!rec(j + 1)) return false;
        }
        return true;
      };
      if (!rec(0)) return false;
    }
  }
  log << "  " << lattices << " lattices, " << values << " counts equal\n";
  return true;
}

// Criterion 6: the first infinite family at r = 1, 2, 3.
bool criterion_thm51(std::ostream& log) {
  for (int r = 1; r <= 3; ++r) {
    const auto start = std::chrono::steady_clock::now();
    const auto members = search::family_thm51(r);
    try {
      const auto rep = search::verify_family(members, search::Forbid::AnyIsometry);
      log << "  r=" << r << ": " << members.size() << " members, m=" << members[0].m() << ", " << rep.checks.size()
          << " checks, " << seconds_since(start) << " s\n";
    } catch (const VerificationFailed& e) {
      log << "  r=" << r << ": " << e.what() << '\n';
      return false;
    }
  }
  return true;
}

// Criterion 7: the spin pair at t = 1, 2, 3.
bool criterion_thm52(std::ostream& log) {
  for (int t = 1; t <= 3; ++t) {
    const auto [a, b] = search::family_thm52(t);
    if (spectrum::fingerprint(a) != spectrum::fingerprint(b)) {
      log << "  t=" << t << ": fingerprints differ\n";
      return false;
    }
    try {
      search::verify_family({a, b}, search::Forbid::SpinIsometry);
    } catch (const VerificationFailed& e) {
      log << "  t=" << t << ": " << e.what() << '\n';
      return false;
    }
    log << "  t=" << t << ": " << lens::to_string(a.lens) << " tau_0 ~ tau_1, no spin-transporting isometry among "
        << numtheory::units(a.q()).size() << " x 24 x 16 candidates\n";
  }
  return true;
}

// Criterion 8: the third family at r = 7, 9, 11, and the q = 49 printed pair.
bool criterion_thm53(std::ostream& log) {
  for (int r : {7, 9, 11}) {
    for (const auto& [a, b] : search::family_thm53(r)) {
      try {
        search::verify_family({a, b}, search::Forbid::AnyIsometry);
      } catch (const VerificationFailed& e) {
        log << "  r=" << r << ": " << e.what() << '\n';
        return false;
      }
      log << "  r=" << r << ": " << lens::to_string(a) << " ~ " << lens::to_string(b) << '\n';
    }
  }
  const auto [a, b] = search::family_thm53(7).front();
  const KeySet generated{key(a), key(b)};
  const KeySet printed = parse_block(kDim7[1]).keys;
  log << "  r=7 canonical forms " << describe(generated) << (generated == printed ? " equal" : " differ from")
      << " the printed q=49 pair\n";
  return generated == printed;
}

// Criterion 9: no isospectral pairs in dimension 5 for q <= 101.
bool criterion_dim5(std::ostream& log) {
  double secs = 0;
  const auto computed = census(5, 101, secs);
  for (const auto& c : computed) log << "  q=" << c.q << ": " << describe(c.keys) << '\n';
  log << "  " << computed.size() << " families for q <= 101; " << secs << " s\n";
  return computed.empty();
}

// Criterion 10: the spin swapping isometry of L(16; 1,3,5,7).
bool criterion_spin_swap(std::ostream& log) {
  const auto t0 = lens::make_spin_lens(16, {1, 3, 5, 7}, SpinLabel::even(0));
  const auto t1 = lens::make_spin_lens(16, {1, 3, 5, 7}, SpinLabel::even(1));
  const auto found = lens::find_isometry(t0, t1, lens::IsometryMode::Any);
  if (!found) {
    log << "  no witness found\n";
    return false;
  }
  lens::IsometryWitness known;
  known.ell = 11;
  known.sigma = {2, 0, 3, 1};
  known.eps = {-1, 1, 1, -1};
  known.orientation = 1;
  known.spin_shift = 1;
  const bool found_ok = lens::witness_is_valid(t0, t1, *found);
  const bool known_ok = lens::witness_is_valid(t0, t1, known);
  log << "  search returned l=" << found->ell << ", orientation " << found->orientation << ", rho "
      << found->spin_shift.value_or(-1) << (found_ok ? " (valid)" : " (INVALID)") << "; l=11 witness "
      << (known_ok ? "valid" : "INVALID") << '\n';
  return found_ok && known_ok;
}

// Criterion 11: the randomized property suites, run as their own binary.
bool criterion_properties(std::ostream& log) {
  const std::string cmd = std::string("\"") + LENSSPEC_PROPERTY_TESTS + "\" --gtest_brief=1";
  const int status = std::system(cmd.c_str());
  log << "  " << LENSSPEC_PROPERTY_TESTS << " exited with status " << status << '\n';
  return status == 0;
}

struct Criterion {
  const char* title;
  bool (*run)(std::ostream&);
};

const Criterion kCriteria[] = {
    {"Table 1, dimension 7, q <= 100: exact families", criterion_table_dim7},
    {"Table 1, dimensions 11/15/19: printed families contained", criterion_table_higher},
    {"sphere multiplicities, m = 2..8, k <= 100", criterion_sphere},
    {"generating-function oracle, 25 random spaces, k <= 40", criterion_oracle},
    {"counts equal brute force, q <= 8, m <= 3, k <= 3q", criterion_brute},
    {"first family, r = 1, 2, 3", criterion_thm51},
    {"spin pair family, t = 1, 2, 3", criterion_thm52},
    {"third family, r = 7, 9, 11", criterion_thm53},
    {"no families in dimension 5, q <= 101", criterion_dim5},
    {"spin swapping isometry of L(16; 1,3,5,7)", criterion_spin_swap},
    {"randomized property suites", criterion_properties},
};

}  // namespace

int main(int argc, char** argv) {
  const int total = static_cast<int>(std::size(kCriteria));
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > total) {
      std::cerr << "usage: " << argv[0] << " [criterion 1-" << total << "]\n";
      return 2;
    }
  }
  int failed = 0;
  for (int i = 1; i <= total; ++i) {
    if (only && i != only) continue;
    std::ostringstream log;
    bool pass = false;
    try {
      pass = kCriteria[i - 1].run(log);
    } catch (const std::exception& e) {
      log << "  exception: " << e.what() << '\n';
    }
    std::cout << log.str() << (pass ? "PASS" : "FAIL") << " criterion " << i << ": " << kCriteria[i - 1].title
              << std::endl;
    failed += !pass;
  }
  return failed == 0 ? 0 : 1;
}
