#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lensspec/errors.hpp"
#include "lensspec/lens.hpp"
#include "lensspec/oracle.hpp"
#include "lensspec/search.hpp"
#include "lensspec/spectrum.hpp"

namespace lensspec::cli {

namespace {

using lens::SpinLensSpace;

/// Validation failure inside a subcommand; reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::int64_t> parse_params(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw UsageError("cannot parse parameter '" + item + "' in '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty parameter list");
  return out;
}

/// An omitted tag means the unique structure, which exists only for odd q.
SpinLensSpace make_space(std::int64_t q, const std::string& params, const std::optional<std::string>& spin) {
  auto lens = lens::make_lens(q, parse_params(params));
  if (spin) return lens::make_spin_lens(std::move(lens), lens::parse_spin_tag(*spin));
  if (q % 2 == 1) return lens::make_spin_lens(std::move(lens), lens::SpinLabel::unique());
  if (lens.m() % 2 == 1) return lens::make_spin_lens(std::move(lens), lens::SpinLabel::even(0));
  throw UsageError("q is even: choose the spin structure with --spin h0 or --spin h1");
}

/// "q:s1,...,sm" or "q:s1,...,sm:tag".
SpinLensSpace parse_space_spec(const std::string& spec) {
  const auto first = spec.find(':');
  if (first == std::string::npos) throw UsageError("expected q:s1,...,sm[:spin], got '" + spec + "'");
  const auto second = spec.find(':', first + 1);
  const auto q = parse_params(spec.substr(0, first));
  if (q.size() != 1) throw UsageError("bad q in '" + spec + "'");
  const std::string params = spec.substr(first + 1, second == std::string::npos ? std::string::npos : second - first - 1);
  std::optional<std::string> spin;
  if (second != std::string::npos) spin = spec.substr(second + 1);
  return make_space(q[0], params, spin);
}

std::string canonical_string(const SpinLensSpace& x, lens::Orientation mode) {
  return lens::to_string(lens::representative(lens::canonical_key(x, mode)));
}

// spectrum

struct SpectrumArgs {
  std::int64_t q = 1;
  std::string s;
  std::optional<std::string> spin;
  std::int64_t k_max = 10;
  std::string format = "plain";
};

int cmd_spectrum(const SpectrumArgs& a, std::ostream& out) {
  const SpinLensSpace x = make_space(a.q, a.s, a.spin);
  const auto table = spectrum::spectrum_table(x, a.k_max);
  if (a.format == "json") {
    nlohmann::ordered_json doc;
    doc["format_version"] = 1;
    doc["space"] = {{"q", x.q()}, {"s", x.lens.s()}, {"spin", lens::spin_tag(x.spin)}};
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
      rows.push_back({{"k", r.k}, {"two_lambda", r.value2}, {"minus", r.minus.str()}, {"plus", r.plus.str()}});
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
  } else if (a.format == "csv") {
    out << "k,two_lambda,mult_minus,mult_plus\n";
    for (const auto& r : table.rows) out << r.k << ',' << r.value2 << ',' << r.minus << ',' << r.plus << '\n';
  } else {
    out << "# " << lens::to_string(x) << '\n';
    out << std::setw(6) << "k" << std::setw(10) << "2*lambda" << std::setw(24) << "mult(-lambda)" << std::setw(24)
        << "mult(+lambda)" << '\n';
    for (const auto& r : table.rows) {
      out << std::setw(6) << r.k << std::setw(10) << r.value2 << std::setw(24) << r.minus.str() << std::setw(24)
          << r.plus.str() << '\n';
    }
  }
  return kOk;
}

// isospec

struct IsospecArgs {
  std::string a;
  std::string b;
  bool unoriented = false;
};

int cmd_isospec(const IsospecArgs& args, std::ostream& out) {
  const SpinLensSpace x = parse_space_spec(args.a);
  const SpinLensSpace y = parse_space_spec(args.b);
  if (x.q() != y.q() || x.m() != y.m()) {
    out << "not isospectral: " << lens::to_string(x) << " and " << lens::to_string(y)
        << " differ in q or dimension\n";
    return kNegative;
  }
  const auto fx = spectrum::fingerprint(x);
  const auto fy = spectrum::fingerprint(y);
  if (spectrum::dirac_isospectral(fx, fy)) {
    out << "isospectral\n";
    return kOk;
  }
  if (spectrum::inverse_isospectral(fx, fy)) {
    if (args.unoriented) {
      out << "isospectral (inverse-isospectral: spectra agree after reversing one orientation)\n";
      return kOk;
    }
    out << "not isospectral (inverse-isospectral: spectra agree after reversing one orientation; "
           "use --unoriented)\n";
    return kNegative;
  }
  out << "not isospectral\n";
  return kNegative;
}

// search

struct SearchArgs {
  int dimension = 0;
  std::int64_t q_min = 1;
  std::int64_t q_max = 0;
  std::string mode = "unoriented";
  std::string output;
  std::string csv;
  bool tables = false;
  unsigned threads = 0;
};

int cmd_search(const SearchArgs& a, std::ostream& out, std::ostream& err) {
  if (a.q_max < a.q_min) throw UsageError("--q-max must be at least --q-min");
  search::CensusOptions options;
  options.keep_tables = a.tables;
  options.threads = a.threads;
  const auto mode = search::parse_mode(a.mode);
  const auto results = search::run_census(a.dimension, a.q_min, a.q_max, mode, options);

  std::size_t families = 0, nontrivial = 0;
  for (const auto& r : results) {
    for (const auto& f : r.families) {
      ++families;
      if (!f.trivial) ++nontrivial;
      out << "q=" << r.q << ':';
      for (std::size_t j = 0; j < f.members.size(); ++j) out << (j ? " ~ " : " ") << lens::to_string(f.members[j]);
      if (f.trivial) out << "  [trivial]";
      out << '\n';
    }
  }
  if (families == 0) {
    out << "no families found\n";
  } else {
    out << families << (families == 1 ? " family (" : " families (") << nontrivial << " nontrivial), dimension "
        << a.dimension << ", q in [" << a.q_min << ", " << a.q_max << "], " << a.mode << '\n';
  }
  if (!a.output.empty()) {
    search::save_results(results, a.output);
    err << "wrote " << a.output << '\n';
  }
  if (!a.csv.empty()) {
    std::ofstream csv(a.csv, std::ios::binary | std::ios::trunc);
    if (!csv) throw IoError("cannot open " + a.csv + " for writing");
    csv << search::results_csv(results);
    err << "wrote " << a.csv << '\n';
  }
  return kOk;
}

// family

struct FamilyArgs {
  int theorem = 0;
  int r = 1;
  int t = 1;
  bool verify = false;
  bool experimental = false;
};

void list_members(const std::vector<SpinLensSpace>& members, std::ostream& out) {
  for (const auto& x : members) {
    out << "  " << lens::to_string(x) << "    canonical " << canonical_string(x, lens::Orientation::Unoriented)
        << '\n';
  }
}

bool report(const std::vector<SpinLensSpace>& members, search::Forbid forbid, std::ostream& out) {
  try {
    const auto rep = search::verify_family(members, forbid);
    for (const auto& line : rep.checks) out << "  ok: " << line << '\n';
    return rep.pass;
  } catch (const VerificationFailed& e) {
    out << "  FAIL: " << e.what() << '\n';
    return false;
  }
}

/// Both members of a pair must share one family of the dimension-7 census at their q.
bool census_contains(const SpinLensSpace& a, const SpinLensSpace& b, std::ostream& out) {
  const auto census = search::run_census_q(2 * a.m() - 1, a.q(), lens::Orientation::Unoriented);
  const auto ka = lens::canonical_key(a, lens::Orientation::Unoriented);
  const auto kb = lens::canonical_key(b, lens::Orientation::Unoriented);
  for (const auto& f : census.families) {
    bool has_a = false, has_b = false;
    for (const auto& x : f.members) {
      const auto k = lens::canonical_key(x, lens::Orientation::Unoriented);
      has_a = has_a || k == ka;
      has_b = has_b || k == kb;
    }
    if (has_a && has_b) {
      out << "  ok: canonical forms " << lens::to_string(lens::representative(ka)) << " and "
          << lens::to_string(lens::representative(kb)) << " form a family of the q=" << a.q() << " census\n";
      return true;
    }
  }
  out << "  FAIL: the pair is not a family of the q=" << a.q() << " census\n";
  return false;
}

int cmd_family(const FamilyArgs& a, std::ostream& out) {
  bool pass = true;
  if (a.theorem == 51) {
    if (a.r < 1) throw UsageError("-r must be at least 1");
    const auto members = search::family_thm51(a.r);
    out << "family 51, r=" << a.r << ": " << members.size() << " members, dimension " << 2 * members[0].m() - 1
        << '\n';
    list_members(members, out);
    if (a.verify) pass = report(members, search::Forbid::AnyIsometry, out);
  } else if (a.theorem == 52) {
    if (a.t < 1) throw UsageError("-t must be at least 1");
    const auto [x, y] = search::family_thm52(a.t);
    out << "family 52, t=" << a.t << '\n';
    list_members({x, y}, out);
    if (a.verify) pass = report({x, y}, search::Forbid::SpinIsometry, out);
  } else if (a.theorem == 53) {
    if (a.r < 7 || a.r % 2 == 0) throw UsageError("-r must be odd and at least 7");
    if (a.t < 1) throw UsageError("-t must be at least 1");
    if (a.t > 1 && !a.experimental) throw UsageError("-t > 1 is experimental; pass --experimental");
    const auto pairs = search::family_thm53(a.r, a.t, a.experimental);
    out << "family 53, r=" << a.r << ", t=" << a.t << ": " << pairs.size() << (pairs.size() == 1 ? " pair" : " pairs")
        << '\n';
    for (const auto& [x, y] : pairs) {
      list_members({x, y}, out);
      if (a.verify) {
        pass = report({x, y}, search::Forbid::AnyIsometry, out) && pass;
        pass = census_contains(x, y, out) && pass;
      }
    }
  } else {
    throw UsageError("theorem must be 51, 52 or 53");
  }
  if (!a.verify) return kOk;
  out << (pass ? "pass" : "fail") << '\n';
  return pass ? kOk : kNegative;
}

// oracle

struct OracleArgs {
  std::int64_t q = 1;
  std::string s;
  std::optional<std::string> spin;
  std::int64_t k_max = 40;
  double tol = 1e-6;
};

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
  const SpinLensSpace x = make_space(a.q, a.s, a.spin);
  const auto rep = oracle::oracle_compare(x, a.k_max, a.tol);
  out << lens::to_string(x) << ", k <= " << a.k_max << '\n';
  out << std::scientific << std::setprecision(3);
  out << "  max deviation        " << rep.max_delta << '\n';
  out << "  max imaginary part   " << rep.max_imag << '\n';
  out << "  max integer distance " << rep.max_integer_distance << '\n';
  const bool ok = rep.pass && rep.consistent && rep.max_imag < a.tol;
  if (ok) {
    out << "pass\n";
    return kOk;
  }
  if (rep.pass && !rep.consistent) {
    out << "fail: the series match only with the sign assignment swapped\n";
  } else {
    out << "fail: deviation exceeds tolerance " << a.tol
        << " (below about 1e-12 this is floating-point rounding in the series, not a counting error)\n";
  }
  return kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dirac spectra and isospectral families of spin lens spaces", "lensspec"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lensspec 0.1.0");

  SpectrumArgs spec;
  auto* sp = app.add_subcommand("spectrum", "Print Dirac eigenvalue multiplicities");
  sp->add_option("-q", spec.q, "Group order")->required();
  sp->add_option("-s", spec.s, "Comma-separated parameters s1,...,sm")->required();
  sp->add_option("--spin", spec.spin, "Spin structure: unique, h0 or h1");
  sp->add_option("-k,--k-max", spec.k_max, "Largest k")->check(CLI::NonNegativeNumber);
  sp->add_option("--format", spec.format, "plain, csv or json")->check(CLI::IsMember({"plain", "csv", "json"}));

  IsospecArgs iso;
  auto* ip = app.add_subcommand("isospec", "Decide Dirac isospectrality of two spin lens spaces");
  ip->add_option("a", iso.a, "First space as q:s1,...,sm[:spin]")->required();
  ip->add_option("b", iso.b, "Second space as q:s1,...,sm[:spin]")->required();
  ip->add_flag("--unoriented", iso.unoriented, "Also accept spectra equal after reversing one orientation");

  SearchArgs srch;
  auto* cp = app.add_subcommand("search", "Census of isospectral families");
  cp->add_option("-n,--dimension", srch.dimension, "Odd dimension 2m-1")->required();
  cp->add_option("--q-min", srch.q_min, "Smallest q")->check(CLI::PositiveNumber);
  cp->add_option("--q-max", srch.q_max, "Largest q")->required()->check(CLI::PositiveNumber);
  cp->add_option("--mode", srch.mode, "oriented or unoriented")->check(CLI::IsMember({"oriented", "unoriented"}));
  cp->add_option("-o,--output", srch.output, "Write the census as JSON");
  cp->add_option("--csv", srch.csv, "Write one CSV row per family member");
  cp->add_flag("--tables", srch.tables, "Store reduced count tables in the JSON output");
  cp->add_option("--threads", srch.threads, "Worker threads (default LENSSPEC_THREADS or all cores)");

  FamilyArgs fam;
  auto* fp = app.add_subcommand("family", "Generate and verify an infinite family");
  fp->add_option("theorem", fam.theorem, "51, 52 or 53")->required()->check(CLI::IsMember({51, 52, 53}));
  fp->add_option("-r", fam.r, "Family parameter r");
  fp->add_option("-t", fam.t, "Family parameter t");
  fp->add_flag("--verify", fam.verify, "Check isospectrality and non-isometry");
  fp->add_flag("--experimental", fam.experimental, "Allow t > 1 for family 53");

  OracleArgs orc;
  auto* op = app.add_subcommand("oracle", "Compare multiplicities with the generating-function series");
  op->add_option("-q", orc.q, "Group order")->required();
  op->add_option("-s", orc.s, "Comma-separated parameters s1,...,sm")->required();
  op->add_option("--spin", orc.spin, "Spin structure: unique, h0 or h1");
  op->add_option("-k,--k-max", orc.k_max, "Largest k")->check(CLI::NonNegativeNumber);
  op->add_option("--tol", orc.tol, "Tolerance on the absolute deviation")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sp) return cmd_spectrum(spec, out);
    if (*ip) return cmd_isospec(iso, out);
    if (*cp) return cmd_search(srch, out, err);
    if (*fp) return cmd_family(fam, out);
    if (*op) return cmd_oracle(orc, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace lensspec::cli
