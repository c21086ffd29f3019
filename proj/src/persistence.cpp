#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "lensspec/errors.hpp"
#include "lensspec/search.hpp"

namespace lensspec::search {

using Json = nlohmann::ordered_json;

namespace {

constexpr int kFormatVersion = 1;

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Json table_json(const lattice::ReducedCountTable& t) {
  Json out;
  out["m"] = t.m();
  out["q"] = t.q();
  for (int e = 0; e < 2; ++e) {
    Json row = Json::array();
    for (const BigCount& c : t.row(e)) row.push_back(c.str());
    out[e == 0 ? "eps0" : "eps1"] = std::move(row);
  }
  return out;
}

Json census_json(const CensusResult& r) {
  Json out;
  out["dimension"] = r.dimension;
  out["q"] = r.q;
  out["mode"] = mode_name(r.mode);
  if (!r.note.empty()) out["note"] = r.note;
  out["totals"] = {{"classes", r.totals.classes}, {"fingerprints", r.totals.fingerprints}};
  Json families = Json::array();
  for (const auto& f : r.families) {
    Json fam;
    fam["digest"] = hex64(f.digest);
    Json members = Json::array();
    for (const auto& x : f.members) {
      members.push_back({{"q", x.q()}, {"s", x.lens.s()}, {"spin", lens::spin_tag(x.spin)}});
    }
    fam["members"] = std::move(members);
    fam["trivial"] = f.trivial;
    Json pairs = Json::array();
    for (const auto& [a, b] : f.trivial_pairs) pairs.push_back({a, b});
    fam["trivial_pairs"] = std::move(pairs);
    if (f.reduced_table) fam["reduced_tables"] = table_json(*f.reduced_table);
    families.push_back(std::move(fam));
  }
  out["families"] = std::move(families);
  return out;
}

// Schema reader: every failure names the JSON pointer of the offending value.
class Reader {
 public:
  [[noreturn]] static void fail(const std::string& where, const std::string& what) {
    throw FormatError(where + ": " + what);
  }

  static const Json& field(const Json& obj, const std::string& where, const char* key) {
    if (!obj.is_object()) fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
    return *it;
  }

  static std::int64_t integer(const Json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where, "expected an integer");
    return v.get<std::int64_t>();
  }

  static const Json& array(const Json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array");
    return v;
  }

  static const std::string& string(const Json& v, const std::string& where) {
    if (!v.is_string()) fail(where, "expected a string");
    return v.get_ref<const std::string&>();
  }
};

lattice::ReducedCountTable parse_table(const Json& v, const std::string& where, int m, std::int64_t q) {
  const std::int64_t tm = Reader::integer(Reader::field(v, where, "m"), where + "/m");
  const std::int64_t tq = Reader::integer(Reader::field(v, where, "q"), where + "/q");
  if (tm != m || tq != q) {
    Reader::fail(where, "table shape (m=" + std::to_string(tm) + ", q=" + std::to_string(tq) +
                            ") does not match the census (m=" + std::to_string(m) + ", q=" + std::to_string(q) + ")");
  }
  lattice::ReducedCountTable table(m, q);
  for (int e = 0; e < 2; ++e) {
    const std::string key = e == 0 ? "eps0" : "eps1";
    const std::string at = where + "/" + key;
    const Json& row = Reader::array(Reader::field(v, where, key.c_str()), at);
    if (static_cast<std::int64_t>(row.size()) != table.size()) {
      Reader::fail(at, "expected " + std::to_string(table.size()) + " entries, found " + std::to_string(row.size()));
    }
    for (std::size_t k = 0; k < row.size(); ++k) {
      const std::string& text = Reader::string(row[k], at + "/" + std::to_string(k));
      if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
        Reader::fail(at + "/" + std::to_string(k), "expected a decimal count");
      }
      table.at(e, static_cast<std::int64_t>(k)) = BigCount(text);
    }
  }
  return table;
}

CensusResult parse_census(const Json& v, const std::string& where) {
  CensusResult r;
  r.dimension = static_cast<int>(Reader::integer(Reader::field(v, where, "dimension"), where + "/dimension"));
  if (r.dimension < 3 || r.dimension % 2 == 0) Reader::fail(where + "/dimension", "must be odd and at least 3");
  const int m = (r.dimension + 1) / 2;
  r.q = Reader::integer(Reader::field(v, where, "q"), where + "/q");
  if (r.q < 1) Reader::fail(where + "/q", "must be positive");
  try {
    r.mode = parse_mode(Reader::string(Reader::field(v, where, "mode"), where + "/mode"));
  } catch (const std::invalid_argument& e) {
    Reader::fail(where + "/mode", e.what());
  }
  if (auto it = v.find("note"); it != v.end()) r.note = Reader::string(*it, where + "/note");
  const Json& totals = Reader::field(v, where, "totals");
  r.totals.classes = Reader::integer(Reader::field(totals, where + "/totals", "classes"), where + "/totals/classes");
  r.totals.fingerprints =
      Reader::integer(Reader::field(totals, where + "/totals", "fingerprints"), where + "/totals/fingerprints");

  const Json& families = Reader::array(Reader::field(v, where, "families"), where + "/families");
  for (std::size_t i = 0; i < families.size(); ++i) {
    const std::string at = where + "/families/" + std::to_string(i);
    const Json& fam = families[i];
    IsospectralFamily f;
    const std::string& digest = Reader::string(Reader::field(fam, at, "digest"), at + "/digest");
    if (digest.size() != 16 || digest.find_first_not_of("0123456789abcdef") != std::string::npos) {
      Reader::fail(at + "/digest", "expected 16 lowercase hex digits");
    }
    f.digest = std::stoull(digest, nullptr, 16);

    const Json& members = Reader::array(Reader::field(fam, at, "members"), at + "/members");
    for (std::size_t j = 0; j < members.size(); ++j) {
      const std::string mat = at + "/members/" + std::to_string(j);
      const std::int64_t q = Reader::integer(Reader::field(members[j], mat, "q"), mat + "/q");
      if (q != r.q) Reader::fail(mat + "/q", "member q " + std::to_string(q) + " differs from census q");
      const Json& s_json = Reader::array(Reader::field(members[j], mat, "s"), mat + "/s");
      if (static_cast<int>(s_json.size()) != m) {
        Reader::fail(mat + "/s", "expected " + std::to_string(m) + " parameters for dimension " +
                                     std::to_string(r.dimension) + ", found " + std::to_string(s_json.size()));
      }
      std::vector<std::int64_t> s;
      for (std::size_t k = 0; k < s_json.size(); ++k) s.push_back(Reader::integer(s_json[k], mat + "/s"));
      const std::string& tag = Reader::string(Reader::field(members[j], mat, "spin"), mat + "/spin");
      try {
        f.members.push_back(lens::make_spin_lens(q, std::move(s), lens::parse_spin_tag(tag)));
      } catch (const std::exception& e) {
        Reader::fail(mat, e.what());
      }
    }
    const Json& trivial = Reader::field(fam, at, "trivial");
    if (!trivial.is_boolean()) Reader::fail(at + "/trivial", "expected a boolean");
    f.trivial = trivial.get<bool>();
    if (auto it = fam.find("trivial_pairs"); it != fam.end()) {
      for (const Json& p : Reader::array(*it, at + "/trivial_pairs")) {
        if (!p.is_array() || p.size() != 2) Reader::fail(at + "/trivial_pairs", "expected index pairs");
        const auto a = Reader::integer(p[0], at + "/trivial_pairs");
        const auto b = Reader::integer(p[1], at + "/trivial_pairs");
        const auto n = static_cast<std::int64_t>(f.members.size());
        if (a < 0 || b < 0 || a >= n || b >= n) Reader::fail(at + "/trivial_pairs", "index out of range");
        f.trivial_pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
      }
    }
    if (auto it = fam.find("reduced_tables"); it != fam.end()) {
      f.reduced_table = parse_table(*it, at + "/reduced_tables", m, r.q);
      if (f.reduced_table->digest() != f.digest) Reader::fail(at + "/digest", "does not match reduced_tables");
    }
    r.families.push_back(std::move(f));
  }
  return r;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

std::string dump_results(const std::vector<CensusResult>& results) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  Json censuses = Json::array();
  for (const auto& r : results) censuses.push_back(census_json(r));
  doc["censuses"] = std::move(censuses);
  return doc.dump(2) + "\n";
}

std::vector<CensusResult> parse_results(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw FormatError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(column) +
                          ": " + e.what(),
                      line, column);
  }
  const std::int64_t version = Reader::integer(Reader::field(doc, "", "format_version"), "/format_version");
  if (version != kFormatVersion) {
    Reader::fail("/format_version", "unsupported version " + std::to_string(version));
  }
  const Json& censuses = Reader::array(Reader::field(doc, "", "censuses"), "/censuses");
  std::vector<CensusResult> out;
  for (std::size_t i = 0; i < censuses.size(); ++i) {
    out.push_back(parse_census(censuses[i], "/censuses/" + std::to_string(i)));
  }
  return out;
}

void save_results(const std::vector<CensusResult>& results, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << dump_results(results);
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<CensusResult> load_results(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_results(buf.str());
}

std::string results_csv(const std::vector<CensusResult>& results) {
  std::ostringstream os;
  os << "dimension,q,mode,family,digest,member,params,spin,trivial\n";
  for (const auto& r : results) {
    for (std::size_t f = 0; f < r.families.size(); ++f) {
      const auto& fam = r.families[f];
      for (std::size_t j = 0; j < fam.members.size(); ++j) {
        const auto& x = fam.members[j];
        os << r.dimension << ',' << r.q << ',' << mode_name(r.mode) << ',' << f << ',' << hex64(fam.digest) << ','
           << j << ",\"";
        for (std::size_t k = 0; k < x.lens.s().size(); ++k) os << (k ? "," : "") << x.lens.s()[k];
        os << "\"," << lens::spin_tag(x.spin) << ',' << (fam.trivial ? "true" : "false") << '\n';
      }
    }
  }
  return os.str();
}

}  // namespace lensspec::search
