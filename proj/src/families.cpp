#include <stdexcept>
#include <string>

#include "lensspec/errors.hpp"
#include "lensspec/search.hpp"

namespace lensspec::search {

using lens::SpinLabel;

std::vector<SpinLensSpace> family_thm51(int r) {
  if (r < 1) throw std::invalid_argument("family_thm51 needs r >= 1");
  const int m = 4 * r + 2;
  std::vector<SpinLensSpace> out;
  for (int p = 0; p <= r; ++p) {
    std::vector<std::int64_t> s;
    for (int i = 0; i < (m - 2 * p) / 2; ++i) {
      s.push_back(1);
      s.push_back(11);
    }
    for (int i = 0; i < p; ++i) {
      s.push_back(21);
      s.push_back(31);
    }
    out.push_back(lens::make_spin_lens(40, std::move(s), SpinLabel::even(0)));
  }
  return out;
}

std::pair<SpinLensSpace, SpinLensSpace> family_thm52(int t) {
  if (t < 1) throw std::invalid_argument("family_thm52 needs t >= 1");
  const std::int64_t q = 32LL * t;
  const std::vector<std::int64_t> s{1, 1 + 4LL * t, 1 + 16LL * t, 1 + 28LL * t};
  return {lens::make_spin_lens(q, s, SpinLabel::even(0)), lens::make_spin_lens(q, s, SpinLabel::even(1))};
}

std::vector<std::pair<SpinLensSpace, SpinLensSpace>> family_thm53(int r, int t, bool experimental) {
  if (r < 7 || r % 2 == 0) throw std::invalid_argument("family_thm53 needs odd r >= 7");
  if (t < 1) throw std::invalid_argument("family_thm53 needs t >= 1");
  if (t > 1 && !experimental) {
    throw std::invalid_argument("t > 1 is only conjectured; pass the experimental flag to generate it");
  }
  const std::int64_t rt = static_cast<std::int64_t>(r) * t;
  const std::int64_t q = static_cast<std::int64_t>(r) * r * t;
  auto params = [&](int sign) {
    std::vector<std::int64_t> s;
    for (std::int64_t c : {0, 1, 2, 4}) s.push_back(numtheory::mod(1 + sign * c * rt, q));
    return s;
  };
  const auto plus = lens::make_lens(q, params(1));
  const auto minus = lens::make_lens(q, params(-1));
  std::vector<std::pair<SpinLensSpace, SpinLensSpace>> out;
  for (const auto& label : lens::spin_structures(plus)) {
    out.emplace_back(lens::make_spin_lens(plus, label), lens::make_spin_lens(minus, label));
  }
  return out;
}

FamilyReport verify_family(const std::vector<SpinLensSpace>& members, Forbid forbid) {
  if (members.size() < 2) throw std::invalid_argument("a family needs at least two members");
  for (const auto& x : members) {
    if (x.q() != members[0].q() || x.m() != members[0].m()) {
      throw Mismatch("family members differ in q or m: " + lens::to_string(members[0]) + " vs " +
                     lens::to_string(x));
    }
  }
  std::vector<spectrum::SpectrumFingerprint> prints;
  for (const auto& x : members) prints.push_back(spectrum::fingerprint(x));

  FamilyReport report;
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const std::string pair = lens::to_string(members[a]) + " / " + lens::to_string(members[b]);
      if (!spectrum::dirac_isospectral(prints[a], prints[b])) {
        throw VerificationFailed("not Dirac isospectral: " + pair);
      }
      report.checks.push_back("isospectral: " + pair);

      if (forbid == Forbid::AnyIsometry) {
        if (auto w = lens::find_lens_isometry(members[a].lens, members[b].lens, lens::IsometryMode::Any)) {
          throw VerificationFailed("isometric (l = " + std::to_string(w->ell) + "): " + pair);
        }
        report.checks.push_back("no isometry: " + pair);
      } else if (forbid == Forbid::SpinIsometry) {
        if (auto w = lens::find_isometry(members[a], members[b], lens::IsometryMode::Any)) {
          throw VerificationFailed("spin structures related by an isometry (l = " + std::to_string(w->ell) +
                                   "): " + pair);
        }
        report.checks.push_back("no spin-transporting isometry: " + pair);
      }
    }
  }
  return report;
}

}  // namespace lensspec::search
