#include "fluxmodes/susy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "fluxmodes/operators.hpp"

namespace fluxmodes {

namespace {

constexpr double kZeroTol = 1e-10;

bool same_mode(const SpectrumEntry& a, const SpectrumEntry& b) {
  const ModeDescriptor& da = a.descriptor;
  const ModeDescriptor& db = b.descriptor;
  return da.m == db.m && da.jacobi.degree == db.jacobi.degree &&
         std::abs(da.jacobi.alpha - db.jacobi.alpha) < 1e-9 &&
         std::abs(da.jacobi.beta - db.jacobi.beta) < 1e-9 &&
         std::abs(da.a_exp - db.a_exp) < 1e-9 &&
         std::abs(da.b_exp - db.b_exp) < 1e-9 &&
         std::abs(a.eigenvalue - b.eigenvalue) < 1e-9;
}

// Residual of e2 against the best constant multiple of e1, normalized.
double proportionality_residual(const ModeDescriptor& d1, const ModeDescriptor& d2) {
  constexpr int kSamples = 13;
  std::complex<double> v1[kSamples], v2[kSamples];
  double max1 = 0.0, max2 = 0.0;
  int imax = 0;
  for (int i = 0; i < kSamples; ++i) {
    const double z = -0.9 + 1.8 * i / (kSamples - 1);
    v1[i] = evaluate(d1, z, 0.0);
    v2[i] = evaluate(d2, z, 0.0);
    if (std::abs(v1[i]) > max1) {
      max1 = std::abs(v1[i]);
      imax = i;
    }
    max2 = std::max(max2, std::abs(v2[i]));
  }
  if (max1 == 0.0 || max2 == 0.0) return (max1 == max2) ? 0.0 : 1.0;
  const std::complex<double> r = v2[imax] / v1[imax];
  double resid = 0.0;
  for (int i = 0; i < kSamples; ++i)
    resid = std::max(resid, std::abs(v2[i] - r * v1[i]));
  return resid / max2;
}

nlohmann::json entry_json(const SpectrumEntry& e) {
  return nlohmann::json{{"sector", e.descriptor.config.sector == Sector::F0 ? 0 : 1},
                        {"m", e.descriptor.m},
                        {"family", family_name(e.descriptor.family)},
                        {"n", e.descriptor.n},
                        {"lambda", e.eigenvalue},
                        {"gamma", e.gamma},
                        {"class", norm_class_name(e.norm_class)}};
}

int range_bound(double q, double cutoff) {
  return static_cast<int>(std::ceil(std::sqrt(std::max(cutoff, 1.0)))) +
         static_cast<int>(std::ceil(std::abs(q))) + 3;
}

const char* kCryptoNote =
    "A quasi-Hermitian redefinition of the inner product (declaring the "
    "singular normalizable states orthogonal to the regular ones) would "
    "restore formal hermiticity; this workbench records but does not "
    "implement that option.";

}  // namespace

const char* policy_name(HilbertPolicy p) {
  switch (p) {
    case HilbertPolicy::RegularOnly: return "regular-only";
    case HilbertPolicy::SquareIntegrable: return "square-integrable";
    case HilbertPolicy::BundleSections: return "bundle-sections";
  }
  return "?";
}

std::optional<HilbertPolicy> policy_from_name(std::string_view name) {
  if (name == "regular-only" || name == "regular") return HilbertPolicy::RegularOnly;
  if (name == "square-integrable" || name == "l2") return HilbertPolicy::SquareIntegrable;
  if (name == "bundle-sections" || name == "sections") return HilbertPolicy::BundleSections;
  return std::nullopt;
}

bool admits(HilbertPolicy policy, NormClass c) {
  switch (policy) {
    case HilbertPolicy::RegularOnly:
      return c == NormClass::Regular;
    case HilbertPolicy::SquareIntegrable:
      return c == NormClass::Regular || c == NormClass::Section ||
             c == NormClass::SingularNormalizable;
    case HilbertPolicy::BundleSections:
      return c == NormClass::Regular || c == NormClass::Section;
  }
  return false;
}

std::vector<SpectrumEntry> assemble_spectrum(double q, Sector sector,
                                             MRange m_range, int n_max,
                                             HilbertPolicy policy) {
  if (n_max < 0) throw std::invalid_argument("assemble_spectrum: n_max < 0");
  FluxConfig config{q, sector};
  if (policy == HilbertPolicy::BundleSections && !config.integer_flux())
    throw std::invalid_argument("assemble_spectrum: bundle-sections policy requires integer flux");
  std::vector<SpectrumEntry> out;
  for (int m = m_range.low; m <= m_range.high; ++m) {
    for (Family family : {Family::Plain, Family::Tilde}) {
      for (int n = 0; n <= n_max; ++n) {
        SpectrumEntry e = make_entry(config, family, m, n);
        if (e.descriptor.is_zero || e.divergent_at_z1) continue;
        if (!admits(policy, e.norm_class)) continue;
        bool duplicate = false;
        for (const SpectrumEntry& seen : out) {
          if (same_mode(seen, e)) {
            duplicate = true;
            break;
          }
        }
        if (!duplicate) out.push_back(std::move(e));
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
    if (a.eigenvalue != b.eigenvalue) return a.eigenvalue < b.eigenvalue;
    if (a.descriptor.m != b.descriptor.m) return a.descriptor.m < b.descriptor.m;
    return a.descriptor.n < b.descriptor.n;
  });
  return out;
}

PairingReport pairing_report(double q, HilbertPolicy policy, double lambda_cutoff) {
  const int b = range_bound(q, lambda_cutoff);
  return pairing_report(q, policy, lambda_cutoff, MRange{-b - 2, b + 2}, b + 2);
}

PairingReport pairing_report(double q, HilbertPolicy policy, double lambda_cutoff,
                             MRange m_range, int n_max) {
  if (lambda_cutoff <= 0.0)
    throw std::invalid_argument("pairing_report: cutoff must be positive");
  PairingReport report;
  report.q = q;
  report.policy = policy;
  report.lambda_cutoff = lambda_cutoff;

  const std::vector<SpectrumEntry> f0 =
      assemble_spectrum(q, Sector::F0, m_range, n_max, policy);
  const std::vector<SpectrumEntry> f1 =
      assemble_spectrum(q, Sector::F1, m_range, n_max, policy);

  std::vector<bool> f1_used(f1.size(), false);
  for (const SpectrumEntry& e : f0) {
    if (e.eigenvalue <= kZeroTol) {
      ++report.zero_modes_f0;
      continue;
    }
    if (e.eigenvalue > lambda_cutoff) continue;
    SpectrumEntry image = apply_Q(e);
    if (image.descriptor.is_zero) {
      report.unpaired.push_back({e, image, "supercharge image vanishes at nonzero eigenvalue", 0.0});
      continue;
    }
    if (image.divergent_at_z1 || !admits(policy, image.norm_class)) {
      report.unpaired.push_back({e, image, "image gamma outside policy", image.gamma});
      continue;
    }
    bool matched = false;
    for (size_t j = 0; j < f1.size(); ++j) {
      if (f1_used[j] || f1[j].descriptor.m != image.descriptor.m) continue;
      const double resid = proportionality_residual(image.descriptor, f1[j].descriptor);
      if (resid <= 1e-9) {
        f1_used[j] = true;
        report.pairs.push_back({e.eigenvalue, e, f1[j], resid});
        matched = true;
        break;
      }
    }
    if (!matched)
      report.unpaired.push_back({e, image, "no admitted partner matches the image (truncation)", image.gamma});
  }
  for (size_t j = 0; j < f1.size(); ++j) {
    const SpectrumEntry& e = f1[j];
    if (e.eigenvalue <= kZeroTol) {
      ++report.zero_modes_f1;
      continue;
    }
    if (f1_used[j] || e.eigenvalue > lambda_cutoff) continue;
    SpectrumEntry image = apply_Qbar(e);
    if (image.descriptor.is_zero) {
      report.unpaired.push_back({e, image, "supercharge image vanishes at nonzero eigenvalue", 0.0});
    } else if (image.divergent_at_z1 || !admits(policy, image.norm_class)) {
      report.unpaired.push_back({e, image, "image gamma outside policy", image.gamma});
    } else {
      report.unpaired.push_back({e, image, "partner missing in the other sector (truncation)", image.gamma});
    }
  }
  const FluxConfig cfg{q, Sector::F0};
  if (!cfg.integer_flux()) report.note = kCryptoNote;
  return report;
}

int witten_index(int q) {
  PairingReport r = pairing_report(static_cast<double>(q), HilbertPolicy::BundleSections,
                                   std::abs(q) + 4.0);
  return r.zero_modes_f0 - r.zero_modes_f1;
}

std::vector<BreakingWitness> susy_breaking_witness(double q) {
  const FluxConfig probe{q, Sector::F0};
  if (probe.integer_flux())
    throw std::invalid_argument("susy_breaking_witness: flux is integer; use witten_index");
  std::vector<BreakingWitness> out;
  const int bound = range_bound(q, 16.0);
  for (HilbertPolicy policy :
       {HilbertPolicy::RegularOnly, HilbertPolicy::SquareIntegrable}) {
    bool found = false;
    for (int n = 0; n <= bound + 2 && !found; ++n) {
      for (int k = 0; k <= 2 * bound && !found; ++k) {
        const int m = (k % 2 == 0) ? k / 2 : -(k / 2 + 1);
        for (Family family : {Family::Plain, Family::Tilde}) {
          SpectrumEntry e = make_entry(probe, family, m, n);
          if (e.descriptor.is_zero || e.divergent_at_z1) continue;
          if (!admits(policy, e.norm_class)) continue;
          if (e.eigenvalue <= kZeroTol) continue;
          SpectrumEntry image = apply_Q(e);
          if (image.descriptor.is_zero) continue;
          if (image.divergent_at_z1 || !admits(policy, image.norm_class)) {
            out.push_back({policy, e, image, "image gamma outside policy"});
            found = true;
            break;
          }
        }
      }
    }
  }
  return out;
}

std::string pairing_report_json(const PairingReport& report) {
  nlohmann::json j;
  j["q"] = report.q;
  j["policy"] = policy_name(report.policy);
  j["lambda_cutoff"] = report.lambda_cutoff;
  j["pairs"] = nlohmann::json::array();
  for (const PairedLevel& p : report.pairs) {
    j["pairs"].push_back({{"lambda", p.lambda},
                          {"f0", entry_json(p.f0)},
                          {"f1", entry_json(p.f1)},
                          {"match_residual", p.image_match_residual}});
  }
  j["unpaired"] = nlohmann::json::array();
  for (const UnpairedEntry& u : report.unpaired) {
    j["unpaired"].push_back({{"entry", entry_json(u.entry)},
                             {"reason", u.reason},
                             {"image_gamma", u.image_gamma}});
  }
  j["zero_modes_f0"] = report.zero_modes_f0;
  j["zero_modes_f1"] = report.zero_modes_f1;
  const FluxConfig cfg{report.q, Sector::F0};
  if (cfg.integer_flux()) j["index"] = report.zero_modes_f0 - report.zero_modes_f1;
  if (!report.note.empty()) j["note"] = report.note;
  return j.dump(2);
}

std::string witness_json(double q, const std::vector<BreakingWitness>& witnesses) {
  nlohmann::json j;
  j["q"] = q;
  j["witnesses"] = nlohmann::json::array();
  for (const BreakingWitness& w : witnesses) {
    j["witnesses"].push_back({{"policy", policy_name(w.policy)},
                              {"entry", entry_json(w.entry)},
                              {"entry_gamma", w.entry.gamma},
                              {"image", entry_json(w.image)},
                              {"image_gamma", w.image.gamma},
                              {"reason", w.reason}});
  }
  return j.dump(2);
}

}  // namespace fluxmodes
