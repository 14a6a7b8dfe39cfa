#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fluxmodes/modes.hpp"

namespace fluxmodes {

// Admission rule defining the Hilbert space on which hermiticity and
// supersymmetry are tested. BundleSections is meaningful only at integer
// flux and admits Regular plus Section classes; SquareIntegrable adds the
// singular-but-normalizable states.
enum class HilbertPolicy { RegularOnly, SquareIntegrable, BundleSections };

const char* policy_name(HilbertPolicy p);
std::optional<HilbertPolicy> policy_from_name(std::string_view name);
bool admits(HilbertPolicy policy, NormClass c);

struct MRange {
  int low = 0;
  int high = 0;
};

// All admitted entries of one sector with n <= n_max, eigenvalues ascending,
// duplicates from the integer-flux family collapse removed.
std::vector<SpectrumEntry> assemble_spectrum(double q, Sector sector,
                                             MRange m_range, int n_max,
                                             HilbertPolicy policy);

struct PairedLevel {
  double lambda = 0.0;
  SpectrumEntry f0, f1;
  double image_match_residual = 0.0;
};

struct UnpairedEntry {
  SpectrumEntry entry;
  SpectrumEntry image;
  std::string reason;
  double image_gamma = 0.0;
};

struct PairingReport {
  double q = 0.0;
  HilbertPolicy policy = HilbertPolicy::RegularOnly;
  double lambda_cutoff = 0.0;
  std::vector<PairedLevel> pairs;
  std::vector<UnpairedEntry> unpaired;
  int zero_modes_f0 = 0;
  int zero_modes_f1 = 0;
  std::string note;
};

// Pairs excited levels across the two sectors by supercharge images matched
// through descriptor proportionality (never by eigenvalue coincidence).
// The overload without ranges derives them from the cutoff so that every
// tower contributing a level below it is included.
PairingReport pairing_report(double q, HilbertPolicy policy, double lambda_cutoff);
PairingReport pairing_report(double q, HilbertPolicy policy, double lambda_cutoff,
                             MRange m_range, int n_max);

// Zero-mode count difference n0(F=0) - n0(F=1) under the BundleSections
// policy; equals the flux for integer q. Rejects non-integer flux.
int witten_index(int q);

struct BreakingWitness {
  HilbertPolicy policy = HilbertPolicy::RegularOnly;
  SpectrumEntry entry;
  SpectrumEntry image;
  std::string reason;
};

// For non-integer flux: one admissible entry per policy whose supercharge
// image leaves the policy space.
std::vector<BreakingWitness> susy_breaking_witness(double q);

// JSON serializations of the report schemas.
std::string pairing_report_json(const PairingReport& report);
std::string witness_json(double q, const std::vector<BreakingWitness>& witnesses);

}  // namespace fluxmodes
