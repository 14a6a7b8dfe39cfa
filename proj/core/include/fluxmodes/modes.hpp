#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fluxmodes/jacobi.hpp"

namespace fluxmodes {

enum class Sector { F0 = 0, F1 = 1 };

// Global problem parameters: real magnetic flux q and fermion sector.
// kappa = (1-q)/2 is the single parameter entering the radial operator; the
// F=1 sector uses the F=0 formulas with q -> -q, m -> -m.
struct FluxConfig {
  double q = 1.0;
  Sector sector = Sector::F0;

  double kappa() const { return 0.5 * (1.0 - q); }
  bool integer_flux() const { return q == std::nearbyint(q); }
  // Flux and angular momentum in the formula frame of this sector.
  double formula_q() const { return sector == Sector::F0 ? q : -q; }
  double formula_kappa() const { return 0.5 * (1.0 - formula_q()); }
  int formula_m(int m) const { return sector == Sector::F0 ? m : -m; }
};

enum class Family { Plain, Tilde };
enum class NormClass { Regular, Section, SingularNormalizable, NonNormalizable };

const char* family_name(Family f);
const char* norm_class_name(NormClass c);

// One closed-form mode: coeff * e^{i m phi} (1-z)^a (1+z)^b P(z).
// `n` is the family quantum number; the Jacobi degree may be smaller after a
// parameter reduction has absorbed endpoint factors into the exponents.
struct ModeDescriptor {
  FluxConfig config;
  int m = 0;
  Family family = Family::Plain;
  int n = 0;
  double a_exp = 0.0;
  double b_exp = 0.0;
  JacobiSpec jacobi;
  std::complex<double> coeff{1.0, 0.0};
  bool is_zero = false;  // identically-zero operator image
};

struct SpectrumEntry {
  ModeDescriptor descriptor;
  double eigenvalue = 0.0;
  double gamma = 0.0;
  NormClass norm_class = NormClass::Regular;
  bool divergent_at_z1 = false;  // unreducible (1-z) divergence (n < |m|)
};

// Thrown by reduce_negative_m when the mode diverges at z = 1 (n < |m|).
struct DivergentAtNorthPoleOfMap : std::domain_error {
  using std::domain_error::domain_error;
};

struct OutOfRange : std::domain_error {
  using std::domain_error::domain_error;
};

// Unreduced family descriptor with unit coefficient.
ModeDescriptor fresh_descriptor(const FluxConfig& config, Family family, int m, int n);

// Eigenvalue of the family member: n(n+1-2k) for Plain,
// (m+n+2k)(m+n+1) for Tilde, in the sector's formula frame.
double family_eigenvalue(const FluxConfig& config, Family family, int m, int n);

// Absorbs (1-z)^|alpha| (and any (1+z)^|beta|) factors hiding in a Jacobi
// polynomial with negative integer parameters, preserving the represented
// function exactly. Throws DivergentAtNorthPoleOfMap when the (1-z) reduction
// is impossible (degree < |alpha|).
ModeDescriptor canonicalize(const ModeDescriptor& d);

// Inverse of the negative-m reduction: restores the unreduced family form of
// an entry built by build_families / monopole_harmonic or an operator image.
ModeDescriptor unreduce_to_fresh(const ModeDescriptor& d);

// Effective exponent of (1-z): a_exp plus the order of the Jacobi zero at z=1.
double effective_a(const ModeDescriptor& d);
double effective_b(const ModeDescriptor& d);

// Decay power at the puncture z -> -1: Psi ~ |w|^{-gamma}, gamma twice the
// effective (1+z) exponent. Closed forms q-1-m (Plain) and m+1-q (Tilde) when
// the Jacobi factor has no zero there.
double gamma_exponent(const SpectrumEntry& entry);

// gamma > 0: Regular; gamma = 0: Section; -1 < gamma < 0: singular but
// square integrable; gamma <= -1: not normalizable.
NormClass classify(double gamma);

// Builds one classified entry (reduction applied when possible, divergence
// flagged otherwise).
SpectrumEntry make_entry(const FluxConfig& config, Family family, int m, int n);

// The two formal solution families at (m, n); negative-m members are passed
// through the reduction before classification.
std::pair<SpectrumEntry, SpectrumEntry> build_families(const FluxConfig& config,
                                                       int m, int n);

// Spec'd reduction operation; requires m < 0 in the formula frame and
// n >= |m|, else throws DivergentAtNorthPoleOfMap.
SpectrumEntry reduce_negative_m(const SpectrumEntry& entry);

// Square-integrable harmonic at integer flux. (m, n) follows the enumeration
// n >= 0 (q > 0), n >= 1-q (q <= 0), -n <= m <= n+q-1 with n the unreduced
// family degree; everything inside the range is square integrable and
// classified Regular or Section.
SpectrumEntry monopole_harmonic(int q, Sector sector, int m, int n);

// coeff * e^{i m phi} (1-z)^a (1+z)^b P(z).
std::complex<double> evaluate(const ModeDescriptor& d, double z, double phi);
// Radial factor only (phi factor and coeff excluded).
double evaluate_radial_basis(const ModeDescriptor& d, double z);

// <e1|e2> with the covariant measure; zero for m1 != m2, otherwise
// conj(c1) c2 * pi * int f1 f2 dz. The constant mode at q = 1 has norm
// squared 2*pi (the volume of the sphere of radius sqrt(2)/2).
struct InnerProduct {
  std::complex<double> value{0.0, 0.0};
  bool divergent = false;
};
InnerProduct inner_product(const SpectrumEntry& e1, const SpectrumEntry& e2,
                           int npoints = 64);

// Entry rescaled to unit norm (throws on divergent or zero norm).
SpectrumEntry normalized(const SpectrumEntry& entry, int npoints = 64);

// True when the two descriptors are pointwise proportional on (-1,1);
// `ratio` receives the constant e2/e1.
bool proportional(const ModeDescriptor& d1, const ModeDescriptor& d2,
                  double tol, std::complex<double>* ratio = nullptr);

// gamma-versus-q line data behind the two tower figures.
struct TowerPoint {
  double q;
  int m;
  Family family;
  double gamma;
  NormClass norm_class;
};
std::vector<TowerPoint> tower_lines(double q_min, double q_max, int steps,
                                    Sector sector, int m_low, int m_high);

}  // namespace fluxmodes
