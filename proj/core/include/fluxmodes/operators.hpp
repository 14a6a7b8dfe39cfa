#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "fluxmodes/modes.hpp"
#include "fluxmodes/quadrature.hpp"

namespace fluxmodes {

// Radial function sampled at quadrature nodes: the represented function is
// (1-z)^a (1+z)^b times the interpolant of `samples`.
struct GridFunction {
  int m = 0;
  double a_exp = 0.0;
  double b_exp = 0.0;
  QuadratureRule rule;
  std::vector<std::complex<double>> samples;

  std::complex<double> full_value(int i) const;
};

// Gauge field of the constant-flux superpotential G = -(q/2) ln(1+u),
// u = conj(w) w. The area density (1+u)^2 F is constant and equals q.
struct GaugeField {
  double q = 0.0;

  double superpotential(double u) const;
  double superpotential_du(double u) const;
  double superpotential_d2u(double u) const;
  // A_w = -i dG = -i G'(u) conj(w), A_wbar = +i G'(u) w.
  std::complex<double> potential_w(std::complex<double> w) const;
  std::complex<double> potential_wbar(std::complex<double> w) const;
  // F_{w wbar} = 2i (G' + u G'').
  std::complex<double> field_strength(double u) const;
  double area_density(double u) const;
};

// H applied to a closed-form mode, evaluated analytically and sampled on the
// nodes of a fresh Gauss rule with the entry's endpoint exponents factored out.
GridFunction apply_hamiltonian(const SpectrumEntry& entry, int npoints = 64);

// Same values at caller-supplied interior points (stripped of the entry's
// exponents).
std::vector<std::complex<double>> apply_hamiltonian_at(const SpectrumEntry& entry,
                                                       const std::vector<double>& z);

// H applied to sampled data by spectral differentiation of the smooth part.
GridFunction apply_hamiltonian(const GridFunction& grid, const FluxConfig& config);

// The operator written in the u = (1-z)/(1+z) variable; cross-check path for
// the z-representation.
std::vector<std::complex<double>> apply_hamiltonian_u_at(const SpectrumEntry& entry,
                                                         const std::vector<double>& z);

// Supercharge images in closed form. Q raises m by one and lands in F=1;
// Qbar lowers m by one and lands in F=0. Zero modes map to the zero
// descriptor. Throws std::invalid_argument on a sector mismatch.
SpectrumEntry apply_Q(const SpectrumEntry& entry);
SpectrumEntry apply_Qbar(const SpectrumEntry& entry);

// Brute-force supercharge image at one point, via high-order finite
// differences of the sampled mode; independent of the closed-form identities.
std::complex<double> supercharge_image_numeric(const SpectrumEntry& entry, double z);

struct AlgebraResiduals {
  double q_squared = 0.0;      // structural: grading kills Q^2
  double qbar_squared = 0.0;   // structural
  double anticommutator = 0.0; // max-norm of ({Q,Qbar} - H) Psi on nodes
};
AlgebraResiduals susy_algebra_residuals(const SpectrumEntry& entry, int npoints = 64);

// <1|H|2> with H applied to the ket by operator action (never by eigenvalue
// substitution).
struct MatrixElement {
  std::complex<double> value{0.0, 0.0};
  bool divergent = false;
};
MatrixElement h_matrix_element(const SpectrumEntry& bra, const SpectrumEntry& ket,
                               int npoints = 64);

// <1|H|2> - <2|H|1>; nonzero only when hermiticity fails on the chosen pair.
MatrixElement hermiticity_defect(const SpectrumEntry& e1, const SpectrumEntry& e2,
                                 int npoints = 64);

// L = conj(w) dbar - w d acts as multiplication by m on descriptors.
double angular_momentum_check(const SpectrumEntry& entry);
// Numeric residual of L psi = m psi for an arbitrary sampled function of
// (z, phi), via Richardson-extrapolated phi differences.
double angular_momentum_residual(
    const std::function<std::complex<double>(double, double)>& psi, int m,
    int npoints = 32);

// (1/2pi) integral of the field two-form over the sphere; approximately q.
double flux_integral(double q, int npoints = 64);

}  // namespace fluxmodes
