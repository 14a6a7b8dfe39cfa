#pragma once

#include <string>
#include <vector>

#include "fluxmodes/linalg.hpp"
#include "fluxmodes/modes.hpp"

namespace fluxmodes {

// Verification harness for the radial spectral problem.
struct DiscretizationSpec {
  enum class Method { FiniteDifferenceTheta, RayleighRitz };
  enum class Boundary { RegularBothEnds, NormalizableOnly };
  Method method = Method::FiniteDifferenceTheta;
  int grid_size = 512;
  int basis_size = 8;
  Boundary boundary = Boundary::RegularBothEnds;
};

struct SturmLiouvilleBranch {
  Family family = Family::Plain;
  std::vector<double> eigenvalues;
};

struct SturmLiouvilleResult {
  std::vector<double> eigenvalues;  // lowest `count`, merged over branches
  std::vector<SturmLiouvilleBranch> branches;
  // False when the admitted endpoint behaviors define two genuinely
  // different discretizations (the non-self-adjoint regime).
  bool symmetric_discretization = true;
  bool converged = true;
  std::string message;
};

// Finite differences in theta = arccos z with the admissible tower's
// endpoint factors divided out, so the remaining eigenfunction is smooth.
// RegularBothEnds conjugates by the regular tower; NormalizableOnly runs one
// discretization per normalizable endpoint behavior and merges the spectra.
SturmLiouvilleResult sturm_liouville_eigen(const FluxConfig& config, int m,
                                           int count, const DiscretizationSpec& spec);

struct RayleighRitzResult {
  std::vector<double> eigenvalues;  // of the symmetrized reduced problem
  Matrix gram;
  Matrix hamiltonian;
  double h_asymmetry = 0.0;  // max |H_ij - H_ji|, the defect made manifest
  bool singular_gram = false;
};

// Generalized problem H c = lambda S c on a closed-form basis; S and H built
// by quadrature with the operator applied to the kets.
RayleighRitzResult rayleigh_ritz_eigen(const FluxConfig& config, int m,
                                       const std::vector<SpectrumEntry>& basis,
                                       int npoints = 64);

// Covariant Laplacian on the 3-sphere without a pole: the singular square
// integrable state sqrt(f) with eigenvalue -3/4, its nonzero overlap with the
// constant, and the hermiticity defect of the pair.
struct S3Report {
  double eigenvalue_estimate = 0.0;   // pointwise H psi2 / psi2 on the grid
  double eigen_residual = 0.0;        // max |H psi2 + (3/4) psi2| (interior)
  double constant_residual = 0.0;     // max |H 1| on the grid
  double overlap = 0.0;               // <1|2>, exact value 32 pi / 3
  double defect = 0.0;                // <1|H|2> - <2|H|1>, exact value -8 pi
  double defect_substitution = 0.0;   // lambda2 <1|2> - lambda1 <2|1>
};
S3Report s3_laplacian_check(int grid_size);

// One-dimensional supersymmetric quantum mechanics with superpotential
// W' = -omega x + 1/x: bosonic ground energy -omega on the full line, zero
// after restricting to wave functions vanishing at the origin.
struct WittenSqmReport {
  double omega = 0.0;
  double unrestricted_ground = 0.0;  // Richardson-extrapolated FD value
  double restricted_ground = 0.0;
  double restricted_shape_residual = 0.0;  // vs x * exp(-omega x^2 / 2)
  std::string note;
};
WittenSqmReport witten_sqm_check(double omega, int grid_size);

}  // namespace fluxmodes
