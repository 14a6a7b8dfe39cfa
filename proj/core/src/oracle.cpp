#include "fluxmodes/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fluxmodes/operators.hpp"
#include "fluxmodes/quadrature.hpp"

namespace fluxmodes {

namespace {

// Conjugation data for one tower: full radial = (1-z)^{a*} (1+z)^{b*} g(z)
// leaves g smooth when (a*, b*) are the tower's endpoint exponents. In the
// stripped frame A = a* - m/2, B = b* + m/2 and the radial operator becomes
// -J + c0 with J the Jacobi operator for (alpha~, beta~) and constant c0.
struct TowerConjugation {
  Family family;
  double alpha_t;  // |m|
  double beta_t;   // the tower's Jacobi beta
  double c0;
  double gamma;
};

TowerConjugation tower_conjugation(const FluxConfig& config, int m, Family family) {
  const int mf = config.formula_m(m);
  const double kap = config.formula_kappa();
  TowerConjugation t;
  t.family = family;
  const double A = std::max(0, -mf);
  const double B = (family == Family::Plain) ? -kap : kap + mf;
  t.alpha_t = std::abs(mf);
  t.beta_t = (family == Family::Plain) ? (-mf - 2.0 * kap) : (mf + 2.0 * kap);
  t.c0 = kap * (1.0 - kap) + 2.0 * A * B + A * (A + 1.0) + B * (B + 1.0);
  t.gamma = (family == Family::Plain) ? (config.formula_q() - 1.0 - mf)
                                      : (mf + 1.0 - config.formula_q());
  return t;
}

// Finite-volume discretization of the conjugated operator on a cell-centered
// uniform theta grid, self-adjoint with respect to the weight
// rho(theta) = (1-cos)^alpha (1+cos)^beta sin(theta). Natural (zero-flux)
// boundary conditions; eigenvalues of the symmetrized tridiagonal matrix.
std::vector<double> fd_tower_eigenvalues(const TowerConjugation& t, int grid_size) {
  const int n = grid_size;
  const double h = M_PI / n;
  auto rho = [&](double theta) {
    const double z = std::cos(theta);
    return std::pow(1.0 - z, t.alpha_t) * std::pow(1.0 + z, t.beta_t) * std::sin(theta);
  };
  std::vector<double> rho_c(n), rho_f(n - 1);
  for (int j = 0; j < n; ++j) rho_c[j] = rho((j + 0.5) * h);
  for (int j = 0; j < n - 1; ++j) rho_f[j] = rho((j + 1.0) * h);

  std::vector<double> diag(n), off(n - 1);
  const double inv_h2 = 1.0 / (h * h);
  for (int j = 0; j < n; ++j) {
    const double left = (j > 0) ? rho_f[j - 1] : 0.0;
    const double right = (j < n - 1) ? rho_f[j] : 0.0;
    diag[j] = (left + right) * inv_h2 / rho_c[j] + t.c0;
  }
  for (int j = 0; j < n - 1; ++j)
    off[j] = -rho_f[j] * inv_h2 / std::sqrt(rho_c[j] * rho_c[j + 1]);
  return tridiagonal_eigenvalues(std::move(diag), std::move(off));
}

bool spectra_agree(const std::vector<double>& a, const std::vector<double>& b,
                   int count) {
  for (int i = 0; i < count && i < static_cast<int>(std::min(a.size(), b.size())); ++i) {
    if (std::abs(a[i] - b[i]) > 1e-6 * (1.0 + std::abs(a[i]))) return false;
  }
  return true;
}

// Thomas solve of a shifted symmetric tridiagonal system, for inverse
// iteration on one eigenvector.
std::vector<double> tridiag_solve(const std::vector<double>& diag,
                                  const std::vector<double>& off, double shift,
                                  std::vector<double> rhs) {
  const int n = static_cast<int>(diag.size());
  std::vector<double> c(n, 0.0), d(n, 0.0);
  double denom = diag[0] - shift;
  if (std::abs(denom) < 1e-14) denom = 1e-14;
  c[0] = (n > 1) ? off[0] / denom : 0.0;
  d[0] = rhs[0] / denom;
  for (int i = 1; i < n; ++i) {
    denom = diag[i] - shift - off[i - 1] * c[i - 1];
    if (std::abs(denom) < 1e-14) denom = 1e-14;
    if (i < n - 1) c[i] = off[i] / denom;
    d[i] = (rhs[i] - off[i - 1] * d[i - 1]) / denom;
  }
  for (int i = n - 2; i >= 0; --i) d[i] -= c[i] * d[i + 1];
  return d;
}

}  // namespace

SturmLiouvilleResult sturm_liouville_eigen(const FluxConfig& config, int m,
                                           int count, const DiscretizationSpec& spec) {
  if (spec.method != DiscretizationSpec::Method::FiniteDifferenceTheta)
    throw std::invalid_argument("sturm_liouville_eigen: use rayleigh_ritz_eigen for the basis method");
  if (spec.grid_size < 32)
    throw std::invalid_argument("sturm_liouville_eigen: grid_size < 32");
  if (count > spec.grid_size)
    throw std::invalid_argument("sturm_liouville_eigen: count exceeds grid capacity");

  const TowerConjugation plain = tower_conjugation(config, m, Family::Plain);
  const TowerConjugation tilde = tower_conjugation(config, m, Family::Tilde);

  std::vector<TowerConjugation> towers;
  if (spec.boundary == DiscretizationSpec::Boundary::RegularBothEnds) {
    towers.push_back(plain.gamma > tilde.gamma ? plain : tilde);
  } else {
    if (plain.gamma > -1.0) towers.push_back(plain);
    if (tilde.gamma > -1.0 && tilde.gamma != plain.gamma) towers.push_back(tilde);
    if (towers.empty()) towers.push_back(plain.gamma > tilde.gamma ? plain : tilde);
  }

  SturmLiouvilleResult result;
  try {
    for (const TowerConjugation& t : towers) {
      SturmLiouvilleBranch branch;
      branch.family = t.family;
      branch.eigenvalues = fd_tower_eigenvalues(t, spec.grid_size);
      result.branches.push_back(std::move(branch));
    }
  } catch (const std::runtime_error& err) {
    result.converged = false;
    result.message = err.what();
    return result;
  }

  std::vector<double> merged;
  for (const SturmLiouvilleBranch& b : result.branches)
    merged.insert(merged.end(), b.eigenvalues.begin(), b.eigenvalues.end());
  std::sort(merged.begin(), merged.end());
  if (result.branches.size() == 2) {
    result.symmetric_discretization =
        spectra_agree(result.branches[0].eigenvalues, result.branches[1].eigenvalues, count);
    if (!result.symmetric_discretization)
      result.message =
          "two admissible endpoint behaviors give different spectra; "
          "no symmetric discretization covers both";
  }
  merged.resize(std::min<size_t>(merged.size(), count));
  result.eigenvalues = std::move(merged);
  return result;
}

RayleighRitzResult rayleigh_ritz_eigen(const FluxConfig& config, int m,
                                       const std::vector<SpectrumEntry>& basis,
                                       int npoints) {
  const int n = static_cast<int>(basis.size());
  if (n == 0) throw std::invalid_argument("rayleigh_ritz_eigen: empty basis");
  for (const SpectrumEntry& e : basis) {
    if (e.descriptor.config.sector != config.sector || e.descriptor.m != m)
      throw std::invalid_argument("rayleigh_ritz_eigen: basis entry in wrong sector or m");
  }
  RayleighRitzResult r;
  r.gram = Matrix(n, n);
  r.hamiltonian = Matrix(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const InnerProduct s = inner_product(basis[i], basis[j], npoints);
      if (s.divergent)
        throw std::domain_error("rayleigh_ritz_eigen: divergent pairwise inner product");
      r.gram(i, j) = s.value.real();
      const MatrixElement h = h_matrix_element(basis[i], basis[j], npoints);
      if (h.divergent)
        throw std::domain_error("rayleigh_ritz_eigen: divergent matrix element");
      r.hamiltonian(i, j) = h.value.real();
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r.h_asymmetry = std::max(r.h_asymmetry,
                               std::abs(r.hamiltonian(i, j) - r.hamiltonian(j, i)));

  Matrix l;
  try {
    l = cholesky(r.gram);
  } catch (const std::runtime_error&) {
    r.singular_gram = true;
    return r;
  }
  // M = L^-1 H L^-T, then the symmetric part carries the spectral estimate;
  // the asymmetry is reported, not folded in.
  Matrix w(n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<double> col(n);
    for (int i = 0; i < n; ++i) col[i] = r.hamiltonian(i, j);
    col = solve_lower(l, std::move(col));
    for (int i = 0; i < n; ++i) w(i, j) = col[i];
  }
  Matrix mred(n, n);
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(n);
    for (int j = 0; j < n; ++j) row[j] = w(i, j);
    row = solve_lower(l, std::move(row));
    for (int j = 0; j < n; ++j) mred(i, j) = row[j];
  }
  Matrix sym(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sym(i, j) = 0.5 * (mred(i, j) + mred(j, i));
  r.eigenvalues = jacobi_symmetric_eigen(sym).values;
  return r;
}

S3Report s3_laplacian_check(int grid_size) {
  if (grid_size < 256) throw std::invalid_argument("s3_laplacian_check: grid_size < 256");
  S3Report report;
  // chi in (0, pi), r = 2 tan(chi/2), f = 1 + r^2/4 = sec^2(chi/2).
  // On radial functions H = -f^2 (psi'' + 2 psi'/r) + f f' psi', which in chi
  // reads H = -d2/dchi2 + (r - 2 f / r) d/dchi.
  const int n = grid_size;
  const double h = M_PI / n;
  std::vector<double> psi2(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double chi = j * h;
    psi2[j] = (j == n) ? 0.0 : 1.0 / std::cos(0.5 * chi);  // sqrt(f); unused at chi=pi
  }
  // Five-point centred differences; residual measured on the interior window
  // where sqrt(f) and its derivatives are O(1).
  auto d1 = [&](const std::vector<double>& v, int j) {
    return (-v[j + 2] + 8.0 * v[j + 1] - 8.0 * v[j - 1] + v[j - 2]) / (12.0 * h);
  };
  auto d2c = [&](const std::vector<double>& v, int j) {
    return (-v[j + 2] + 16.0 * v[j + 1] - 30.0 * v[j] + 16.0 * v[j - 1] - v[j - 2]) /
           (12.0 * h * h);
  };
  double max_resid = 0.0;
  double ratio_acc = 0.0;
  int ratio_count = 0;
  for (int j = 2; j <= n - 2; ++j) {
    const double chi = j * h;
    if (chi > 2.8) break;
    const double r = 2.0 * std::tan(0.5 * chi);
    const double f = 1.0 + 0.25 * r * r;
    const double hpsi = -d2c(psi2, j) + (r - 2.0 * f / r) * d1(psi2, j);
    max_resid = std::max(max_resid, std::abs(hpsi + 0.75 * psi2[j]));
    if (chi > 0.3 && chi < 2.5) {
      ratio_acc += hpsi / psi2[j];
      ++ratio_count;
    }
  }
  report.eigen_residual = max_resid;
  report.eigenvalue_estimate = ratio_acc / ratio_count;

  // The constant is annihilated exactly by the difference operator.
  std::vector<double> ones(n + 1, 1.0);
  double cres = 0.0;
  for (int j = 2; j <= n - 2; ++j) {
    const double chi = j * h;
    const double r = 2.0 * std::tan(0.5 * chi);
    const double f = 1.0 + 0.25 * r * r;
    cres = std::max(cres, std::abs(-d2c(ones, j) + (r - 2.0 * f / r) * d1(ones, j)));
  }
  report.constant_residual = cres;

  // Matrix elements: Gauss-Legendre in chi, measure 4 pi r^2 f^{-3} dr =
  // 4 pi r^2 f^{-2} dchi; H psi2 from the closed-form chi derivatives of
  // sec(chi/2) (the operator applied, not the eigenvalue substituted).
  const QuadratureRule rule = gauss_jacobi_rule(std::max(64, grid_size / 8), 0.0, 0.0);
  double overlap = 0.0, d12 = 0.0, d21 = 0.0, sub12 = 0.0;
  for (int i = 0; i < rule.size(); ++i) {
    const double chi = 0.5 * M_PI * (rule.nodes[i] + 1.0);
    const double w = 0.5 * M_PI * rule.weights[i];
    const double r = 2.0 * std::tan(0.5 * chi);
    const double f = 1.0 / (std::cos(0.5 * chi) * std::cos(0.5 * chi));
    const double sec = 1.0 / std::cos(0.5 * chi);
    const double tan_h = std::tan(0.5 * chi);
    const double p2 = sec;
    const double p2_c = 0.5 * sec * tan_h;
    const double p2_cc = 0.25 * sec * (tan_h * tan_h + sec * sec);
    const double hp2 = -p2_cc + (r - 2.0 * f / r) * p2_c;
    const double meas = 4.0 * M_PI * r * r / (f * f);
    overlap += w * p2 * meas;
    d12 += w * 1.0 * hp2 * meas;   // <1|H|2>
    d21 += w * p2 * 0.0 * meas;    // H applied to the constant vanishes
    sub12 += w * p2 * meas;
  }
  report.overlap = overlap;
  report.defect = d12 - d21;
  report.defect_substitution = -0.75 * sub12;  // lambda2 <1|2> - lambda1 <2|1>
  return report;
}

WittenSqmReport witten_sqm_check(double omega, int grid_size) {
  if (omega <= 0.0) throw std::invalid_argument("witten_sqm_check: omega must be positive");
  if (grid_size < 256) throw std::invalid_argument("witten_sqm_check: grid_size < 256");
  WittenSqmReport report;
  report.omega = omega;
  const double ell = 6.0 / std::sqrt(omega);

  // H = p^2/2 + omega^2 x^2 / 2 - 3 omega / 2, Dirichlet walls far out.
  auto ground = [&](double x_lo, double x_hi, int n) {
    const double h = (x_hi - x_lo) / n;
    std::vector<double> diag(n - 1), off(n - 2);
    for (int j = 1; j < n; ++j) {
      const double x = x_lo + j * h;
      diag[j - 1] = 1.0 / (h * h) + 0.5 * omega * omega * x * x - 1.5 * omega;
    }
    for (int j = 0; j < n - 2; ++j) off[j] = -0.5 / (h * h);
    return tridiagonal_eigenvalues(diag, off).front();
  };
  const double e_coarse = ground(-ell, ell, grid_size / 2);
  const double e_fine = ground(-ell, ell, grid_size);
  report.unrestricted_ground = (4.0 * e_fine - e_coarse) / 3.0;

  const double r_coarse = ground(0.0, ell, grid_size / 2);
  const double r_fine = ground(0.0, ell, grid_size);
  report.restricted_ground = (4.0 * r_fine - r_coarse) / 3.0;

  // Shape of the restricted ground state against x exp(-omega x^2 / 2),
  // recovered by one inverse-iteration solve at the computed eigenvalue.
  {
    const int n = grid_size;
    const double h = ell / n;
    std::vector<double> diag(n - 1), off(n - 2), v(n - 1, 1.0);
    for (int j = 1; j < n; ++j) {
      const double x = j * h;
      diag[j - 1] = 1.0 / (h * h) + 0.5 * omega * omega * x * x - 1.5 * omega;
    }
    for (int j = 0; j < n - 2; ++j) off[j] = -0.5 / (h * h);
    for (int it = 0; it < 4; ++it) {
      v = tridiag_solve(diag, off, r_fine - 1e-10, std::move(v));
      double norm = 0.0;
      for (double x : v) norm += x * x;
      norm = std::sqrt(norm);
      for (double& x : v) x /= norm;
    }
    double scale = 0.0, scale_at = 0.0;
    for (int j = 1; j < n; ++j) {
      const double x = j * h;
      const double ref = x * std::exp(-0.5 * omega * x * x);
      if (std::abs(ref) > scale_at) {
        scale_at = std::abs(ref);
        scale = v[j - 1] / ref;
      }
    }
    double resid = 0.0;
    for (int j = 1; j < n; ++j) {
      const double x = j * h;
      if (x > 4.0 / std::sqrt(omega)) break;
      const double ref = scale * x * std::exp(-0.5 * omega * x * x);
      resid = std::max(resid, std::abs(v[j - 1] - ref));
    }
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    report.restricted_shape_residual = resid / vmax;
  }

  report.note =
      "unrestricted ground state has Gaussian width exp(-omega x^2/2); the "
      "restricted ground state is x times that Gaussian (the energies -omega "
      "and 0 pin both states uniquely)";
  return report;
}

}  // namespace fluxmodes
