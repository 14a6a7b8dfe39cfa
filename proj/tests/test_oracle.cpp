#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fluxmodes/oracle.hpp"
#include "fluxmodes/operators.hpp"

using namespace fluxmodes;

namespace {

DiscretizationSpec fd_spec(int grid,
                           DiscretizationSpec::Boundary boundary =
                               DiscretizationSpec::Boundary::RegularBothEnds) {
  DiscretizationSpec s;
  s.method = DiscretizationSpec::Method::FiniteDifferenceTheta;
  s.grid_size = grid;
  s.boundary = boundary;
  return s;
}

}  // namespace

TEST_CASE("q=1, m=0 finite differences recover l(l+1)") {
  const FluxConfig cfg{1.0, Sector::F0};
  const SturmLiouvilleResult r = sturm_liouville_eigen(cfg, 0, 4, fd_spec(2048));
  REQUIRE(r.converged);
  REQUIRE(r.eigenvalues.size() == 4);
  const double expect[4] = {0.0, 2.0, 6.0, 12.0};
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(r.eigenvalues[i] - expect[i]) <= 1e-4 * (1.0 + expect[i]));
}

TEST_CASE("q=1/2, m=1 finite differences recover the tilde tower") {
  const FluxConfig cfg{0.5, Sector::F0};
  const SturmLiouvilleResult r = sturm_liouville_eigen(cfg, 1, 3, fd_spec(2048));
  REQUIRE(r.converged);
  for (int n = 0; n < 3; ++n) {
    const double expect = (1.0 + n + 0.5) * (n + 2.0);
    CHECK(std::abs(r.eigenvalues[n] - expect) <= 1e-4 * (1.0 + expect));
  }
}

TEST_CASE("negative-m sector goes through the reduced tower") {
  // q=2, m=-1: regular tower eigenvalues n(n+2) starting at n=1.
  const FluxConfig cfg{2.0, Sector::F0};
  const SturmLiouvilleResult r = sturm_liouville_eigen(cfg, -1, 3, fd_spec(1024));
  REQUIRE(r.converged);
  CHECK(std::abs(r.eigenvalues[0] - 3.0) <= 1e-3);
  CHECK(std::abs(r.eigenvalues[1] - 8.0) <= 1e-3);
  CHECK(std::abs(r.eigenvalues[2] - 15.0) <= 1e-3);
}

TEST_CASE("normalizable-only boundary exposes both q=1/2 towers") {
  const FluxConfig cfg{0.5, Sector::F0};
  const SturmLiouvilleResult r =
      sturm_liouville_eigen(cfg, 0, 4, fd_spec(2048, DiscretizationSpec::Boundary::NormalizableOnly));
  REQUIRE(r.converged);
  CHECK(!r.symmetric_discretization);
  CHECK(!r.message.empty());
  bool has_zero = false, has_half = false;
  for (double v : r.eigenvalues) {
    if (std::abs(v) < 1e-3) has_zero = true;
    if (std::abs(v - 0.5) < 1e-3) has_half = true;
  }
  CHECK(has_zero);
  CHECK(has_half);
}

TEST_CASE("integer flux keeps a single symmetric discretization") {
  const FluxConfig cfg{1.0, Sector::F0};
  const SturmLiouvilleResult r =
      sturm_liouville_eigen(cfg, 0, 3, fd_spec(512, DiscretizationSpec::Boundary::NormalizableOnly));
  CHECK(r.symmetric_discretization);
}

TEST_CASE("finite differences converge at second order") {
  const FluxConfig cfg{1.0, Sector::F0};
  double lam[3];
  const int grids[3] = {512, 1024, 2048};
  for (int i = 0; i < 3; ++i)
    lam[i] = sturm_liouville_eigen(cfg, 0, 3, fd_spec(grids[i])).eigenvalues[2];
  const double d1 = lam[1] - lam[0];
  const double d2 = lam[2] - lam[1];
  CHECK(std::abs(d1 / d2) >= 3.0);  // ratio 4 for clean O(h^2)
  // Same test on a fractional-flux tower.
  const FluxConfig half{0.5, Sector::F0};
  for (int i = 0; i < 3; ++i)
    lam[i] = sturm_liouville_eigen(half, 1, 2, fd_spec(grids[i])).eigenvalues[1];
  CHECK(std::abs((lam[1] - lam[0]) / (lam[2] - lam[1])) >= 3.0);
}

TEST_CASE("validation of the discretization request") {
  const FluxConfig cfg{1.0, Sector::F0};
  CHECK_THROWS_AS(sturm_liouville_eigen(cfg, 0, 3, fd_spec(16)), std::invalid_argument);
  DiscretizationSpec bad = fd_spec(64);
  bad.method = DiscretizationSpec::Method::RayleighRitz;
  CHECK_THROWS_AS(sturm_liouville_eigen(cfg, 0, 3, bad), std::invalid_argument);
  CHECK_THROWS_AS(sturm_liouville_eigen(cfg, 0, 100, fd_spec(64)), std::invalid_argument);
}

TEST_CASE("rayleigh-ritz on regular harmonics reproduces the closed form") {
  const FluxConfig cfg{1.0, Sector::F0};
  std::vector<SpectrumEntry> basis;
  for (int n = 0; n < 5; ++n) basis.push_back(monopole_harmonic(1, Sector::F0, 0, n));
  const RayleighRitzResult r = rayleigh_ritz_eigen(cfg, 0, basis);
  REQUIRE(!r.singular_gram);
  CHECK(r.h_asymmetry <= 1e-10);
  const double expect[5] = {0.0, 2.0, 6.0, 12.0, 20.0};
  for (int i = 0; i < 5; ++i)
    CHECK(std::abs(r.eigenvalues[i] - expect[i]) <= 1e-8 * (1.0 + expect[i]));
  // Gram matrix is diagonal for this basis.
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (i != j) CHECK(std::abs(r.gram(i, j)) <= 1e-10 * std::sqrt(r.gram(i, i) * r.gram(j, j)));
}

TEST_CASE("a single-entry basis returns its eigenvalue") {
  const FluxConfig cfg{0.5, Sector::F0};
  const std::vector<SpectrumEntry> basis{make_entry(cfg, Family::Tilde, 0, 2)};
  const RayleighRitzResult r = rayleigh_ritz_eigen(cfg, 0, basis);
  CHECK(r.eigenvalues[0] == doctest::Approx(basis[0].eigenvalue).epsilon(1e-10));
}

TEST_CASE("mixing the two q=1/2 families exposes the defect") {
  const FluxConfig cfg{0.5, Sector::F0};
  const std::vector<SpectrumEntry> basis{make_entry(cfg, Family::Tilde, 0, 0),
                                         make_entry(cfg, Family::Plain, 0, 0)};
  const RayleighRitzResult r = rayleigh_ritz_eigen(cfg, 0, basis);
  REQUIRE(!r.singular_gram);
  CHECK(r.gram(0, 1) == doctest::Approx(2.0 * M_PI).epsilon(1e-10));
  CHECK(r.h_asymmetry == doctest::Approx(M_PI).epsilon(1e-8));
}

TEST_CASE("adding one singular state breaks the symmetric Hamiltonian matrix") {
  const FluxConfig cfg{0.5, Sector::F0};
  std::vector<SpectrumEntry> basis;
  for (int n = 0; n < 3; ++n) basis.push_back(make_entry(cfg, Family::Tilde, 0, n));
  const RayleighRitzResult clean = rayleigh_ritz_eigen(cfg, 0, basis);
  CHECK(clean.h_asymmetry <= 1e-9);
  basis.push_back(make_entry(cfg, Family::Plain, 0, 0));
  const RayleighRitzResult broken = rayleigh_ritz_eigen(cfg, 0, basis);
  CHECK(broken.h_asymmetry >= 1e-2);
}

TEST_CASE("three-sphere check: eigenvalue, overlap, defect") {
  const S3Report r = s3_laplacian_check(1024);
  CHECK(std::abs(r.eigenvalue_estimate + 0.75) <= 1e-6);
  CHECK(r.eigen_residual <= 1e-6);
  CHECK(r.constant_residual <= 1e-10);
  CHECK(r.overlap == doctest::Approx(32.0 * M_PI / 3.0).epsilon(1e-10));
  CHECK(std::abs(r.overlap) > 1.0);
  CHECK(std::abs(r.defect) > 1.0);
  CHECK(std::abs(r.defect - r.defect_substitution) <= 1e-6 * (1.0 + std::abs(r.defect)));
  CHECK(r.defect == doctest::Approx(-8.0 * M_PI).epsilon(1e-10));
}

TEST_CASE("witten sqm: negative ground energy and its restriction cure") {
  for (double omega : {1.0, 2.5}) {
    const WittenSqmReport r = witten_sqm_check(omega, 2048);
    CHECK(std::abs(r.unrestricted_ground + omega) <= 1e-6 * omega);
    CHECK(std::abs(r.restricted_ground) <= 1e-6);
    CHECK(r.restricted_shape_residual <= 1e-2);
    CHECK(!r.note.empty());
  }
}

TEST_CASE("witten sqm scales linearly in omega") {
  const WittenSqmReport r1 = witten_sqm_check(1.0, 1024);
  const WittenSqmReport r2 = witten_sqm_check(2.5, 1024);
  CHECK(r2.unrestricted_ground / r1.unrestricted_ground == doctest::Approx(2.5).epsilon(1e-5));
}
