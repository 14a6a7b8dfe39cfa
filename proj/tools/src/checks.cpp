#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <random>

#include "fluxmodes/jacobi.hpp"
#include "fluxmodes/modes.hpp"
#include "fluxmodes/operators.hpp"
#include "fluxmodes/oracle.hpp"
#include "fluxmodes/quadrature.hpp"
#include "fluxmodes/susy.hpp"

namespace fluxmodes::cli {

namespace {

struct Runner {
  std::ostream& out;
  double tol_scale;
  int failures = 0;

  // value must stay at or below bound (scaled by the global knob).
  void below(const std::string& name, double value, double bound) {
    const double b = bound * tol_scale;
    const bool ok = value <= b;
    if (!ok) ++failures;
    out << (ok ? "ok   " : "FAIL ") << name << "  (" << value << " <= " << b << ")\n";
  }
  void truth(const std::string& name, bool ok) {
    if (!ok) ++failures;
    out << (ok ? "ok   " : "FAIL ") << name << "\n";
  }
};

void suite_jacobi(Runner& r) {
  const double params[] = {-0.9, -0.5, 0.0, 0.5, 1.0, 2.7};
  const double zs[] = {-0.99, -0.5, 0.0, 0.5, 0.99};
  double worst = 0.0;
  for (int n = 0; n <= 10; ++n)
    for (double a : params)
      for (double b : params)
        for (double z : zs) {
          const double v1 = jacobi_eval({n, a, b}, z);
          const double v2 = jacobi_eval_sum({n, a, b}, z);
          worst = std::max(worst, std::abs(v1 - v2) / (1.0 + std::abs(v1)));
        }
  r.below("jacobi.recurrence-vs-sum", worst, 1e-10);

  worst = 0.0;
  for (int n = 0; n <= 8; ++n)
    for (double a : params)
      for (double b : params)
        for (double z : {-0.7, 0.2, 0.85}) {
          const double lhs = jacobi_eval({n, a, b}, -z);
          const double rhs = (n % 2 ? -1.0 : 1.0) * jacobi_eval({n, b, a}, z);
          worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
        }
  r.below("jacobi.reflection-symmetry", worst, 1e-12);

  worst = 0.0;
  for (int n = 0; n <= 9; ++n)
    for (double a : params) {
      const double lhs = jacobi_eval({n, a, 0.7}, 1.0);
      const double rhs = binomial_general(n + a, n);
      worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    }
  r.below("jacobi.endpoint-value", worst, 1e-12);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> zdist(-0.999, 0.999);
  worst = 0.0;
  for (int alpha = 0; alpha <= 5; ++alpha)
    for (int beta = 0; beta <= 5; ++beta)
      for (int n = 0; n <= 8; ++n)
        for (int t = 0; t < 20; ++t) {
          const RelationResiduals res =
              negative_param_relation_check(n, alpha, beta, zdist(rng));
          if (res.alpha_relation) worst = std::max(worst, *res.alpha_relation);
          if (res.beta_relation) worst = std::max(worst, *res.beta_relation);
        }
  r.below("jacobi.integer-lowering-relations", worst, 1e-10);

  worst = 0.0;
  for (int n = 0; n <= 6; ++n)
    for (double a : params)
      for (double b : params)
        for (double z : {-0.6, 0.1, 0.7}) {
          const JacobiSpec s{n, a, b};
          const double fd =
              (jacobi_eval(s, z + 1e-5) - jacobi_eval(s, z - 1e-5)) / 2e-5;
          worst = std::max(worst, std::abs(jacobi_derivative(s, z) - fd));
        }
  r.below("jacobi.derivative-vs-central-differences", worst, 1e-6);
}

void suite_quadrature(Runner& r, const CheckOptions& opt) {
  double worst = 0.0;
  for (double a : {-0.9, -0.3, 0.0, 1.5, 2.0})
    for (double b : {-0.5, 0.0, 0.7, 2.0}) {
      const QuadratureRule rule = gauss_jacobi_rule(opt.quad_points, a, b);
      double s = 0.0;
      for (double w : rule.weights) s += w;
      const double exact = std::pow(2.0, a + b + 1.0) * beta_function(a + 1.0, b + 1.0);
      worst = std::max(worst, std::abs(s - exact) / exact);
    }
  r.below("quadrature.weight-sum-vs-beta", worst, 1e-12);

  std::mt19937 rng(42);
  std::uniform_real_distribution<double> edist(-0.9, 2.0);
  worst = 0.0;
  for (int trial = 0; trial < 25; ++trial) {
    const double a = edist(rng), b = edist(rng);
    const int npts = 4 + (trial % 5);
    const int deg = 2 * npts - 1;
    const int j = static_cast<int>(rng() % (deg + 1));
    const int l = deg - j;
    auto poly = [&](double z) {
      return std::pow(1.0 - z, j) * std::pow(1.0 + z, l);
    };
    const double got =
        integrate_product(poly, [](double) { return 1.0; }, a, b, npts).value;
    const double exact =
        std::pow(2.0, a + b + deg + 1.0) * beta_function(a + j + 1.0, b + l + 1.0);
    worst = std::max(worst, std::abs(got - exact) / (1.0 + std::abs(exact)));
  }
  r.below("quadrature.polynomial-exactness", worst, 1e-11);

  auto f = [](double z) { return std::exp(z) * std::cos(3.0 * z); };
  auto one = [](double) { return 1.0; };
  const double v8 = integrate_product(f, one, 0.3, -0.4, 8).value;
  const double v16 = integrate_product(f, one, 0.3, -0.4, 16).value;
  const double v32 = integrate_product(f, one, 0.3, -0.4, 32).value;
  const double d1 = std::abs(v16 - v8), d2 = std::abs(v32 - v16);
  r.truth("quadrature.monotone-convergence", d2 <= 1e-14 || d1 >= 1e3 * d2);

  worst = 0.0;
  for (double a : {-0.5, 0.0, 1.3})
    for (double b : {-0.4, 0.5, 2.0})
      for (int n = 0; n <= 5; ++n)
        for (int k = n + 1; k <= 6; ++k) {
          auto pn = [&](double z) { return jacobi_eval({n, a, b}, z); };
          auto pk = [&](double z) { return jacobi_eval({k, a, b}, z); };
          const double cross = integrate_product(pn, pk, a, b, 24).value;
          const double nn = integrate_product(pn, pn, a, b, 24).value;
          const double kk = integrate_product(pk, pk, a, b, 24).value;
          worst = std::max(worst, std::abs(cross) / std::sqrt(nn * kk));
        }
  r.below("quadrature.jacobi-orthogonality", worst, 1e-10);
}

void suite_modes(Runner& r, const CheckOptions& opt) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> qdist(-2.0, 3.0);
  double worst = 0.0;
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 50; ++trial) {
    const FluxConfig cfg{qdist(rng), Sector::F0};
    const int m = static_cast<int>(rng() % 7) - 3;
    const int n = std::max(0, -m) + static_cast<int>(rng() % 4);
    const Family fam = (rng() % 2) ? Family::Plain : Family::Tilde;
    const SpectrumEntry e = make_entry(cfg, fam, m, n);
    if (e.descriptor.is_zero || e.norm_class == NormClass::NonNormalizable) continue;
    const GridFunction h = apply_hamiltonian(e, 32);
    for (int i = 0; i < h.rule.size(); ++i) {
      const std::complex<double> expect =
          e.eigenvalue * evaluate(e.descriptor, h.rule.nodes[i], 0.0);
      worst = std::max(worst, std::abs(h.full_value(i) - expect) /
                                  (1.0 + std::abs(expect)));
    }
    ++checked;
  }
  r.below("modes.eigenfunction-residual", worst, 1e-9);
  r.truth("modes.eigenfunction-sample-count", checked == 50);

  bool collapse_ok = true;
  for (int q : {-2, 0, 1, 3})
    for (int m = -2; m <= 2; ++m)
      for (int n = 0; n <= 3; ++n) {
        const FluxConfig cfg{static_cast<double>(q), Sector::F0};
        const int n_plain = n + m + 1 - q;
        if (n_plain < 0) continue;
        const ModeDescriptor tilde = canonicalize(fresh_descriptor(cfg, Family::Tilde, m, n));
        const ModeDescriptor plain =
            canonicalize(fresh_descriptor(cfg, Family::Plain, m, n_plain));
        if (tilde.is_zero || plain.is_zero) continue;
        if (effective_a(tilde) < 0.0 || effective_a(plain) < 0.0) continue;
        collapse_ok = collapse_ok && proportional(tilde, plain, 1e-9);
      }
  r.truth("modes.integer-flux-family-collapse", collapse_ok);

  bool gamma_ok = true;
  for (double q : {0.3, 1.5, 2.7})
    for (int m = -3; m <= 3; ++m) {
      const FluxConfig cfg{q, Sector::F0};
      const int n = std::max(0, -m) + 1;
      gamma_ok = gamma_ok &&
                 make_entry(cfg, Family::Plain, m, n).gamma == q - 1.0 - m &&
                 make_entry(cfg, Family::Tilde, m, n).gamma == m + 1.0 - q;
    }
  r.truth("modes.gamma-closed-forms", gamma_ok);

  const FluxConfig half{0.5, Sector::F0};
  const SpectrumEntry s1 = make_entry(half, Family::Tilde, 0, 0);
  const SpectrumEntry s2 = make_entry(half, Family::Plain, 0, 0);
  r.below("modes.q-half-nonorthogonality",
          std::abs(inner_product(s1, s2, opt.quad_points).value.real() - 2.0 * M_PI),
          1e-10);
  double ortho = 0.0;
  for (int n1 = 0; n1 <= 3; ++n1)
    for (int n2 = n1 + 1; n2 <= 3; ++n2) {
      const SpectrumEntry a = monopole_harmonic(2, Sector::F0, 0, n1);
      const SpectrumEntry b = monopole_harmonic(2, Sector::F0, 0, n2);
      const double na = inner_product(a, a).value.real();
      const double nb = inner_product(b, b).value.real();
      ortho = std::max(ortho, std::abs(inner_product(a, b).value.real()) /
                                  std::sqrt(na * nb));
    }
  r.below("modes.integer-flux-orthogonality", ortho, 1e-10);

  std::mt19937 rng2(11);
  std::uniform_real_distribution<double> q2(-1.5, 2.8);
  int agree = 0, total = 0;
  for (int trial = 0; trial < 200 && total < 30; ++trial) {
    const FluxConfig cfg{q2(rng2), Sector::F0};
    const int m = static_cast<int>(rng2() % 5) - 2;
    const int n = std::max(0, -m) + static_cast<int>(rng2() % 3);
    const Family fam = (rng2() % 2) ? Family::Plain : Family::Tilde;
    const SpectrumEntry e = make_entry(cfg, fam, m, n);
    if (e.descriptor.is_zero || e.divergent_at_z1) continue;
    if (std::abs(e.gamma + 1.0) < 0.15) continue;
    auto naive = [&](int pts) {
      const QuadratureRule rule = gauss_jacobi_rule(pts, 0.0, 0.0);
      double s = 0.0;
      for (int i = 0; i < rule.size(); ++i)
        s += rule.weights[i] * std::norm(evaluate(e.descriptor, rule.nodes[i], 0.0));
      return s;
    };
    const double sa = naive(64), sb = naive(256), sc = naive(1024);
    const bool grows = (sc - sb) > 0.8 * (sb - sa) && (sc - sb) > 1e-9 * (1.0 + sc);
    if (grows == inner_product(e, e).divergent) ++agree;
    ++total;
  }
  r.truth("modes.classification-vs-norm-probe", agree == total && total == 30);
}

void suite_operators(Runner& r, const CheckOptions& opt) {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> qdist(-2.0, 3.0);
  std::uniform_real_distribution<double> zdist(-0.8, 0.8);
  double worst = 0.0;
  int checked = 0;
  for (int trial = 0; trial < 300 && checked < 30; ++trial) {
    const FluxConfig cfg{qdist(rng), Sector::F0};
    const int m = static_cast<int>(rng() % 7) - 3;
    const int n = std::max(0, -m) + static_cast<int>(rng() % 4);
    const Family fam = (rng() % 2) ? Family::Plain : Family::Tilde;
    const SpectrumEntry e = make_entry(cfg, fam, m, n);
    if (e.descriptor.is_zero || e.divergent_at_z1) continue;
    const SpectrumEntry img = apply_Q(e);
    for (int k = 0; k < 3; ++k) {
      const double z = zdist(rng);
      const std::complex<double> closed = evaluate(img.descriptor, z, 0.0);
      worst = std::max(worst, std::abs(closed - supercharge_image_numeric(e, z)) /
                                  (1.0 + std::abs(closed)));
    }
    ++checked;
  }
  r.below("operators.q-image-descriptor-vs-grid", worst, 1e-8);

  bool shift_ok = true;
  for (double q : {0.3, 0.5, 1.5, 2.7}) {
    const FluxConfig cfg{q, Sector::F0};
    for (int m = -2; m <= 2; ++m) {
      const int n0 = std::max(0, -m) + 1;
      const SpectrumEntry p = make_entry(cfg, Family::Plain, m, n0);
      const SpectrumEntry t = make_entry(cfg, Family::Tilde, m, n0);
      const SpectrumEntry qp = apply_Q(p);
      const SpectrumEntry qt = apply_Q(t);
      if (!qp.descriptor.is_zero) shift_ok = shift_ok && qp.gamma == p.gamma + 1.0;
      if (!qt.descriptor.is_zero) shift_ok = shift_ok && qt.gamma == t.gamma - 1.0;
    }
  }
  r.truth("operators.gamma-shift-law", shift_ok);

  double reg = 0.0;
  for (int n1 = 0; n1 <= 2; ++n1)
    for (int n2 = n1 + 1; n2 <= 3; ++n2) {
      const SpectrumEntry a = monopole_harmonic(1, Sector::F0, 0, n1);
      const SpectrumEntry b = monopole_harmonic(1, Sector::F0, 0, n2);
      reg = std::max(reg, std::abs(hermiticity_defect(a, b, opt.quad_points).value));
    }
  r.below("operators.defect-vanishes-on-regular-pairs", reg, 1e-10);

  const FluxConfig half{0.5, Sector::F0};
  const double cross =
      std::abs(hermiticity_defect(make_entry(half, Family::Tilde, 0, 0),
                                  make_entry(half, Family::Plain, 0, 0),
                                  opt.quad_points)
                   .value);
  r.truth("operators.defect-nonzero-on-cross-pair", cross >= 1e-2);

  double expect_worst = 0.0;
  for (auto [q, m, n, fam] :
       {std::tuple<double, int, int, Family>{0.5, 0, 1, Family::Plain},
        {0.5, 1, 0, Family::Tilde},
        {2.7, 2, 1, Family::Tilde},
        {1.0, -1, 2, Family::Plain}}) {
    const FluxConfig cfg{q, Sector::F0};
    const SpectrumEntry e = make_entry(cfg, fam, m, n);
    const double num = h_matrix_element(e, e, opt.quad_points).value.real();
    const double den = inner_product(e, e, opt.quad_points).value.real();
    expect_worst = std::max(expect_worst,
                            std::abs(num / den - e.eigenvalue) / (1.0 + e.eigenvalue));
  }
  r.below("operators.energy-expectation-consistency", expect_worst, 1e-9);

  double flux_worst = 0.0;
  for (double q : {0.0, 0.5, 1.0, -2.0, 2.7})
    flux_worst = std::max(flux_worst, std::abs(flux_integral(q, opt.quad_points) - q));
  r.below("operators.flux-integral", flux_worst, 1e-10);

  const GaugeField field{1.7};
  double dens = 0.0;
  for (double u : {0.0, 0.3, 1.0, 4.0, 50.0})
    dens = std::max(dens, std::abs(field.area_density(u) - 1.7));
  r.below("operators.constant-area-density", dens, 1e-12);
}

void suite_susy(Runner& r) {
  for (int q : {1, 2, 3}) {
    const PairingReport report = pairing_report(q, HilbertPolicy::BundleSections, 30.0);
    r.truth("susy.pairing-closes-q" + std::to_string(q),
            report.unpaired.empty() && !report.pairs.empty());
    double lam = 0.0, match = 0.0;
    for (const PairedLevel& p : report.pairs) {
      lam = std::max(lam, std::abs(p.f0.eigenvalue - p.f1.eigenvalue));
      match = std::max(match, p.image_match_residual);
    }
    r.below("susy.paired-eigenvalues-q" + std::to_string(q), lam, 1e-10);
    r.below("susy.paired-image-residual-q" + std::to_string(q), match, 1e-9);
  }
  bool index_ok = true;
  for (int q = -3; q <= 3; ++q)
    index_ok = index_ok && witten_index(q) == q &&
               std::lround(flux_integral(q)) == q;
  r.truth("susy.witten-index-equals-flux", index_ok);

  bool witness_ok = true;
  for (double q : {0.3, 0.5, 1.5, 2.7}) {
    const auto ws = susy_breaking_witness(q);
    witness_ok = witness_ok && ws.size() == 2;
    for (const BreakingWitness& w : ws)
      witness_ok = witness_ok && admits(w.policy, w.entry.norm_class) &&
                   !admits(w.policy, w.image.norm_class);
  }
  r.truth("susy.breaking-witness-under-every-policy", witness_ok);

  bool positive = true;
  for (double q : {0.3, 1.0, 2.7}) {
    for (const SpectrumEntry& e : assemble_spectrum(q, Sector::F0, MRange{-4, 4}, 5,
                                                    HilbertPolicy::RegularOnly))
      positive = positive && e.eigenvalue >= -1e-12;
  }
  r.truth("susy.regular-spectrum-nonnegative", positive);
}

void suite_oracle(Runner& r) {
  DiscretizationSpec spec;
  spec.grid_size = 2048;
  const FluxConfig one{1.0, Sector::F0};
  const SturmLiouvilleResult fd = sturm_liouville_eigen(one, 0, 4, spec);
  double worst = 0.0;
  const double expect[4] = {0.0, 2.0, 6.0, 12.0};
  for (int i = 0; i < 4; ++i)
    worst = std::max(worst, std::abs(fd.eigenvalues[i] - expect[i]) / (1.0 + expect[i]));
  r.below("oracle.fd-integer-flux-spectrum", worst, 1e-4);

  const FluxConfig half{0.5, Sector::F0};
  const SturmLiouvilleResult fd2 = sturm_liouville_eigen(half, 1, 3, spec);
  worst = 0.0;
  for (int n = 0; n < 3; ++n) {
    const double e = (1.0 + n + 0.5) * (n + 2.0);
    worst = std::max(worst, std::abs(fd2.eigenvalues[n] - e) / (1.0 + e));
  }
  r.below("oracle.fd-tilde-tower", worst, 1e-4);

  spec.boundary = DiscretizationSpec::Boundary::NormalizableOnly;
  const SturmLiouvilleResult both = sturm_liouville_eigen(half, 0, 4, spec);
  bool has0 = false, hasHalf = false;
  for (double v : both.eigenvalues) {
    has0 = has0 || std::abs(v) < 1e-3;
    hasHalf = hasHalf || std::abs(v - 0.5) < 1e-3;
  }
  r.truth("oracle.fd-normalizable-only-both-towers",
          has0 && hasHalf && !both.symmetric_discretization);

  spec.boundary = DiscretizationSpec::Boundary::RegularBothEnds;
  double lam[3];
  const int grids[3] = {512, 1024, 2048};
  for (int i = 0; i < 3; ++i) {
    spec.grid_size = grids[i];
    lam[i] = sturm_liouville_eigen(one, 0, 3, spec).eigenvalues[2];
  }
  r.truth("oracle.fd-second-order-convergence",
          std::abs((lam[1] - lam[0]) / (lam[2] - lam[1])) >= 3.0);

  std::vector<SpectrumEntry> basis;
  for (int n = 0; n < 5; ++n) basis.push_back(monopole_harmonic(1, Sector::F0, 0, n));
  const RayleighRitzResult rr = rayleigh_ritz_eigen(one, 0, basis);
  worst = 0.0;
  const double expect5[5] = {0.0, 2.0, 6.0, 12.0, 20.0};
  for (int i = 0; i < 5; ++i)
    worst = std::max(worst, std::abs(rr.eigenvalues[i] - expect5[i]) / (1.0 + expect5[i]));
  r.below("oracle.rayleigh-ritz-regular-basis", worst, 1e-8);
  r.below("oracle.rayleigh-ritz-regular-symmetry", rr.h_asymmetry, 1e-10);

  std::vector<SpectrumEntry> mixed = {make_entry(half, Family::Tilde, 0, 0),
                                      make_entry(half, Family::Plain, 0, 0)};
  const RayleighRitzResult rr2 = rayleigh_ritz_eigen(half, 0, mixed);
  r.truth("oracle.rayleigh-ritz-defect-manifest",
          rr2.h_asymmetry >= 1e-2 && std::abs(rr2.gram(0, 1)) > 1.0);

  const S3Report s3 = s3_laplacian_check(512);
  r.below("oracle.s3-annihilates-constants", s3.constant_residual, 1e-10);
}

void suite_footnotes(Runner& r) {
  const S3Report s3 = s3_laplacian_check(1024);
  r.below("footnotes.s3-eigenvalue", std::abs(s3.eigenvalue_estimate + 0.75), 1e-6);
  r.below("footnotes.s3-eigen-residual", s3.eigen_residual, 1e-6);
  r.truth("footnotes.s3-overlap-nonzero", std::abs(s3.overlap) > 1.0);
  r.truth("footnotes.s3-defect-nonzero", std::abs(s3.defect) > 1.0);
  r.below("footnotes.s3-defect-vs-substitution",
          std::abs(s3.defect - s3.defect_substitution) / (1.0 + std::abs(s3.defect)),
          1e-6);
  for (double omega : {1.0, 2.5}) {
    const WittenSqmReport w = witten_sqm_check(omega, 2048);
    r.below("footnotes.sqm-unrestricted-omega" + std::to_string(omega).substr(0, 3),
            std::abs(w.unrestricted_ground + omega) / omega, 1e-6);
    r.below("footnotes.sqm-restricted-omega" + std::to_string(omega).substr(0, 3),
            std::abs(w.restricted_ground), 1e-6);
    r.below("footnotes.sqm-restricted-shape" + std::to_string(omega).substr(0, 3),
            w.restricted_shape_residual, 1e-2);
  }
}

}  // namespace

std::vector<std::string> all_check_suites() {
  return {"jacobi", "quadrature", "modes", "operators", "susy", "oracle", "footnotes"};
}

bool known_check_suite(const std::string& suite) {
  if (suite == "all") return true;
  const auto suites = all_check_suites();
  return std::find(suites.begin(), suites.end(), suite) != suites.end();
}

int run_check_suite(const std::string& suite, const CheckOptions& options,
                    std::ostream& out) {
  Runner r{out, options.tol_scale};
  const bool all = suite == "all";
  if (all || suite == "jacobi") suite_jacobi(r);
  if (all || suite == "quadrature") suite_quadrature(r, options);
  if (all || suite == "modes") suite_modes(r, options);
  if (all || suite == "operators") suite_operators(r, options);
  if (all || suite == "susy") suite_susy(r);
  if (all || suite == "oracle") suite_oracle(r);
  if (all || suite == "footnotes") suite_footnotes(r);
  out << (r.failures == 0 ? "all checks passed" : "checks FAILED") << " ("
      << suite << ")\n";
  return r.failures;
}

}  // namespace fluxmodes::cli
