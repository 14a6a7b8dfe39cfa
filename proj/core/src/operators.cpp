#include "fluxmodes/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace fluxmodes {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

double u_of_z(double z) { return (1.0 - z) / (1.0 + z); }

// Derivative data of the stripped radial function F = u^{-mf/2} * radial,
// written as F = coeff (1-z)^A (1+z)^B P(z).
struct StrippedForm {
  double A = 0.0;
  double B = 0.0;
  JacobiSpec jac;
  std::complex<double> coeff;
  int mf = 0;
  double kap = 0.0;
};

StrippedForm stripped_form(const SpectrumEntry& entry) {
  const ModeDescriptor& d = entry.descriptor;
  StrippedForm s;
  s.mf = d.config.formula_m(d.m);
  s.kap = d.config.formula_kappa();
  s.A = d.a_exp - 0.5 * s.mf;
  s.B = d.b_exp + 0.5 * s.mf;
  s.jac = d.jacobi;
  s.coeff = d.coeff;
  return s;
}

// P, F'/sigma and F''/sigma at z, sigma = (1-z)^A (1+z)^B.
struct LocalDerivatives {
  double p, f1, f2;
};

LocalDerivatives local_derivatives(const StrippedForm& s, double z) {
  const double p = jacobi_eval(s.jac, z);
  const double pp = jacobi_derivative(s.jac, z);
  const double ppp = jacobi_second_derivative(s.jac, z);
  const double rho = -s.A / (1.0 - z) + s.B / (1.0 + z);
  const double rhop = -s.A / ((1.0 - z) * (1.0 - z)) - s.B / ((1.0 + z) * (1.0 + z));
  LocalDerivatives out;
  out.p = p;
  out.f1 = pp + rho * p;
  out.f2 = ppp + 2.0 * rho * pp + (rho * rho + rhop) * p;
  return out;
}

// Closed-form data of the supercharge image in the formula frame of the
// source sector.
struct ImageForm {
  bool zero = false;
  Family family = Family::Plain;
  int n_tag = 0;
  double a = 0.0, b = 0.0, alpha = 0.0, beta = 0.0;
  int degree = 0;
  std::complex<double> multiplier{0.0, 0.0};
};

ImageForm supercharge_image_form(Family family, int mf, int n, double qf) {
  const double kap = 0.5 * (1.0 - qf);
  ImageForm im;
  im.a = 0.5 * (mf + 1);
  im.alpha = mf + 1.0;
  if (family == Family::Plain) {
    im.family = Family::Tilde;
    im.n_tag = n + mf;
    im.degree = n - 1;
    im.b = 0.5 * (qf - mf);
    im.beta = qf - mf;
    im.multiplier = kI * (-0.5 * (n + 1.0 - 2.0 * kap));
    im.zero = (n == 0);
  } else {
    im.family = Family::Plain;
    im.n_tag = n + mf + 1;
    im.degree = n;
    im.b = 0.5 * (mf - qf);
    im.beta = mf - qf;
    const double mult = -(n + mf + 2.0 * kap);
    im.multiplier = kI * mult;
    im.zero = (mult == 0.0);
  }
  return im;
}

SpectrumEntry finish_image(ModeDescriptor d, double eigenvalue) {
  SpectrumEntry e;
  e.descriptor = canonicalize(d);
  e.eigenvalue = eigenvalue;
  if (e.descriptor.is_zero) {
    e.norm_class = NormClass::Regular;
    return e;
  }
  e.gamma = gamma_exponent(e);
  if (effective_a(e.descriptor) < -1e-12) {
    e.divergent_at_z1 = true;
    e.norm_class = NormClass::NonNormalizable;
    return e;
  }
  e.norm_class = classify(e.gamma);
  return e;
}

SpectrumEntry zero_image(const FluxConfig& config, int m_img, Family family,
                         int n_tag, double eigenvalue) {
  SpectrumEntry e;
  e.descriptor.config = config;
  e.descriptor.m = m_img;
  e.descriptor.family = family;
  e.descriptor.n = n_tag < 0 ? 0 : n_tag;
  e.descriptor.coeff = {0.0, 0.0};
  e.descriptor.is_zero = true;
  e.eigenvalue = eigenvalue;
  e.norm_class = NormClass::Regular;
  return e;
}

}  // namespace

std::complex<double> GridFunction::full_value(int i) const {
  const double z = rule.nodes[i];
  return samples[i] * std::pow(1.0 - z, a_exp) * std::pow(1.0 + z, b_exp);
}

double GaugeField::superpotential(double u) const { return -0.5 * q * std::log1p(u); }
double GaugeField::superpotential_du(double u) const { return -0.5 * q / (1.0 + u); }
double GaugeField::superpotential_d2u(double u) const {
  return 0.5 * q / ((1.0 + u) * (1.0 + u));
}

std::complex<double> GaugeField::potential_w(std::complex<double> w) const {
  const double u = std::norm(w);
  return -kI * superpotential_du(u) * std::conj(w);
}

std::complex<double> GaugeField::potential_wbar(std::complex<double> w) const {
  const double u = std::norm(w);
  return kI * superpotential_du(u) * w;
}

std::complex<double> GaugeField::field_strength(double u) const {
  return 2.0 * kI * (superpotential_du(u) + u * superpotential_d2u(u));
}

double GaugeField::area_density(double u) const {
  const double s = 1.0 + u;
  return (kI * field_strength(u)).real() * s * s;
}

std::vector<std::complex<double>> apply_hamiltonian_at(const SpectrumEntry& entry,
                                                       const std::vector<double>& z) {
  const StrippedForm s = stripped_form(entry);
  std::vector<std::complex<double>> out(z.size());
  if (entry.descriptor.is_zero) return out;
  for (size_t i = 0; i < z.size(); ++i) {
    const double zi = z[i];
    const LocalDerivatives d = local_derivatives(s, zi);
    const double lf = (zi * zi - 1.0) * d.f2 + 2.0 * (zi + s.mf) * d.f1 +
                      (2.0 * s.kap * (s.kap + s.mf) / (1.0 + zi) +
                       s.kap * (1.0 - s.kap)) *
                          d.p;
    out[i] = s.coeff * lf;
  }
  return out;
}

GridFunction apply_hamiltonian(const SpectrumEntry& entry, int npoints) {
  GridFunction g;
  g.m = entry.descriptor.m;
  g.a_exp = entry.descriptor.a_exp;
  g.b_exp = entry.descriptor.b_exp;
  g.rule = gauss_jacobi_rule(npoints, 0.0, 0.0);
  g.samples = apply_hamiltonian_at(entry, g.rule.nodes);
  return g;
}

GridFunction apply_hamiltonian(const GridFunction& grid, const FluxConfig& config) {
  const int mf = config.formula_m(grid.m);
  const double kap = config.formula_kappa();
  const double A = grid.a_exp - 0.5 * mf;
  const double B = grid.b_exp + 0.5 * mf;
  const auto& z = grid.rule.nodes;
  const int n = static_cast<int>(z.size());
  const auto d = differentiation_matrix(z);
  std::vector<std::complex<double>> s1(n, 0.0), s2(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s1[i] += d[i][j] * grid.samples[j];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s2[i] += d[i][j] * s1[j];

  GridFunction out = grid;
  for (int i = 0; i < n; ++i) {
    const double zi = z[i];
    const double rho = -A / (1.0 - zi) + B / (1.0 + zi);
    const double rhop = -A / ((1.0 - zi) * (1.0 - zi)) - B / ((1.0 + zi) * (1.0 + zi));
    const std::complex<double> f1 = s1[i] + rho * grid.samples[i];
    const std::complex<double> f2 =
        s2[i] + 2.0 * rho * s1[i] + (rho * rho + rhop) * grid.samples[i];
    out.samples[i] = (zi * zi - 1.0) * f2 + 2.0 * (zi + mf) * f1 +
                     (2.0 * kap * (kap + mf) / (1.0 + zi) + kap * (1.0 - kap)) *
                         grid.samples[i];
  }
  return out;
}

std::vector<std::complex<double>> apply_hamiltonian_u_at(const SpectrumEntry& entry,
                                                         const std::vector<double>& z) {
  const StrippedForm s = stripped_form(entry);
  std::vector<std::complex<double>> out(z.size());
  if (entry.descriptor.is_zero) return out;
  for (size_t i = 0; i < z.size(); ++i) {
    const double zi = z[i];
    const double u = u_of_z(zi);
    const LocalDerivatives d = local_derivatives(s, zi);
    // Chain rule z -> u on the stripped radial function.
    const double fu = -0.5 * (1.0 + zi) * (1.0 + zi) * d.f1;
    const double fuu =
        0.25 * std::pow(1.0 + zi, 3) * ((1.0 + zi) * d.f2 + 2.0 * d.f1);
    const double one_plus_u = 1.0 + u;
    const double hu = -u * one_plus_u * one_plus_u * fuu -
                      (s.mf + 1.0) * one_plus_u * one_plus_u * fu +
                      s.kap * s.kap * u * d.p + s.kap * s.mf * one_plus_u * d.p +
                      s.kap * d.p;
    out[i] = s.coeff * hu;
  }
  return out;
}

SpectrumEntry apply_Q(const SpectrumEntry& entry) {
  const ModeDescriptor& d = entry.descriptor;
  if (d.config.sector != Sector::F0)
    throw std::invalid_argument("apply_Q: entry must be in sector F=0");
  const FluxConfig image_config{d.config.q, Sector::F1};
  if (d.is_zero)
    return zero_image(image_config, d.m + 1, Family::Tilde, 0, entry.eigenvalue);

  const ModeDescriptor fresh = unreduce_to_fresh(d);
  const ImageForm im =
      supercharge_image_form(fresh.family, fresh.m, fresh.n, d.config.q);
  const int m_img = d.m + 1;
  if (im.zero || im.degree < 0)
    return zero_image(image_config, m_img, im.family, im.n_tag, entry.eigenvalue);

  ModeDescriptor out;
  out.config = image_config;
  out.m = m_img;
  out.family = im.family;
  out.n = im.n_tag;
  out.a_exp = im.a;
  out.b_exp = im.b;
  out.jacobi = {im.degree, im.alpha, im.beta};
  out.coeff = fresh.coeff * im.multiplier;
  return finish_image(out, entry.eigenvalue);
}

SpectrumEntry apply_Qbar(const SpectrumEntry& entry) {
  const ModeDescriptor& d = entry.descriptor;
  if (d.config.sector != Sector::F1)
    throw std::invalid_argument("apply_Qbar: entry must be in sector F=1");
  const FluxConfig image_config{d.config.q, Sector::F0};
  if (d.is_zero)
    return zero_image(image_config, d.m - 1, Family::Tilde, 0, entry.eigenvalue);

  const ModeDescriptor fresh = unreduce_to_fresh(d);
  const int mf = d.config.formula_m(d.m);
  const double qf = d.config.formula_q();
  const ImageForm im = supercharge_image_form(fresh.family, mf, fresh.n, qf);
  const int m_img = d.m - 1;  // physical: -(mf+1)
  if (im.zero || im.degree < 0)
    return zero_image(image_config, m_img, im.family, im.n_tag, entry.eigenvalue);

  ModeDescriptor out;
  out.config = image_config;
  out.m = m_img;
  out.family = im.family;
  out.n = im.n_tag;
  out.a_exp = im.a;
  out.b_exp = im.b;
  out.jacobi = {im.degree, im.alpha, im.beta};
  out.coeff = fresh.coeff * im.multiplier;
  return finish_image(out, entry.eigenvalue);
}

std::complex<double> supercharge_image_numeric(const SpectrumEntry& entry, double z) {
  const ModeDescriptor& d = entry.descriptor;
  const int mf = d.config.formula_m(d.m);
  const double kap = d.config.formula_kappa();
  // Stripped function F(z) = u^{-mf/2} radial(z), differentiated by
  // Richardson-extrapolated central differences.
  auto f = [&](double zz) -> std::complex<double> {
    return std::pow(u_of_z(zz), -0.5 * mf) * evaluate(d, zz, 0.0);
  };
  const double h = 1e-4;
  auto central = [&](double step) { return (f(z + step) - f(z - step)) / (2.0 * step); };
  const std::complex<double> fz = (4.0 * central(0.5 * h) - central(h)) / 3.0;
  const std::complex<double> bracket = -(1.0 + z) * fz - kap * f(z);
  return kI * std::pow(u_of_z(z), 0.5 * (mf + 1)) * bracket;
}

AlgebraResiduals susy_algebra_residuals(const SpectrumEntry& entry, int npoints) {
  AlgebraResiduals out;
  SpectrumEntry back;
  if (entry.descriptor.config.sector == Sector::F0)
    back = apply_Qbar(apply_Q(entry));
  else
    back = apply_Q(apply_Qbar(entry));
  const GridFunction h = apply_hamiltonian(entry, npoints);
  double resid = 0.0;
  for (int i = 0; i < h.rule.size(); ++i) {
    const double z = h.rule.nodes[i];
    resid = std::max(resid, std::abs(evaluate(back.descriptor, z, 0.0) - h.full_value(i)));
  }
  out.anticommutator = resid;
  return out;
}

MatrixElement h_matrix_element(const SpectrumEntry& bra, const SpectrumEntry& ket,
                               int npoints) {
  const ModeDescriptor& db = bra.descriptor;
  const ModeDescriptor& dk = ket.descriptor;
  if (db.config.sector != dk.config.sector)
    throw std::invalid_argument("h_matrix_element: sector mismatch");
  MatrixElement out;
  if (db.is_zero || dk.is_zero) return out;
  if (db.m != dk.m) return out;  // phi orthogonality; H preserves m
  const double a = db.a_exp + dk.a_exp;
  const double b = db.b_exp + dk.b_exp;
  if (a <= -1.0 || b <= -1.0) {
    out.divergent = true;
    return out;
  }
  const int need =
      std::max(npoints, (db.jacobi.degree + dk.jacobi.degree) / 2 + 4);
  const QuadratureRule rule = gauss_jacobi_rule(need, a, b);
  const std::vector<std::complex<double>> h = apply_hamiltonian_at(ket, rule.nodes);
  std::complex<double> s{0.0, 0.0};
  for (int i = 0; i < rule.size(); ++i)
    s += rule.weights[i] * jacobi_eval(db.jacobi, rule.nodes[i]) * h[i];
  out.value = std::conj(db.coeff) * M_PI * s;
  return out;
}

MatrixElement hermiticity_defect(const SpectrumEntry& e1, const SpectrumEntry& e2,
                                 int npoints) {
  if (e1.descriptor.m != e2.descriptor.m)
    throw std::invalid_argument("hermiticity_defect: angular momenta differ");
  const MatrixElement m12 = h_matrix_element(e1, e2, npoints);
  const MatrixElement m21 = h_matrix_element(e2, e1, npoints);
  MatrixElement out;
  out.divergent = m12.divergent || m21.divergent;
  out.value = m12.value - m21.value;
  return out;
}

double angular_momentum_check(const SpectrumEntry&) {
  // Descriptors carry a single e^{i m phi} factor, so L acts as
  // multiplication by m with no residual.
  return 0.0;
}

double angular_momentum_residual(
    const std::function<std::complex<double>(double, double)>& psi, int m,
    int npoints) {
  const QuadratureRule rule = gauss_jacobi_rule(npoints, 0.0, 0.0);
  const double h = 1e-3;
  double resid = 0.0;
  for (int i = 0; i < rule.size(); ++i) {
    const double z = rule.nodes[i];
    auto central = [&](double step) {
      return (psi(z, step) - psi(z, -step)) / (2.0 * step);
    };
    const std::complex<double> dphi = (4.0 * central(0.5 * h) - central(h)) / 3.0;
    resid = std::max(resid, std::abs(dphi / kI - static_cast<double>(m) * psi(z, 0.0)));
  }
  return resid;
}

double flux_integral(double q, int npoints) {
  const GaugeField field{q};
  const QuadratureRule rule = gauss_jacobi_rule(npoints, 0.0, 0.0);
  double s = 0.0;
  for (int i = 0; i < rule.size(); ++i)
    s += rule.weights[i] * field.area_density(u_of_z(rule.nodes[i]));
  return 0.5 * s;
}

}  // namespace fluxmodes
