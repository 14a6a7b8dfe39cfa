#include "fluxmodes/modes.hpp"

#include <algorithm>
#include <cmath>

#include "fluxmodes/quadrature.hpp"

namespace fluxmodes {

namespace {

bool is_negative_integer(double x) {
  return x < 0.0 && x == std::floor(x);
}

}  // namespace

const char* family_name(Family f) {
  return f == Family::Plain ? "plain" : "tilde";
}

const char* norm_class_name(NormClass c) {
  switch (c) {
    case NormClass::Regular: return "regular";
    case NormClass::Section: return "section";
    case NormClass::SingularNormalizable: return "singular-normalizable";
    case NormClass::NonNormalizable: return "non-normalizable";
  }
  return "?";
}

ModeDescriptor fresh_descriptor(const FluxConfig& config, Family family, int m, int n) {
  if (n < 0) throw std::invalid_argument("fresh_descriptor: n < 0");
  const double kap = config.formula_kappa();
  const int mf = config.formula_m(m);
  ModeDescriptor d;
  d.config = config;
  d.m = m;
  d.family = family;
  d.n = n;
  d.a_exp = 0.5 * mf;
  if (family == Family::Plain) {
    d.b_exp = -0.5 * mf - kap;
    d.jacobi = {n, static_cast<double>(mf), -mf - 2.0 * kap};
  } else {
    d.b_exp = 0.5 * mf + kap;
    d.jacobi = {n, static_cast<double>(mf), mf + 2.0 * kap};
  }
  return d;
}

double family_eigenvalue(const FluxConfig& config, Family family, int m, int n) {
  const double kap = config.formula_kappa();
  const int mf = config.formula_m(m);
  if (family == Family::Plain) return n * (n + 1.0 - 2.0 * kap);
  return (mf + n + 2.0 * kap) * (mf + n + 1.0);
}

ModeDescriptor canonicalize(const ModeDescriptor& d) {
  ModeDescriptor out = d;
  if (out.is_zero) return out;
  if (is_negative_integer(out.jacobi.alpha)) {
    const int j = static_cast<int>(-out.jacobi.alpha);
    if (out.jacobi.degree >= j) {
      const int reduced = out.jacobi.degree - j;
      const double c = alpha_lowering_constant(j, reduced, out.jacobi.beta);
      out.coeff *= c * ((j % 2 == 0) ? 1.0 : -1.0);  // (z-1)^j = (-1)^j (1-z)^j
      out.a_exp += j;
      out.jacobi = {reduced, static_cast<double>(j), out.jacobi.beta};
      if (c == 0.0) out.is_zero = true;
    }
  }
  if (!out.is_zero && is_negative_integer(out.jacobi.beta)) {
    const int j = static_cast<int>(-out.jacobi.beta);
    if (out.jacobi.degree >= j) {
      const int reduced = out.jacobi.degree - j;
      const double c = beta_lowering_constant(j, reduced, out.jacobi.alpha);
      out.coeff *= c;
      out.b_exp += j;
      out.jacobi = {reduced, out.jacobi.alpha, static_cast<double>(j)};
      if (c == 0.0) out.is_zero = true;
    }
  }
  return out;
}

ModeDescriptor unreduce_to_fresh(const ModeDescriptor& d) {
  if (d.is_zero) throw std::runtime_error("unreduce_to_fresh: zero descriptor");
  ModeDescriptor fresh = fresh_descriptor(d.config, d.family, d.m, d.n);
  const ModeDescriptor canon = canonicalize(fresh);
  if (canon.is_zero || canon.coeff == std::complex<double>(0.0, 0.0))
    throw std::runtime_error("unreduce_to_fresh: family member vanishes identically");
  if (canon.jacobi.degree != d.jacobi.degree ||
      std::abs(canon.jacobi.alpha - d.jacobi.alpha) > 1e-9 ||
      std::abs(canon.jacobi.beta - d.jacobi.beta) > 1e-9 ||
      std::abs(canon.a_exp - d.a_exp) > 1e-9 ||
      std::abs(canon.b_exp - d.b_exp) > 1e-9)
    throw std::runtime_error("unreduce_to_fresh: descriptor is not a canonical family member");
  fresh.coeff = d.coeff / canon.coeff;
  return fresh;
}

double effective_a(const ModeDescriptor& d) {
  return d.a_exp + zero_order_at_plus1(d.jacobi);
}

double effective_b(const ModeDescriptor& d) {
  return d.b_exp + zero_order_at_minus1(d.jacobi);
}

double gamma_exponent(const SpectrumEntry& entry) {
  return 2.0 * effective_b(entry.descriptor);
}

NormClass classify(double gamma) {
  if (gamma > 0.0) return NormClass::Regular;
  if (gamma == 0.0) return NormClass::Section;
  if (gamma > -1.0) return NormClass::SingularNormalizable;
  return NormClass::NonNormalizable;
}

SpectrumEntry make_entry(const FluxConfig& config, Family family, int m, int n) {
  SpectrumEntry e;
  e.descriptor = canonicalize(fresh_descriptor(config, family, m, n));
  e.eigenvalue = family_eigenvalue(config, family, m, n);
  e.gamma = gamma_exponent(e);
  if (!e.descriptor.is_zero && effective_a(e.descriptor) < -1e-12) {
    e.divergent_at_z1 = true;
    e.norm_class = NormClass::NonNormalizable;
    return e;
  }
  e.norm_class = classify(e.gamma);
  if (e.norm_class == NormClass::Section && !config.integer_flux())
    throw std::logic_error("section behavior at non-integer flux");
  return e;
}

std::pair<SpectrumEntry, SpectrumEntry> build_families(const FluxConfig& config,
                                                       int m, int n) {
  return {make_entry(config, Family::Plain, m, n),
          make_entry(config, Family::Tilde, m, n)};
}

SpectrumEntry reduce_negative_m(const SpectrumEntry& entry) {
  const ModeDescriptor& d = entry.descriptor;
  const int mf = d.config.formula_m(d.m);
  if (mf >= 0)
    throw std::invalid_argument("reduce_negative_m: angular momentum is not negative");
  if (d.n < -mf)
    throw DivergentAtNorthPoleOfMap("mode diverges at z=1: n < |m|");
  SpectrumEntry out = entry;
  out.descriptor = canonicalize(d);
  out.gamma = gamma_exponent(out);
  out.norm_class = classify(out.gamma);
  return out;
}

SpectrumEntry monopole_harmonic(int q, Sector sector, int m, int n) {
  FluxConfig config{static_cast<double>(q), sector};
  const int qf = static_cast<int>(std::lround(config.formula_q()));
  const int mf = config.formula_m(m);
  const int n_min = qf > 0 ? 0 : 1 - qf;
  if (n < n_min) throw OutOfRange("monopole_harmonic: n below the admissible range");
  if (mf < -n || mf > n + qf - 1)
    throw OutOfRange("monopole_harmonic: m outside -n..n+q-1");
  SpectrumEntry e = make_entry(config, Family::Plain, m, n);
  if (e.descriptor.is_zero || e.divergent_at_z1 ||
      e.norm_class == NormClass::NonNormalizable ||
      e.norm_class == NormClass::SingularNormalizable)
    throw std::logic_error("monopole_harmonic: enumeration produced a non-harmonic");
  return e;
}

std::complex<double> evaluate(const ModeDescriptor& d, double z, double phi) {
  if (d.is_zero) return {0.0, 0.0};
  const std::complex<double> phase = std::polar(1.0, d.m * phi);
  return d.coeff * phase * evaluate_radial_basis(d, z);
}

double evaluate_radial_basis(const ModeDescriptor& d, double z) {
  if (d.is_zero) return 0.0;
  return std::pow(1.0 - z, d.a_exp) * std::pow(1.0 + z, d.b_exp) *
         jacobi_eval(d.jacobi, z);
}

InnerProduct inner_product(const SpectrumEntry& e1, const SpectrumEntry& e2,
                           int npoints) {
  InnerProduct out;
  const ModeDescriptor& d1 = e1.descriptor;
  const ModeDescriptor& d2 = e2.descriptor;
  if (d1.is_zero || d2.is_zero) return out;
  if (d1.m != d2.m) return out;  // phi integration
  const double a = d1.a_exp + d2.a_exp;
  const double b = d1.b_exp + d2.b_exp;
  if (a <= -1.0 || b <= -1.0) {
    out.divergent = true;
    return out;
  }
  const int need = std::max(npoints, (d1.jacobi.degree + d2.jacobi.degree) / 2 + 2);
  const WeightedIntegral r = integrate_product(
      [&](double z) { return jacobi_eval(d1.jacobi, z); },
      [&](double z) { return jacobi_eval(d2.jacobi, z); }, a, b, need);
  out.value = std::conj(d1.coeff) * d2.coeff * M_PI * r.value;
  return out;
}

SpectrumEntry normalized(const SpectrumEntry& entry, int npoints) {
  const InnerProduct n2 = inner_product(entry, entry, npoints);
  if (n2.divergent) throw std::domain_error("normalized: norm integral diverges");
  const double norm = std::sqrt(std::abs(n2.value));
  if (norm == 0.0) throw std::domain_error("normalized: zero norm");
  SpectrumEntry out = entry;
  out.descriptor.coeff /= norm;
  return out;
}

bool proportional(const ModeDescriptor& d1, const ModeDescriptor& d2,
                  double tol, std::complex<double>* ratio) {
  if (d1.is_zero && d2.is_zero) {
    if (ratio) *ratio = {1.0, 0.0};
    return true;
  }
  if (d1.m != d2.m) return false;
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
  if (max1 == 0.0 || max2 == 0.0) {
    if (ratio) *ratio = {0.0, 0.0};
    return max1 == max2;
  }
  const std::complex<double> r = v2[imax] / v1[imax];
  double resid = 0.0;
  for (int i = 0; i < kSamples; ++i)
    resid = std::max(resid, std::abs(v2[i] - r * v1[i]));
  if (ratio) *ratio = r;
  return resid <= tol * max2;
}

std::vector<TowerPoint> tower_lines(double q_min, double q_max, int steps,
                                    Sector sector, int m_low, int m_high) {
  if (steps < 2) throw std::invalid_argument("tower_lines: steps < 2");
  std::vector<TowerPoint> out;
  out.reserve(static_cast<size_t>(steps) * (m_high - m_low + 1) * 2);
  for (int i = 0; i < steps; ++i) {
    const double q = q_min + (q_max - q_min) * i / (steps - 1);
    const FluxConfig config{q, sector};
    for (int m = m_low; m <= m_high; ++m) {
      const int mf = config.formula_m(m);
      const double qf = config.formula_q();
      const double gamma_plain = qf - 1.0 - mf;
      const double gamma_tilde = mf + 1.0 - qf;
      out.push_back({q, m, Family::Plain, gamma_plain, classify(gamma_plain)});
      out.push_back({q, m, Family::Tilde, gamma_tilde, classify(gamma_tilde)});
    }
  }
  return out;
}

}  // namespace fluxmodes
