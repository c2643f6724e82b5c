#pragma once

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdmse/error.hpp"
#include "pdmse/special_functions.hpp"

namespace pdmse {

enum class ModelId {
  nlo,
  t1r1, t1r2, t1r3, t1r4, t1r5, t1r6,
  t2r1, t2r2, t2r3, t2r4, t2r5, t2r6,
  bs_apbn, bs_anbp
};

inline constexpr std::array<ModelId, 15> kAllModels = {
    ModelId::nlo,  ModelId::t1r1, ModelId::t1r2, ModelId::t1r3, ModelId::t1r4,    ModelId::t1r5,   ModelId::t1r6, ModelId::t2r1,
    ModelId::t2r2, ModelId::t2r3, ModelId::t2r4, ModelId::t2r5, ModelId::t2r6, ModelId::bs_apbn, ModelId::bs_anbp};

inline std::string to_string(ModelId id) {
  switch (id) {
    case ModelId::nlo: return "nlo";
    case ModelId::t1r1: return "t1r1";
    case ModelId::t1r2: return "t1r2";
    case ModelId::t1r3: return "t1r3";
    case ModelId::t1r4: return "t1r4";
    case ModelId::t1r5: return "t1r5";
    case ModelId::t1r6: return "t1r6";
    case ModelId::t2r1: return "t2r1";
    case ModelId::t2r2: return "t2r2";
    case ModelId::t2r3: return "t2r3";
    case ModelId::t2r4: return "t2r4";
    case ModelId::t2r5: return "t2r5";
    case ModelId::t2r6: return "t2r6";
    case ModelId::bs_apbn: return "bs-apbn";
    case ModelId::bs_anbp: return "bs-anbp";
  }
  return "?";
}

inline std::optional<ModelId> parse_model_id(std::string_view s) {
  for (ModelId id : kAllModels)
    if (to_string(id) == s) return id;
  return std::nullopt;
}

// 1 or 2 for the catalog tables, 0 otherwise.
inline int table_of(ModelId id) {
  int v = static_cast<int>(id);
  if (v >= 1 && v <= 6) return 1;
  if (v >= 7 && v <= 12) return 2;
  return 0;
}

inline int row_of(ModelId id) {
  int v = static_cast<int>(id);
  if (v >= 1 && v <= 6) return v;
  if (v >= 7 && v <= 12) return v - 6;
  return 0;
}

inline bool is_broken_susy(ModelId id) { return id == ModelId::bs_apbn || id == ModelId::bs_anbp; }

inline ModelId table_model(int table, int row) {
  return static_cast<ModelId>((table == 2 ? 6 : 0) + row);
}

struct ModelParams {
  double A = 0.0;
  double B = 0.0;
  double lambda = 1.0;
  double alpha = 1.0;
  bool row4_compat = false;

  double g() const { return alpha * (alpha + lambda); }
  double Lambda() const { return lambda / alpha; }
  double k() const { return std::sqrt(std::abs(lambda)); }
};

// Symbols of the table captions; B enters as iB for the complexified rows.
struct DerivedParams {
  cplx s, r, r1, a, s1, s2, s3, s4, sp, rp;
};

inline cplx coupling_B(ModelId id, const ModelParams& p) {
  return table_of(id) == 2 ? cplx(0.0, p.B) : cplx(p.B, 0.0);
}

inline DerivedParams derive(ModelId id, const ModelParams& p, int n) {
  const double k = p.k();
  const cplx b = coupling_B(id, p);
  DerivedParams d{};
  d.s = p.A / k;
  d.r = b / k;
  d.r1 = b / (k * k);
  d.sp = d.s;
  d.rp = d.r;
  if (row_of(id) == 3) {
    d.a = d.r1 / (d.s + static_cast<double>(n));
  } else {
    d.a = d.r1 / (d.s - static_cast<double>(n));
  }
  d.s1 = d.s - static_cast<double>(n) + d.a;
  d.s2 = d.s - static_cast<double>(n) - d.a;
  d.s3 = d.a - static_cast<double>(n) - d.s;
  d.s4 = -(d.s + static_cast<double>(n) + d.a);
  return d;
}

struct Interval {
  double lo;
  double hi;
};

struct ModelDescriptor {
  ModelId id;
  Interval domain;  // in x; endpoints excluded
  bool hermitian;
  std::optional<int> level_bound;  // largest admissible n
  std::string potential_shape;
};

inline double mass(double x, double lambda) {
  double f = 1.0 + lambda * x * x;
  if (f <= 0.0) throw DomainError("mass: 1 + lambda x^2 must be positive");
  return 1.0 / f;
}

inline double coordinate_map(double x, double lambda) {
  if (lambda == 0.0) return x;
  double k = std::sqrt(std::abs(lambda));
  if (lambda > 0.0) return std::asinh(k * x) / k;
  if (std::abs(k * x) >= 1.0) throw DomainError("coordinate_map: |x| must be below 1/sqrt(|lambda|)");
  return std::asin(k * x) / k;
}

inline double coordinate_map_inverse(double z, double lambda) {
  if (lambda == 0.0) return z;
  double k = std::sqrt(std::abs(lambda));
  if (lambda > 0.0) return std::sinh(k * z) / k;
  if (std::abs(k * z) > std::numbers::pi / 2) throw DomainError("coordinate_map_inverse: z outside the finite box");
  return std::sin(k * z) / k;
}

inline std::optional<int> level_bound(ModelId id, const ModelParams& p) {
  if (id == ModelId::nlo) {
    double L = p.Lambda();
    if (L <= 0.0) return std::nullopt;
    double m = 1.0 / L;
    double fl = std::floor(m);
    return static_cast<int>(fl == m ? fl - 1.0 : fl);
  }
  if (is_broken_susy(id)) return std::nullopt;
  const double k = p.k();
  const double s = p.A / k;
  switch (row_of(id)) {
    case 1:
    case 4: return static_cast<int>(std::ceil(s)) - 1;
    case 2: {
      if (table_of(id) == 2) return static_cast<int>(std::ceil(s)) - 1;
      double r1 = std::abs(p.B) / (k * k);
      int n = -1;
      while (s - (n + 1) > 0.0 && (s - (n + 1)) * (s - (n + 1)) > r1) ++n;
      return n;
    }
    case 3: {
      double r1 = std::abs(p.B) / (k * k);
      int n = -1;
      while ((s + (n + 1)) * (s + (n + 1)) < r1) ++n;
      return n;
    }
    default: return std::nullopt;
  }
}

inline void check_constraints(ModelId id, const ModelParams& p) {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw ConstraintError(what);
  };
  if (!std::isfinite(p.A) || !std::isfinite(p.B) || !std::isfinite(p.lambda) || !std::isfinite(p.alpha))
    throw ConstraintError("parameters must be finite");
  if (id == ModelId::nlo) {
    need(p.alpha > 0.0, "nlo: alpha must be positive");
    return;
  }
  if (id == ModelId::bs_apbn) {
    need(p.lambda < 0.0, "bs-apbn: lambda must be negative");
    need(p.A > 0.0 && p.B < 0.0, "bs-apbn: requires A > 0 and B < 0");
    return;
  }
  if (id == ModelId::bs_anbp) {
    need(p.lambda < 0.0, "bs-anbp: lambda must be negative");
    need(p.A < 0.0 && p.B > 0.0, "bs-anbp: requires A < 0 and B > 0");
    return;
  }
  const int row = row_of(id);
  const std::string name = to_string(id);
  if (row <= 4)
    need(p.lambda > 0.0, name + ": lambda must be positive");
  else
    need(p.lambda < 0.0, name + ": lambda must be negative");
  switch (row) {
    case 1: need(p.A > 0.0, name + ": requires A > 0"); break;
    case 2: need(p.A > 0.0 && p.B < p.A * p.A, name + ": requires A > 0 and B < A^2"); break;
    case 3: need(p.A > 0.0 && p.B > p.A * p.A, name + ": requires A > 0 and B > A^2"); break;
    case 4: need(p.A > 0.0 && p.A < p.B, name + ": requires 0 < A < B"); break;
    case 5: need(p.A > 0.0, name + ": requires A > 0"); break;
    case 6: need(p.A > 0.0, name + ": requires A > 0"); break;
    default: break;
  }
}

inline ModelDescriptor describe(ModelId id, const ModelParams& p) {
  check_constraints(id, p);
  const double inf = std::numeric_limits<double>::infinity();
  ModelDescriptor d{id, {-inf, inf}, table_of(id) != 2, level_bound(id, p), ""};
  const double k = p.k();
  if (id == ModelId::nlo) {
    if (p.lambda < 0.0) d.domain = {-1.0 / k, 1.0 / k};
    d.potential_shape = "nonlinear oscillator";
    return d;
  }
  if (is_broken_susy(id)) {
    d.domain = {0.0, 1.0 / k};
    d.potential_shape = "trigonometric Poschl-Teller (broken SUSY)";
    return d;
  }
  static const char* shapes[] = {"", "hyperbolic Scarf II", "Rosen-Morse II", "Eckart", "generalized Poschl-Teller",
                                 "trigonometric Scarf I", "Rosen-Morse I"};
  d.potential_shape = shapes[row_of(id)];
  switch (row_of(id)) {
    case 3:
    case 4: d.domain = {0.0, inf}; break;
    case 5:
    case 6: d.domain = {-1.0 / k, 1.0 / k}; break;
    default: break;
  }
  return d;
}

inline void check_x_in_domain(const ModelDescriptor& d, double x) {
  if (!(x > d.domain.lo && x < d.domain.hi)) throw DomainError("x outside the model domain");
}

// z-interval covered by the model domain.
inline Interval z_domain(ModelId id, const ModelParams& p) {
  const double inf = std::numeric_limits<double>::infinity();
  const double k = p.k();
  const double half = std::numbers::pi / (2.0 * k);
  if (id == ModelId::nlo) return p.lambda < 0.0 ? Interval{-half, half} : Interval{-inf, inf};
  if (is_broken_susy(id)) return {0.0, half};
  switch (row_of(id)) {
    case 3:
    case 4: return {0.0, inf};
    case 5:
    case 6: return {-half, half};
    default: return {-inf, inf};
  }
}

struct Superpotential {
  cplx W;
  cplx dW;  // dW/dz, equal to sqrt(1 + lambda x^2) dW/dx
};

// Closed-form superpotential of the catalog rows and broken-SUSY pair at z.
inline Superpotential superpotential_z(ModelId id, const ModelParams& p, double z) {
  const double k = p.k();
  const double u = k * z;
  const double A = p.A;
  const cplx b = coupling_B(id, p);
  if (is_broken_susy(id)) {
    double t = std::tan(u), ct = 1.0 / std::tan(u), sec2 = 1.0 + t * t, csc2 = 1.0 + ct * ct;
    return {A * t - p.B * ct, A * k * sec2 + p.B * k * csc2};
  }
  switch (row_of(id)) {
    case 1: {
      double th = std::tanh(u), sh = 1.0 / std::cosh(u);
      return {A * th + b * sh, A * k * sh * sh - b * k * sh * th};
    }
    case 2: {
      double th = std::tanh(u), sh = 1.0 / std::cosh(u);
      return {A * th + b / A, A * k * sh * sh};
    }
    case 3: {
      double ch = 1.0 / std::tanh(u), cs = 1.0 / std::sinh(u);
      return {b / A - A * ch, A * k * cs * cs};
    }
    case 4: {
      double ch = 1.0 / std::tanh(u), cs = 1.0 / std::sinh(u);
      return {A * ch - b * cs, -A * k * cs * cs + b * k * cs * ch};
    }
    case 5: {
      double t = std::tan(u), sc = 1.0 / std::cos(u);
      return {A * t - b * sc, A * k * sc * sc - b * k * sc * t};
    }
    case 6: {
      double t = std::tan(u), sc = 1.0 / std::cos(u);
      return {A * t - b / A, A * k * sc * sc};
    }
    default: throw DomainError("superpotential_z: no superpotential for " + to_string(id));
  }
}

// Potential of the model in the z coordinate (the Schroedinger form -psi'' + V psi).
inline cplx potential_z(ModelId id, const ModelParams& p, double z) {
  const double k = p.k();
  const double u = k * z;
  const double A = p.A;
  if (id == ModelId::nlo) {
    if (p.lambda == 0.0) throw DomainError("potential: the nonlinear oscillator potential needs lambda != 0");
    double x = coordinate_map_inverse(z, p.lambda);
    return -(p.g() / p.lambda) / (1.0 + p.lambda * x * x);
  }
  if (is_broken_susy(id)) {
    double sec2 = 1.0 / (std::cos(u) * std::cos(u)), csc2 = 1.0 / (std::sin(u) * std::sin(u));
    return A * (A - k) * sec2 + p.B * (p.B - k) * csc2 - (A + p.B) * (A + p.B);
  }
  const cplx b = coupling_B(id, p);
  switch (row_of(id)) {
    case 1: {
      double sh = 1.0 / std::cosh(u), th = std::tanh(u);
      return (b * b - A * A - A * k) * sh * sh + b * (2.0 * A + k) * th * sh + A * A;
    }
    case 2: {
      double sh = 1.0 / std::cosh(u), th = std::tanh(u);
      return A * A + b * b / (A * A) - A * (A + k) * sh * sh + 2.0 * b * th;
    }
    case 3: {
      double cs = 1.0 / std::sinh(u), ch = 1.0 / std::tanh(u);
      return A * A + b * b / (A * A) - 2.0 * b * ch + A * (A - k) * cs * cs;
    }
    case 4: {
      double cs = 1.0 / std::sinh(u), ch = 1.0 / std::tanh(u);
      // Cross-term coefficient as printed, (2A + lambda); (2A + sqrt(lambda)) under row4_compat.
      double cross = p.row4_compat ? 2.0 * A + k : 2.0 * A + p.lambda;
      return (A * A + b * b + A * k) * cs * cs - b * cross * ch * cs + A * A;
    }
    case 5: {
      double sc = 1.0 / std::cos(u), t = std::tan(u);
      return (A * A + b * b - A * k) * sc * sc - b * (2.0 * A - k) * t * sc - A * A;
    }
    case 6: {
      double sc = 1.0 / std::cos(u), t = std::tan(u);
      return A * (A - k) * sc * sc - 2.0 * b * t - A * A + b * b / (A * A);
    }
    default: break;
  }
  throw DomainError("potential_z: unknown model");
}

inline cplx potential_eval(ModelId id, const ModelParams& p, double x) {
  const ModelDescriptor d = describe(id, p);
  check_x_in_domain(d, x);
  return potential_z(id, p, coordinate_map(x, p.lambda));
}

// Broken-SUSY partner potentials V- (sign = -1) and V+ (sign = +1) at z.
inline double broken_partner_potential_z(const ModelParams& p, double z, int sign) {
  const double k = p.k();
  const double u = k * z;
  double sec2 = 1.0 / (std::cos(u) * std::cos(u)), csc2 = 1.0 / (std::sin(u) * std::sin(u));
  return p.A * (p.A + sign * k) * sec2 + p.B * (p.B + sign * k) * csc2 - (p.A + p.B) * (p.A + p.B);
}

inline void check_level(ModelId id, const ModelParams& p, int n) {
  if (n < 0) throw LevelBoundError("level index must be non-negative");
  auto bound = level_bound(id, p);
  if (bound && n > *bound)
    throw LevelBoundError(to_string(id) + ": level " + std::to_string(n) + " exceeds the bound " +
                          std::to_string(*bound));
}

// Closed-form E_n. For nlo this is the adimensional eps_m.
inline cplx energy_level(ModelId id, const ModelParams& p, int n) {
  check_constraints(id, p);
  check_level(id, p, n);
  const double k = p.k();
  const double A = p.A;
  const double nk = n * k;
  if (id == ModelId::nlo) return (n + 0.5) - 0.5 * n * n * p.Lambda();
  if (id == ModelId::bs_apbn) return std::pow(A - p.B + k + 2.0 * nk, 2) - std::pow(A + p.B, 2);
  if (id == ModelId::bs_anbp) return std::pow(p.B - A + k + 2.0 * nk, 2) - std::pow(A + p.B, 2);
  const cplx b = coupling_B(id, p);
  auto pole_check = [&](double d) {
    if (d == 0.0) throw PoleError(to_string(id) + ": energy formula has a pole at this level");
  };
  switch (row_of(id)) {
    case 1:
    case 4: return nk * (2.0 * A - nk);
    case 2:
      pole_check(A - nk);
      return A * A + b * b / (A * A) - (A - nk) * (A - nk) - b * b / ((A - nk) * (A - nk));
    case 3:
      pole_check(A + nk);
      return A * A + b * b / (A * A) - (A + nk) * (A + nk) - b * b / ((A + nk) * (A + nk));
    case 5: return nk * (2.0 * A + nk);
    case 6:
      pole_check(A + nk);
      return b * b / (A * A) - A * A + (A + nk) * (A + nk) - b * b / ((A + nk) * (A + nk));
    default: break;
  }
  throw DomainError("energy_level: unknown model");
}

// Whether wavefunction_eval already includes a printed normalization constant.
inline bool has_closed_normalization(ModelId id) { return id == ModelId::t1r1; }

inline double e40_log_norm_squared(const ModelParams& p, int n, cplx r) {
  const double k = p.k();
  const double s = p.A / k;
  const cplx I(0.0, 1.0);
  cplx lg = log_gamma(s - I * r - static_cast<double>(n) + 0.5) + log_gamma(s + I * r - static_cast<double>(n) + 0.5);
  return std::log(k) + std::lgamma(n + 1.0) + std::log(s - n) + lg.real() - std::log(std::numbers::pi) +
         2.0 * s * std::log(2.0) - log_gamma(2.0 * s - n + 1.0).real();
}

namespace detail {

// Unnormalized closed forms in z (row 1 carries its printed constant separately).
inline cplx wavefunction_shape_z(ModelId id, const ModelParams& p, int n, double z) {
  const double k = p.k();
  const double u = k * z;
  const cplx I(0.0, 1.0);
  if (id == ModelId::nlo) {
    const double x = coordinate_map_inverse(z, p.lambda);
    const double y = std::sqrt(p.alpha) * x;
    const double L = p.Lambda();
    if (L == 0.0) return hermite_value(n, y) * std::exp(-0.5 * y * y);
    const BivariatePoly h = deformed_hermite(n);
    double hv = h.evaluate_exact(Rational(y), Rational(L)).convert_to<double>();
    return hv * std::pow(1.0 + L * y * y, -1.0 / (2.0 * L));
  }
  if (id == ModelId::bs_apbn) {
    double b = p.B / k, a = p.A / k;
    return std::pow(std::sin(u), 1.0 - b) * std::pow(std::cos(u), a) * jacobi_eval(n, 0.5 - b, a - 0.5, std::cos(2.0 * u));
  }
  if (id == ModelId::bs_anbp) {
    double b = p.B / k, a = p.A / k;
    return std::pow(std::sin(u), b) * std::pow(std::cos(u), 1.0 - a) * jacobi_eval(n, b - 0.5, 0.5 - a, std::cos(2.0 * u));
  }
  const DerivedParams d = derive(id, p, n);
  const cplx s = d.s, r = d.r;
  switch (row_of(id)) {
    case 1: {
      double sh = std::sinh(u);
      return std::pow(I, n) * std::pow(std::cosh(u), -s) * std::exp(-r * std::atan(sh)) *
             jacobi_eval(n, -I * r - s - 0.5, I * r - s - 0.5, I * sh);
    }
    case 2: {
      // 1 -+ tanh u written without cancellation
      double one_minus = 2.0 / (1.0 + std::exp(2.0 * u)), one_plus = 2.0 / (1.0 + std::exp(-2.0 * u));
      return std::pow(cplx(one_minus), 0.5 * d.s1) * std::pow(cplx(one_plus), 0.5 * d.s2) *
             jacobi_eval(n, d.s1, d.s2, std::tanh(u));
    }
    case 3: {
      double y = 1.0 / std::tanh(u);
      double ym = 2.0 / std::expm1(2.0 * u);
      return std::pow(cplx(ym), 0.5 * d.s3) * std::pow(cplx(y + 1.0), 0.5 * d.s4) * jacobi_eval(n, d.s3, d.s4, y);
    }
    case 4: {
      double y = std::cosh(u);
      double ym = 2.0 * std::pow(std::sinh(0.5 * u), 2);
      return std::pow(cplx(ym), 0.5 * (r - s)) * std::pow(cplx(y + 1.0), -0.5 * (r + s)) *
             jacobi_eval(n, r - s - 0.5, -r - s - 0.5, y);
    }
    case 5: {
      double y = std::sin(u);
      return std::pow(cplx(1.0 - y), 0.5 * (s - r)) * std::pow(cplx(1.0 + y), 0.5 * (s + r)) *
             jacobi_eval(n, s - r - 0.5, s + r - 0.5, y);
    }
    case 6: {
      cplx a = d.r1 / (s + static_cast<double>(n));
      cplx sn = s + static_cast<double>(n);
      return std::pow(cplx(std::cos(u)), sn) * std::exp(a * u) * jacobi_eval(n, -sn - I * a, -sn + I * a, -I * std::tan(u));
    }
    default: break;
  }
  throw DomainError("wavefunction: unknown model");
}

template <class F>
double integrate_over(const Interval& dom, F f) {
  using namespace boost::math::quadrature;
  const double inf = std::numeric_limits<double>::infinity();
  if (dom.lo == -inf && dom.hi == inf) {
    sinh_sinh<double> q;
    return q.integrate(f);
  }
  if (dom.hi == inf) {
    exp_sinh<double> q;
    return q.integrate([&](double t) { return f(dom.lo + t); }, 0.0, inf);
  }
  tanh_sinh<double> q;
  return q.integrate(f, dom.lo, dom.hi);
}

}  // namespace detail

// Closed-form psi_n at z; rows with a printed constant include it.
inline cplx wavefunction_z(ModelId id, const ModelParams& p, int n, double z) {
  cplx v = detail::wavefunction_shape_z(id, p, n, z);
  if (id == ModelId::t1r1) v *= std::exp(0.5 * e40_log_norm_squared(p, n, derive(id, p, n).r));
  return v;
}

inline cplx wavefunction_eval(ModelId id, const ModelParams& p, int n, double x) {
  const ModelDescriptor d = describe(id, p);
  check_level(id, p, n);
  check_x_in_domain(d, x);
  return wavefunction_z(id, p, n, coordinate_map(x, p.lambda));
}

// Multiplier that makes psi_n unit-norm under d mu (d mu = dz). Row 1 of the
// first table uses the closed form; every other family is normalized by quadrature.
inline double normalization_constant(ModelId id, const ModelParams& p, int n) {
  check_constraints(id, p);
  check_level(id, p, n);
  if (id == ModelId::t1r1) return std::exp(0.5 * e40_log_norm_squared(p, n, derive(id, p, n).r));
  const Interval dom = z_domain(id, p);
  double norm2 = std::numeric_limits<double>::quiet_NaN();
  try {
    norm2 = detail::integrate_over(dom, [&](double z) {
      if (!(z > dom.lo && z < dom.hi)) return 0.0;
      double v = std::norm(detail::wavefunction_shape_z(id, p, n, z));
      return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    });
  } catch (const std::exception& e) {
    throw NonNormalizableError(to_string(id) + ": quadrature of |psi|^2 failed: " + e.what());
  }
  if (!std::isfinite(norm2) || norm2 <= 0.0)
    throw NonNormalizableError(to_string(id) + ": |psi_" + std::to_string(n) + "|^2 is not integrable");
  return 1.0 / std::sqrt(norm2);
}

enum class Provenance { closed_form, shape_invariance, numerical };

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::closed_form: return "closed-form";
    case Provenance::shape_invariance: return "shape-invariance";
    case Provenance::numerical: return "numerical";
  }
  return "?";
}

struct Level {
  int n;
  cplx E;
};

struct Spectrum {
  std::vector<Level> levels;
  Provenance provenance = Provenance::closed_form;
  bool bounded = false;
};

inline Spectrum closed_form_spectrum(ModelId id, const ModelParams& p, int nmax) {
  check_constraints(id, p);
  Spectrum sp;
  sp.provenance = Provenance::closed_form;
  auto bound = level_bound(id, p);
  sp.bounded = bound.has_value();
  int top = bound ? std::min(nmax, *bound) : nmax;
  for (int n = 0; n <= top; ++n) sp.levels.push_back({n, energy_level(id, p, n)});
  return sp;
}

// eps from the energy of the row that hosts the oscillator (row 1 for lambda > 0,
// row 5 for lambda < 0, both with A = alpha/sqrt|lambda|, B = 0). The row potentials
// differ from the oscillator potential by +A^2 (row 1) and -A^2 (row 5).
inline double nlo_eps_from_row_energy(double E_row, const ModelParams& p) {
  if (p.lambda == 0.0) return E_row / (2.0 * p.alpha) + 0.5;
  const double A = p.alpha / p.k();
  double E_osc = p.lambda > 0.0 ? E_row - A * A : E_row + A * A;
  return (E_osc + p.g() / p.lambda) / (2.0 * p.alpha);
}

// Appendix-style normalization N'_n = (alpha/lambda)^{n/2} N_n / (2^n n!) with A = alpha/sqrt(lambda), B = 0.
inline double harmonic_normalization(int n, double alpha, double lambda) {
  ModelParams p{alpha / std::sqrt(lambda), 0.0, lambda, alpha};
  double logN = 0.5 * e40_log_norm_squared(p, n, 0.0);
  return std::exp(logN + 0.5 * n * std::log(alpha / lambda) - n * std::log(2.0) - std::lgamma(n + 1.0));
}

// Small-lambda asymptote ((sqrt(alpha) - n lambda / sqrt(alpha)) / (sqrt(pi) 2^n n!))^{1/2}.
inline double harmonic_normalization_asymptote(int n, double alpha, double lambda) {
  double v = (std::sqrt(alpha) - n * lambda / std::sqrt(alpha)) / (std::sqrt(std::numbers::pi) * std::pow(2.0, n) * std::tgamma(n + 1.0));
  return std::sqrt(v);
}

struct HarmonicLimitRow {
  double lambda;
  double potential_deviation;           // max |V - (alpha^2 x^2 - alpha)| on [-3, 3]
  std::vector<double> energy_deviation;  // |E_n - (2 n alpha - n^2 lambda)|
  std::vector<double> energy_shift;      // |E_n - 2 n alpha|
  std::vector<double> overlap_deviation;  // 1 - normalized overlap with exp(-alpha x^2/2) H_n
  double norm0;                          // N'_0
  double norm0_deviation;                // |N'_0 - (alpha/pi)^{1/4}|
};

struct HarmonicLimitReport {
  double alpha;
  int nmax;
  std::vector<HarmonicLimitRow> rows;
  bool potential_monotone = false;
  bool overlap_monotone = false;
  bool energy_monotone = false;
  bool norm_monotone = false;
  bool monotone() const { return potential_monotone && overlap_monotone && energy_monotone && norm_monotone; }
};

namespace detail {

inline double simpson(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  if (n < 3) return n == 2 ? 0.5 * h * (f[0] + f[1]) : 0.0;
  std::size_t last = (n % 2 == 1) ? n - 1 : n - 4;
  double acc = 0.0;
  for (std::size_t i = 0; i + 2 <= last; i += 2) acc += f[i] + 4.0 * f[i + 1] + f[i + 2];
  acc *= h / 3.0;
  if (n % 2 == 0) acc += 3.0 * h / 8.0 * (f[n - 4] + 3.0 * f[n - 3] + 3.0 * f[n - 2] + f[n - 1]);
  return acc;
}

}  // namespace detail

// One lambda of the lambda -> 0 study of row 1 with B = 0 and A = alpha / sqrt(lambda).
// lambda = 0 reports the exact harmonic values.
inline HarmonicLimitRow harmonic_limit_row(double alpha, double lam, int nmax = 3) {
  if (alpha <= 0.0) throw ConstraintError("harmonic limit needs alpha > 0");
  if (lam < 0.0) throw ConstraintError("harmonic limit sweep needs lambda >= 0");
  const double L = 12.0 / std::sqrt(alpha);
  const int npts = 8001;
  const double h = 2.0 * L / (npts - 1);
  const double target_norm = std::pow(alpha / std::numbers::pi, 0.25);
  HarmonicLimitRow row{lam, 0.0, {}, {}, {}, 0.0, 0.0};
  const bool exact = lam == 0.0;
  const double A = exact ? 0.0 : alpha / std::sqrt(lam);
  ModelParams p{A, 0.0, exact ? 1.0 : lam, alpha};
  for (int i = 0; i <= 600; ++i) {
    double x = -3.0 + 6.0 * i / 600.0;
    double v = exact ? alpha * alpha * x * x - alpha : potential_eval(ModelId::t1r1, p, x).real();
    row.potential_deviation = std::max(row.potential_deviation, std::abs(v - (alpha * alpha * x * x - alpha)));
  }
  for (int n = 0; n <= nmax; ++n) {
    double En = exact ? 2.0 * n * alpha : energy_level(ModelId::t1r1, p, n).real();
    row.energy_deviation.push_back(std::abs(En - (2.0 * n * alpha - n * n * lam)));
    row.energy_shift.push_back(std::abs(En - 2.0 * n * alpha));
    std::vector<double> pp(npts), pg(npts), gg(npts);
    for (int i = 0; i < npts; ++i) {
      double x = -L + i * h;
      double gauss = std::exp(-0.5 * alpha * x * x) * hermite_value(n, std::sqrt(alpha) * x);
      double psi = exact ? gauss : wavefunction_z(ModelId::t1r1, p, n, coordinate_map(x, lam)).real();
      pp[i] = psi * psi;
      pg[i] = psi * gauss;
      gg[i] = gauss * gauss;
    }
    double ov = std::abs(detail::simpson(pg, h)) / std::sqrt(detail::simpson(pp, h) * detail::simpson(gg, h));
    row.overlap_deviation.push_back(std::max(0.0, 1.0 - ov));
  }
  row.norm0 = exact ? harmonic_normalization_asymptote(0, alpha, 0.0) : harmonic_normalization(0, alpha, lam);
  row.norm0_deviation = std::abs(row.norm0 - target_norm);
  return row;
}

// Monotone along the sweep order (lambda decreasing); ties within rounding allowed.
inline void assess_harmonic_limit(HarmonicLimitReport& rep) {
  auto mono = [&](auto get) {
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
      double a = get(rep.rows[i - 1]), b = get(rep.rows[i]);
      if (b > a * (1.0 + 1e-9) + 1e-15) return false;
    }
    return true;
  };
  rep.potential_monotone = mono([](const HarmonicLimitRow& r) { return r.potential_deviation; });
  rep.overlap_monotone = mono([](const HarmonicLimitRow& r) { return r.overlap_deviation[0]; });
  rep.norm_monotone = mono([](const HarmonicLimitRow& r) { return r.norm0_deviation; });
  rep.energy_monotone = true;
  for (int n = 0; n <= rep.nmax; ++n)
    if (!mono([n](const HarmonicLimitRow& r) { return r.energy_shift[n]; })) rep.energy_monotone = false;
}

inline HarmonicLimitReport harmonic_limit_report(double alpha, const std::vector<double>& lambdas, int nmax = 3) {
  if (alpha <= 0.0) throw ConstraintError("harmonic limit needs alpha > 0");
  HarmonicLimitReport rep{alpha, nmax, {}};
  for (double lam : lambdas) rep.rows.push_back(harmonic_limit_row(alpha, lam, nmax));
  assess_harmonic_limit(rep);
  return rep;
}

}  // namespace pdmse
