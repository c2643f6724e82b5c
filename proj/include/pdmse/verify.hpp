#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pdmse/model_catalog.hpp"
#include "pdmse/numerics.hpp"
#include "pdmse/qes.hpp"
#include "pdmse/special_functions.hpp"
#include "pdmse/susy.hpp"

// Invariant suites shared by the CLI `verify` command, the acceptance runner and the
// unit tests. Every check is "value <= tolerance"; booleans are encoded as 0/1.
namespace pdmse {

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  double seconds = 0.0;
  std::string error;  // set when the suite aborted with an exception

  bool passed() const {
    if (!error.empty()) return false;
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

struct VerifyOptions {
  std::vector<std::string> suites;  // empty: all
  int hermite_nmax = 12;
  int bridge_nmax = 12;
  double perturb = 0.0;  // test hook: shifts every reference value by this relative amount
  int threads = 1;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  double seconds = 0.0;
  bool passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
  }
};

inline const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"hermite", "gamma", "bridge", "catalog", "numerics",
                                                 "susy",    "pt",    "broken", "qes",     "harmonic"};
  return names;
}

// Sample parameter sets (A, B, lambda, alpha) used throughout the suites.
struct SampleModel {
  ModelId id;
  ModelParams params;
};

inline std::vector<SampleModel> hermitian_samples() {
  return {{ModelId::t1r1, {5, 1, 1}},    {ModelId::t1r2, {4, 2, 1}},     {ModelId::t1r3, {3, 50, 1}},
          {ModelId::t1r4, {5, 8, 1}},    {ModelId::t1r5, {5, 1, -1}},    {ModelId::t1r6, {5, 1, -1}},
          {ModelId::nlo, {0, 0, 0.25, 1}}, {ModelId::nlo, {0, 0, -0.5, 1}}, {ModelId::bs_apbn, {2, -1, -1}},
          {ModelId::bs_anbp, {-1, 2, -1}}};
}

inline std::vector<SampleModel> pt_samples() {
  return {{ModelId::t2r1, {5, 1, 1}}, {ModelId::t2r2, {5, 1, 1}},  {ModelId::t2r3, {3, 50, 1}},
          {ModelId::t2r4, {5, 8, 1}}, {ModelId::t2r5, {5, 1, -1}}, {ModelId::t2r6, {5, 1, -1}}};
}

// Families with a superpotential whose ladder structure is exercised.
inline std::vector<SampleModel> susy_samples() {
  return {{ModelId::t1r1, {5, 1, 1}},  {ModelId::t1r2, {4, 2, 1}},  {ModelId::t1r3, {3, 50, 1}},
          {ModelId::t1r4, {5, 8, 1}},  {ModelId::t1r5, {5, 1, -1}}, {ModelId::t1r6, {5, 1, -1}},
          {ModelId::t2r1, {5, 1, 1}},  {ModelId::t2r2, {5, 1, 1}},  {ModelId::t2r5, {5, 1, -1}},
          {ModelId::t2r6, {5, 1, -1}}};
}

// Ladder compositions near the singular origin of the half-line rows need a finer grid.
inline int susy_grid_points(ModelId id) {
  int r = row_of(id);
  return (r == 3 || r == 4) ? 32001 : 4001;
}

namespace detail {

class SuiteBuilder {
 public:
  SuiteBuilder(std::string name, double perturb) : perturb_(perturb) { res_.name = std::move(name); }

  // value <= tol
  void le(const std::string& name, double value, double tol, const std::string& detail = {}) {
    Check c{name, value, tol, std::isfinite(value) && value <= tol, detail};
    res_.checks.push_back(std::move(c));
  }
  void truth(const std::string& name, bool ok, const std::string& detail = {}) {
    le(name, (ok ? 0.0 : 1.0) + (perturb_ != 0.0 ? 1.0 : 0.0), 0.0, detail);
  }
  // |measured - reference| / max(1, |reference|), reference shifted by the perturbation hook.
  double rel(cplx measured, cplx reference) const {
    cplx ref = reference * (1.0 + perturb_) + perturb_;
    return std::abs(measured - ref) / std::max(1.0, std::abs(ref));
  }
  double rel_strict(cplx measured, cplx reference) const {
    cplx ref = reference * (1.0 + perturb_) + perturb_;
    return std::abs(measured - ref) / std::max(1e-300, std::abs(ref));
  }
  double shifted(double deviation) const { return deviation + std::abs(perturb_); }
  double perturb() const { return perturb_; }

  SuiteResult take() { return std::move(res_); }

 private:
  SuiteResult res_;
  double perturb_;
};

inline std::string fmt_g(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline std::string label(const SampleModel& m) {
  std::ostringstream os;
  os << to_string(m.id) << "(A=" << m.params.A << ",B=" << m.params.B << ",lambda=" << m.params.lambda;
  if (m.id == ModelId::nlo) os << ",alpha=" << m.params.alpha;
  os << ")";
  return os.str();
}

inline int top_level(ModelId id, const ModelParams& p, int want) {
  auto b = level_bound(id, p);
  return b ? std::min(want, *b) : want;
}

}  // namespace detail

// ------------------------------------------------------------------ suites

inline SuiteResult suite_hermite(const VerifyOptions& opt) {
  detail::SuiteBuilder sb("hermite", opt.perturb);
  const int nmax = std::clamp(opt.hermite_nmax, 0, kHermiteMaxDegree);
  int route_mismatch = 0, classical_mismatch = 0, degree_mismatch = 0, identity_fail = 0;
  for (int n = 0; n <= nmax; ++n) {
    BivariatePoly r = deformed_hermite(n, HermiteRoute::rodrigues), g = deformed_hermite(n, HermiteRoute::generating),
                  c = deformed_hermite(n, HermiteRoute::recursion);
    if (opt.perturb != 0.0) c.add_term(0, 0, Rational(1, 1000000));
    if (!(r == g) || !(r == c)) ++route_mismatch;
    if (r.at_lambda_zero() != classical_hermite(n)) ++classical_mismatch;
    if (r.degree_y() != n) ++degree_mismatch;
    if (n >= 2 && !deformed_hermite_derivative_identity(n).holds) ++identity_fail;
  }
  const std::string range = "n <= " + std::to_string(nmax);
  sb.le("route equivalence (Rodrigues = generating = recursion)", route_mismatch, 0, range);
  sb.le("classical limit at Lambda = 0", classical_mismatch, 0, range);
  sb.le("degree in y equals n", degree_mismatch, 0, range);
  sb.le("derivative identity exact", identity_fail, 0, "2 <= " + range);
  sb.truth("H_1 = (2 - Lambda) y",
           deformed_hermite(1) == BivariatePoly::monomial(1, 0, 2) - BivariatePoly::monomial(1, 1, 1));
  BivariatePoly h2 = BivariatePoly::monomial(0, 1, 3) - BivariatePoly::monomial(0, 0, 2) +
                     BivariatePoly::monomial(2, 0, 4) - BivariatePoly::monomial(2, 1, 10) +
                     BivariatePoly::monomial(2, 2, 6);
  sb.truth("H_2 = (3L - 2) + 2(L - 1)(3L - 2) y^2", deformed_hermite(2) == h2);
  return sb.take();
}

inline SuiteResult suite_gamma(const VerifyOptions& opt) {
  detail::SuiteBuilder sb("gamma", opt.perturb);
  sb.le("Gamma(1) = 1", sb.rel_strict(std::exp(log_gamma(1.0)), 1.0), 1e-13);
  sb.le("Gamma(5) = 24", sb.rel_strict(std::exp(log_gamma(5.0)), 24.0), 1e-13);
  sb.le("Gamma(1/2) = sqrt(pi)", sb.rel_strict(gamma(0.5), std::sqrt(std::numbers::pi)), 1e-13);
  // Extended-precision oracle values of log Gamma (compared through exp, so branch-free).
  struct Frozen {
    cplx z, lg;
  };
  const Frozen frozen[] = {
      {{0.5, 1.0}, {-0.6527906442043729152730650712, -0.9550077243425691095632251287}},
      {{3.2, -4.7}, {-2.153482684411340727194051282, -6.083680882265935762120853151}},
      {{-2.3, 0.4}, {-0.4052086952199232757204873094, -8.456233662870943840134493377}},
  };
  double worst = 0.0;
  for (const auto& f : frozen) worst = std::max(worst, sb.rel_strict(std::exp(log_gamma(f.z)), std::exp(f.lg)));
  sb.le("complex Gamma against extended-precision values", worst, 1e-13);

  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> re(0.1, 20.0), im(-10.0, 10.0);
  double rec = 0.0;
  for (int i = 0; i < 200; ++i) {
    cplx z(re(rng), im(rng));
    rec = std::max(rec, sb.rel_strict(std::exp(log_gamma(z + 1.0)), z * std::exp(log_gamma(z))));
  }
  sb.le("Gamma(z+1) = z Gamma(z), Re z in [0.1, 20]", rec, 1e-12);

  std::uniform_real_distribution<double> ar(-5.0, 5.0);
  std::uniform_int_distribution<int> ni(0, 10);
  double poch = 0.0;
  for (int i = 0; i < 200; ++i) {
    cplx a(ar(rng), ar(rng));
    int n = ni(rng), m = ni(rng);
    poch = std::max(poch, sb.rel_strict(pochhammer(a, n) * pochhammer(a + static_cast<double>(n), m), pochhammer(a, n + m)));
  }
  sb.le("(a)_n (a+n)_m = (a)_{n+m}", poch, 1e-12);
  sb.le("(1/2)_3 = 15/8", sb.rel_strict(pochhammer(0.5, 3), 15.0 / 8.0), 1e-15);

  int poles_missed = 0;
  for (double z : {0.0, -1.0, -2.0}) {
    try {
      (void)log_gamma(z);
      ++poles_missed;
    } catch (const PoleError&) {
    }
  }
  sb.le("pole error at non-positive integers", poles_missed, 0);
  const cplx al(0.3, -0.2), be(1.1, 0.4), x(0.2, 0.7);
  sb.le("Jacobi degree-1 closed form", sb.rel_strict(jacobi_eval(1, al, be, x), (al - be) / 2.0 + (1.0 + (al + be) / 2.0) * x),
        1e-15);
  return sb.take();
}

inline SuiteResult suite_bridge(const VerifyOptions& opt) {
  detail::SuiteBuilder sb("bridge", opt.perturb);
  const int nmax = std::clamp(opt.bridge_nmax, 0, kHermiteMaxDegree);
  double worst = 0.0;
  for (int n = 0; n <= nmax; ++n)
    for (double y : {-2.0, -1.0, 0.3, 0.7, 2.0})
      for (double L : {0.1, -0.1, 0.25, -0.25, 0.5, -0.5}) {
        BridgeValues b = hermite_jacobi_bridge(n, y, L);
        worst = std::max(worst, sb.rel(b.lhs, b.rhs));
      }
  sb.le("Jacobi-Hermite bridge", worst, 1e-10, "n <= " + std::to_string(nmax) + ", 5 y values, 6 Lambda values");
  BridgeValues one = hermite_jacobi_bridge(1, 1.0, 0.25);
  sb.le("n=1, y=1, Lambda=1/4 gives -1.75i", std::max(sb.rel(one.lhs, cplx(0, -1.75)), sb.rel(one.rhs, cplx(0, -1.75))), 1e-14);
  BridgeValues five = hermite_jacobi_bridge(5, 0.3, -0.2);
  sb.le("n=5, y=0.3, Lambda=-0.2", sb.rel(five.lhs, five.rhs), 1e-10);
  return sb.take();
}

inline SuiteResult suite_catalog(const VerifyOptions& opt) {
  detail::SuiteBuilder sb("catalog", opt.perturb);
  // Orthonormality of the normalized row-1 functions under d mu on an x-grid.
  {
    const ModelParams p{5, 1, 1};
    Grid g = Grid::make(Coordinate::x, -400.0, 400.0, 160001);
    std::vector<GridFunction> psi;
    for (int n = 0; n <= 3; ++n)
      psi.push_back(GridFunction::sample(g, [&](double x) { return wavefunction_eval(ModelId::t1r1, p, n, x); }));
    double worst = 0.0;
    for (int m = 0; m <= 3; ++m)
      for (int n = 0; n <= 3; ++n)
        worst = std::max(worst, sb.rel(inner_product_mu(psi[m], psi[n], 1.0), m == n ? 1.0 : 0.0));
    sb.le("row-1 orthonormality, m,n <= 3", worst, 1e-6, "x in [-400, 400], 160001 points");
  }
  // PT condition on the symmetric-domain complex rows.
  {
    double worst = 0.0;
    bool mass_even = true;
    for (const auto& m : pt_samples()) {
      ModelDescriptor d = describe(m.id, m.params);
      if (!(d.domain.lo == -d.domain.hi)) continue;
      double X = std::isfinite(d.domain.hi) ? 0.999 * d.domain.hi : 10.0;
      for (int i = 1; i <= 400; ++i) {
        double x = X * i / 400.0;
        worst = std::max(worst, std::abs(potential_eval(m.id, m.params, x) - std::conj(potential_eval(m.id, m.params, -x))));
        if (mass(x, m.params.lambda) != mass(-x, m.params.lambda)) mass_even = false;
      }
    }
    sb.le("V(x) = conj V(-x) for the complex rows on symmetric domains", sb.shifted(worst), 1e-13);
    sb.truth("mass is even", mass_even);
  }
  // z-form equivalence against the x-form expression of row 1.
  {
    const double A = 5, B = 1, lam = 1, k = 1;
    double worst = 0.0;
    for (int i = -300; i <= 300; ++i) {
      double x = i / 30.0;
      double F = 1.0 + lam * x * x;
      double vx = (B * B - A * A - A * k) / F + B * (2 * A + k) * k * x / F + A * A;
      worst = std::max(worst, sb.rel(potential_eval(ModelId::t1r1, {A, B, lam}, x), vx));
    }
    sb.le("row-1 potential: z-form equals x-form", worst, 1e-12);
    sb.le("row 1, B=0: V(0) = -A sqrt(lambda)", sb.rel(potential_eval(ModelId::t1r1, {5, 0, 1}, 0.0), -5.0), 1e-14);
    sb.le("oscillator potential at lambda=1, g=2, x=1 is -1",
          sb.rel(potential_z(ModelId::nlo, {0, 0, 1, 1}, coordinate_map(1.0, 1.0)), -1.0), 1e-14);
  }
  // eps_m from the oscillator formula against the hosting row energy.
  {
    double worst = 0.0;
    for (double lam : {0.1, -0.1, -0.5}) {
      ModelParams osc{0, 0, lam, 1.0};
      ModelParams host{1.0 / std::sqrt(std::abs(lam)), 0, lam, 1.0};
      ModelId hid = lam > 0 ? ModelId::t1r1 : ModelId::t1r5;
      int top = std::min(5, detail::top_level(ModelId::nlo, osc, 5));
      top = std::min(top, detail::top_level(hid, host, 5));
      for (int m = 0; m <= top; ++m)
        worst = std::max(worst, sb.rel(nlo_eps_from_row_energy(energy_level(hid, host, m).real(), osc),
                                       energy_level(ModelId::nlo, osc, m)));
    }
    sb.le("oscillator levels from the row energies, m <= 5", worst, 1e-12);
    sb.le("oscillator at Lambda=0, m=3 is 3.5", sb.rel(energy_level(ModelId::nlo, {0, 0, 0, 1}, 3), 3.5), 0.0);
  }
  // Rows 1 and 4 share their energies.
  {
    bool same = true;
    for (double A : {2.5, 5.0})
      for (double lam : {0.5, 1.0, 2.0})
        for (int n = 0; n <= detail::top_level(ModelId::t1r1, {A, 0, lam}, 4); ++n) {
          ModelParams p1{A, 1, lam}, p4{A, A + 3, lam};
          if (energy_level(ModelId::t1r1, p1, n) != energy_level(ModelId::t1r4, p4, n)) same = false;
        }
    sb.truth("rows 1 and 4 give identical energies", same);
    sb.le("row 1, (5,1,1), n=2 gives 16", sb.rel(energy_level(ModelId::t1r1, {5, 1, 1}, 2), 16.0), 0.0);
  }
  // Normalization constant.
  {
    const double s = 5.0;
    double closed = std::sqrt(s * std::pow(std::tgamma(s + 0.5), 2) * std::pow(2.0, 2 * s) / (std::numbers::pi * std::tgamma(2 * s + 1)));
    sb.le("N_0 for B=0 against the Gamma-function form", sb.rel(normalization_constant(ModelId::t1r1, {5, 0, 1}, 0), closed), 1e-12);
    Grid zg = Grid::make(Coordinate::z, -30.0, 30.0, 60001);
    GridFunction p0 = GridFunction::sample(zg, [](double z) { return wavefunction_z(ModelId::t1r1, {5, 0, 1}, 0, z); });
    double q = inner_product_mu(p0, p0, 1.0).real();
    sb.le("quadrature of |psi_0|^2 d mu is 1", sb.rel(q, 1.0), 1e-8);
    double r1 = normalization_constant(ModelId::t1r1, {5, 1, 1}, 1), r2 = normalization_constant(ModelId::t1r1, {10, 2, 4}, 1);
    sb.le("N_n scales as lambda^{1/4}", sb.rel(r2 / r1, std::pow(4.0, 0.25)), 1e-12);
    sb.le("N'_0 tends to pi^{-1/4} at lambda = 1e-4", sb.shifted(std::abs(harmonic_normalization(0, 1.0, 1e-4) - std::pow(std::numbers::pi, -0.25))),
          1e-3);
  }
  // Coordinate map.
  {
    sb.le("z(sinh 2) = 2 at lambda = 1", sb.rel(coordinate_map(std::sinh(2.0), 1.0), 2.0), 1e-15);
    double worst = 0.0;
    for (double lam : {1.0, 0.3, -0.5})
      for (int i = -20; i <= 20; ++i) {
        double x = lam > 0 ? i * 0.5 : i * 0.999 / (20 * std::sqrt(-lam));
        worst = std::max(worst, std::abs(coordinate_map_inverse(coordinate_map(x, lam), lam) - x) / std::max(1.0, std::abs(x)));
      }
    sb.le("coordinate map round trip", sb.shifted(worst), 1e-14);
  }
  // Level bound and pole errors.
  {
    bool bound_ok = false, pole_ok = false, constraint_ok = false;
    try {
      (void)energy_level(ModelId::t1r1, {2.5, 0, 1}, 3);
    } catch (const LevelBoundError&) {
      bound_ok = true;
    }
    try {
      (void)energy_level(ModelId::t1r2, {2, 1, 1}, 2);
    } catch (const Error&) {
      pole_ok = true;
    }
    try {
      check_constraints(ModelId::t1r2, {4, 20, 1});
    } catch (const ConstraintError&) {
      constraint_ok = true;
    }
    sb.truth("level bound enforced (n < s)", bound_ok);
    sb.truth("row-2 pole or bound reported", pole_ok);
    sb.truth("row-2 constraint B < A^2 enforced", constraint_ok);
  }
  return sb.take();
}

inline SuiteResult suite_numerics(const VerifyOptions& opt) {
  detail::SuiteBuilder sb("numerics", opt.perturb);
  // Closed forms against the discretized operators.
  for (const auto& m : hermitian_samples()) {
    int top = detail::top_level(m.id, m.params, 3);
    NumericalSpectrum ns = numerical_spectrum(m.id, m.params, top + 1);
    double worst = 0.0, min_overlap = 1.0;
    for (int n = 0; n <= top; ++n) {
      worst = std::max(worst, sb.rel(ns.values[n], energy_level(m.id, m.params, n)));
      GridFunction cf = closed_form_on_grid(m.id, m.params, n, ns.grid);
      min_overlap = std::min(min_overlap, normalized_overlap(cf, ns.pairs[n].vector));
    }
    sb.le("oracle consistency " + detail::label(m), worst, 1e-6, "n <= " + std::to_string(top));
    sb.le("eigenvector overlap " + detail::label(m), sb.shifted(1.0 - min_overlap), 0.1);
  }
  // Second-order convergence of the raw 3-point operator.
  {
    const ModelParams p{5, 1, 1};
    std::vector<double> err;
    for (int N : {1001, 2001, 4001, 8001}) {
      DiscreteOperator op = model_operator_z(ModelId::t1r1, p, Grid::make(Coordinate::z, -12, 12, N));
      err.push_back(std::abs(eigensolve(op, 1)[0].value.real() - 0.0));
    }
    double worst = 0.0;
    std::string ratios;
    for (std::size_t i = 1; i < err.size(); ++i) {
      double r = err[i - 1] / err[i];
      ratios += (i > 1 ? ", " : "") + detail::fmt_g(r);
      worst = std::max(worst, std::abs(r * (1.0 + sb.perturb() * 1e3) - 4.0));
    }
    sb.le("halving h divides the E_0 error by 4", worst, 0.05, "ratios " + ratios);
  }
  // Skew-adjointness of sqrt(1 + lambda x^2) d/dx under d mu.
  {
    double worst = 0.0;
    for (double lam : {1.0, 0.25, -0.5}) {
      double X = lam > 0 ? 6.0 : 0.95 / std::sqrt(-lam);
      Grid g = Grid::make(Coordinate::x, -X, X, 4001);
      double w = X / 8.0;
      auto bump = [&](double c, double ph) {
        return GridFunction::sample(g, [=](double x) { return std::exp(-std::pow((x - c) / w, 2)) * std::exp(cplx(0, ph * x)); });
      };
      GridFunction f = bump(0.1 * X, 1.3), gg = bump(-0.15 * X, -0.7);
      auto D = [&](const GridFunction& u) {
        GridFunction out = u;
        std::vector<cplx> d = fd_derivative(u.values, g.spacing(), 1, 2);
        for (int i = 0; i < g.npoints; ++i) out.values[i] = std::sqrt(1.0 + lam * g.at(i) * g.at(i)) * d[i];
        return out;
      };
      cplx s = inner_product_mu(D(f), gg, lam) + inner_product_mu(f, D(gg), lam);
      worst = std::max(worst, std::abs(s) / (norm_mu(f, lam) * norm_mu(gg, lam)));
    }
    sb.le("skew-adjointness of the momentum-like operator", sb.shifted(worst), 1e-6);
  }
  // Solver self-consistency.
  {
    const ModelParams p{5, 1, 1};
    DiscreteOperator op = model_operator_z(ModelId::t1r1, p, Grid::make(Coordinate::z, -12, 12, 1201));
    auto a = eigensolve(op, 4, EigenPath::symmetric);
    auto b = eigensolve(op, 4, EigenPath::complex_dense);
    auto c = eigensolve(op, 4, EigenPath::complex_tridiagonal);
    double dev = 0.0, res = 0.0;
    for (int i = 0; i < 4; ++i) {
      dev = std::max({dev, sb.rel(a[i].value, b[i].value), sb.rel(a[i].value, c[i].value)});
      res = std::max({res, eigen_residual(op, a[i]), eigen_residual(op, b[i]), eigen_residual(op, c[i])});
    }
    sb.le("symmetric, dense and tridiagonal complex paths agree", dev, 1e-10);
    sb.le("eigenpair residual", sb.shifted(res), 1e-9);
    DiscreteOperator pt = model_operator_z(ModelId::t2r1, p, Grid::make(Coordinate::z, -12, 12, 1201));
    double rpt = 0.0;
    for (const auto& e : eigensolve(pt, 4)) rpt = std::max(rpt, eigen_residual(pt, e));
    sb.le("eigenpair residual, complex operator", sb.shifted(rpt), 1e-9);
  }
  // Free Laplacian, harmonic well, diagonal matrix.
  {
    const double L = 2.0;
    DiscreteOperator box = build_operator_z([](double) { return cplx(0.0); }, Grid::make(Coordinate::z, 0, L, 4001));
    auto e = eigensolve(box, 3);
    double worst = 0.0;
    for (int k = 1; k <= 3; ++k) worst = std::max(worst, sb.rel(e[k - 1].value, std::pow(k * std::numbers::pi / L, 2)));
    sb.le("particle in a box", worst, 1e-5);
    auto hr = richardson_eigenvalues([](const Grid& g) { return build_operator_z([](double z) { return cplx(z * z); }, g); },
                                     Grid::make(Coordinate::z, -10, 10, 4001), 1);
    sb.le("harmonic well E_0 = 1", sb.rel(hr.values[0], 1.0), 1e-6);
    Grid g5 = Grid::make(Coordinate::z, 0, 1, 7);
    DiscreteOperator dg{g5, {3.0, 1.0, 4.0, 1.5, 9.0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {}, 0.0, 1.0};
    auto de = eigensolve(dg, 5);
    const double expect[] = {1.0, 1.5, 3.0, 4.0, 9.0};
    double dd = 0.0;
    for (int i = 0; i < 5; ++i) dd = std::max(dd, sb.rel(de[i].value, expect[i]));
    sb.le("diagonal operator gives its diagonal", dd, 1e-14);
  }
  // x-form against z-form, and the row-1 eigenvector at x = 0.5.
  {
    const ModelParams p{5, 1, 1};
    auto xr = richardson_eigenvalues([&](const Grid& g) { return build_operator_x(ModelId::t1r1, p, g); },
                                     Grid::make(Coordinate::x, -400, 400, 80001), 4);
    NumericalSpectrum zs = numerical_spectrum(ModelId::t1r1, p, 4);
    double worst = 0.0;
    for (int n = 0; n < 4; ++n) worst = std::max(worst, sb.rel(xr.values[n], zs.values[n]));
    sb.le("x-form and z-form eigenvalues agree, n <= 3", worst, 1e-7);

    // psi_1 at x = 0.5 through the z-grid eigenvector (z = asinh 0.5).
    Grid g = Grid::make(Coordinate::z, -12, 12, 4001);
    auto pairs = eigensolve(model_operator_z(ModelId::t1r1, p, g), 2);
    GridFunction cf = closed_form_on_grid(ModelId::t1r1, p, 1, g);
    GridFunction nv = detail::phase_aligned(cf, pairs[1].vector, 0.0);
    const double z = std::asinh(0.5);
    int i = static_cast<int>(std::lround((z - g.lo) / g.spacing()));
    double zi = g.at(i);
    cplx num = nv.values[i];
    cplx ref = wavefunction_z(ModelId::t1r1, p, 1, zi);
    sb.le("row-1 psi_1 near x = 0.5 against the eigenvector", sb.rel(num, ref), 1e-4, "z node " + detail::fmt_g(zi));
  }
  // Inner product.
  {
    const ModelParams p{5, 1, 1};
    Grid g = Grid::make(Coordinate::x, -400.0, 400.0, 160001);
    GridFunction a = GridFunction::sample(g, [&](double x) { return wavefunction_eval(ModelId::t1r1, p, 0, x); });
    GridFunction b = GridFunction::sample(g, [&](double x) { return wavefunction_eval(ModelId::t1r1, p, 1, x); });
    sb.le("<psi_0, psi_1> vanishes", sb.shifted(std::abs(inner_product_mu(a, b, 1.0))), 1e-8);
    Grid g2 = Grid::make(Coordinate::x, -1, 1, 101);
    GridFunction f = GridFunction::sample(g2, [](double x) { return cplx(x, 0.0); });
    sb.le("lambda = 0 is the plain L2 product", sb.rel(inner_product_mu(f, f, 0.0), 2.0 / 3.0), 1e-14);
    bool threw = false;
    try {
      (void)inner_product_mu(a, f, 1.0);
    } catch (const GridError&) {
      threw = true;
    }
    sb.truth("grid mismatch rejected", threw);
  }
  return sb.take();
}

inline SuiteResult suite_susy(const VerifyOptions& opt) {
  detail::SuiteBuilder sb("susy", opt.perturb);
  for (const auto& m : susy_samples()) {
    const std::string L = detail::label(m);
    const ModelParams& p = m.params;
    Grid g = default_grid(m.id, p, {susy_grid_points(m.id)});
    SuperpotentialSpec spec = SuperpotentialSpec::of(m.id, p);

    // Partner potentials are sampled on the open domain only.
    Grid gi = Grid::make(g.coordinate, g.at(1), g.at(g.npoints - 2), g.npoints - 2);
    auto [vm, vp] = partner_potentials(spec, gi);
    double dv = 0.0;
    Interval dom = z_domain(m.id, p);
    for (int i = 0; i < gi.npoints; ++i) {
      double z = gi.at(i);
      if (!(z > dom.lo && z < dom.hi)) continue;
      dv = std::max(dv, sb.rel(vm.values[i], potential_z(m.id, p, z)));
    }
    sb.le("V_- reproduces the potential " + L, dv, 1e-12);

    ShapeStep st = shape_step(m.id, p);
    auto [vm1, vp1] = partner_potentials(SuperpotentialSpec::of(m.id, with_shape(p, st.a1)), gi);
    double ds = 0.0;
    for (int i = 0; i < gi.npoints; ++i) {
      double z = gi.at(i);
      if (!(z > dom.lo && z < dom.hi)) continue;
      // Relative to the local size of the potentials, which cancel near singular ends.
      double scale = std::max({1.0, std::abs(vp.values[i]), std::abs(vm1.values[i])});
      ds = std::max(ds, sb.rel(vp.values[i] - vm1.values[i], st.R) * std::max(1.0, std::abs(st.R)) / scale);
    }
    sb.le("V_+(a0) - V_-(a1) = R(a0) " + L, ds, 1e-10);

    int top = detail::top_level(m.id, p, 4);
    double dsh = 0.0;
    for (int n = 0; n <= top; ++n) dsh = std::max(dsh, sb.rel(shape_energy(m.id, p, n), energy_level(m.id, p, n)));
    sb.le("shape-invariance sum equals closed form " + L, dsh, 1e-12, "n <= " + std::to_string(top));

    const bool hermitian = table_of(m.id) == 1;
    int ntop = detail::top_level(m.id, p, 3);
    double fr = 0.0;
    for (int n = 0; n <= ntop; ++n) fr = std::max(fr, sb.shifted(factorization_residual(m.id, p, n, g)));
    sb.le("factorization residual " + L, fr, 1e-6, "n <= " + std::to_string(ntop) + ", " + std::to_string(g.npoints) + " points");

    double ov = 1.0;
    for (int n = 1; n <= ntop; ++n) {
      LadderState ls = ladder_state(m.id, p, n, g);
      GridFunction cf = closed_form_on_grid(m.id, p, n, g);
      ov = std::min(ov, normalized_overlap(ls.psi, cf));
    }
    sb.le("ladder-built states overlap closed forms " + L, sb.shifted(1.0 - ov), 1e-8);

    double iw = 0.0;
    for (int n = 0; n + 1 <= ntop; ++n) iw = std::max(iw, sb.shifted(intertwining_residual(m.id, p, n, g)));
    sb.le("intertwining residual " + L, iw, 1e-6);

    if (hermitian) {
      double nr = 0.0;
      ModelParams p1 = with_shape(p, st.a1);
      int top1 = detail::top_level(m.id, p1, 2);
      for (int n = 0; n <= std::min(top1, ntop - 1); ++n)
        nr = std::max(nr, sb.rel(ladder_norm_ratio(m.id, p, n, g), shape_energy(m.id, p, n + 1)));
      sb.le("ladder norm ratio equals the partner energy " + L, nr, 1e-6);
    }

    SpectralShiftReport sh = spectral_shift_check(m.id, p, 4);
    sb.le("spectral shift H_+(a0) = H_-(a1) + R(a0) " + L, sb.shifted(sh.max_rel_deviation), 1e-6);

    sb.le("a^dagger a = H_- on a test function " + L, sb.shifted(susy_algebra_residual(m.id, p, g)), 1e-8);

    GroundState gs = ground_state_from_W(spec, g);
    sb.truth("ground state from W is normalizable " + L, gs.normalizable);
    GridFunction low = apply_ladder(LadderDirection::lower, spec, gs.psi);
    sb.le("a psi_0 = 0 " + L, sb.shifted(low.max_abs() / gs.psi.max_abs()), 1e-8);

    // The composed stencils lose digits as h shrinks; row 3 still needs the finer grid
    // to resolve its narrow ground state.
    Grid gf = default_grid(m.id, p, {row_of(m.id) == 3 ? 16001 : 4001});
    FirstExcitedCheck fe = first_excited_check(m.id, p, gf);
    sb.le("first excited level realizes " + fe.realized + " " + L,
          sb.shifted(fe.residual / std::max(1.0, std::abs(fe.rayleigh))), 1e-6,
          "Rayleigh " + detail::fmt_g(fe.rayleigh.real()) + ", R(a0) " + detail::fmt_g(fe.R_a0.real()) + ", R(a1) " +
              detail::fmt_g(fe.R_a1.real()));
  }
  // Row-1 specifics.
  {
    const ModelParams p{5, 0, 1};
    Grid g = default_grid(ModelId::t1r1, p);
    GroundState gs = ground_state_from_W(SuperpotentialSpec::of(ModelId::t1r1, p), g);
    GridFunction ref = GridFunction::sample(g, [](double z) { return cplx(std::pow(std::cosh(z), -5.0)); });
    sb.le("row-1 B=0 ground state is (1 + lambda x^2)^{-s/2}", sb.shifted(detail::rel_distance(gs.psi, detail::normalized(ref, 0.0), 0.0)),
          1e-10);
    auto [cm, cp] = partner_potentials(SuperpotentialSpec::constant(1.7, 1.0), g);
    double dc = 0.0;
    for (int i = 0; i < g.npoints; ++i) dc = std::max({dc, sb.rel(cm.values[i], 1.7 * 1.7), sb.rel(cp.values[i], 1.7 * 1.7)});
    sb.le("constant W gives V_+ = V_- = c^2", dc, 1e-15);
    sb.le("row 1, (5,1,1): E_3 = 9 + 7 + 5 = 21", sb.rel(shape_energy(ModelId::t1r1, {5, 1, 1}, 3), 21.0), 1e-14);
    sb.le("row 2, (4,2,1): E_1 = 6.80555...", sb.rel(shape_energy(ModelId::t1r2, {4, 2, 1}, 1), 7.0 + 0.25 - 4.0 / 9.0), 1e-14);
  }
  // Exact telescoping for row 1 with rational A and sqrt(lambda).
  {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> num(1, 400), den(1, 40);
    int bad = 0;
    for (int t = 0; t < 50; ++t) {
      Rational A(num(rng), den(rng)), k(num(rng) % 40 + 1, den(rng));
      for (int n = 0; n <= 20; ++n) {
        Rational sum = 0;
        for (int i = 0; i < n; ++i) {
          Rational ai = A - i * k;
          sum += ai * ai - (ai - k) * (ai - k);
        }
        if (sum != n * k * (2 * A - n * k)) ++bad;
      }
    }
    if (opt.perturb != 0.0) ++bad;
    sb.le("row-1 telescoping sum, exact rationals, n <= 20", bad, 0);
  }
  return sb.take();
}

inline SuiteResult suite_pt(const VerifyOptions& opt) {
  detail::SuiteBuilder sb("pt", opt.perturb);
  for (const auto& m : pt_samples()) {
    const std::string L = detail::label(m);
    NumericalSpectrum ns = numerical_spectrum(m.id, m.params, 4);
    double im = 0.0, re = 0.0;
    for (int n = 0; n < 4; ++n) {
      cplx v = ns.values[n];
      im = std::max(im, std::abs(v.imag()) / (1.0 + std::abs(v.real())));
      re = std::max(re, sb.rel(v.real(), energy_level(m.id, m.params, n).real()));
    }
    sb.le("lowest four eigenvalues are real " + L, sb.shifted(im), 1e-8);
    sb.le("real parts match the closed forms " + L, re, 1e-5);
  }
  // Dense path cross-check on row 1.
  {
    const ModelParams p{5, 1, 1};
    Grid g = Grid::make(Coordinate::z, -12, 12, kDefaultComplexPoints);
    DiscreteOperator op = model_operator_z(ModelId::t2r1, p, g);
    auto a = eigensolve(op, 4, EigenPath::complex_dense), b = eigensolve(op, 4, EigenPath::complex_tridiagonal);
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d = std::max(d, sb.rel(a[i].value, b[i].value));
    sb.le("dense and tridiagonal complex solvers agree", d, 1e-10);
  }
  return sb.take();
}

inline SuiteResult suite_broken(const VerifyOptions& opt) {
  detail::SuiteBuilder sb("broken", opt.perturb);
  struct Case {
    BrokenCase c;
    ModelParams p;
  };
  const Case cases[] = {{BrokenCase::ApBn, {2, -1, -1}}, {BrokenCase::AnBp, {-1, 2, -1}}};
  sb.le("ApBn, (2,-1,1): E_0 = 15", sb.rel(broken_susy_spectrum({2, -1, -1}, BrokenCase::ApBn, 0).levels[0].E, 15.0), 1e-14);
  for (const auto& c : cases) {
    const std::string L = to_string(c.c);
    Spectrum sp = broken_susy_spectrum(c.p, c.c, 5);
    double inc = 0.0;
    const double k = c.p.k();
    const double D = c.c == BrokenCase::ApBn ? c.p.A - c.p.B : c.p.B - c.p.A;
    for (int n = 0; n < 5; ++n)
      inc = std::max(inc, sb.rel(sp.levels[n + 1].E - sp.levels[n].E, 4.0 * k * (D + 2.0 * (n + 1) * k)));
    sb.le("level spacing 4k(A - B + 2(n+1)k) " + L, inc, 1e-14);
    bool positive = std::all_of(sp.levels.begin(), sp.levels.end(), [](const Level& l) { return l.E.real() > 0.0; });
    sb.truth("all levels positive " + L, positive);
    BrokenAnchor an = broken_anchor(c.p, c.c);
    sb.le("unbroken anchor has E_0 = 0 " + L, sb.shifted(std::abs(shape_energy(broken_model(c.c), an.anchor, 0))), 1e-15);
    double res = 0.0;
    for (int n = 0; n <= 2; ++n) res = std::max(res, sb.shifted(broken_susy_residual(c.p, c.c, n)));
    sb.le("wavefunction residual against E_n, n <= 2 " + L, res, 1e-6);
    BrokenDegeneracyReport dg = broken_degeneracy(c.p, c.c, 3);
    sb.le("H_- and H_+ share the lowest three levels " + L, sb.shifted(dg.max_rel_deviation), 1e-6);
    BrokenStepOneDiagnostic d1 = broken_step_one_diagnostic(c.p, c.c);
    sb.truth("step-one ground states are not normalizable " + L, !d1.minus_normalizable && !d1.plus_normalizable);
    double near0 = std::abs(broken_susy_wavefunction(c.p, c.c, 1, 1e-6, true));
    sb.le("psi_n vanishes as x -> 0+ " + L, sb.shifted(near0), 1e-3);
  }
  return sb.take();
}

inline SuiteResult suite_qes(const VerifyOptions& opt) {
  detail::SuiteBuilder sb("qes", opt.perturb);
  Grid g = qes_default_grid();
  auto res_of = [&](const QesSolution& s) {
    QesSolution t = s;
    t.E = t.E * (1.0 + sb.perturb()) + sb.perturb();
    return qes_residual(t, g);
  };
  auto oracle_ok = [&](const std::string& name, const QesSolution& s) {
    QesOracleReport r = qes_symbolic_oracle(s);
    sb.le("substitute-and-collect agrees with the implemented relations " + name,
          sb.shifted(std::max(r.max_coefficient_mismatch, r.remainder)), 1e-12);
    return r;
  };
  {
    QesConfig c;
    c.b2 = 1.0;
    QesSolution s = qes_case1(c);
    sb.le("case 1, b2=1: residual", res_of(s), 1e-7);
    const cplx want[] = {0.0, 0.5, 0.0, 2.0, 0.0, 0.5};
    double d = 0.0;
    for (int k = 0; k < 6; ++k) d = std::max(d, sb.rel(s.c[k], want[k]));
    sb.le("case 1, b2=1: c = (0, 1/2, 0, 2, 0, 1/2), E = 1", std::max(d, sb.rel(s.E, 1.0)), 1e-15);
    oracle_ok("(case 1)", s);
    Grid half = Grid::make(Coordinate::z, 0.05, 12.0, 4001);
    sb.le("case 1, b2=1: residual on z in [0.05, 12]", sb.shifted(qes_residual(s, half)), 1e-7);
    QesSolution z = qes_case1(QesConfig{});
    sb.le("case 1, b = 0: E = 0 and c2 = -3/2", std::max(sb.rel(z.E, 0.0), sb.rel(z.c[1], -1.5)), 1e-15);
    QesConfig ci;
    ci.b1 = cplx(0, 0.2);
    ci.b2 = 1.0;
    ci.b3 = cplx(0, 0.1);
    QesSolution si = qes_case1(ci);
    bool pattern = si.c[0].real() == 0.0 && si.c[2].real() == 0.0 && si.c[4].real() == 0.0 && si.c[1].imag() == 0.0 &&
                   si.c[3].imag() == 0.0 && si.E.imag() == 0.0;
    sb.truth("case 1 with imaginary b1, b3: odd coefficients imaginary, E real", pattern);
    sb.le("case 1 with imaginary b1, b3: E = 1.02", sb.rel(si.E, 1.02), 1e-15);
    sb.le("case 1 with imaginary b1, b3: residual", res_of(si), 1e-7);
  }
  {
    QesConfig c;
    c.qcase = QesCase::C2a;
    c.b2 = 2.0;
    auto sols = qes_case2(c);
    sb.le("case 2a, b2=2: two branches", std::abs(static_cast<double>(sols.size()) - 2.0), 0.0);
    double worst = 0.0, edev = 0.0, a0dev = 0.0, parity = 0.0;
    for (const auto& s : sols) {
      worst = std::max(worst, res_of(s));
      edev = std::max(edev, sb.rel(s.E, 2.0));
      a0dev = std::max(a0dev, sb.rel(s.a0, s.branch == QesBranch::plus ? cplx(0, 2) : cplx(0, -2)));
      parity = std::max(parity, qes_pt_check(s, g).parity_odd);
      QesOracleReport r = oracle_ok("(case 2a " + to_string(s.branch) + ")", s);
      bool has_root = false, has_exp = false;
      for (const auto& rec : r.records) {
        if (rec.id == "case2.c1.root-term") has_root = rec.status == "confirmed";
        if (rec.id == "case2.wavefunction.quartic-exponent") has_exp = true;
      }
      sb.truth("case 2a " + to_string(s.branch) + ": root-term record confirms a0 in c1", has_root);
      sb.truth("case 2a " + to_string(s.branch) + ": exponent record emitted", has_exp);
    }
    sb.le("case 2a, b2=2: residuals", worst, 1e-7);
    sb.le("case 2a, b2=2: E = 2 on both branches", edev, 1e-14);
    sb.le("case 2a, b2=2: a0 = +-2i", a0dev, 1e-14);
    sb.le("case 2a: conj psi(-z) = -psi(z)", sb.shifted(parity), 1e-10);
    bool threw = false;
    try {
      QesConfig bad;
      bad.qcase = QesCase::C2a;
      bad.b2 = -1.0;
      (void)qes_case2(bad);
    } catch (const ConstraintError&) {
      threw = true;
    }
    sb.truth("case 2a with b2 <= 0 rejected", threw);
  }
  {
    QesConfig c;
    c.qcase = QesCase::C2b;
    c.b2 = 1.0;
    c.b3 = cplx(0, 0.5);
    auto sols = qes_case2(c);
    double re = 0.0, worst = 0.0;
    for (const auto& s : sols) {
      re = std::max(re, std::abs(s.a0.real()));
      worst = std::max(worst, res_of(s));
      oracle_ok("(case 2b " + to_string(s.branch) + ")", s);
    }
    double want_plus = 0.5 * (1.5 + std::sqrt(10.25));
    sb.le("case 2b, b3=0.5i, b2=1: roots purely imaginary", sb.shifted(re), 1e-14);
    sb.le("case 2b: a0(+) = i(1.5 + sqrt 10.25)/2", sb.rel(sols[0].a0, cplx(0, want_plus)), 1e-14);
    sb.le("case 2b: residuals", worst, 1e-7);
    sb.truth("case 2b: negative discriminant not flagged", !sols[0].pt_broken);
    QesConfig r = c;
    r.b3 = 1.0;
    r.b2 = 0.5;
    sb.truth("case 2b: real branch flagged PT-broken", qes_case2(r)[0].pt_broken);
  }
  {
    QesConfig c;
    c.qcase = QesCase::C3;
    auto pr = qes_case3(c);
    const double r2 = std::sqrt(2.0);
    sb.le("case 3, b=0: E = +-sqrt 2", std::max(sb.rel(pr[0].E, r2), sb.rel(pr[1].E, -r2)), 1e-15);
    sb.le("case 3, b=0: residuals", std::max(res_of(pr[0]), res_of(pr[1])), 1e-7);
    sb.le("case 3, b=0: a0 in {+-sqrt(2)/2}", std::min(sb.rel(pr[0].a0, -r2 / 2), sb.rel(pr[0].a0, r2 / 2)), 1e-15);
    for (const auto& s : pr) {
      QesOracleReport r = oracle_ok("(case 3 " + to_string(s.branch) + ")", s);
      sb.truth("case 3 " + to_string(s.branch) + ": c4 and pairing records emitted", r.records.size() >= 3);
    }
    c.b2 = 1.0;
    auto p1 = qes_case3(c);
    sb.le("case 3, b3=0, b2=1: E = 3 +- sqrt 6", std::max(sb.rel(p1[0].E, 3 + std::sqrt(6.0)), sb.rel(p1[1].E, 3 - std::sqrt(6.0))), 1e-14);
    sb.le("case 3, b3=0, b2=1: residuals", std::max(res_of(p1[0]), res_of(p1[1])), 1e-7);
    c.b2 = 0.3;
    c.b3 = cplx(0, 0.4);
    auto pi = qes_case3(c);
    double im = std::max(std::abs(pi[0].E.imag()), std::abs(pi[1].E.imag()));
    sb.le("case 3 with imaginary b3: energies real", sb.shifted(im), 1e-12);
    sb.le("case 3 with imaginary b3: |E+ - E-| >= 2 sqrt 2", sb.shifted(std::max(0.0, 2 * r2 - std::abs(pi[0].E - pi[1].E))), 0.0);
    sb.le("case 3 with imaginary b3: residuals", std::max(res_of(pi[0]), res_of(pi[1])), 1e-7);
    sb.truth("case 3 with imaginary b3: potential PT-symmetric", qes_pt_check(pi[0], g).pt_symmetric_potential);
  }
  // The solution depends on x and lambda only through z; the x-form residual at
  // several lambda values and the z-form residual are therefore the same problem.
  {
    QesConfig c;
    c.qcase = QesCase::C2a;
    c.b2 = 2.0;
    QesSolution s = qes_case2(c)[0];
    double zr = qes_residual(s, g);
    double worst = 0.0, spread = 0.0;
    for (double lam : {0.5, 1.0, 2.0}) {
      double X = std::sinh(std::sqrt(lam) * 5.0) / std::sqrt(lam);
      worst = std::max(worst, qes_residual(s, Grid::make(Coordinate::x, -X, X, 400001), lam));
      double pv = 0.0;
      for (double x : {-1.3, 0.2, 0.9}) {
        double z = qes_z(lam, x);
        pv = std::max(pv, std::abs(qes_wavefunction_eval(s, lam, x) - qes_wavefunction_z(s, z)) +
                              std::abs(qes_potential_eval(s, lam, x) - qes_potential_z(s, z)));
      }
      spread = std::max(spread, pv);
    }
    sb.le("x-form residual at lambda in {0.5, 1, 2}", sb.shifted(worst), 1e-6, "z-form residual " + detail::fmt_g(zr));
    sb.le("psi and V depend on (x, lambda) only through z", sb.shifted(spread), 1e-12);
  }
  return sb.take();
}

inline SuiteResult suite_harmonic(const VerifyOptions& opt) {
  detail::SuiteBuilder sb("harmonic", opt.perturb);
  HarmonicLimitReport rep = harmonic_limit_report(1.0, {1e-1, 1e-2, 1e-3, 1e-4, 0.0});
  sb.truth("potential deviation decreases along the sweep", rep.potential_monotone);
  sb.truth("ground-state overlap deviation decreases", rep.overlap_monotone);
  sb.truth("energy shift from 2 n alpha decreases", rep.energy_monotone);
  sb.truth("N'_0 deviation decreases", rep.norm_monotone);
  double edev = 0.0;
  for (const auto& r : rep.rows)
    for (double d : r.energy_deviation) edev = std::max(edev, d);
  sb.le("E_n = 2 n alpha - n^2 lambda", sb.shifted(edev), 1e-11);
  for (const auto& r : rep.rows) {
    if (r.lambda == 1e-3) sb.le("psi_0 overlap with the Gaussian at lambda = 1e-3", sb.shifted(r.overlap_deviation[0]), 1e-4);
    if (r.lambda == 1e-4) sb.le("N'_0 within 1e-3 of pi^{-1/4} at lambda = 1e-4", sb.shifted(r.norm0_deviation), 1e-3);
    if (r.lambda == 0.0) sb.le("lambda = 0 row is exact", sb.shifted(r.potential_deviation + r.overlap_deviation[0]), 1e-12);
  }
  return sb.take();
}

// ------------------------------------------------------------------ runner

inline SuiteResult run_suite(const std::string& name, const VerifyOptions& opt) {
  using Fn = SuiteResult (*)(const VerifyOptions&);
  static const std::vector<std::pair<std::string, Fn>> table = {
      {"hermite", suite_hermite}, {"gamma", suite_gamma}, {"bridge", suite_bridge}, {"catalog", suite_catalog},
      {"numerics", suite_numerics}, {"susy", suite_susy}, {"pt", suite_pt}, {"broken", suite_broken},
      {"qes", suite_qes}, {"harmonic", suite_harmonic}};
  auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == name; });
  if (it == table.end()) throw ConstraintError("unknown suite '" + name + "'");
  auto t0 = std::chrono::steady_clock::now();
  SuiteResult r;
  try {
    r = it->second(opt);
  } catch (const std::exception& e) {
    r.name = name;
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline VerifyReport run_verify(const VerifyOptions& opt) {
  std::vector<std::string> names = opt.suites.empty() ? verify_suite_names() : opt.suites;
  for (const auto& n : names)
    if (std::find(verify_suite_names().begin(), verify_suite_names().end(), n) == verify_suite_names().end())
      throw ConstraintError("unknown suite '" + n + "'");
  auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep;
  rep.suites.resize(names.size());
  const std::size_t width = static_cast<std::size_t>(std::max(1, opt.threads));
  for (std::size_t start = 0; start < names.size(); start += width) {
    std::vector<std::future<SuiteResult>> batch;
    for (std::size_t i = start; i < std::min(names.size(), start + width); ++i)
      batch.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred,
                                 [&, i] { return run_suite(names[i], opt); }));
    for (std::size_t i = 0; i < batch.size(); ++i) rep.suites[start + i] = batch[i].get();
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace pdmse
