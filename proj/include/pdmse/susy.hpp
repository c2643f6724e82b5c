#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdmse/error.hpp"
#include "pdmse/model_catalog.hpp"
#include "pdmse/numerics.hpp"

namespace pdmse {

struct SuperpotentialSpec {
  ModelId id = ModelId::t1r1;
  ModelParams params;
  std::function<Superpotential(double z)> W;  // W and dW/dz, both closed form

  static SuperpotentialSpec of(ModelId id, const ModelParams& p) {
    if (id == ModelId::nlo) throw DomainError("nlo has no catalog superpotential; use its row-1/row-5 host");
    return {id, p, [id, p](double z) { return superpotential_z(id, p, z); }};
  }

  // Degenerate constant superpotential, used to check V+- = c^2.
  static SuperpotentialSpec constant(cplx c, double lambda = 1.0) {
    ModelParams p;
    p.lambda = lambda;
    return {ModelId::t1r1, p, [c](double) { return Superpotential{c, 0.0}; }};
  }

  // A tan(ku) - B cot(ku) on (0, pi/2k) for any signs of A, B (lambda < 0).
  static SuperpotentialSpec trigonometric(const ModelParams& p) {
    return {ModelId::bs_apbn, p, [p](double z) { return superpotential_z(ModelId::bs_apbn, p, z); }};
  }
};

namespace detail {

inline double z_of_node(const Grid& g, int i, double lambda) {
  double t = g.at(i);
  return g.coordinate == Coordinate::z ? t : coordinate_map(t, lambda);
}

inline bool inside(const Interval& d, double z) { return z > d.lo && z < d.hi; }

inline Interval spec_z_domain(const SuperpotentialSpec& s) {
  const double inf = std::numeric_limits<double>::infinity();
  if (is_broken_susy(s.id)) return {0.0, std::numbers::pi / (2.0 * s.params.k())};
  if (s.params.A == 0.0 && s.params.B == 0.0) return {-inf, inf};
  return z_domain(s.id, s.params);
}

// d/dz of samples on a z- or x-grid.
inline std::vector<cplx> d_dz(const GridFunction& f, double lambda, int order) {
  std::vector<cplx> d = fd_derivative(f.values, f.grid.spacing(), 1, order);
  if (f.grid.coordinate == Coordinate::x)
    for (int i = 0; i < f.grid.npoints; ++i) {
      double x = f.grid.at(i);
      d[i] *= std::sqrt(1.0 + lambda * x * x);
    }
  return d;
}

}  // namespace detail

// V- = W^2 - dW/dz and V+ = W^2 + dW/dz on every grid node.
inline std::pair<GridFunction, GridFunction> partner_potentials(const SuperpotentialSpec& spec, const Grid& grid) {
  const Interval dom = detail::spec_z_domain(spec);
  GridFunction vm{grid, std::vector<cplx>(grid.npoints)}, vp = vm;
  for (int i = 0; i < grid.npoints; ++i) {
    double z = detail::z_of_node(grid, i, spec.params.lambda);
    if (!detail::inside(dom, z)) throw DomainError("partner_potentials: grid node outside the domain");
    Superpotential w = spec.W(z);
    vm.values[i] = w.W * w.W - w.dW;
    vp.values[i] = w.W * w.W + w.dW;
  }
  return {vm, vp};
}

inline DiscreteOperator partner_operator_z(const SuperpotentialSpec& spec, const Grid& grid, int sign) {
  return build_operator_z(
      [&](double z) {
        Superpotential w = spec.W(z);
        return w.W * w.W + static_cast<double>(sign) * w.dW;
      },
      grid);
}

struct ShapeParams {
  double A = 0.0;
  double B = 0.0;
};

struct ShapeStep {
  ShapeParams a0;
  ShapeParams a1;
  cplx R;
};

// One step a0 -> a1 = f(a0) of the family, with remainder R(a0).
inline ShapeStep shape_step(ModelId id, const ModelParams& p) {
  const double k = p.k();
  const double A = p.A;
  if (is_broken_susy(id)) {
    // Trigonometric map (A, B) -> (A + k, B + k).
    double S = A + p.B;
    return {{A, p.B}, {A + k, p.B + k}, (S + 2.0 * k) * (S + 2.0 * k) - S * S};
  }
  if (id == ModelId::nlo) throw DomainError("shape_step: nlo is handled through its host row");
  const cplx b = coupling_B(id, p);
  const cplx b2 = b * b;
  switch (row_of(id)) {
    case 1:
    case 4: return {{A, p.B}, {A - k, p.B}, A * A - (A - k) * (A - k)};
    case 2: return {{A, p.B}, {A - k, p.B}, A * A - (A - k) * (A - k) + b2 / (A * A) - b2 / ((A - k) * (A - k))};
    case 3: return {{A, p.B}, {A + k, p.B}, A * A - (A + k) * (A + k) + b2 / (A * A) - b2 / ((A + k) * (A + k))};
    case 5: return {{A, p.B}, {A + k, p.B}, (A + k) * (A + k) - A * A};
    case 6: return {{A, p.B}, {A + k, p.B}, (A + k) * (A + k) - A * A + b2 / (A * A) - b2 / ((A + k) * (A + k))};
    default: break;
  }
  throw DomainError("shape_step: unknown family");
}

inline ModelParams with_shape(const ModelParams& p, const ShapeParams& a) {
  ModelParams q = p;
  q.A = a.A;
  q.B = a.B;
  return q;
}

// Parameters a_i after i steps.
inline ModelParams shape_params_at(ModelId id, const ModelParams& p, int i) {
  ModelParams q = p;
  for (int j = 0; j < i; ++j) q = with_shape(q, shape_step(id, q).a1);
  return q;
}

// E_n = sum_{i<n} R(a_i) starting from a_0 = p.
inline cplx shape_energy(ModelId id, const ModelParams& p, int n) {
  cplx E = 0.0;
  ModelParams q = p;
  for (int i = 0; i < n; ++i) {
    ShapeStep st = shape_step(id, q);
    E += st.R;
    q = with_shape(q, st.a1);
  }
  return E;
}

namespace detail {

// Catalog row hosting the oscillator: row 1 (lambda > 0) or row 5 (lambda < 0).
inline std::pair<ModelId, ModelParams> nlo_host(const ModelParams& p) {
  ModelParams q = p;
  q.A = p.alpha / p.k();
  q.B = 0.0;
  return {p.lambda > 0.0 ? ModelId::t1r1 : ModelId::t1r5, q};
}

}  // namespace detail

inline Spectrum shape_invariance_spectrum(ModelId id, const ModelParams& p, int nmax) {
  check_constraints(id, p);
  if (nmax < 0) throw LevelBoundError("nmax must be non-negative");
  check_level(id, p, nmax);
  Spectrum s;
  s.provenance = Provenance::shape_invariance;
  s.bounded = level_bound(id, p).has_value();
  if (is_broken_susy(id)) throw DomainError("shape_invariance_spectrum: use broken_susy_spectrum for broken SUSY");
  if (id == ModelId::nlo) {
    for (int n = 0; n <= nmax; ++n) {
      double eps;
      if (p.lambda == 0.0) {
        eps = nlo_eps_from_row_energy(2.0 * n * p.alpha, p);  // constant remainder 2 alpha
      } else {
        auto [host, hp] = detail::nlo_host(p);
        eps = nlo_eps_from_row_energy(shape_energy(host, hp, n).real(), p);
      }
      s.levels.push_back({n, eps});
    }
    return s;
  }
  for (int n = 0; n <= nmax; ++n) s.levels.push_back({n, shape_energy(id, p, n)});
  return s;
}

struct GroundState {
  GridFunction psi;
  bool normalizable = false;
  double edge_ratio = 1.0;  // max |psi| at the outermost interior nodes over max |psi|
};

inline constexpr double kEdgeDecayThreshold = 1e-4;

// psi_0 = exp(-int W dz), integrated with 4-point Gauss-Legendre per cell from the
// node nearest the grid centre, then normalized under d mu.
inline GroundState ground_state_from_W(const SuperpotentialSpec& spec, const Grid& grid, int sign = -1) {
  static constexpr double gx[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526};
  static constexpr double gw[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538};
  const double lambda = spec.params.lambda;
  const Interval dom = detail::spec_z_domain(spec);
  const int N = grid.npoints;
  std::vector<bool> ok(N);
  std::vector<double> z(N);
  for (int i = 0; i < N; ++i) {
    z[i] = detail::z_of_node(grid, i, lambda);
    ok[i] = detail::inside(dom, z[i]);
  }
  const int ref = N / 2;
  if (!ok[ref]) throw DomainError("ground_state_from_W: grid centre outside the domain");
  auto cell = [&](double a, double b) {
    cplx acc = 0.0;
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int q = 0; q < 4; ++q) acc += gw[q] * spec.W(c + h * gx[q]).W;
    return acc * h;
  };
  std::vector<cplx> logpsi(N, cplx(-std::numeric_limits<double>::infinity(), 0.0));
  logpsi[ref] = 0.0;
  for (int i = ref + 1; i < N && ok[i]; ++i) logpsi[i] = logpsi[i - 1] + static_cast<double>(sign) * cell(z[i - 1], z[i]);
  for (int i = ref - 1; i >= 0 && ok[i]; --i) logpsi[i] = logpsi[i + 1] - static_cast<double>(sign) * cell(z[i], z[i + 1]);
  double top = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < N; ++i)
    if (ok[i]) top = std::max(top, logpsi[i].real());
  GroundState gs;
  gs.psi = GridFunction{grid, std::vector<cplx>(N, 0.0)};
  for (int i = 0; i < N; ++i)
    if (ok[i]) gs.psi.values[i] = std::exp(logpsi[i] - top);

  // A normalizable psi_0 has decayed by the outermost interior nodes; a divergent
  // one (broken SUSY) peaks there.
  double peak = 0.0;
  for (const auto& v : gs.psi.values) peak = std::max(peak, std::abs(v));
  gs.edge_ratio = std::max(std::abs(gs.psi.values[1]), std::abs(gs.psi.values[N - 2])) / peak;
  double nrm = norm_mu(gs.psi, lambda);
  gs.normalizable = std::isfinite(nrm) && nrm > 0.0 && gs.edge_ratio < kEdgeDecayThreshold;
  if (std::isfinite(nrm) && nrm > 0.0)
    for (auto& v : gs.psi.values) v /= nrm;
  return gs;
}

enum class LadderDirection { raise, lower };

inline constexpr double kLadderStencilTolerance = 1e-4;

// a psi = psi' + W psi (lower) or a^dagger psi = -psi' + W psi (raise), with
// d/dz from a 6th-order stencil cross-checked against a 4th-order one. Inner
// applications of a composition skip the check: their input may be pure
// roundoff (a psi_0), which no grid resolves.
inline GridFunction apply_ladder(LadderDirection dir, const SuperpotentialSpec& spec, const GridFunction& psi,
                                 bool check_stencil = true) {
  const double lambda = spec.params.lambda;
  std::vector<cplx> d6 = detail::d_dz(psi, lambda, 6);
  if (check_stencil) {
    std::vector<cplx> d4 = detail::d_dz(psi, lambda, 4);
    double scale = 0.0, gap = 0.0;
    for (std::size_t i = 0; i < d6.size(); ++i) {
      scale = std::max(scale, std::abs(d6[i]));
      gap = std::max(gap, std::abs(d6[i] - d4[i]));
    }
    if (gap > kLadderStencilTolerance * std::max(scale, 1e-300))
      throw GridError("apply_ladder: grid too coarse (4th/6th-order derivative estimates differ by " +
                      std::to_string(gap / scale) + ")");
  }
  const Interval dom = detail::spec_z_domain(spec);
  GridFunction out{psi.grid, std::vector<cplx>(psi.values.size())};
  const double s = dir == LadderDirection::lower ? 1.0 : -1.0;
  for (int i = 0; i < psi.grid.npoints; ++i) {
    double z = detail::z_of_node(psi.grid, i, lambda);
    if (!detail::inside(dom, z)) {
      // Singular end of a finite domain: states vanish there.
      out.values[i] = 0.0;
      continue;
    }
    cplx wpsi = psi.values[i] != cplx(0.0) ? spec.W(z).W * psi.values[i] : cplx(0.0);
    out.values[i] = s * d6[i] + wpsi;
  }
  return out;
}

// -psi'' + V psi with a 6th-order second-derivative stencil.
inline GridFunction apply_hamiltonian_z(const std::function<cplx(double)>& V, const GridFunction& psi) {
  if (psi.grid.coordinate != Coordinate::z) throw GridError("apply_hamiltonian_z needs a z-grid");
  std::vector<cplx> d2 = fd_derivative(psi.values, psi.grid.spacing(), 2, 6);
  GridFunction out{psi.grid, std::vector<cplx>(psi.values.size())};
  for (int i = 0; i < psi.grid.npoints; ++i)
    out.values[i] = -d2[i] + (psi.values[i] != cplx(0.0) ? V(psi.grid.at(i)) * psi.values[i] : cplx(0.0));
  return out;
}

namespace detail {

inline double rel_distance(const GridFunction& a, const GridFunction& b, double lambda) {
  GridFunction d = a;
  for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= b.values[i];
  return norm_mu(d, lambda);
}

inline GridFunction normalized(GridFunction f, double lambda) {
  double n = norm_mu(f, lambda);
  if (!(n > 0.0)) throw NonNormalizableError("zero function cannot be normalized");
  for (auto& v : f.values) v /= n;
  return f;
}

// Multiply b by the phase that best aligns it with a.
inline GridFunction phase_aligned(const GridFunction& a, GridFunction b, double lambda) {
  cplx ov = inner_product_mu(b, a, lambda);
  if (std::abs(ov) > 0.0)
    for (auto& v : b.values) v *= ov / std::abs(ov);
  return b;
}

}  // namespace detail

struct LadderState {
  GridFunction psi;
  double norm = 0.0;  // should be 1 when the intertwining factors are right
};

// psi_n(a_0) = a^dagger(a_0) ... a^dagger(a_{n-1}) psi_0(a_n), each rung divided by
// sqrt(E_{m+1}(a_j)) so no quadrature normalization is applied after the first rung.
inline LadderState ladder_state(ModelId id, const ModelParams& p, int n, const Grid& grid) {
  check_constraints(id, p);
  check_level(id, p, n);
  std::vector<ModelParams> a(n + 1);
  a[0] = p;
  for (int i = 1; i <= n; ++i) a[i] = with_shape(a[i - 1], shape_step(id, a[i - 1]).a1);
  GroundState g = ground_state_from_W(SuperpotentialSpec::of(id, a[n]), grid);
  if (!g.normalizable) throw NonNormalizableError("ladder_state: psi_0(a_n) is not normalizable on this grid");
  GridFunction psi = g.psi;
  for (int j = n - 1; j >= 0; --j) {
    int m = n - 1 - j;
    cplx E = shape_energy(id, a[j], m + 1);
    psi = apply_ladder(LadderDirection::raise, SuperpotentialSpec::of(id, a[j]), psi);
    cplx f = std::sqrt(E);
    for (auto& v : psi.values) v /= f;
  }
  return {psi, norm_mu(psi, p.lambda)};
}

// || a^dagger a psi - E psi || / ||psi|| for the closed-form psi_n on the grid.
inline double factorization_residual(ModelId id, const ModelParams& p, int n, const Grid& grid) {
  GridFunction psi = detail::normalized(closed_form_on_grid(id, p, n, grid), p.lambda);
  SuperpotentialSpec spec = SuperpotentialSpec::of(id, p);
  GridFunction hpsi = apply_ladder(LadderDirection::raise, spec, apply_ladder(LadderDirection::lower, spec, psi), false);
  cplx E = energy_level(id, p, n);
  GridFunction epsi = psi;
  for (auto& v : epsi.values) v *= E;
  return detail::rel_distance(hpsi, epsi, p.lambda);
}

// || a psi_{n+1}^(-) - sqrt(E_n^(+)) psi_n^(+) || with psi_n^(+)(a_0) = psi_n^(-)(a_1),
// after phase alignment.
inline double intertwining_residual(ModelId id, const ModelParams& p, int n, const Grid& grid) {
  ModelParams p1 = with_shape(p, shape_step(id, p).a1);
  GridFunction up = detail::normalized(closed_form_on_grid(id, p, n + 1, grid), p.lambda);
  GridFunction plus = detail::normalized(closed_form_on_grid(id, p1, n, grid), p.lambda);
  GridFunction lowered = apply_ladder(LadderDirection::lower, SuperpotentialSpec::of(id, p), up);
  if (table_of(id) == 2) {
    // a is not the adjoint of a^dagger here, so unit-norm states pick up a
    // complex scale; only proportionality is tested.
    cplx c = inner_product_mu(plus, lowered, p.lambda);
    for (auto& v : plus.values) v *= c;
    return detail::rel_distance(lowered, plus, p.lambda) / norm_mu(lowered, p.lambda);
  }
  cplx root = std::sqrt(shape_energy(id, p, n + 1));
  for (auto& v : plus.values) v *= root;
  plus = detail::phase_aligned(lowered, plus, p.lambda);
  return detail::rel_distance(lowered, plus, p.lambda);
}

// ||a^dagger psi_n^(+)||^2 / ||psi_n^(+)||^2, to be compared with E_n^(+) = E_{n+1}^(-).
inline cplx ladder_norm_ratio(ModelId id, const ModelParams& p, int n, const Grid& grid) {
  ModelParams p1 = with_shape(p, shape_step(id, p).a1);
  GridFunction plus = detail::normalized(closed_form_on_grid(id, p1, n, grid), p.lambda);
  GridFunction raised = apply_ladder(LadderDirection::raise, SuperpotentialSpec::of(id, p), plus);
  // Pairing without conjugation keeps complex E for the PT families.
  if (table_of(id) == 2) {
    GridFunction conj_plus = plus;
    for (auto& v : conj_plus.values) v = std::conj(v);
    GridFunction lowered = apply_ladder(LadderDirection::lower, SuperpotentialSpec::of(id, p), raised, false);
    return inner_product_mu(conj_plus, lowered, p.lambda) / inner_product_mu(conj_plus, plus, p.lambda);
  }
  double r = norm_mu(raised, p.lambda);
  return r * r;
}

// || (a^dagger a) f - H_- f || / ||f|| for a smooth bump f, with H_- built from the
// catalog potential rather than from W.
inline double susy_algebra_residual(ModelId id, const ModelParams& p, const Grid& grid) {
  if (grid.coordinate != Coordinate::z) throw GridError("susy_algebra_residual needs a z-grid");
  // Gaussian below roundoff at the grid ends, so effectively compactly supported.
  const double c = 0.5 * (grid.lo + grid.hi);
  const double w = (grid.hi - grid.lo) / 12.0;
  const Interval dom = z_domain(id, p);
  GridFunction f = GridFunction::sample(grid, [&](double z) -> cplx {
    if (!detail::inside(dom, z)) return 0.0;
    double t = (z - c) / w;
    return std::exp(-t * t) * (1.0 + 0.3 * t);
  });
  f = detail::normalized(f, 0.0);
  SuperpotentialSpec spec = SuperpotentialSpec::of(id, p);
  GridFunction aa = apply_ladder(LadderDirection::raise, spec, apply_ladder(LadderDirection::lower, spec, f), false);
  GridFunction h = apply_hamiltonian_z([&](double z) { return potential_z(id, p, z); }, f);
  return detail::rel_distance(aa, h, 0.0);
}

struct SpectralShiftReport {
  std::vector<cplx> plus;          // eigenvalues of H_+(a_0)
  std::vector<cplx> minus_shifted; // eigenvalues of H_-(a_1) + R(a_0)
  double max_rel_deviation = 0.0;
};

inline SpectralShiftReport spectral_shift_check(ModelId id, const ModelParams& p, int k, const GridOptions& opt = {}) {
  ShapeStep st = shape_step(id, p);
  ModelParams p1 = with_shape(p, st.a1);
  auto b1 = level_bound(id, p1);
  if (b1) k = std::min(k, *b1 + 1);
  if (k < 1) throw LevelBoundError("spectral_shift_check: H_+ has no bound states");
  Grid g = default_grid(id, p, opt);
  SuperpotentialSpec s0 = SuperpotentialSpec::of(id, p), s1 = SuperpotentialSpec::of(id, p1);
  auto rp = richardson_eigenvalues([&](const Grid& gr) { return partner_operator_z(s0, gr, +1); }, g, k, opt.levels);
  auto rm = richardson_eigenvalues([&](const Grid& gr) { return partner_operator_z(s1, gr, -1); }, g, k, opt.levels);
  SpectralShiftReport rep;
  for (int i = 0; i < k; ++i) {
    rep.plus.push_back(rp.values[i]);
    rep.minus_shifted.push_back(rm.values[i] + st.R);
    rep.max_rel_deviation = std::max(rep.max_rel_deviation, std::abs(rep.plus[i] - rep.minus_shifted[i]) /
                                                                std::max(1.0, std::abs(rep.minus_shifted[i])));
  }
  return rep;
}

// Which remainder the discretized H_-(a_0) realizes on a^dagger(a_0) psi_0(a_1).
struct FirstExcitedCheck {
  cplx rayleigh;
  cplx R_a0;
  cplx R_a1;
  double residual = 0.0;  // || H_- phi - rayleigh phi || / ||phi||
  std::string realized;   // "R(a0)" or "R(a1)"
};

inline FirstExcitedCheck first_excited_check(ModelId id, const ModelParams& p, const Grid& grid) {
  ShapeStep st0 = shape_step(id, p);
  ModelParams p1 = with_shape(p, st0.a1);
  ShapeStep st1 = shape_step(id, p1);
  SuperpotentialSpec s0 = SuperpotentialSpec::of(id, p);
  GroundState g1 = ground_state_from_W(SuperpotentialSpec::of(id, p1), grid);
  GridFunction phi = detail::normalized(apply_ladder(LadderDirection::raise, s0, g1.psi), 0.0);
  GridFunction hphi = apply_hamiltonian_z(
      [&](double z) {
        Superpotential w = s0.W(z);
        return w.W * w.W - w.dW;
      },
      phi);
  FirstExcitedCheck out;
  out.rayleigh = inner_product_mu(phi, hphi, 0.0);
  out.R_a0 = st0.R;
  out.R_a1 = st1.R;
  GridFunction rphi = phi;
  for (auto& v : rphi.values) v *= out.rayleigh;
  out.residual = detail::rel_distance(hphi, rphi, 0.0);
  out.realized = std::abs(out.rayleigh - out.R_a0) <= std::abs(out.rayleigh - out.R_a1) ? "R(a0)" : "R(a1)";
  return out;
}

// ---------------------------------------------------------------- broken SUSY

enum class BrokenCase { ApBn, AnBp };

inline std::string to_string(BrokenCase c) { return c == BrokenCase::ApBn ? "ApBn" : "AnBp"; }

inline ModelId broken_model(BrokenCase c) { return c == BrokenCase::ApBn ? ModelId::bs_apbn : ModelId::bs_anbp; }

// Unbroken trigonometric partner reached in one step: V_+(A, B) = V_-(anchor) + shift.
struct BrokenAnchor {
  ModelParams anchor;
  double shift = 0.0;
};

inline BrokenAnchor broken_anchor(const ModelParams& p, BrokenCase c) {
  check_constraints(broken_model(c), p);
  const double k = p.k();
  BrokenAnchor b{p, 0.0};
  if (c == BrokenCase::ApBn) {
    b.anchor.A = p.A + k;
    b.anchor.B = -p.B;
    b.shift = (p.A - p.B + k) * (p.A - p.B + k) - (p.A + p.B) * (p.A + p.B);
  } else {
    b.anchor.A = -p.A;
    b.anchor.B = p.B + k;
    b.shift = (p.B - p.A + k) * (p.B - p.A + k) - (p.A + p.B) * (p.A + p.B);
  }
  return b;
}

// E_n of H_-(A, B); degenerate with H_+(A, B), whose levels are the anchor's
// shape-invariance sums plus the constant shift.
inline Spectrum broken_susy_spectrum(const ModelParams& p, BrokenCase c, int nmax) {
  BrokenAnchor b = broken_anchor(p, c);
  if (nmax < 0) throw LevelBoundError("nmax must be non-negative");
  Spectrum s;
  s.provenance = Provenance::shape_invariance;
  s.bounded = false;
  for (int n = 0; n <= nmax; ++n) s.levels.push_back({n, shape_energy(ModelId::bs_apbn, b.anchor, n) + b.shift});
  return s;
}

// Step (A, B) -> (A + k, B + k) applied to broken parameters: both candidate
// ground states fail to normalize, so this map gives no spectrum.
struct BrokenStepOneDiagnostic {
  bool minus_normalizable = false;
  bool plus_normalizable = false;
};

inline BrokenStepOneDiagnostic broken_step_one_diagnostic(const ModelParams& p, BrokenCase c, int npoints = 4001) {
  check_constraints(broken_model(c), p);
  const double half = std::numbers::pi / (2.0 * p.k());
  Grid g = Grid::make(Coordinate::z, 0.0, half, npoints);
  SuperpotentialSpec spec = SuperpotentialSpec::trigonometric(p);
  return {ground_state_from_W(spec, g, -1).normalizable, ground_state_from_W(spec, g, +1).normalizable};
}

inline cplx broken_susy_wavefunction(const ModelParams& p, BrokenCase c, int n, double x, bool normalize = false) {
  ModelId id = broken_model(c);
  cplx v = wavefunction_eval(id, p, n, x);
  if (normalize) v *= normalization_constant(id, p, n);
  return v;
}

// sup |-psi'' + V_- psi - E_n psi| / sup |psi| over interior nodes of a z-grid.
inline double broken_susy_residual(const ModelParams& p, BrokenCase c, int n, int npoints = 4001) {
  ModelId id = broken_model(c);
  check_constraints(id, p);
  const double half = std::numbers::pi / (2.0 * p.k());
  Grid g = Grid::make(Coordinate::z, 0.0, half, npoints);
  GridFunction psi = closed_form_on_grid(id, p, n, g);
  double E = broken_susy_spectrum(p, c, n).levels.back().E.real();
  GridFunction h = apply_hamiltonian_z([&](double z) { return broken_partner_potential_z(p, z, -1); }, psi);
  double num = 0.0;
  const int skip = 8;  // one-sided stencils next to the singular ends
  for (int i = skip; i < g.npoints - skip; ++i) num = std::max(num, std::abs(h.values[i] - E * psi.values[i]));
  return num / psi.max_abs();
}

struct BrokenDegeneracyReport {
  std::vector<double> minus;
  std::vector<double> plus;
  double max_rel_deviation = 0.0;
};

inline BrokenDegeneracyReport broken_degeneracy(const ModelParams& p, BrokenCase c, int k, const GridOptions& opt = {}) {
  check_constraints(broken_model(c), p);
  Grid g = default_grid(broken_model(c), p, opt);
  auto solve = [&](int sign) {
    return richardson_eigenvalues(
        [&](const Grid& gr) { return build_operator_z([&](double z) -> cplx { return broken_partner_potential_z(p, z, sign); }, gr); },
        g, k, opt.levels);
  };
  auto rm = solve(-1), rp = solve(+1);
  BrokenDegeneracyReport r;
  for (int i = 0; i < k; ++i) {
    r.minus.push_back(rm.values[i].real());
    r.plus.push_back(rp.values[i].real());
    r.max_rel_deviation = std::max(r.max_rel_deviation, std::abs(r.minus[i] - r.plus[i]) / std::max(1.0, std::abs(r.minus[i])));
  }
  return r;
}

}  // namespace pdmse
