#pragma once

#include <Eigen/Dense>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <type_traits>
#include <vector>

#include "pdmse/error.hpp"
#include "pdmse/model_catalog.hpp"

namespace pdmse {

enum class Coordinate { x, z };

struct Grid {
  Coordinate coordinate = Coordinate::z;
  double lo = 0.0;
  double hi = 1.0;
  int npoints = 3;

  static Grid make(Coordinate c, double lo, double hi, int npoints) {
    if (npoints < 3) throw GridError("grid needs at least 3 points");
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) throw GridError("grid bounds must be finite with hi > lo");
    return Grid{c, lo, hi, npoints};
  }

  double spacing() const { return (hi - lo) / (npoints - 1); }
  double at(int i) const { return i == npoints - 1 ? hi : lo + i * spacing(); }

  // Same nodes every other point (npoints - 1 must be even).
  Grid coarsened() const {
    if ((npoints - 1) % 2 != 0) throw GridError("grid cannot be coarsened by 2");
    return make(coordinate, lo, hi, (npoints - 1) / 2 + 1);
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.coordinate == b.coordinate && a.lo == b.lo && a.hi == b.hi && a.npoints == b.npoints;
  }
};

struct GridFunction {
  Grid grid;
  std::vector<cplx> values;

  static GridFunction sample(const Grid& g, const std::function<cplx(double)>& f) {
    GridFunction out{g, std::vector<cplx>(g.npoints)};
    for (int i = 0; i < g.npoints; ++i) out.values[i] = f(g.at(i));
    return out;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
  }
};

// Three-point operator on the interior nodes 1..npoints-2 of a grid, Dirichlet at
// both ends. For symmetrized x-form operators, `back` maps eigenvectors of the
// stored matrix to eigenfunctions of the original operator.
struct DiscreteOperator {
  Grid grid;
  std::vector<cplx> diag;
  std::vector<cplx> lower;  // M(i+1, i)
  std::vector<cplx> upper;  // M(i, i+1)
  std::vector<double> back;
  double lambda = 0.0;  // measure parameter for x-grids
  double scale = 1.0;   // eigenvalues of the stored matrix are multiplied by this

  int size() const { return static_cast<int>(diag.size()); }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < lower.size(); ++i)
      if (lower[i] != upper[i]) return false;
    return true;
  }

  bool is_real_symmetric() const {
    if (!is_symmetric()) return false;
    for (const auto& d : diag)
      if (d.imag() != 0.0) return false;
    for (const auto& e : lower)
      if (e.imag() != 0.0) return false;
    return true;
  }

  Eigen::MatrixXcd dense() const {
    const int m = size();
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 0; i < m; ++i) M(i, i) = diag[i];
    for (int i = 0; i + 1 < m; ++i) {
      M(i + 1, i) = lower[i];
      M(i, i + 1) = upper[i];
    }
    return M;
  }

  std::vector<cplx> apply(const std::vector<cplx>& v) const {
    const int m = size();
    if (static_cast<int>(v.size()) != m) throw GridError("operator/vector size mismatch");
    std::vector<cplx> out(m);
    for (int i = 0; i < m; ++i) {
      cplx acc = diag[i] * v[i];
      if (i > 0) acc += lower[i - 1] * v[i - 1];
      if (i + 1 < m) acc += upper[i] * v[i + 1];
      out[i] = acc;
    }
    return out;
  }
};

// -d^2/dz^2 + V(z) with central differences.
inline DiscreteOperator build_operator_z(const std::function<cplx(double)>& potential, const Grid& grid) {
  const int m = grid.npoints - 2;
  const double h = grid.spacing();
  const double inv = 1.0 / (h * h);
  DiscreteOperator op;
  op.grid = grid;
  op.diag.resize(m);
  op.lower.assign(std::max(0, m - 1), cplx(-inv));
  op.upper.assign(std::max(0, m - 1), cplx(-inv));
  for (int i = 0; i < m; ++i) op.diag[i] = 2.0 * inv + potential(grid.at(i + 1));
  return op;
}

// -(1 + lambda x^2) psi'' - lambda x psi' + V psi, written as -(1/w)(p psi')' + V psi
// with p = sqrt(F), w = 1/sqrt(F), F = 1 + lambda x^2, and symmetrized by the
// diagonal similarity F^{-1/4}.
inline DiscreteOperator build_operator_x_general(const std::function<cplx(double)>& potential, double lambda,
                                                 const Grid& grid) {
  const int m = grid.npoints - 2;
  const double h = grid.spacing();
  const double inv = 1.0 / (h * h);
  auto F = [lambda](double x) {
    double f = 1.0 + lambda * x * x;
    if (f <= 0.0) throw DomainError("x-grid leaves the region 1 + lambda x^2 > 0");
    return f;
  };
  DiscreteOperator op;
  op.grid = grid;
  op.lambda = lambda;
  op.diag.resize(m);
  op.lower.resize(std::max(0, m - 1));
  op.upper.resize(std::max(0, m - 1));
  op.back.resize(m);
  for (int i = 0; i < m; ++i) {
    double x = grid.at(i + 1);
    double pl = std::sqrt(F(x - 0.5 * h)), pr = std::sqrt(F(x + 0.5 * h));
    double sq = std::sqrt(F(x));  // 1/w
    op.diag[i] = (pl + pr) * sq * inv + potential(x);
    op.back[i] = std::pow(F(x), 0.25);
    if (i + 1 < m) {
      double xn = grid.at(i + 2);
      double off = -pr * inv * std::pow(F(x), 0.25) * std::pow(F(xn), 0.25);
      op.lower[i] = off;
      op.upper[i] = off;
    }
  }
  return op;
}

inline DiscreteOperator build_operator_x(ModelId id, const ModelParams& p, const Grid& grid) {
  if (grid.coordinate != Coordinate::x) throw GridError("build_operator_x needs an x-grid");
  const ModelDescriptor d = describe(id, p);
  for (int i = 1; i + 1 < grid.npoints; ++i) check_x_in_domain(d, grid.at(i));
  return build_operator_x_general([&](double x) { return potential_eval(id, p, x); }, p.lambda, grid);
}

struct EigenPair {
  cplx value;
  GridFunction vector;
};

namespace detail {

// Number of eigenvalues of the real symmetric tridiagonal (d, e) below x.
inline int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x) {
  const double tiny = std::numeric_limits<double>::min() * 1e4;
  int count = 0;
  double q = d[0] - x;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (std::abs(q) < tiny) q = tiny;
    q = d[i] - x - e[i - 1] * e[i - 1] / q;
    if (q < 0.0) ++count;
  }
  return count;
}

inline std::vector<double> bisect_smallest(const std::vector<double>& d, const std::vector<double>& e, int k) {
  const int m = static_cast<int>(d.size());
  double lo = std::numeric_limits<double>::max(), hi = -lo;
  for (int i = 0; i < m; ++i) {
    double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < m ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  const double span = std::max(std::abs(lo), std::abs(hi));
  std::vector<double> out(k);
  double left = lo;
  for (int j = 0; j < k; ++j) {
    double a = left, b = hi;
    for (int it = 0; it < 300; ++it) {
      double mid = 0.5 * (a + b);
      if (mid == a || mid == b) break;
      if (sturm_count(d, e, mid) > j)
        b = mid;
      else
        a = mid;
      if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a) + std::abs(b), 1e-3 * span))
        break;
    }
    out[j] = 0.5 * (a + b);
    left = a;
  }
  return out;
}

// Solves (T - shift) x = rhs for a general tridiagonal T with partial pivoting.
template <class T>
class TridiagonalLU {
 public:
  TridiagonalLU(const std::vector<T>& diag, const std::vector<T>& lower, const std::vector<T>& upper, T shift) {
    const int m = static_cast<int>(diag.size());
    u0_.resize(m);
    u1_.assign(m, T(0));
    u2_.assign(m, T(0));
    l_.assign(m, T(0));
    piv_.assign(m, false);
    std::vector<T> d(m), up(upper), lo(lower);
    for (int i = 0; i < m; ++i) d[i] = diag[i] - shift;
    // Row i holds (d[i], up[i]); eliminate lo[i] in row i+1.
    T a = d[0], b = m > 1 ? up[0] : T(0), c = T(0);
    for (int i = 0; i < m; ++i) {
      if (i + 1 < m) {
        T sub = lo[i], dn = d[i + 1], upn = i + 2 <= m - 1 ? up[i + 1] : T(0);
        if (std::abs(sub) > std::abs(a)) {
          piv_[i] = true;
          T mult = a / sub;
          u0_[i] = sub;
          u1_[i] = dn;
          u2_[i] = upn;
          l_[i] = mult;
          a = b - mult * dn;
          b = c - mult * upn;
          c = T(0);
        } else {
          T aa = a == T(0) ? T(std::numeric_limits<double>::epsilon()) : a;
          T mult = sub / aa;
          u0_[i] = aa;
          u1_[i] = b;
          u2_[i] = c;
          l_[i] = mult;
          a = dn - mult * b;
          b = upn - mult * c;
          c = T(0);
        }
      } else {
        u0_[i] = a == T(0) ? T(std::numeric_limits<double>::epsilon()) : a;
        u1_[i] = T(0);
        u2_[i] = T(0);
      }
    }
  }

  std::vector<T> solve(std::vector<T> rhs) const {
    const int m = static_cast<int>(u0_.size());
    for (int i = 0; i + 1 < m; ++i) {
      if (piv_[i]) std::swap(rhs[i], rhs[i + 1]);
      rhs[i + 1] -= l_[i] * rhs[i];
    }
    std::vector<T> x(m);
    for (int i = m - 1; i >= 0; --i) {
      T acc = rhs[i];
      if (i + 1 < m) acc -= u1_[i] * x[i + 1];
      if (i + 2 < m) acc -= u2_[i] * x[i + 2];
      x[i] = acc / u0_[i];
    }
    return x;
  }

 private:
  std::vector<T> u0_, u1_, u2_, l_;
  std::vector<bool> piv_;
};

template <class T>
std::vector<T> inverse_iteration(const std::vector<T>& diag, const std::vector<T>& lower, const std::vector<T>& upper,
                                 T value, const std::vector<std::vector<T>>& deflate = {}) {
  const int m = static_cast<int>(diag.size());
  double scale = 0.0;
  for (const auto& d : diag) scale = std::max(scale, std::abs(d));
  T shift = value + T(1e-13 * std::max(1.0, std::abs(value)));
  TridiagonalLU<T> lu(diag, lower, upper, shift);
  std::vector<T> v(m);
  for (int i = 0; i < m; ++i) v[i] = T(1.0 + 0.37 * std::sin(1.3 * i + 0.2));
  for (int it = 0; it < 4; ++it) {
    v = lu.solve(v);
    for (const auto& u : deflate) {
      T proj = T(0);
      for (int i = 0; i < m; ++i) {
        if constexpr (std::is_same_v<T, double>)
          proj += u[i] * v[i];
        else
          proj += std::conj(u[i]) * v[i];
      }
      for (int i = 0; i < m; ++i) v[i] -= proj * u[i];
    }
    double nrm = 0.0;
    for (const auto& x : v) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw ConvergenceError("inverse iteration broke down");
    for (auto& x : v) x /= nrm;
  }
  return v;
}

// Eigenvalues of a complex symmetric tridiagonal matrix by implicit QL with
// complex orthogonal rotations. Returns nullopt on breakdown or iteration cap.
inline std::optional<std::vector<cplx>> complex_symmetric_ql(std::vector<cplx> d, std::vector<cplx> e) {
  const int n = static_cast<int>(d.size());
  e.resize(n, cplx(0.0));
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (++iter > 80) return std::nullopt;
        cplx g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        cplx r = std::sqrt(g * g + 1.0);
        cplx gr = std::abs(g + r) >= std::abs(g - r) ? g + r : g - r;
        if (gr == cplx(0.0)) return std::nullopt;
        g = d[m] - d[l] + e[l] / gr;
        cplx s = 1.0, c = 1.0, p = 0.0;
        int i;
        bool deflated = false;
        for (i = m - 1; i >= l; --i) {
          cplx f = s * e[i], b = c * e[i];
          r = std::sqrt(f * f + g * g);
          e[i + 1] = r;
          if (std::abs(r) < 1e-300) {
            if (std::abs(f) + std::abs(g) > 1e-300) return std::nullopt;  // isotropic breakdown
            d[i + 1] -= p;
            e[m] = 0.0;
            deflated = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (deflated) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  for (const auto& v : d)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return std::nullopt;
  return d;
}

// All eigenvalues of the full complex matrix. A tridiagonal operator is already
// upper Hessenberg, so LAPACK's Hessenberg QR runs on it directly; Eigen's
// Schur form is the fallback when that iteration fails.
inline std::vector<cplx> dense_eigenvalues(const DiscreteOperator& op) {
  const int m = op.size();
  Eigen::MatrixXcd H = op.dense();
  std::vector<cplx> out(m);
  static_assert(sizeof(lapack_complex_double) == sizeof(cplx));
  lapack_int info = LAPACKE_zhseqr(LAPACK_COL_MAJOR, 'E', 'N', m, 1, m, reinterpret_cast<lapack_complex_double*>(H.data()), m,
                                   reinterpret_cast<lapack_complex_double*>(out.data()), nullptr, 1);
  if (info == 0) return out;
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(op.dense(), false);
  if (schur.info() != Eigen::Success) throw ConvergenceError("dense Schur iteration did not converge");
  for (int i = 0; i < m; ++i) out[i] = schur.matrixT()(i, i);
  return out;
}

inline GridFunction embed_vector(const DiscreteOperator& op, const std::vector<cplx>& v) {
  GridFunction g{op.grid, std::vector<cplx>(op.grid.npoints, cplx(0.0))};
  for (int i = 0; i < op.size(); ++i) g.values[i + 1] = op.back.empty() ? v[i] : v[i] * op.back[i];
  return g;
}

}  // namespace detail

enum class EigenPath { automatic, symmetric, complex_tridiagonal, complex_dense };

// Composite Simpson of conj(f) g, weighted by (1 + lambda x^2)^{-1/2} on x-grids.
inline cplx inner_product_mu(const GridFunction& f, const GridFunction& g, double lambda) {
  if (!(f.grid == g.grid) || f.values.size() != g.values.size()) throw GridError("inner_product_mu: grid mismatch");
  const Grid& gr = f.grid;
  std::vector<double> re(gr.npoints), im(gr.npoints);
  for (int i = 0; i < gr.npoints; ++i) {
    double w = 1.0;
    if (gr.coordinate == Coordinate::x) {
      double x = gr.at(i);
      double F = 1.0 + lambda * x * x;
      w = F > 0.0 ? 1.0 / std::sqrt(F) : 0.0;
    }
    cplx v = std::conj(f.values[i]) * g.values[i] * w;
    re[i] = v.real();
    im[i] = v.imag();
  }
  const double h = gr.spacing();
  return {detail::simpson(re, h), detail::simpson(im, h)};
}

inline double norm_mu(const GridFunction& f, double lambda) { return std::sqrt(std::abs(inner_product_mu(f, f, lambda))); }

// The k eigenpairs with smallest real part; vectors are d mu-normalized with the
// largest-magnitude component made real and positive.
inline std::vector<EigenPair> eigensolve(const DiscreteOperator& op, int k, EigenPath path = EigenPath::automatic) {
  const int m = op.size();
  if (k < 1 || k > m) throw GridError("eigensolve: need 1 <= k <= npoints - 2");
  if (path == EigenPath::automatic) path = op.is_real_symmetric() ? EigenPath::symmetric : EigenPath::complex_tridiagonal;
  if (path == EigenPath::complex_tridiagonal && !op.is_symmetric()) path = EigenPath::complex_dense;

  std::vector<cplx> values;
  std::vector<std::vector<cplx>> vecs;
  if (path == EigenPath::symmetric) {
    if (!op.is_real_symmetric()) throw GridError("eigensolve: symmetric path needs a real symmetric operator");
    std::vector<double> d(m), e(std::max(0, m - 1));
    for (int i = 0; i < m; ++i) d[i] = op.diag[i].real();
    for (int i = 0; i + 1 < m; ++i) e[i] = op.lower[i].real();
    std::vector<double> lam = detail::bisect_smallest(d, e, k);
    std::vector<std::vector<double>> found;
    for (int j = 0; j < k; ++j) {
      std::vector<std::vector<double>> defl;
      for (int i = 0; i < j; ++i)
        if (std::abs(lam[i] - lam[j]) < 1e-8 * std::max(1.0, std::abs(lam[j]))) defl.push_back(found[i]);
      found.push_back(detail::inverse_iteration<double>(d, e, e, lam[j], defl));
      values.emplace_back(lam[j]);
      vecs.emplace_back(found.back().begin(), found.back().end());
    }
  } else {
    std::optional<std::vector<cplx>> all;
    if (path == EigenPath::complex_tridiagonal) {
      std::vector<cplx> e(op.lower.begin(), op.lower.end());
      all = detail::complex_symmetric_ql(op.diag, e);
    }
    if (!all) all = detail::dense_eigenvalues(op);
    std::vector<cplx> ev = *all;
    std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    for (int j = 0; j < k; ++j) {
      values.push_back(ev[j]);
      vecs.push_back(detail::inverse_iteration<cplx>(op.diag, op.lower, op.upper, ev[j]));
    }
  }

  std::vector<EigenPair> out;
  for (int j = 0; j < k; ++j) {
    GridFunction g = detail::embed_vector(op, vecs[j]);
    double nrm = norm_mu(g, op.lambda);
    std::size_t imax = 0;
    for (std::size_t i = 0; i < g.values.size(); ++i)
      if (std::abs(g.values[i]) > std::abs(g.values[imax])) imax = i;
    cplx phase = std::abs(g.values[imax]) > 0.0 ? std::conj(g.values[imax]) / std::abs(g.values[imax]) : cplx(1.0);
    for (auto& v : g.values) v *= phase / nrm;
    out.push_back({values[j] * op.scale, std::move(g)});
  }
  return out;
}

// ||O v - E v|| / ||v|| on the stored (symmetrized) matrix.
inline double eigen_residual(const DiscreteOperator& op, const EigenPair& pair) {
  std::vector<cplx> v(op.size());
  for (int i = 0; i < op.size(); ++i) v[i] = op.back.empty() ? pair.vector.values[i + 1] : pair.vector.values[i + 1] / op.back[i];
  std::vector<cplx> ov = op.apply(v);
  cplx E = pair.value / op.scale;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < op.size(); ++i) {
    num += std::norm(ov[i] - E * v[i]);
    den += std::norm(v[i]);
  }
  return std::sqrt(num / den);
}

// Finite-difference weights for the m-th derivative at x0 on arbitrary nodes
// (Fornberg's recursion).
inline std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m) {
  const int n = static_cast<int>(nodes.size());
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0, c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    int mn = std::min(i, m);
    double c2 = 1.0, c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

// m-th derivative (m = 1, 2) of uniformly spaced samples with formal accuracy
// `order` (even); windows are shifted inward near the ends.
inline std::vector<cplx> fd_derivative(const std::vector<cplx>& f, double h, int m, int order) {
  const int n = static_cast<int>(f.size());
  const int width = order + 1;
  if (n < width + 1) throw GridError("grid too coarse for the requested stencil");
  const int half = width / 2;
  std::vector<cplx> out(n);
  std::vector<double> central;
  for (int i = 0; i < n; ++i) {
    int start = i - half;
    bool edge = start < 0 || start + width > n;
    int w = edge ? width + 1 : width;  // one extra node keeps one-sided stencils at full order
    if (edge) start = std::clamp(i - w / 2, 0, n - w);
    std::vector<double> weights;
    if (!edge) {
      if (central.empty()) {
        std::vector<double> nodes(width);
        for (int j = 0; j < width; ++j) nodes[j] = j - half;
        central = fd_weights(0.0, nodes, m);
      }
      weights = central;
    } else {
      std::vector<double> nodes(w);
      for (int j = 0; j < w; ++j) nodes[j] = start + j - i;
      weights = fd_weights(0.0, nodes, m);
    }
    cplx acc = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) acc += weights[j] * f[start + j];
    out[i] = acc / std::pow(h, m);
  }
  return out;
}

struct RichardsonResult {
  std::vector<cplx> values;                    // extrapolated
  std::vector<std::vector<cplx>> per_grid;     // finest first
  std::vector<EigenPair> finest;               // eigenpairs on the finest grid
};

// Eigenvalues on grids h, 2h, 4h (levels + 1 grids) and Richardson-extrapolated
// assuming an even-power error expansion.
inline RichardsonResult richardson_eigenvalues(const std::function<DiscreteOperator(const Grid&)>& build,
                                               const Grid& finest, int k, int levels = 2,
                                               EigenPath path = EigenPath::automatic) {
  RichardsonResult res;
  Grid g = finest;
  for (int l = 0; l <= levels; ++l) {
    DiscreteOperator op = build(g);
    auto pairs = eigensolve(op, k, path);
    std::vector<cplx> vals;
    for (const auto& p : pairs) vals.push_back(p.value);
    res.per_grid.push_back(vals);
    if (l == 0) res.finest = std::move(pairs);
    if (l < levels) g = g.coarsened();
  }
  std::vector<std::vector<cplx>> table = res.per_grid;
  double factor = 4.0;
  for (int l = 0; l < levels; ++l) {
    std::vector<std::vector<cplx>> next;
    for (std::size_t i = 0; i + 1 < table.size(); ++i) {
      std::vector<cplx> row(k);
      for (int j = 0; j < k; ++j) row[j] = table[i][j] + (table[i][j] - table[i + 1][j]) / (factor - 1.0);
      next.push_back(row);
    }
    table = std::move(next);
    factor *= 4.0;
  }
  res.values = table.front();
  return res;
}

inline constexpr int kDefaultSymmetricPoints = 4001;
inline constexpr int kDefaultComplexPoints = 1201;

struct GridOptions {
  int npoints = 0;      // 0: 4001 for real symmetric problems, 1201 otherwise
  double sigma = 1.0;   // scales the truncation length on infinite domains
  int levels = 2;       // Richardson levels
};

// Default z-grid for a catalog model (adimensional zeta for nlo).
inline Grid default_grid(ModelId id, const ModelParams& p, const GridOptions& opt = {}) {
  const bool hermitian = table_of(id) != 2;
  const int npts = opt.npoints > 0 ? opt.npoints : (hermitian ? kDefaultSymmetricPoints : kDefaultComplexPoints);
  if (id == ModelId::nlo) {
    const double L = p.Lambda();
    if (L < 0.0) {
      double half = std::numbers::pi / (2.0 * std::sqrt(-L));
      return Grid::make(Coordinate::z, -half, half, npts);
    }
    double len = L == 0.0 ? 16.0 : std::min(12.0 / std::sqrt(L), 48.0);
    return Grid::make(Coordinate::z, -opt.sigma * len, opt.sigma * len, npts);
  }
  const Interval dom = z_domain(id, p);
  const double len = 12.0 * opt.sigma / p.k();
  double lo = std::isfinite(dom.lo) ? dom.lo : -len;
  double hi = std::isfinite(dom.hi) ? dom.hi : (dom.lo == 0.0 ? len : len);
  return Grid::make(Coordinate::z, lo, hi, npts);
}

// Operator whose eigenvalues are the model's closed-form E_n (eps_m for nlo).
inline DiscreteOperator model_operator_z(ModelId id, const ModelParams& p, const Grid& grid) {
  if (id == ModelId::nlo) {
    const double L = p.Lambda();
    auto V = [L](double zeta) -> cplx {
      if (L == 0.0) return zeta * zeta;
      double sq = std::sqrt(std::abs(L));
      double t = L > 0.0 ? std::tanh(sq * zeta) : std::tan(sq * zeta);
      return (1.0 + L) * t * t / std::abs(L);
    };
    DiscreteOperator op = build_operator_z(V, grid);
    op.scale = 0.5;
    return op;
  }
  check_constraints(id, p);
  return build_operator_z([&](double z) { return potential_z(id, p, z); }, grid);
}

struct NumericalSpectrum {
  std::vector<cplx> values;      // Richardson-extrapolated
  std::vector<EigenPair> pairs;  // finest grid
  Grid grid;
};

inline NumericalSpectrum numerical_spectrum(ModelId id, const ModelParams& p, int k, const GridOptions& opt = {}) {
  Grid g = default_grid(id, p, opt);
  auto rr = richardson_eigenvalues([&](const Grid& gr) { return model_operator_z(id, p, gr); }, g, k, opt.levels);
  return {rr.values, rr.finest, g};
}

// |<a, b>| / (|a| |b|) on a common grid.
inline double normalized_overlap(const GridFunction& a, const GridFunction& b, double lambda = 0.0) {
  double na = norm_mu(a, lambda), nb = norm_mu(b, lambda);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(inner_product_mu(a, b, lambda)) / (na * nb);
}

// Closed-form psi_n sampled on a z-grid (nlo: adimensional zeta).
inline GridFunction closed_form_on_grid(ModelId id, const ModelParams& p, int n, const Grid& grid) {
  if (id == ModelId::nlo) {
    // zeta-grid: map to physical z with the same shape (z = zeta / sqrt(alpha)).
    return GridFunction::sample(grid, [&](double zeta) -> cplx {
      double z = zeta / std::sqrt(p.alpha);
      const Interval dom = z_domain(id, p);
      if (!(z > dom.lo && z < dom.hi)) return 0.0;
      return wavefunction_z(id, p, n, z);
    });
  }
  const Interval dom = z_domain(id, p);
  return GridFunction::sample(grid, [&](double z) -> cplx {
    if (!(z > dom.lo && z < dom.hi)) return 0.0;
    cplx v = wavefunction_z(id, p, n, z);
    return std::isfinite(v.real()) && std::isfinite(v.imag()) ? v : cplx(0.0);
  });
}

}  // namespace pdmse
