#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "pdmse/bivariate_poly.hpp"
#include "pdmse/error.hpp"

namespace pdmse {

using cplx = std::complex<double>;

inline constexpr int kJacobiMaxDegree = 64;
inline constexpr int kHermiteMaxDegree = 24;

// Principal-branch log Gamma (Lanczos, g = 607/128, 15 terms).
inline cplx log_gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real())
    throw PoleError("log_gamma: pole at non-positive integer " + std::to_string(z.real()));
  constexpr double pi = std::numbers::pi;
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
  }
  static constexpr double g = 607.0 / 128.0;
  static constexpr std::array<double, 15> c = {
      0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
      14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
      .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
      -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
      .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};
  z -= 1.0;
  cplx sum = c[0];
  for (std::size_t i = 1; i < c.size(); ++i) sum += c[i] / (z + static_cast<double>(i));
  cplx t = z + g + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

inline cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

inline cplx pochhammer(cplx a, int n) {
  cplx p = 1.0;
  for (int k = 0; k < n; ++k) p *= a + static_cast<double>(k);
  return p;
}

// Generalized binomial C(a, k) for complex a.
inline cplx binomial(cplx a, int k) {
  cplx r = 1.0;
  for (int j = 1; j <= k; ++j) r *= (a - static_cast<double>(j - 1)) / static_cast<double>(j);
  return r;
}

namespace detail {

// Sum form, polynomial in (alpha, beta); used where the recurrence degenerates.
inline cplx jacobi_sum(int n, cplx a, cplx b, cplx x) {
  cplx xm = 0.5 * (x - 1.0), xp = 0.5 * (x + 1.0);
  cplx acc = 0.0;
  for (int s = 0; s <= n; ++s)
    acc += binomial(a + static_cast<double>(n), n - s) * binomial(b + static_cast<double>(n), s) * std::pow(xm, s) *
           std::pow(xp, n - s);
  return acc;
}

}  // namespace detail

inline cplx jacobi_eval(int n, cplx a, cplx b, cplx x) {
  if (n < 0) throw DomainError("jacobi_eval: negative degree");
  if (n > kJacobiMaxDegree) throw DegreeLimitError("jacobi_eval: degree above 64");
  if (n == 0) return 1.0;
  cplx p0 = 1.0;
  cplx p1 = 0.5 * (a - b) + (1.0 + 0.5 * (a + b)) * x;
  for (int k = 1; k < n; ++k) {
    double kk = k;
    cplx s = 2.0 * kk + a + b;
    cplx den = 2.0 * (kk + 1.0) * (kk + a + b + 1.0) * s;
    double scale = 2.0 * (kk + 1.0) * std::max({1.0, std::abs(kk + a + b + 1.0), std::abs(s)}) *
                   std::max({1.0, std::abs(kk + a + b + 1.0), std::abs(s)});
    if (std::abs(den) < 1e-12 * scale) return detail::jacobi_sum(n, a, b, x);
    cplx p2 = ((s + 1.0) * ((s + 2.0) * s * x + a * a - b * b) * p1 - 2.0 * (kk + a) * (kk + b) * (s + 2.0) * p0) / den;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

enum class HermiteRoute { rodrigues, generating, recursion };

inline std::string to_string(HermiteRoute r) {
  switch (r) {
    case HermiteRoute::rodrigues: return "rodrigues";
    case HermiteRoute::generating: return "generating";
    case HermiteRoute::recursion: return "recursion";
  }
  return "?";
}

namespace detail {

inline void check_hermite_degree(int n) {
  if (n < 0) throw DomainError("deformed_hermite: negative degree");
  if (n > kHermiteMaxDegree) throw DegreeLimitError("deformed_hermite: degree above 24");
}

// (-1)^n z^{1/L+1/2} d^n/dy^n z^{n-1/L-1/2}, z = 1 + L y^2.
// Each derivative maps z^{p-k} Q_k to z^{p-k-1} [(L(2n-2k-1)-2) y Q_k + z Q_k'],
// so no denominators appear.
inline BivariatePoly hermite_rodrigues(int n) {
  const BivariatePoly zy = BivariatePoly(1) + BivariatePoly::monomial(2, 1);
  BivariatePoly q(1);
  for (int k = 0; k < n; ++k) {
    BivariatePoly factor = BivariatePoly::monomial(0, 1, 2 * n - 2 * k - 1) - BivariatePoly(2);
    q = factor * q.shifted(1, 0) + zy * q.derivative_y();
  }
  return (n % 2) ? -q : q;
}

inline BivariatePoly hermite_generating(int n) {
  // n! [t^n] (1 + L(2ty - t^2))^{1/L}, expanded binomially in u = 2ty - t^2:
  // (1+Lu)^{1/L} = sum_k prod_{j<k}(1 - jL) u^k / k!.
  BivariatePoly g;
  LambdaPoly falling{Rational(1)};
  BigInt nfact = 1;
  for (int j = 2; j <= n; ++j) nfact *= j;
  BigInt kfact = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      falling = lambda_poly_mul(falling, LambdaPoly{Rational(1), Rational(-(k - 1))});
      kfact *= k;
    }
    int m = n - k;
    if (m > k) continue;
    BigInt binom = 1;
    for (int j = 1; j <= m; ++j) binom = binom * (k - j + 1) / j;
    Rational scale = Rational(nfact, kfact) * Rational(binom) * Rational(BigInt(1) << (2 * k - n));
    if (m % 2) scale = -scale;
    g += BivariatePoly::from_lambda(falling).shifted(2 * k - n, 0) * scale;
  }
  // n![t^n]F = r_n H_n with r_n = (-1/L)_c / (1/2 - 1/L + f)_c, c = ceil(n/2), f = floor(n/2).
  // Cleared of Lambda powers: r_n = prod_{j<c}(jL - 1) / prod_{j<c}((1/2+f+j)L - 1).
  const int c = (n + 1) / 2, f = n / 2;
  LambdaPoly num{Rational(1)}, den{Rational(1)};
  for (int j = 0; j < c; ++j) {
    num = lambda_poly_mul(num, LambdaPoly{Rational(-1), Rational(2 * f + 2 * j + 1, 2)});
    den = lambda_poly_mul(den, LambdaPoly{Rational(-1), Rational(j)});
  }
  return (g * BivariatePoly::from_lambda(num)).divided_by_lambda_poly(den);
}

// (L(2n+1)-2)[2(1-nL) y H_n + (L(2n-1)-2) n H_{n-1}] = (nL-2) H_{n+1}
inline BivariatePoly hermite_recursion(int n) {
  BivariatePoly prev;  // H_{-1}, multiplied by zero at the first step
  BivariatePoly cur(1);
  for (int k = 0; k < n; ++k) {
    BivariatePoly a = BivariatePoly::from_lambda({Rational(-2), Rational(2 * k + 1)});
    BivariatePoly b = BivariatePoly::from_lambda({Rational(2), Rational(-2 * k)}) * cur.shifted(1, 0);
    BivariatePoly c = BivariatePoly::from_lambda({Rational(-2), Rational(2 * k - 1)}) * prev * Rational(k);
    BivariatePoly next = (a * (b + c)).divided_by_lambda_poly({Rational(-2), Rational(k)});
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace detail

inline BivariatePoly deformed_hermite(int n, HermiteRoute route = HermiteRoute::rodrigues) {
  detail::check_hermite_degree(n);
  switch (route) {
    case HermiteRoute::rodrigues: return detail::hermite_rodrigues(n);
    case HermiteRoute::generating: return detail::hermite_generating(n);
    case HermiteRoute::recursion: return detail::hermite_recursion(n);
  }
  return {};
}

// Physicists' Hermite H_n coefficients, lowest degree first.
inline std::vector<Rational> classical_hermite(int n) {
  std::vector<Rational> prev, cur{Rational(1)};
  for (int k = 0; k < n; ++k) {
    std::vector<Rational> next(cur.size() + 1);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= 2 * k * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

inline double hermite_value(int n, double y) {
  double h0 = 1.0, h1 = 2.0 * y;
  if (n == 0) return h0;
  for (int k = 1; k < n; ++k) {
    double h2 = 2.0 * y * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

struct DerivativeIdentityReport {
  int n = 0;
  bool holds = false;
  BivariatePoly residual;          // corrected relation (H_{n-1} in the first bracket)
  BivariatePoly printed_residual;  // relation with H_n in the first bracket
};

// (L(n-2)-2)[2(L(2n-1)-2) n H_{n-1} - (L(n-1)-2) H_n']
//   = nL(L(2n-1)-2)[2(L(n-2)-2) y H_{n-1}' - (n-1)(L(2n-3)-2) H_{n-2}']
inline DerivativeIdentityReport deformed_hermite_derivative_identity(int n) {
  if (n < 2 || n > kHermiteMaxDegree) throw DomainError("derivative identity needs 2 <= n <= 24");
  auto lin = [](int c0, int c1) { return BivariatePoly::from_lambda({Rational(c0), Rational(c1)}); };
  BivariatePoly hn = deformed_hermite(n), hn1 = deformed_hermite(n - 1), hn2 = deformed_hermite(n - 2);
  BivariatePoly dn = hn.derivative_y(), dn1 = hn1.derivative_y(), dn2 = hn2.derivative_y();
  BivariatePoly rhs = BivariatePoly::monomial(0, 1, n) * lin(-2, 2 * n - 1) *
                      (lin(-2, n - 2) * dn1.shifted(1, 0) * Rational(2) - lin(-2, 2 * n - 3) * dn2 * Rational(n - 1));
  auto lhs_with = [&](const BivariatePoly& first) {
    return lin(-2, n - 2) * (lin(-2, 2 * n - 1) * first * Rational(2 * n) - lin(-2, n - 1) * dn);
  };
  DerivativeIdentityReport rep;
  rep.n = n;
  rep.residual = lhs_with(hn1) - rhs;
  rep.printed_residual = lhs_with(hn) - rhs;
  rep.holds = rep.residual.is_zero();
  return rep;
}

struct BridgeValues {
  cplx lhs;
  cplx rhs;
};

// P_n^{(-1/2-1/L, -1/2-1/L)}(i y sqrt(L)) against (1/n!)(1/(2i sqrt(L)))^n H_n(y, L).
// sqrt(L) = i sqrt(|L|) for L < 0.
inline BridgeValues hermite_jacobi_bridge(int n, double y, double Lambda) {
  if (Lambda == 0.0) throw DomainError("hermite_jacobi_bridge: Lambda must be nonzero");
  const cplx I(0.0, 1.0);
  cplx sq = Lambda > 0 ? cplx(std::sqrt(Lambda), 0.0) : I * std::sqrt(-Lambda);
  double par = -0.5 - 1.0 / Lambda;
  BridgeValues out;
  out.lhs = jacobi_eval(n, par, par, I * y * sq);
  cplx h = deformed_hermite(n).evaluate_exact(Rational(y), Rational(Lambda)).convert_to<double>();
  double nfact = std::tgamma(n + 1.0);
  out.rhs = h / nfact * std::pow(1.0 / (2.0 * I * sq), n);
  return out;
}

}  // namespace pdmse
