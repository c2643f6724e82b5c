#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pdmse/error.hpp"

namespace pdmse {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Univariate polynomial in Lambda, lowest degree first.
using LambdaPoly = std::vector<Rational>;

// Exact polynomial in (y, Lambda). Keys are (degree in y, degree in Lambda);
// zero coefficients are never stored.
class BivariatePoly {
 public:
  using Key = std::pair<int, int>;
  using Terms = std::map<Key, Rational>;

  BivariatePoly() = default;
  explicit BivariatePoly(const Rational& c) { add_term(0, 0, c); }

  static BivariatePoly monomial(int dy, int dl, const Rational& c = 1) {
    BivariatePoly p;
    p.add_term(dy, dl, c);
    return p;
  }

  // c0 + c1*Lambda + ... as a bivariate polynomial constant in y.
  static BivariatePoly from_lambda(const LambdaPoly& coeffs) {
    BivariatePoly p;
    for (std::size_t k = 0; k < coeffs.size(); ++k) p.add_term(0, static_cast<int>(k), coeffs[k]);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coeff(int dy, int dl) const {
    auto it = terms_.find({dy, dl});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(int dy, int dl, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace({dy, dl}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  int degree_y() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.first);
    return d;
  }

  int degree_lambda() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.second);
    return d;
  }

  BivariatePoly& operator+=(const BivariatePoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
  }
  BivariatePoly& operator-=(const BivariatePoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
    return *this;
  }
  BivariatePoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend BivariatePoly operator+(BivariatePoly a, const BivariatePoly& b) { return a += b; }
  friend BivariatePoly operator-(BivariatePoly a, const BivariatePoly& b) { return a -= b; }
  friend BivariatePoly operator*(BivariatePoly a, const Rational& s) { return a *= s; }
  friend BivariatePoly operator*(const Rational& s, BivariatePoly a) { return a *= s; }
  friend BivariatePoly operator-(BivariatePoly a) { return a *= Rational(-1); }

  friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
    BivariatePoly r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
  }

  friend bool operator==(const BivariatePoly& a, const BivariatePoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const BivariatePoly& a, const BivariatePoly& b) { return !(a == b); }

  // Multiply by y^sy * Lambda^sl.
  BivariatePoly shifted(int sy, int sl) const {
    BivariatePoly r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(Key{k.first + sy, k.second + sl}, c);
    return r;
  }

  BivariatePoly derivative_y() const {
    BivariatePoly r;
    for (const auto& [k, c] : terms_)
      if (k.first > 0) r.add_term(k.first - 1, k.second, c * k.first);
    return r;
  }

  // Exact quotient by a polynomial in Lambda alone; throws when the division
  // leaves a remainder.
  BivariatePoly divided_by_lambda_poly(const LambdaPoly& divisor) const {
    int dd = static_cast<int>(divisor.size()) - 1;
    while (dd >= 0 && divisor[dd] == 0) --dd;
    if (dd < 0) throw DivisionByZeroError("division by the zero polynomial");
    std::map<int, std::map<int, Rational>> by_y;
    for (const auto& [k, c] : terms_) by_y[k.first][k.second] = c;
    BivariatePoly out;
    for (auto& [dy, col] : by_y) {
      int top = col.rbegin()->first;
      std::vector<Rational> rem(top + 1);
      for (const auto& [dl, c] : col) rem[dl] = c;
      for (int d = top; d >= dd; --d) {
        if (rem[d] == 0) continue;
        Rational q = rem[d] / divisor[dd];
        out.add_term(dy, d - dd, q);
        for (int j = 0; j <= dd; ++j) rem[d - dd + j] -= q * divisor[j];
      }
      for (int d = 0; d < dd && d <= top; ++d)
        if (rem[d] != 0) throw DivisionByZeroError("inexact division by a polynomial in Lambda");
    }
    return out;
  }

  // Coefficients in y after setting Lambda = 0, lowest degree first.
  std::vector<Rational> at_lambda_zero() const {
    std::vector<Rational> out(std::max(0, degree_y() + 1));
    for (const auto& [k, c] : terms_)
      if (k.second == 0) out[k.first] += c;
    return out;
  }

  template <class T>
  T evaluate(const T& y, const T& lambda) const {
    std::map<int, T> ypow, lpow;
    T acc{};
    for (const auto& [k, c] : terms_) {
      acc += static_cast<T>(c.template convert_to<double>()) * power(ypow, y, k.first) * power(lpow, lambda, k.second);
    }
    return acc;
  }

  // Exact value at rational (y, Lambda); doubles convert to rationals without loss.
  Rational evaluate_exact(const Rational& y, const Rational& lambda) const {
    std::map<int, Rational> ypow, lpow;
    Rational acc = 0;
    for (const auto& [k, c] : terms_) acc += c * power(ypow, y, k.first) * power(lpow, lambda, k.second);
    return acc;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [k, c] = *it;
      os << (first ? "" : " + ") << "(" << c << ")";
      if (k.first) os << "*y^" << k.first;
      if (k.second) os << "*L^" << k.second;
      first = false;
    }
    return os.str();
  }

 private:
  template <class T>
  static const T& power(std::map<int, T>& cache, const T& base, int e) {
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    T v = T(1);
    for (int i = 0; i < e; ++i) v *= base;
    return cache.emplace(e, v).first->second;
  }

  Terms terms_;
};

inline LambdaPoly lambda_poly_mul(const LambdaPoly& a, const LambdaPoly& b) {
  if (a.empty() || b.empty()) return {};
  LambdaPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

}  // namespace pdmse
