#include <gtest/gtest.h>

#include <pdmse/special_functions.hpp>

#include <tuple>
#include <vector>

using namespace pdmse;

namespace {

// Coefficients of the Rodrigues-form polynomial, produced by a computer-algebra
// differentiation of (-1)^n z^{1/L+1/2} d^n/dy^n z^{n-1/L-1/2}, z = 1 + L y^2.
struct FrozenTerm {
  int dy, dl;
  long long value;
};

const std::vector<FrozenTerm> kDegree4 = {
    {0, 0, 12},    {0, 1, -72},  {0, 2, 105}, {2, 0, -48},  {2, 1, 384},    {2, 2, -996},
    {2, 3, 840},   {4, 0, 16},   {4, 1, -176}, {4, 2, 716}, {4, 3, -1276}, {4, 4, 840},
};

const std::vector<FrozenTerm> kDegree5 = {
    {1, 0, 120},   {1, 1, -1260},  {1, 2, 4290},  {1, 3, -4725}, {3, 0, -160},  {3, 1, 2160},
    {3, 2, -10760}, {3, 3, 23460}, {3, 4, -18900}, {5, 0, 32},   {5, 1, -560},  {5, 2, 3880},
    {5, 3, -13300}, {5, 4, 22548}, {5, 5, -15120},
};

BivariatePoly from_terms(const std::vector<FrozenTerm>& terms) {
  BivariatePoly p;
  for (const auto& t : terms) p.add_term(t.dy, t.dl, Rational(t.value));
  return p;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(DeformedHermite, RoutesAgreeExactlyUpToDegree24) {
  for (int n = 0; n <= kHermiteMaxDegree; ++n) {
    BivariatePoly r = deformed_hermite(n, HermiteRoute::rodrigues);
    EXPECT_EQ(r, deformed_hermite(n, HermiteRoute::generating)) << "n = " << n;
    EXPECT_EQ(r, deformed_hermite(n, HermiteRoute::recursion)) << "n = " << n;
  }
}

TEST(DeformedHermite, MatchesComputerAlgebraCoefficients) {
  EXPECT_EQ(deformed_hermite(4), from_terms(kDegree4));
  EXPECT_EQ(deformed_hermite(5), from_terms(kDegree5));
}

TEST(DeformedHermite, LambdaZeroGivesClassicalHermite) {
  for (int n = 0; n <= kHermiteMaxDegree; ++n) EXPECT_EQ(deformed_hermite(n).at_lambda_zero(), classical_hermite(n)) << n;
  const std::vector<Rational> h3{Rational(0), Rational(-12), Rational(0), Rational(8)};
  EXPECT_EQ(classical_hermite(3), h3);
}

TEST(DeformedHermite, DegreeLimits) {
  EXPECT_THROW(deformed_hermite(kHermiteMaxDegree + 1), DegreeLimitError);
  EXPECT_THROW(deformed_hermite(-1), DomainError);
}

TEST(DeformedHermite, DerivativeIdentity) {
  for (int n = 2; n <= 12; ++n) EXPECT_TRUE(deformed_hermite_derivative_identity(n).holds) << n;
}

TEST(DeformedHermite, HermiteValueMatchesExplicitPolynomial) {
  const double y = 0.7;
  EXPECT_NEAR(hermite_value(5, y), 32 * std::pow(y, 5) - 160 * std::pow(y, 3) + 120 * y, 1e-12);
}

TEST(Bridge, JacobiFormAgreesWithPolynomial) {
  double worst = 0.0;
  for (int n = 0; n <= 12; ++n)
    for (double y : {-2.0, -1.0, 0.3, 0.7, 2.0})
      for (double L : {0.1, -0.1, 0.25, -0.25, 0.5, -0.5}) {
        BridgeValues b = hermite_jacobi_bridge(n, y, L);
        worst = std::max(worst, std::abs(b.lhs - b.rhs) / std::max(1.0, std::abs(b.rhs)));
      }
  EXPECT_LT(worst, 1e-10);
  BridgeValues one = hermite_jacobi_bridge(1, 1.0, 0.25);
  EXPECT_NEAR(std::abs(one.lhs - cplx(0, -1.75)), 0.0, 1e-14);
  EXPECT_THROW(hermite_jacobi_bridge(2, 0.5, 0.0), DomainError);
}

// Reference values from 30-digit arbitrary-precision evaluation.
TEST(Gamma, ExtendedPrecisionValues) {
  const std::tuple<cplx, cplx> cases[] = {
      {{7.5, 2.0}, {-1005.53272448748822745931867655, -991.486267906670716647196143871}},
      {{0.01, -0.3}, {-0.384294184973497833073406065518, 3.06165912166806678897388354913}},
      {{-4.5, 0.1}, {-0.056490648230764129473930037354, -0.00918112255941422269629637229959}},
  };
  for (const auto& [z, g] : cases) EXPECT_LT(rel(gamma(z), g), 1e-13) << z;
  EXPECT_LT(rel(gamma(cplx(0.5)), cplx(std::sqrt(std::numbers::pi))), 1e-14);
}

TEST(Gamma, PolesRaise) {
  for (double z : {0.0, -1.0, -7.0}) EXPECT_THROW(log_gamma(cplx(z)), PoleError);
}

TEST(Pochhammer, ExtendedPrecisionValue) {
  EXPECT_LT(rel(pochhammer(cplx(-1.3, 0.2), 4), cplx(0.556100000000000057642779438538, -0.199999999999999970246022940046)), 1e-13);
  EXPECT_EQ(pochhammer(cplx(3.0), 0), cplx(1.0));
}

TEST(Jacobi, ExtendedPrecisionValues) {
  EXPECT_LT(rel(jacobi_eval(3, {0.3, -0.2}, {1.1, 0.4}, {0.2, 0.7}),
                cplx(-0.518621333333333275203887631951, -2.75612566666666633612194544275)),
            1e-13);
  EXPECT_LT(rel(jacobi_eval(4, -2.5, 1.5, 0.35), cplx(-0.138580078125000022346707817533)), 1e-13);
}
