#include <gtest/gtest.h>

#include <pdmse/model_catalog.hpp>

#include <vector>

using namespace pdmse;

namespace {

struct Case {
  const char* id;
  ModelParams p;
  std::vector<double> energies;  // confirmed by finite-difference diagonalization
};

ModelId id_of(const char* s) { return *parse_model_id(s); }

}  // namespace

TEST(Catalog, EnergiesAgreeWithDiagonalizedValues) {
  const Case cases[] = {
      {"t1r1", {5, 1, 1}, {0, 9, 16, 21, 24}},
      {"t1r2", {4, 2, 1}, {0, 6.805555555555555, 11.25}},
      {"t1r3", {3, 50, 1}, {0, 114.52777777777777, 161.77777777777777, 181.33333333333331}},
      {"t1r4", {5, 8, 1}, {0, 9, 16, 21}},
      {"t1r5", {5, 1, -1}, {0, 11, 24, 39}},
      {"t1r6", {5, 1, -1}, {0, 11.01222222222222, 24.019591836734694, 39.024375}},
      {"t2r1", {5, 1, 1}, {0, 9, 16, 21}},
      {"t2r2", {5, 1, 1}, {0, 9.0225, 16.07111111111111, 21.21}},
      {"t2r5", {5, 1, -1}, {0, 11, 24, 39}},
      {"bs-apbn", {2, -1, -1}, {15, 35, 63, 99}},
      {"bs-anbp", {-1, 2, -1}, {15, 35, 63, 99}},
  };
  for (const auto& c : cases) {
    ModelId id = id_of(c.id);
    for (std::size_t n = 0; n < c.energies.size(); ++n) {
      cplx E = energy_level(id, c.p, static_cast<int>(n));
      EXPECT_NEAR(E.real(), c.energies[n], 1e-12 * std::max(1.0, c.energies[n])) << c.id << " n=" << n;
      EXPECT_NEAR(E.imag(), 0.0, 1e-12) << c.id << " n=" << n;
    }
  }
}

TEST(Catalog, OscillatorEpsilon) {
  // eps_m = m + 1/2 - Lambda m^2 / 2 at alpha = 1.
  const double eps_pos[] = {0.5, 1.375, 2.0, 2.375};
  const double eps_neg[] = {0.5, 1.75, 3.5, 5.75};
  for (int m = 0; m < 4; ++m) {
    EXPECT_NEAR(energy_level(ModelId::nlo, {0, 0, 0.25, 1}, m).real(), eps_pos[m], 1e-13);
    EXPECT_NEAR(energy_level(ModelId::nlo, {0, 0, -0.5, 1}, m).real(), eps_neg[m], 1e-13);
    EXPECT_NEAR(energy_level(ModelId::nlo, {0, 0, 0.0, 1}, m).real(), m + 0.5, 1e-15);
  }
}

TEST(Catalog, ConstraintGate) {
  EXPECT_THROW(check_constraints(ModelId::t1r2, {4, 20, 1}), ConstraintError);
  EXPECT_THROW(check_constraints(ModelId::t1r1, {5, 1, -1}), ConstraintError);
  EXPECT_NO_THROW(check_constraints(ModelId::t1r1, {5, 1, 1}));
}

TEST(Catalog, LevelBound) {
  auto b = level_bound(ModelId::t1r1, {5, 1, 1});
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(*b, 4);
  EXPECT_THROW(check_level(ModelId::t1r1, {5, 1, 1}, 5), LevelBoundError);
  EXPECT_FALSE(level_bound(ModelId::t1r5, {5, 1, -1}).has_value());
}

TEST(Catalog, ModelIdsRoundTrip) {
  for (ModelId id : kAllModels) EXPECT_EQ(parse_model_id(to_string(id)), id);
  EXPECT_FALSE(parse_model_id("t3r1").has_value());
}

// Row-1 wavefunctions at (A, B, lambda) = (5, 1, 1) from a 30-digit evaluation
// of the normalized Jacobi form, sampled at z = 0.2 and z = -0.7.
TEST(Catalog, RowOneWavefunctionValues) {
  const ModelParams p{5, 1, 1};
  const double at_02[] = {0.74576109, 0.87214938, 0.32982349, -0.26157869};
  const double at_m07[] = {0.61710947, -0.91389822, 0.23650694, 0.51186168};
  for (int n = 0; n < 4; ++n) {
    cplx a = wavefunction_z(ModelId::t1r1, p, n, 0.2), b = wavefunction_z(ModelId::t1r1, p, n, -0.7);
    EXPECT_NEAR(a.real(), at_02[n], 5e-8) << n;
    EXPECT_NEAR(b.real(), at_m07[n], 5e-8) << n;
    EXPECT_NEAR(a.imag(), 0.0, 1e-12);
  }
}

TEST(Catalog, XFormEqualsZForm) {
  const ModelParams p{5, 1, 1};
  for (double x : {-1.3, 0.0, 0.4, 2.5}) {
    cplx direct = wavefunction_eval(ModelId::t1r1, p, 2, x);
    cplx via_z = wavefunction_z(ModelId::t1r1, p, 2, coordinate_map(x, p.lambda));
    EXPECT_NEAR(std::abs(direct - via_z), 0.0, 1e-13);
  }
}

TEST(Catalog, CoordinateMapInverts) {
  for (double lam : {1.0, 0.3, -0.5})
    for (double x : {-0.9, 0.1, 1.2}) {
      if (lam < 0 && std::abs(x) * std::sqrt(-lam) >= 1) continue;
      EXPECT_NEAR(coordinate_map_inverse(coordinate_map(x, lam), lam), x, 1e-14);
    }
  EXPECT_THROW(coordinate_map(2.0, -1.0), DomainError);
  EXPECT_THROW(mass(2.0, -1.0), DomainError);
}

TEST(Catalog, HarmonicLimit) {
  HarmonicLimitReport r = harmonic_limit_report(1.0, {1e-1, 1e-2, 1e-3, 1e-4});
  EXPECT_TRUE(r.monotone());
  EXPECT_LT(r.rows[2].overlap_deviation[0], 1e-4);
  EXPECT_LT(std::abs(r.rows[3].norm0 - std::pow(std::numbers::pi, -0.25)), 1e-3);
  HarmonicLimitRow exact = harmonic_limit_row(1.0, 0.0);
  EXPECT_EQ(exact.potential_deviation, 0.0);
  EXPECT_NEAR(exact.norm0, std::pow(std::numbers::pi, -0.25), 1e-15);
  HarmonicLimitReport wrong_order = harmonic_limit_report(1.0, {1e-4, 1e-1});
  EXPECT_FALSE(wrong_order.monotone());
}
