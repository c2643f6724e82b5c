#include <gtest/gtest.h>

#include <pdmse/susy.hpp>

using namespace pdmse;

TEST(Shape, TelescopedSumIsExactForRowOne) {
  // sum_i R(a_i) = n sqrt(lambda) (2A - n sqrt(lambda)).
  for (double A : {5.0, 7.25})
    for (double lam : {1.0, 0.36})
      for (int n = 0; n <= 4; ++n) {
        const ModelParams p{A, 0.5, lam};
        const double k = std::sqrt(lam);
        if (n > A / k - 1) continue;
        EXPECT_NEAR(shape_energy(ModelId::t1r1, p, n).real(), n * k * (2 * A - n * k), 1e-12 * std::max(1.0, A * A));
      }
}

TEST(Shape, SpectrumMatchesClosedForm) {
  const ModelParams p{5, 1, 1};
  Spectrum s = shape_invariance_spectrum(ModelId::t1r1, p, 4);
  const double ref[] = {0, 9, 16, 21, 24};
  ASSERT_EQ(s.levels.size(), 5u);
  for (int n = 0; n < 5; ++n) EXPECT_NEAR(s.levels[n].E.real(), ref[n], 1e-12);
  Spectrum osc = shape_invariance_spectrum(ModelId::nlo, {0, 0, 0.0, 1}, 3);
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(osc.levels[n].E.real(), n + 0.5, 1e-14);
}

TEST(Factorization, RowOneResidual) {
  const ModelParams p{5, 1, 1};
  Grid g = default_grid(ModelId::t1r1, p);
  for (int n = 0; n <= 3; ++n) EXPECT_LT(factorization_residual(ModelId::t1r1, p, n, g), 1e-6) << n;
}

TEST(Ladder, FirstExcitedStateFromGround) {
  const ModelParams p{5, 1, 1};
  Grid g = default_grid(ModelId::t1r1, p);
  LadderState ls = ladder_state(ModelId::t1r1, p, 1, g);
  EXPECT_GT(normalized_overlap(ls.psi, closed_form_on_grid(ModelId::t1r1, p, 1, g)), 1 - 1e-8);
  EXPECT_NEAR(ls.norm, 1.0, 1e-6);
}

TEST(Ladder, RealizedConstantIsRofA0) {
  const ModelParams p{5, 1, 1};
  FirstExcitedCheck c = first_excited_check(ModelId::t1r1, p, default_grid(ModelId::t1r1, p));
  EXPECT_EQ(c.realized, "R(a0)");
  EXPECT_NEAR(c.rayleigh.real(), 9.0, 1e-6);
}

TEST(SpectralShift, RowOne) {
  SpectralShiftReport r = spectral_shift_check(ModelId::t1r1, {5, 1, 1}, 3);
  EXPECT_LT(r.max_rel_deviation, 1e-6);
}

TEST(Algebra, CompletesTheFactorization) {
  const ModelParams p{5, 1, 1};
  EXPECT_LT(susy_algebra_residual(ModelId::t1r1, p, default_grid(ModelId::t1r1, p)), 1e-8);
}

TEST(Broken, GroundEnergyAndDegeneracy) {
  const ModelParams p{2, -1, -1};
  Spectrum s = broken_susy_spectrum(p, BrokenCase::ApBn, 2);
  EXPECT_NEAR(s.levels[0].E.real(), 15.0, 1e-12);
  EXPECT_NEAR(s.levels[1].E.real(), 35.0, 1e-12);
  EXPECT_LT(broken_susy_residual(p, BrokenCase::ApBn, 0), 1e-6);
  EXPECT_LT(broken_susy_residual(p, BrokenCase::ApBn, 1), 1e-6);
  EXPECT_LT(broken_degeneracy(p, BrokenCase::ApBn, 3).max_rel_deviation, 1e-6);
}

TEST(Broken, StepOneYieldsNoNormalizableGround) {
  BrokenStepOneDiagnostic d = broken_step_one_diagnostic({2, -1, -1}, BrokenCase::ApBn);
  EXPECT_FALSE(d.minus_normalizable && d.plus_normalizable);
}

TEST(Broken, WrongSignsRejected) {
  EXPECT_THROW(broken_susy_spectrum({2, 1, -1}, BrokenCase::ApBn, 1), ConstraintError);
  EXPECT_THROW(broken_susy_spectrum({2, -1, 1}, BrokenCase::ApBn, 1), ConstraintError);
}
