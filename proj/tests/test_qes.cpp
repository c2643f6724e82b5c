#include <gtest/gtest.h>

#include <pdmse/qes.hpp>

#include <algorithm>

using namespace pdmse;

namespace {

bool has_record(const QesOracleReport& r, const std::string& id, const std::string& status) {
  return std::any_of(r.records.begin(), r.records.end(), [&](const DiscrepancyRecord& d) { return d.id == id && d.status == status; });
}

}  // namespace

TEST(Qes, CaseOneCoefficients) {
  QesConfig cfg;
  cfg.qcase = QesCase::C1;
  cfg.b2 = 1.0;
  auto sols = qes_solve(cfg);
  ASSERT_EQ(sols.size(), 1u);
  const cplx c_ref[] = {0.0, 0.5, 0.0, 2.0, 0.0, 0.5};
  for (int k = 0; k < 6; ++k) EXPECT_NEAR(std::abs(sols[0].c[k] - c_ref[k]), 0.0, 1e-14) << k;
  EXPECT_NEAR(std::abs(sols[0].E - 1.0), 0.0, 1e-14);
  EXPECT_LT(qes_residual(sols[0], qes_default_grid()), 1e-7);
  QesOracleReport r = qes_symbolic_oracle(sols[0]);
  EXPECT_LT(r.remainder, 1e-12);
  EXPECT_TRUE(r.relations_confirmed);
}

TEST(Qes, CaseOneDefaultsGiveZeroEnergy) {
  QesConfig cfg;
  auto sols = qes_solve(cfg);
  EXPECT_NEAR(std::abs(sols[0].E), 0.0, 1e-15);
}

TEST(Qes, CaseTwoABothBranches) {
  QesConfig cfg;
  cfg.qcase = QesCase::C2a;
  cfg.b2 = 2.0;
  auto sols = qes_solve(cfg);
  ASSERT_EQ(sols.size(), 2u);
  for (const auto& s : sols) {
    EXPECT_NEAR(std::abs(s.E - 2.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s.a0 * s.a0 + 4.0), 0.0, 1e-12);  // a0 = +-2i
    EXPECT_LT(qes_residual(s, qes_default_grid()), 1e-7);
    QesOracleReport r = qes_symbolic_oracle(s);
    EXPECT_LT(r.remainder, 1e-10);
    EXPECT_TRUE(has_record(r, "case2.c1.root-term", "confirmed"));
    EXPECT_TRUE(has_record(r, "case2.wavefunction.quartic-exponent", "corrected"));
  }
  EXPECT_NE(sols[0].a0, sols[1].a0);
}

TEST(Qes, CaseTwoARequiresPositiveB2) {
  QesConfig cfg;
  cfg.qcase = QesCase::C2a;
  cfg.b2 = -1.0;
  EXPECT_THROW(qes_solve(cfg), ConstraintError);
}

TEST(Qes, CaseThreeAtOrigin) {
  QesConfig cfg;
  cfg.qcase = QesCase::C3;
  auto sols = qes_solve(cfg);
  ASSERT_EQ(sols.size(), 2u);
  std::vector<double> E{sols[0].E.real(), sols[1].E.real()};
  std::sort(E.begin(), E.end());
  EXPECT_NEAR(E[0], -std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(E[1], std::sqrt(2.0), 1e-12);
  for (const auto& s : sols) {
    // The higher energy goes with the lower a0.
    EXPECT_NEAR(std::abs(s.a0 + s.E / 2.0), 0.0, 1e-12);
    EXPECT_LT(qes_residual(s, qes_default_grid()), 1e-7);
    QesOracleReport r = qes_symbolic_oracle(s);
    EXPECT_TRUE(has_record(r, "case3.branch-pairing", "corrected"));
  }
}

TEST(Qes, CaseThreeEnergies) {
  QesConfig cfg;
  cfg.qcase = QesCase::C3;
  cfg.b2 = 1.0;
  auto sols = qes_solve(cfg);
  std::vector<double> E{sols[0].E.real(), sols[1].E.real()};
  std::sort(E.begin(), E.end());
  EXPECT_NEAR(E[0], 3 - std::sqrt(6.0), 1e-12);
  EXPECT_NEAR(E[1], 3 + std::sqrt(6.0), 1e-12);
}

TEST(Qes, DeformedCoordinateResidual) {
  QesConfig cfg;
  cfg.qcase = QesCase::C1;
  cfg.b2 = 1.0;
  auto s = qes_solve(cfg)[0];
  for (double lam : {0.5, 2.0}) {
    double X = std::sinh(std::sqrt(lam) * 5.0) / std::sqrt(lam);
    Grid gx = Grid::make(Coordinate::x, -X, X, 200001);
    EXPECT_LT(qes_residual(s, gx, lam), 1e-5) << lam;
  }
}

TEST(Qes, ImaginaryCubicCouplingIsPtSymmetric) {
  QesConfig cfg;
  cfg.qcase = QesCase::C3;
  cfg.b2 = 1.0;
  cfg.b3 = cplx(0.0, 0.4);
  for (const auto& s : qes_solve(cfg)) {
    EXPECT_TRUE(qes_pt_check(s, qes_default_grid()).pt_symmetric_potential);
    EXPECT_NEAR(s.E.imag(), 0.0, 1e-12);
  }
}

TEST(Qes, CubicRoots) {
  auto r = detail::cubic_roots(1.0, -6.0, 11.0, -6.0);
  std::vector<double> re;
  for (cplx v : r) re.push_back(v.real());
  std::sort(re.begin(), re.end());
  ASSERT_EQ(re.size(), 3u);
  EXPECT_NEAR(re[0], 1.0, 1e-13);
  EXPECT_NEAR(re[1], 2.0, 1e-13);
  EXPECT_NEAR(re[2], 3.0, 1e-13);
}

TEST(Qes, ParseCase) {
  EXPECT_EQ(parse_qes_case("2a"), QesCase::C2a);
  EXPECT_EQ(parse_qes_case("C3"), QesCase::C3);
  EXPECT_THROW(parse_qes_case("4"), Error);
}
