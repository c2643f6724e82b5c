#include <gtest/gtest.h>

#include <pdmse/numerics.hpp>

using namespace pdmse;

TEST(FdWeights, ClassicalStencils) {
  auto w2 = fd_weights(0.0, {-1.0, 0.0, 1.0}, 2);
  EXPECT_NEAR(w2[0], 1.0, 1e-14);
  EXPECT_NEAR(w2[1], -2.0, 1e-14);
  EXPECT_NEAR(w2[2], 1.0, 1e-14);
  auto w1 = fd_weights(0.0, {-2.0, -1.0, 0.0, 1.0, 2.0}, 1);
  const double ref[] = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(w1[i], ref[i], 1e-14);
}

TEST(FdDerivative, SineSecondDerivative) {
  Grid g = Grid::make(Coordinate::z, 0.0, 3.0, 601);
  GridFunction f = GridFunction::sample(g, [](double z) { return cplx(std::sin(z)); });
  auto d2 = fd_derivative(f.values, g.spacing(), 2, 6);
  double worst = 0.0;
  for (int i = 0; i < g.npoints; ++i) worst = std::max(worst, std::abs(d2[i] + std::sin(g.at(i))));
  EXPECT_LT(worst, 1e-8);
}

TEST(Eigensolve, ParticleInABox) {
  const double L = 2.0;
  auto e = eigensolve(build_operator_z([](double) { return cplx(0.0); }, Grid::make(Coordinate::z, 0, L, 4001)), 3);
  for (int k = 1; k <= 3; ++k) EXPECT_NEAR(e[k - 1].value.real(), std::pow(k * std::numbers::pi / L, 2), 1e-5 * k * k);
}

TEST(Eigensolve, PathsAgreeAndResidualsAreSmall) {
  const ModelParams p{5, 1, 1};
  DiscreteOperator op = model_operator_z(ModelId::t1r1, p, Grid::make(Coordinate::z, -12, 12, 601));
  auto a = eigensolve(op, 4, EigenPath::symmetric);
  auto b = eigensolve(op, 4, EigenPath::complex_dense);
  auto c = eigensolve(op, 4, EigenPath::complex_tridiagonal);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(std::abs(a[i].value - b[i].value), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(a[i].value - c[i].value), 0.0, 1e-10);
    EXPECT_LT(eigen_residual(op, a[i]), 1e-9);
  }
}

TEST(Richardson, HarmonicWell) {
  auto r = richardson_eigenvalues([](const Grid& g) { return build_operator_z([](double z) { return cplx(z * z); }, g); },
                                  Grid::make(Coordinate::z, -10, 10, 2001), 3);
  for (int n = 0; n < 3; ++n) EXPECT_NEAR(r.values[n].real(), 2 * n + 1, 1e-7);
  // The extrapolated value is closer than the raw finest-grid value.
  EXPECT_LT(std::abs(r.values[2] - 5.0), std::abs(r.per_grid[0][2] - 5.0));
}

TEST(Numerical, RowOneSpectrum) {
  NumericalSpectrum ns = numerical_spectrum(ModelId::t1r1, {5, 1, 1}, 5);
  const double ref[] = {0, 9, 16, 21, 24};
  for (int n = 0; n < 5; ++n) EXPECT_NEAR(ns.values[n].real(), ref[n], 1e-6 * std::max(1.0, ref[n]));
}

TEST(Numerical, ComplexRowHasRealSpectrum) {
  NumericalSpectrum ns = numerical_spectrum(ModelId::t2r1, {5, 1, 1}, 4);
  const double ref[] = {0, 9, 16, 21};
  for (int n = 0; n < 4; ++n) {
    EXPECT_NEAR(ns.values[n].real(), ref[n], 1e-5 * std::max(1.0, ref[n]));
    EXPECT_LT(std::abs(ns.values[n].imag()), 1e-8 * (1 + ref[n]));
  }
}

TEST(InnerProduct, WeightedMeasure) {
  Grid g = Grid::make(Coordinate::x, -1, 1, 101);
  GridFunction f = GridFunction::sample(g, [](double x) { return cplx(x, 0.0); });
  EXPECT_NEAR(inner_product_mu(f, f, 0.0).real(), 2.0 / 3.0, 1e-14);
  // d mu = dx / sqrt(1 + lambda x^2): int x^2 / sqrt(1 + x^2) on [-1, 1] = sqrt(2) - asinh(1).
  Grid fine = Grid::make(Coordinate::x, -1, 1, 2001);
  GridFunction h = GridFunction::sample(fine, [](double x) { return cplx(x, 0.0); });
  EXPECT_NEAR(inner_product_mu(h, h, 1.0).real(), std::sqrt(2.0) - std::asinh(1.0), 1e-10);
  EXPECT_THROW(inner_product_mu(f, h, 1.0), GridError);
}

TEST(GridTest, RejectsBadBounds) {
  EXPECT_THROW(Grid::make(Coordinate::z, 1.0, 0.0, 10), GridError);
  EXPECT_THROW(Grid::make(Coordinate::z, 0.0, 1.0, 2), GridError);
  EXPECT_THROW(Grid::make(Coordinate::z, 0.0, 1.0, 10).coarsened(), GridError);
}
