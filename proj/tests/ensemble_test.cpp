#include <cmath>

#include <gtest/gtest.h>

#include "lyap/ensemble.hpp"
#include "lyap/error.hpp"
#include "lyap/spectral.hpp"

namespace lyap {
namespace {

TEST(MatrixEnsemble, Invariants) {
  const Matrix a = Matrix::identity(2);
  EXPECT_THROW(MatrixEnsemble({}, {}), Error);
  EXPECT_THROW(MatrixEnsemble({a}, {0.5, 0.5}), Error);
  EXPECT_THROW(MatrixEnsemble({a, Matrix::identity(3)}, {0.5, 0.5}), Error);
  EXPECT_THROW(MatrixEnsemble({a, a}, {0.6, 0.6}), Error);
  EXPECT_THROW(MatrixEnsemble({a, a}, {1.0, 0.0}), Error);
  EXPECT_THROW(MatrixEnsemble({a, a}, {0.5, 0.5 + 1e-9}), Error);
  EXPECT_NO_THROW(MatrixEnsemble({a, a}, {0.5, 0.5 + 1e-13}));
  EXPECT_NO_THROW(MatrixEnsemble({a}, {1.0}));
}

TEST(MatrixEnsemble, NormalizesOnlyOnRequest) {
  const Matrix a = Matrix::identity(2);
  const auto e = MatrixEnsemble::normalized({a, a, a}, {1, 1, 2});
  EXPECT_DOUBLE_EQ(e.probs()[2], 0.5);
  EXPECT_THROW(MatrixEnsemble::normalized({a}, {-1}), Error);
}

TEST(ExpectationMatrix, WorkedExamples) {
  EXPECT_EQ(expectation_matrix(builtin_family("ak_bm", {{"k", 1}, {"m", 1}})),
            (Matrix{{1, 0.5}, {0.5, 1}}));
  for (double k : {0.5, 2.0, 3.0, 7.0}) {
    EXPECT_EQ(expectation_matrix(builtin_family("ak_bm", {{"k", k}, {"m", k}})),
              (Matrix{{1, k / 2}, {k / 2, 1}}));
  }
  EXPECT_EQ(expectation_matrix(builtin_family("example6")), (Matrix{{1, 0.5}, {1, 1}}));

  const Matrix a{{2, 7}, {1, 8}};
  EXPECT_EQ(expectation_matrix(MatrixEnsemble({a, a}, {0.25, 0.75})), a);
}

TEST(ExpectationMatrix, SwappedOrderWithComplementaryProbability) {
  const Matrix a{{2, 1}, {1, 1}};
  const Matrix b{{3, 1}, {2, 1}};
  for (double p : {0.1, 0.25, 0.5, 0.9}) {
    EXPECT_EQ(expectation_matrix(MatrixEnsemble({a, b}, {p, 1 - p})),
              expectation_matrix(MatrixEnsemble({b, a}, {1 - p, p})));
  }
}

TEST(Applicability, Flags) {
  const auto ak = check_applicability(builtin_family("ak_bm", {{"k", 1}, {"m", 1}}));
  EXPECT_TRUE(ak.expectation_positive);
  EXPECT_TRUE(ak.bound_ok);
  EXPECT_TRUE(ak.growth_ok);
  EXPECT_TRUE(ak.factors_nonnegative);

  const Matrix a1{{1, 1}, {0, 1}};
  const auto zero = check_applicability(MatrixEnsemble({a1, scaled(a1, -1)}, {0.5, 0.5}));
  EXPECT_FALSE(zero.expectation_positive);
  EXPECT_FALSE(zero.distinct_real.value());
  EXPECT_FALSE(zero.growth_ok);
  EXPECT_FALSE(zero.bound_ok);

  const auto ex6 = check_applicability(builtin_family("example6"));
  EXPECT_TRUE(ex6.expectation_positive);
  EXPECT_TRUE(ex6.bound_ok);
  EXPECT_FALSE(ex6.factors_nonnegative);
}

TEST(Applicability, DistinctRealWithoutPositivity) {
  const Matrix m{{2, 0}, {1, 1}};
  const auto app = check_applicability(MatrixEnsemble({m}, {1.0}));
  EXPECT_FALSE(app.expectation_positive);
  EXPECT_TRUE(app.distinct_real.value());
  EXPECT_TRUE(app.growth_ok);
  EXPECT_FALSE(app.bound_ok);
}

TEST(Applicability, UnknownSpectrumAboveDimensionFour) {
  const auto app = check_applicability(MatrixEnsemble({Matrix::identity(5)}, {1.0}));
  EXPECT_FALSE(app.distinct_real.has_value());
  EXPECT_FALSE(app.growth_ok);
}

TEST(BuiltinFamily, ExactMatrices) {
  const auto ak = builtin_family("ak_bm", {{"k", 2}, {"m", 2}});
  EXPECT_EQ(ak.matrices()[0], (Matrix{{1, 2}, {0, 1}}));
  EXPECT_EQ(ak.matrices()[1], (Matrix{{1, 0}, {2, 1}}));
  EXPECT_EQ(ak.probs(), (std::vector<double>{0.5, 0.5}));

  const auto pol = builtin_family("pollicott");
  EXPECT_EQ(pol.matrices()[0], (Matrix{{2, 1}, {1, 1}}));
  EXPECT_EQ(pol.matrices()[1], (Matrix{{3, 1}, {2, 1}}));

  const auto jurga = builtin_family("jurga");
  EXPECT_EQ(expectation_matrix(jurga), (Matrix{{4, 1.5}, {1.5, 4}}));
  EXPECT_NEAR(dominant_eigen(expectation_matrix(jurga)).mu, 5.5, 1e-12);

  EXPECT_EQ(expectation_matrix(builtin_family("pollicott2_series", {{"t", 1}})),
            (Matrix{{1.5, 1}, {1, 1.5}}));

  const auto skew = builtin_family("pollicott", {{"p", 0.25}});
  EXPECT_EQ(skew.probs(), (std::vector<double>{0.25, 0.75}));
}

TEST(BuiltinFamily, Errors) {
  EXPECT_THROW(builtin_family("nope"), Error);
  EXPECT_THROW(builtin_family("ak_bm", {{"k", 1}}), Error);
  EXPECT_THROW(builtin_family("pollicott2_series", {{"t", 0}}), Error);
  EXPECT_THROW(builtin_family("pollicott2_series", {{"t", -1}}), Error);
  EXPECT_THROW(builtin_family("jurga", {{"k", 1}}), Error);
  EXPECT_THROW(builtin_family("jurga", {{"p", 1.0}}), Error);
}

TEST(BuiltinFamily, ClosedFormGrowthRates) {
  for (double k : {0.25, 0.5, 1.0, 2.0, 5.0}) {
    for (double m : {0.25, 0.5, 1.0, 2.0, 5.0}) {
      const auto e = builtin_family("ak_bm", {{"k", k}, {"m", m}});
      EXPECT_EQ(expectation_matrix(e), (Matrix{{1, k / 2}, {m / 2, 1}}));
      EXPECT_NEAR(dominant_eigen(expectation_matrix(e)).mu, 1 + std::sqrt(k * m) / 2, 1e-9);
    }
  }
  for (double t : {0.1, 0.2, 0.3, 0.4, 0.5, 1.0, 2.0}) {
    const auto e = builtin_family("pollicott2_series", {{"t", t}});
    EXPECT_NEAR(dominant_eigen(expectation_matrix(e)).mu, t + 1.5, 1e-9);
  }
}

}  // namespace
}  // namespace lyap
