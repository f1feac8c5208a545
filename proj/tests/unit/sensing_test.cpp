#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <thread>

#include "oracles.hpp"
#include "pursuit/rng.hpp"
#include "pursuit/sensing.hpp"

using namespace pursuit;

namespace {

Vector random_vector(Index n, Rng& rng) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.gaussian();
  return v;
}

// Dense matrix rebuilt from scratch: stored entries for the dense
// ensembles, the cosine formula for PartialDCT.
Matrix reference_matrix(const SenseOperator& op) {
  if (op.ensemble() != Ensemble::PartialDCT) return op.dense();
  const Matrix c = oracle::dct_matrix(op.cols());
  const double scale = std::sqrt(static_cast<double>(op.cols()) / op.rows());
  Matrix out(op.rows(), op.cols());
  for (Index i = 0; i < op.rows(); ++i) out.row(i) = scale * c.row(op.sampled_rows()[i]);
  return out;
}

const Ensemble kRandomEnsembles[] = {Ensemble::Gaussian, Ensemble::Bernoulli,
                                     Ensemble::PartialDCT};

}  // namespace

TEST(MakeOperator, FullDctIsOrthonormal) {
  Rng rng(1);
  for (Index n : {1, 2, 7, 64, 100}) {
    const auto op = make_operator(Ensemble::PartialDCT, n, n, rng.next_u64());
    const Vector x = random_vector(n, rng);
    EXPECT_LE((op.adjoint(op.forward(x)) - x).norm(), 1e-10 * x.norm()) << "N=" << n;
  }
}

TEST(MakeOperator, GaussianColumnNormsConcentrate) {
  const auto op = make_operator(Ensemble::Gaussian, 128, 256, 17);
  const Matrix a = op.dense();
  const double mean = a.colwise().norm().mean();
  EXPECT_GE(mean, 0.9);
  EXPECT_LE(mean, 1.1);
}

TEST(MakeOperator, BernoulliEntriesAreSignedInverseRootM) {
  const auto op = make_operator(Ensemble::Bernoulli, 4, 4, 99);
  const Matrix a = op.dense();
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) EXPECT_TRUE(a(i, j) == 0.5 || a(i, j) == -0.5);
}

TEST(MakeOperator, RejectsBadShapes) {
  EXPECT_THROW(make_operator(Ensemble::Gaussian, 0, 10, 1), UsageError);
  EXPECT_THROW(make_operator(Ensemble::Gaussian, 11, 10, 1), UsageError);
  EXPECT_THROW(make_operator(Ensemble::PartialDCT, 20, 10, 1), UsageError);
  EXPECT_THROW(make_operator(Ensemble::Identity, 5, 10, 1), UsageError);
}

TEST(MakeOperator, DctRowsAreDistinctAndSorted) {
  const auto op = make_operator(Ensemble::PartialDCT, 40, 128, 5);
  const auto& rows = op.sampled_rows();
  ASSERT_EQ(rows.size(), 40u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i - 1], rows[i]);
}

TEST(MakeOperator, LibraryDenseMatchesCosineOracle) {
  const auto op = make_operator(Ensemble::PartialDCT, 24, 60, 8);
  EXPECT_LE((op.dense() - reference_matrix(op)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Forward, ZeroAndBasisVectors) {
  const auto op = make_operator(Ensemble::Gaussian, 16, 32, 2);
  EXPECT_EQ(op.forward(Vector::Zero(32)), Vector::Zero(16));
  const Matrix a = op.dense();
  for (Index j : {0, 7, 31}) {
    Vector e = Vector::Zero(32);
    e[j] = 1.0;
    EXPECT_EQ(op.forward(e), Vector(a.col(j)));
  }
  EXPECT_THROW(op.forward(Vector::Zero(31)), UsageError);
  EXPECT_THROW(op.adjoint(Vector::Zero(17)), UsageError);
}

TEST(Forward, MatchesDenseOracleForAllEnsembles) {
  Rng rng(3);
  for (auto e : kRandomEnsembles) {
    const auto op = make_operator(e, 50, 120, rng.next_u64());
    const Matrix a = reference_matrix(op);
    for (int rep = 0; rep < 10; ++rep) {
      const Vector x = random_vector(120, rng);
      EXPECT_LE((op.forward(x) - a * x).norm(), 1e-10 * x.norm()) << to_string(e);
      const Vector v = random_vector(50, rng);
      EXPECT_LE((op.adjoint(v) - a.transpose() * v).norm(), 1e-10 * v.norm()) << to_string(e);
    }
  }
}

TEST(Adjoint, FullDctIsInverseTransform) {
  const auto op = make_operator(Ensemble::PartialDCT, 16, 16, 4);
  const Matrix c = oracle::dct_matrix(16);
  Rng rng(9);
  const Vector v = random_vector(16, rng);
  EXPECT_EQ(op.adjoint(Vector::Zero(16)), Vector::Zero(16));
  EXPECT_LE((op.adjoint(v) - c.transpose() * v).norm(), 1e-10 * v.norm());
}

TEST(SenseOperator, AdjointConsistencyProperty) {
  Rng rng(12);
  for (int rep = 0; rep < 60; ++rep) {
    const auto e = kRandomEnsembles[rep % 3];
    const Index n = 1 + rng.uniform_index(300);
    const Index m = 1 + rng.uniform_index(n);
    const auto op = make_operator(e, m, n, rng.next_u64());
    const Vector x = random_vector(n, rng);
    const Vector v = random_vector(m, rng);
    const double lhs = op.forward(x).dot(v);
    const double rhs = x.dot(op.adjoint(v));
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * x.norm() * v.norm())
        << to_string(e) << " m=" << m << " N=" << n;
  }
}

TEST(SenseOperator, DeterministicForSameParameters) {
  Rng rng(13);
  for (auto e : kRandomEnsembles) {
    const auto a = make_operator(e, 30, 70, 123);
    const auto b = make_operator(e, 30, 70, 123);
    for (int rep = 0; rep < 100; ++rep) {
      const Vector x = random_vector(70, rng);
      ASSERT_EQ(a.forward(x), b.forward(x));
    }
  }
  EXPECT_NE(make_operator(Ensemble::Gaussian, 4, 8, 1).dense(),
            make_operator(Ensemble::Gaussian, 4, 8, 2).dense());
}

TEST(SenseOperator, FastDctMatchesDenseUpTo512) {
  Rng rng(14);
  for (Index n : {3, 17, 64, 127, 256, 500, 512}) {
    const auto op = make_operator(Ensemble::PartialDCT, n / 2 + 1, n, rng.next_u64());
    const Matrix a = reference_matrix(op);
    const Vector x = random_vector(n, rng);
    EXPECT_LE((op.forward(x) - a * x).cwiseAbs().maxCoeff(), 1e-10) << "N=" << n;
  }
}

TEST(SenseOperator, RestrictedApplicationMatchesDense) {
  Rng rng(15);
  for (auto e : kRandomEnsembles) {
    const auto op = make_operator(e, 40, 90, rng.next_u64());
    const Matrix a = reference_matrix(op);
    const auto t = SupportSet::from_indices(rng.sample_without_replacement(90, 7), 90);
    Matrix at(40, 7);
    for (Index k = 0; k < 7; ++k) at.col(k) = a.col(t[k]);
    const Vector w = random_vector(7, rng);
    const Vector v = random_vector(40, rng);
    EXPECT_LE((op.forward_restricted(t, w) - at * w).norm(), 1e-10 * w.norm());
    EXPECT_LE((op.adjoint_restricted(t, v) - at.transpose() * v).norm(), 1e-10 * v.norm());
  }
}

TEST(SenseOperator, GaussianRowsNestAcrossHeights) {
  const auto tall = make_operator(Ensemble::Gaussian, 20, 40, 77);
  const auto short_op = make_operator(Ensemble::Gaussian, 10, 40, 77);
  const Matrix expected = tall.dense().topRows(10) * std::sqrt(20.0 / 10.0);
  EXPECT_LE((short_op.dense() - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SenseOperator, CountsMatvecsAcrossThreads) {
  const auto op = make_operator(Ensemble::PartialDCT, 32, 64, 6);
  const Vector x = Vector::Ones(64);
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < 4; ++t)
      pool.emplace_back([&] {
        for (int i = 0; i < 50; ++i) (void)op.adjoint(op.forward(x));
      });
  }
  EXPECT_EQ(op.matvec_count(), 400u);
  op.reset_matvec_count();
  EXPECT_EQ(op.matvec_count(), 0u);
}

TEST(OperatorDescriptor, JsonRoundTripRegeneratesEntries) {
  const auto op = make_operator(Ensemble::Bernoulli, 12, 30, 555);
  const nlohmann::json j = OperatorDescriptor::of(op);
  EXPECT_EQ(j.at("ensemble"), "bernoulli");
  EXPECT_EQ(j.at("N"), 30);
  EXPECT_FALSE(j.contains("entries"));
  const auto rebuilt = j.get<OperatorDescriptor>().build();
  EXPECT_EQ(rebuilt.dense(), op.dense());
}

TEST(EmpiricalRic, IdentityLikeOperatorIsExactIsometry) {
  const auto op = make_operator(Ensemble::PartialDCT, 64, 64, 1);
  for (Index n : {1, 4, 16}) EXPECT_LE(empirical_ric(op, n, 200, 3).delta_lower, 1e-10);
}

TEST(EmpiricalRic, SingletonProbeMatchesColumnNormScan) {
  const auto op = make_operator(Ensemble::Gaussian, 32, 64, 21);
  const Matrix a = op.dense();
  double expected = 0.0;
  for (Index j = 0; j < 64; ++j) expected = std::max(expected, std::abs(a.col(j).norm() - 1.0));
  const auto est = empirical_ric(op, 1, 64, 8);
  EXPECT_NEAR(est.delta_lower, expected, 1e-12);
}

TEST(EmpiricalRic, WitnessReproducesEstimate) {
  const auto op = make_operator(Ensemble::Gaussian, 128, 256, 31);
  const auto est = empirical_ric(op, 8, 500, 32);
  EXPECT_LT(est.delta_lower, 0.6);
  EXPECT_GT(est.delta_lower, 0.0);
  ASSERT_EQ(est.witness.size(), 256);
  EXPECT_NEAR(est.witness.norm(), 1.0, 1e-12);
  EXPECT_LE((est.witness.array() != 0.0).count(), 8);
  EXPECT_EQ(isometry_deviation(op, est.witness), est.delta_lower);
}

TEST(EmpiricalRic, RejectsBadArguments) {
  const auto op = make_operator(Ensemble::Gaussian, 8, 16, 1);
  EXPECT_THROW(empirical_ric(op, 9, 10, 1), UsageError);
  EXPECT_THROW(empirical_ric(op, 0, 10, 1), UsageError);
  EXPECT_THROW(empirical_ric(op, 2, 0, 1), UsageError);
}
