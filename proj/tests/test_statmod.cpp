#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dynabench/sim.hpp"
#include "dynabench/statmod.hpp"

using namespace dynabench;

namespace {

Dataset make_dataset(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  Dataset d;
  d.X = x;
  d.y = y;
  for (long i = 0; i < x.rows(); ++i)
    d.meta.push_back({"b" + std::to_string(i), "FAM" + std::to_string(i % 3),
                      static_cast<int>(i), static_cast<uint64_t>(i), "test"});
  for (long j = 0; j < x.cols(); ++j) d.columns.push_back("c" + std::to_string(j));
  return d;
}

Dataset random_dataset(int rows, int cols, uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd x(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) x(i, j) = 2.0 * rng.uniform() - 1.0;
  return make_dataset(x, Eigen::VectorXd::Zero(rows));
}

}  // namespace

TEST_CASE("standardize") {
  Eigen::MatrixXd x(2, 2);
  x << 1, 5, 3, 5;
  auto d = make_dataset(x, Eigen::VectorXd::Zero(2));
  Eigen::VectorXd means, scales;
  Dataset sd = standardize(d, &means, &scales);
  CHECK(sd.X(0, 0) == doctest::Approx(-1.0));
  CHECK(sd.X(1, 0) == doctest::Approx(1.0));
  // Constant column zeroed with scale 1.
  CHECK(sd.X(0, 1) == 0.0);
  CHECK(scales(1) == 1.0);

  Dataset again = standardize(sd);
  CHECK((again.X - sd.X).cwiseAbs().maxCoeff() < 1e-12);

  Dataset tiny = make_dataset(Eigen::MatrixXd::Zero(1, 2), Eigen::VectorXd::Zero(1));
  CHECK_THROWS_AS(standardize(tiny), std::invalid_argument);
}

TEST_CASE("ridge exact recovery at lambda 0") {
  Eigen::MatrixXd x(6, 1);
  x << 0, 1, 2, 3, 4, 5;
  Eigen::VectorXd y = 2.0 * x.col(0);
  auto d = make_dataset(x, y);
  FitResult fit = ridge_fit(d, 0.0);
  // In standardized space the slope is 2 * sd(x).
  Eigen::VectorXd pred = predict(fit, d);
  CHECK((pred - y).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(fit.train_r2 == doctest::Approx(1.0));
}

TEST_CASE("huge lambda shrinks to the mean") {
  Rng rng(5);
  Eigen::MatrixXd x(20, 3);
  Eigen::VectorXd y(20);
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 3; ++j) x(i, j) = rng.uniform();
    y(i) = rng.uniform();
  }
  auto d = make_dataset(x, y);
  FitResult fit = ridge_fit(d, 1e12);
  CHECK(fit.coef.cwiseAbs().maxCoeff() < 1e-6);
  Eigen::VectorXd pred = predict(fit, d);
  for (int i = 0; i < 20; ++i) CHECK(pred(i) == doctest::Approx(y.mean()).epsilon(1e-6));
  CHECK_THROWS_AS(ridge_fit(d, -1.0), std::invalid_argument);
}

TEST_CASE("three-point system matches hand-solved normal equations") {
  // x values {-1, 0, 1}, y = {1, 2, 4}; standardized x = x / sd, sd = sqrt(2/3).
  // Ridge with lambda: beta = (sum xs*yc) / (sum xs^2 + lambda).
  Eigen::MatrixXd x(3, 1);
  x << -1, 0, 1;
  Eigen::VectorXd y(3);
  y << 1, 2, 4;
  auto d = make_dataset(x, y);
  double lambda = 0.5;
  double sd = std::sqrt(2.0 / 3.0);
  double sum_xs2 = (1.0 + 0.0 + 1.0) / (sd * sd);
  double sum_xsyc = (-1.0 / sd) * (1 - 7.0 / 3) + 0 + (1.0 / sd) * (4 - 7.0 / 3);
  double beta_hand = sum_xsyc / (sum_xs2 + lambda);
  FitResult fit = ridge_fit(d, lambda);
  CHECK(fit.coef(0) == doctest::Approx(beta_hand).epsilon(1e-9));
  CHECK(fit.intercept == doctest::Approx(7.0 / 3));
}

TEST_CASE("r2 score") {
  Eigen::VectorXd y(4), yhat(4);
  y << 1, 2, 3, 4;
  yhat = y;
  CHECK(r2_score(yhat, y) == doctest::Approx(1.0));
  yhat.setConstant(y.mean());
  CHECK(r2_score(yhat, y) == doctest::Approx(0.0));
  yhat.setConstant(10.0);
  CHECK(r2_score(yhat, y) < 0.0);
  Eigen::VectorXd flat = Eigen::VectorXd::Ones(4);
  CHECK_THROWS_AS(r2_score(yhat, flat), std::invalid_argument);
}

TEST_CASE("pca screen") {
  Dataset d = random_dataset(30, 4, 9);
  d.X.col(3) = d.X.col(0);  // duplicated column -> singular value ~ 0
  auto [sv, dominant] = pca_screen(d);
  CHECK(sv.size() == 4);
  for (long i = 0; i + 1 < sv.size(); ++i) CHECK(sv(i) >= sv(i + 1));
  CHECK(sv(3) < 1e-9);
  CHECK(dominant < 4);

  // Orthogonal identity-like features: every direction dominant.
  Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(6, 3);
  auto di = make_dataset(eye, Eigen::VectorXd::Zero(6));
  auto [sv2, dom2] = pca_screen(di);
  CHECK(dom2 == 3);
}

TEST_CASE("split determinism and exhaustiveness") {
  Dataset d = random_dataset(50, 3, 10);
  auto [train, test] = split(d, 0.8, 4);
  CHECK(train.rows() == 40);
  CHECK(test.rows() == 10);
  auto [train2, test2] = split(d, 0.8, 4);
  CHECK(train.X == train2.X);
  std::set<std::string> names;
  for (const auto& m : train.meta) names.insert(m.benchmark);
  for (const auto& m : test.meta) names.insert(m.benchmark);
  CHECK(names.size() == 50);
  Dataset small = random_dataset(4, 2, 1);
  CHECK_THROWS_AS(split(small, 0.8, 1), std::invalid_argument);
}

TEST_CASE("holdout family") {
  Dataset d = random_dataset(30, 3, 11);
  auto [train, test] = holdout_family(d, "FAM1");
  for (const auto& m : train.meta) CHECK(m.family != "FAM1");
  for (const auto& m : test.meta) CHECK(m.family == "FAM1");
  CHECK(train.rows() + test.rows() == 30);
  CHECK_THROWS_AS(holdout_family(d, "MISSING"), std::invalid_argument);
}

TEST_CASE("transfer evaluation") {
  Rng rng(13);
  Eigen::MatrixXd x(40, 3);
  Eigen::VectorXd beta(3);
  beta << 0.5, -0.2, 0.1;
  Eigen::VectorXd y(40);
  for (int i = 0; i < 40; ++i) {
    for (int j = 0; j < 3; ++j) x(i, j) = rng.uniform();
    y(i) = x.row(i) * beta;
  }
  auto d = make_dataset(x, y);
  FitResult fit = ridge_fit(d, 1e-6);
  CHECK(transfer_evaluate(fit, d) == doctest::Approx(fit.train_r2));

  Dataset narrow = random_dataset(10, 2, 3);
  CHECK_THROWS_AS(transfer_evaluate(fit, narrow), std::invalid_argument);
}

TEST_CASE("ridge recovers planted coefficients") {
  Rng rng(2025);
  const int rows = 80, cols = 24;
  Eigen::MatrixXd x(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) x(i, j) = 2.0 * rng.uniform() - 1.0;
  Eigen::VectorXd beta(cols);
  for (int j = 0; j < cols; ++j) beta(j) = (j % 5 - 2) * 0.2;
  Eigen::VectorXd noise(rows);
  for (int i = 0; i < rows; ++i) {
    // Box-Muller, sigma 0.02.
    double u1 = std::max(rng.uniform(), 1e-12), u2 = rng.uniform();
    noise(i) = 0.02 * std::sqrt(-2 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
  Eigen::VectorXd y = x * beta + noise;
  auto d = make_dataset(x, y);
  FitResult fit = ridge_fit(d, 1e-3);
  CHECK(fit.train_r2 >= 0.95);
  // Map standardized coefficients back to the raw scale for comparison.
  Eigen::VectorXd raw = fit.coef.array() / fit.scales.array();
  CHECK((raw - beta).cwiseAbs().maxCoeff() <= 0.1);
}

TEST_CASE("r2 decomposition is exact for least squares") {
  Rng rng(77);
  Eigen::MatrixXd x(25, 3);
  Eigen::VectorXd y(25);
  for (int i = 0; i < 25; ++i) {
    for (int j = 0; j < 3; ++j) x(i, j) = rng.uniform();
    y(i) = 0.4 * x(i, 0) - x(i, 1) + 0.3 * rng.uniform();
  }
  auto d = make_dataset(x, y);
  FitResult fit = ridge_fit(d, 0.0);
  Eigen::VectorXd yhat = predict(fit, d);
  double ss_tot = (y.array() - y.mean()).square().sum();
  double ss_res = (y - yhat).array().square().sum();
  double ss_reg = (yhat.array() - y.mean()).square().sum();
  CHECK(ss_tot == doctest::Approx(ss_res + ss_reg).epsilon(1e-10));
  CHECK(fit.train_r2 == doctest::Approx(ss_reg / ss_tot).epsilon(1e-10));
}

TEST_CASE("cross-validated fit picks a sensible lambda") {
  Rng rng(31);
  Eigen::MatrixXd x(60, 4);
  Eigen::VectorXd y(60);
  for (int i = 0; i < 60; ++i) {
    for (int j = 0; j < 4; ++j) x(i, j) = rng.uniform();
    y(i) = 0.7 * x(i, 0) - 0.3 * x(i, 2) + 0.05 * rng.uniform();
  }
  auto d = make_dataset(x, y);
  FitResult fit = ridge_fit_cv(d, 3);
  CHECK(fit.train_r2 > 0.9);
  CHECK(fit.lambda <= 1.0);
}
