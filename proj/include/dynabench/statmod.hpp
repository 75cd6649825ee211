#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace dynabench {

struct RowMeta {
  std::string benchmark;
  std::string family;
  int n = 0;
  uint64_t seed = 0;
  std::string backend;
};

/// Feature matrix (rows = benchmark instances) with fidelity targets and
/// per-row metadata. Column order is fixed by the feature schema.
struct Dataset {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  std::vector<RowMeta> meta;
  std::vector<std::string> columns;

  long rows() const { return X.rows(); }
  long cols() const { return X.cols(); }
  void check() const;  // shapes and metadata consistent, no NaNs
};

/// Ridge fit in standardized feature space.
struct FitResult {
  Eigen::VectorXd coef;     // per standardized column
  double intercept = 0.0;
  double lambda = 0.0;
  double train_r2 = 0.0;
  Eigen::VectorXd means, scales;  // standardization applied before the fit
  std::vector<std::string> columns;
};

/// Zero-mean unit-variance columns; constant columns become all zeros with
/// scale 1 so they can never influence a fit.
Dataset standardize(const Dataset& d, Eigen::VectorXd* means = nullptr,
                    Eigen::VectorXd* scales = nullptr);

/// Closed-form ridge on raw features (standardizes internally; intercept
/// unpenalized).
FitResult ridge_fit(const Dataset& d, double lambda);

/// 5-fold cross-validated lambda from a small grid, then a final fit.
FitResult ridge_fit_cv(const Dataset& d, uint64_t seed = 7);

double r2_score(const Eigen::VectorXd& y_hat, const Eigen::VectorXd& y);

Eigen::VectorXd predict(const FitResult& fit, const Dataset& d);

/// Singular values of the standardized feature matrix plus the count of
/// directions above cutoff_ratio times the largest.
std::pair<Eigen::VectorXd, int> pca_screen(const Dataset& d, double cutoff_ratio = 1.0 / 50.0);

/// Seeded shuffle split: floor(ratio*N) train rows, rest test.
std::pair<Dataset, Dataset> split(const Dataset& d, double ratio, uint64_t seed);

/// Leave-one-family-out split; throws if the family is absent.
std::pair<Dataset, Dataset> holdout_family(const Dataset& d, const std::string& family);

/// Applies a fit (means/scales/coefficients) to another dataset sharing the
/// column schema and returns the R^2 there.
double transfer_evaluate(const FitResult& fit, const Dataset& other);

}  // namespace dynabench
