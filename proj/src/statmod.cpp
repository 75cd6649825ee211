#include "dynabench/statmod.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dynabench/sim.hpp"

namespace dynabench {

void Dataset::check() const {
  if (X.rows() != y.size() || X.rows() != static_cast<long>(meta.size()))
    throw std::invalid_argument("dataset row counts do not match");
  if (!columns.empty() && static_cast<long>(columns.size()) != X.cols())
    throw std::invalid_argument("dataset column names do not match matrix width");
  if (!X.allFinite() || !y.allFinite())
    throw std::invalid_argument("dataset contains non-finite entries");
}

Dataset standardize(const Dataset& d, Eigen::VectorXd* means_out,
                    Eigen::VectorXd* scales_out) {
  d.check();
  if (d.rows() < 2) throw std::invalid_argument("standardize needs at least 2 rows");
  Eigen::VectorXd means = d.X.colwise().mean();
  Eigen::VectorXd scales(d.cols());
  Dataset out = d;
  for (long j = 0; j < d.cols(); ++j) {
    double var = (d.X.col(j).array() - means(j)).square().mean();
    double sd = std::sqrt(var);
    if (sd <= 0) {
      scales(j) = 1.0;
      out.X.col(j).setZero();
    } else {
      scales(j) = sd;
      out.X.col(j) = (d.X.col(j).array() - means(j)) / sd;
    }
  }
  if (means_out) *means_out = means;
  if (scales_out) *scales_out = scales;
  return out;
}

FitResult ridge_fit(const Dataset& d, double lambda) {
  if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
  FitResult fit;
  Dataset sd = standardize(d, &fit.means, &fit.scales);
  fit.lambda = lambda;
  fit.columns = d.columns;
  fit.intercept = d.y.mean();

  // Columns zeroed by standardization would make the normal equations
  // singular at lambda = 0; they get coefficient 0 by construction.
  std::vector<long> active;
  for (long j = 0; j < sd.cols(); ++j) {
    if (sd.X.col(j).squaredNorm() > 0) active.push_back(j);
  }
  Eigen::MatrixXd xa(sd.rows(), active.size());
  for (size_t k = 0; k < active.size(); ++k) xa.col(k) = sd.X.col(active[k]);

  Eigen::VectorXd yc = d.y.array() - fit.intercept;
  Eigen::MatrixXd gram = xa.transpose() * xa;
  gram.diagonal().array() += lambda;
  Eigen::VectorXd beta_active = gram.ldlt().solve(xa.transpose() * yc);

  fit.coef = Eigen::VectorXd::Zero(sd.cols());
  for (size_t k = 0; k < active.size(); ++k) fit.coef(active[k]) = beta_active(k);

  fit.train_r2 = r2_score(predict(fit, d), d.y);
  return fit;
}

double r2_score(const Eigen::VectorXd& y_hat, const Eigen::VectorXd& y) {
  if (y_hat.size() != y.size() || y.size() < 2)
    throw std::invalid_argument("r2 needs two equal-length vectors of size >= 2");
  double mean = y.mean();
  double ss_tot = (y.array() - mean).square().sum();
  if (ss_tot <= 0) throw std::invalid_argument("r2 undefined for zero-variance targets");
  double ss_res = (y - y_hat).array().square().sum();
  return 1.0 - ss_res / ss_tot;
}

Eigen::VectorXd predict(const FitResult& fit, const Dataset& d) {
  if (d.cols() != fit.coef.size())
    throw std::invalid_argument("feature schema mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Constant(d.rows(), fit.intercept);
  for (long j = 0; j < d.cols(); ++j) {
    if (fit.coef(j) == 0.0) continue;
    out += fit.coef(j) * ((d.X.col(j).array() - fit.means(j)) / fit.scales(j)).matrix();
  }
  return out;
}

FitResult ridge_fit_cv(const Dataset& d, uint64_t seed) {
  const std::vector<double> grid = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  const int folds = 5;
  if (d.rows() < folds * 2) return ridge_fit(d, 1e-3);

  std::vector<long> order(d.rows());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(mix_seed(seed, 0xcf));
  for (long i = d.rows() - 1; i > 0; --i) {
    long j = static_cast<long>(rng.below(static_cast<uint64_t>(i + 1)));
    std::swap(order[i], order[j]);
  }

  auto subset = [&](const std::vector<long>& rows) {
    Dataset s;
    s.columns = d.columns;
    s.X.resize(rows.size(), d.cols());
    s.y.resize(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
      s.X.row(i) = d.X.row(rows[i]);
      s.y(i) = d.y(rows[i]);
      s.meta.push_back(d.meta[rows[i]]);
    }
    return s;
  };

  double best_lambda = grid[0];
  double best_err = std::numeric_limits<double>::infinity();
  for (double lambda : grid) {
    double err = 0;
    for (int f = 0; f < folds; ++f) {
      std::vector<long> train_rows, test_rows;
      for (long i = 0; i < d.rows(); ++i) {
        (static_cast<int>(i % folds) == f ? test_rows : train_rows).push_back(order[i]);
      }
      Dataset train = subset(train_rows), test = subset(test_rows);
      FitResult fit = ridge_fit(train, lambda);
      err += (predict(fit, test) - test.y).squaredNorm();
    }
    if (err < best_err) {
      best_err = err;
      best_lambda = lambda;
    }
  }
  return ridge_fit(d, best_lambda);
}

std::pair<Eigen::VectorXd, int> pca_screen(const Dataset& d, double cutoff_ratio) {
  Dataset sd = standardize(d);
  if (sd.rows() == 0 || sd.cols() == 0) throw std::invalid_argument("empty matrix");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(sd.X);
  Eigen::VectorXd sv = svd.singularValues();
  int dominant = 0;
  double cutoff = cutoff_ratio * sv(0);
  for (long i = 0; i < sv.size(); ++i) dominant += sv(i) >= cutoff;
  return {sv, dominant};
}

namespace {

Dataset take_rows(const Dataset& d, const std::vector<long>& rows) {
  Dataset out;
  out.columns = d.columns;
  out.X.resize(rows.size(), d.cols());
  out.y.resize(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    out.X.row(i) = d.X.row(rows[i]);
    out.y(i) = d.y(rows[i]);
    out.meta.push_back(d.meta[rows[i]]);
  }
  return out;
}

}  // namespace

std::pair<Dataset, Dataset> split(const Dataset& d, double ratio, uint64_t seed) {
  d.check();
  if (d.rows() < 5) throw std::invalid_argument("split needs at least 5 rows");
  std::vector<long> order(d.rows());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(mix_seed(seed, 0x5b1));
  for (long i = d.rows() - 1; i > 0; --i) {
    long j = static_cast<long>(rng.below(static_cast<uint64_t>(i + 1)));
    std::swap(order[i], order[j]);
  }
  long n_train = static_cast<long>(ratio * d.rows());
  std::vector<long> train_rows(order.begin(), order.begin() + n_train);
  std::vector<long> test_rows(order.begin() + n_train, order.end());
  return {take_rows(d, train_rows), take_rows(d, test_rows)};
}

std::pair<Dataset, Dataset> holdout_family(const Dataset& d, const std::string& family) {
  d.check();
  std::vector<long> train_rows, test_rows;
  for (long i = 0; i < d.rows(); ++i) {
    (d.meta[i].family == family ? test_rows : train_rows).push_back(i);
  }
  if (test_rows.empty()) throw std::invalid_argument("family not present: " + family);
  return {take_rows(d, train_rows), take_rows(d, test_rows)};
}

double transfer_evaluate(const FitResult& fit, const Dataset& other) {
  other.check();
  if (other.cols() != fit.coef.size() ||
      (!fit.columns.empty() && other.columns != fit.columns))
    throw std::invalid_argument("feature schema mismatch");
  return r2_score(predict(fit, other), other.y);
}

}  // namespace dynabench
