#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "ustat/errors.hpp"

namespace ustat {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Observations are rows; row-major storage keeps one observation contiguous,
// which the pairwise kernel loops rely on.
using DataMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// An n x p batch of observations. Rejects non-finite entries and n < 2 on
// construction, so downstream statistics never re-validate.
class Sample {
 public:
  explicit Sample(DataMatrix data);

  int n() const { return static_cast<int>(data_.rows()); }
  int p() const { return static_cast<int>(data_.cols()); }
  const DataMatrix& data() const { return data_; }
  const double* row(int i) const { return data_.data() + static_cast<std::ptrdiff_t>(i) * p(); }

 private:
  DataMatrix data_;
};

// A time-indexed family of d-vectors: row (k - k_start) holds index k.
struct SeqPath {
  Matrix values;  // (k_end - k_start + 1) x d
  int k_start = 0;
  int k_end = 0;
  int n = 0;  // sample size the path was built from
  std::uint64_t kernel_evals = 0;

  int length() const { return k_end - k_start + 1; }
  int d() const { return static_cast<int>(values.cols()); }
  Eigen::Ref<const Eigen::RowVectorXd> at(int k) const { return values.row(k - k_start); }
};

struct CovarianceEstimate {
  Matrix sigma;  // d x d symmetric
  Matrix root;   // root * root^T = PSD projection of sigma
  double clipped_mass = 0.0;    // total negative eigenvalue mass removed
  double min_eigenvalue = 0.0;  // smallest eigenvalue of sigma, diagnostic
};

}  // namespace ustat
