#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace graphtrack {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Thrown when a linear-algebra step cannot proceed (e.g. a singular
/// innovation covariance). The message carries a condition-number estimate
/// where one is available.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace graphtrack
