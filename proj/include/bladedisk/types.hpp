#pragma once

#include <Eigen/Dense>

namespace bladedisk {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Matrix3 = Eigen::Matrix3d;
using Matrix12 = Eigen::Matrix<double, 12, 12>;
using Vector12 = Eigen::Matrix<double, 12, 1>;

inline constexpr double pi = 3.14159265358979323846;

}  // namespace bladedisk
