#pragma once

#include <Eigen/Dense>
#include <cstddef>

namespace gdpp {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace gdpp
