#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Core>

namespace rimc {

using Complex = std::complex<double>;
using Index = std::ptrdiff_t;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Selects between the OpenMP kernel and its serial reference.
enum class Exec { serial, parallel };

}  // namespace rimc
