#pragma once

#include <complex>
#include <Eigen/Dense>

namespace leobf {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;
using Vec3 = Eigen::Vector3d;

// Kernels with data-parallel inner loops come in two flavors: a serial
// reference and an OpenMP version. Both produce bit-identical results;
// the serial path exists so tests can pin the parallel one against it.
enum class Exec { Serial, Parallel };

}  // namespace leobf
