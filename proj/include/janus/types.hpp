#ifndef JANUS_TYPES_HPP
#define JANUS_TYPES_HPP

#include <complex>

#include <Eigen/Dense>

namespace janus {

template <typename Scalar>
using MatrixC = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorC = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = MatrixC<double>;
using ComplexVector = VectorC<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Desk-scale caps: one site at most 64-dimensional, composite space at most 4096.
inline constexpr int kMaxSiteDim = 64;
inline constexpr int kMaxTotalDim = 4096;

}  // namespace janus

#endif  // JANUS_TYPES_HPP
