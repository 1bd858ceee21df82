#ifndef JANUS_HILBERT_HPP
#define JANUS_HILBERT_HPP

#include <utility>
#include <vector>

#include "janus/errors.hpp"
#include "janus/tolerances.hpp"
#include "janus/types.hpp"

namespace janus {

// Largest entry magnitude, zero for empty matrices.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m,
                  const Tolerances& tol = default_tolerances()) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.derived() - m.derived().adjoint()) <= tol.herm;
}

// Kronecker product in row-major block layout:
//   (a (x) b)(i*rb + k, j*cb + l) = a(i,j) * b(k,l).
// Column vectors stay column vectors, so this covers both state vectors and
// operators.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<
      typename DerivedA::Scalar, typename DerivedB::Scalar>::ReturnType;
  constexpr int Cols =
      (DerivedA::ColsAtCompileTime == 1 && DerivedB::ColsAtCompileTime == 1)
          ? 1
          : Eigen::Dynamic;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Cols> out(a.rows() * b.rows(),
                                                  a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          a(i, j) * b.derived();
  return out;
}

// Trace out one factor of a bipartite operator on H1 (x) H2. `keep` selects
// the surviving site (1 or 2). The input need not be a density operator; for
// density inputs the result is again Hermitian with unit trace.
ComplexMatrix partial_trace(const ComplexMatrix& rho, int dim1, int dim2, int keep);

// A Hermitian operator resolved into (eigenvalue, orthogonal projector) pairs,
// eigenvalues strictly increasing, projectors mutually orthogonal and complete.
struct SpectralDecomposition {
  struct EigenPair {
    double value;
    ComplexMatrix projector;
  };

  std::vector<EigenPair> pairs;
  int source_dim = 0;

  int size() const { return static_cast<int>(pairs.size()); }
  double max_abs_value() const;
  std::vector<double> values() const;

  // sum_x x E(x)
  ComplexMatrix reconstruct() const;

  // Nearest eigenvalue within the clustering tolerance; UnknownOutcome if the
  // requested outcome is not in the spectrum.
  int index_of(double outcome, const Tolerances& tol = default_tolerances()) const;
};

// Hermitian eigendecomposition with eigenvalue clustering. Eigenvalues within
// cluster(max|eigenvalue|) of each other are merged into a single degenerate
// eigenspace whose projector has matching rank (cluster basis re-orthonormalized
// by modified Gram-Schmidt before the projector is assembled).
SpectralDecomposition spectral_decompose(const ComplexMatrix& m,
                                         const Tolerances& tol = default_tolerances());

}  // namespace janus

#endif  // JANUS_HILBERT_HPP
