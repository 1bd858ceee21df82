#include "janus/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace janus {

ComplexMatrix partial_trace(const ComplexMatrix& rho, int dim1, int dim2, int keep) {
  if (dim1 < 1 || dim2 < 1)
    throw DimensionMismatch("partial_trace: site dimensions must be positive");
  if (rho.rows() != rho.cols())
    throw DimensionMismatch("partial_trace: operator must be square");
  if (static_cast<Eigen::Index>(dim1) * dim2 != rho.rows())
    throw DimensionMismatch(
        "partial_trace: operator dimension " + std::to_string(rho.rows()) +
        " is not " + std::to_string(dim1) + "*" + std::to_string(dim2));
  if (keep != 1 && keep != 2)
    throw SiteMismatch("partial_trace: keep must be 1 or 2");

  if (keep == 1) {
    ComplexMatrix out = ComplexMatrix::Zero(dim1, dim1);
    for (int i = 0; i < dim1; ++i)
      for (int j = 0; j < dim1; ++j)
        for (int k = 0; k < dim2; ++k)
          out(i, j) += rho(i * dim2 + k, j * dim2 + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim2, dim2);
  for (int k = 0; k < dim2; ++k)
    for (int l = 0; l < dim2; ++l)
      for (int i = 0; i < dim1; ++i)
        out(k, l) += rho(i * dim2 + k, i * dim2 + l);
  return out;
}

double SpectralDecomposition::max_abs_value() const {
  double m = 0.0;
  for (const auto& p : pairs) m = std::max(m, std::abs(p.value));
  return m;
}

std::vector<double> SpectralDecomposition::values() const {
  std::vector<double> v;
  v.reserve(pairs.size());
  for (const auto& p : pairs) v.push_back(p.value);
  return v;
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  ComplexMatrix m = ComplexMatrix::Zero(source_dim, source_dim);
  for (const auto& p : pairs) m += p.value * p.projector;
  return m;
}

int SpectralDecomposition::index_of(double outcome, const Tolerances& tol) const {
  if (pairs.empty()) throw UnknownOutcome("spectrum is empty");
  int best = 0;
  double best_dist = std::abs(pairs[0].value - outcome);
  for (int i = 1; i < size(); ++i) {
    double d = std::abs(pairs[i].value - outcome);
    if (d < best_dist) {
      best = i;
      best_dist = d;
    }
  }
  if (best_dist > tol.cluster(max_abs_value()))
    throw UnknownOutcome("outcome " + std::to_string(outcome) +
                         " is not in the spectrum");
  return best;
}

SpectralDecomposition spectral_decompose(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("spectral_decompose: matrix must be square");
  if (m.rows() > kMaxTotalDim)
    throw DimensionMismatch("spectral_decompose: dimension " +
                            std::to_string(m.rows()) + " exceeds cap " +
                            std::to_string(kMaxTotalDim));
  if (!is_hermitian(m, tol))
    throw NotHermitian("spectral_decompose: matrix is not Hermitian within " +
                       std::to_string(tol.herm));

  const int dim = static_cast<int>(m.rows());
  // Symmetrize roundoff before handing to the solver.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()));
  if (solver.info() != Eigen::Success)
    throw IterationFailure("spectral_decompose: eigen-solver did not converge");

  const RealVector& evals = solver.eigenvalues();
  const ComplexMatrix& evecs = solver.eigenvectors();
  const double ctol = tol.cluster(std::max(std::abs(evals(0)), std::abs(evals(dim - 1))));

  SpectralDecomposition out;
  out.source_dim = dim;

  int begin = 0;
  while (begin < dim) {
    int end = begin + 1;
    while (end < dim && evals(end) - evals(end - 1) <= ctol) ++end;
    const int rank = end - begin;

    // Cluster basis, re-orthonormalized by modified Gram-Schmidt.
    ComplexMatrix basis = evecs.middleCols(begin, rank);
    for (int j = 0; j < rank; ++j) {
      for (int k = 0; k < j; ++k)
        basis.col(j) -= basis.col(k).dot(basis.col(j)) * basis.col(k);
      const double len = basis.col(j).norm();
      if (len <= 0.0)
        throw IterationFailure("spectral_decompose: degenerate cluster basis");
      basis.col(j) /= len;
    }

    ComplexMatrix projector = basis * basis.adjoint();
    projector = 0.5 * (projector + projector.adjoint().eval());

    const double value = evals.segment(begin, rank).mean();
    out.pairs.push_back({value, std::move(projector)});
    begin = end;
  }
  return out;
}

}  // namespace janus
