#include "janus/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace janus {

namespace {

void check_site_dims(const std::vector<int>& site_dims, Eigen::Index ambient) {
  if (site_dims.empty())
    throw DimensionMismatch("state needs at least one site dimension");
  long long prod = 1;
  for (int d : site_dims) {
    if (d < 1) throw DimensionMismatch("site dimensions must be positive");
    if (d > kMaxSiteDim)
      throw DimensionMismatch("site dimension " + std::to_string(d) +
                              " exceeds cap " + std::to_string(kMaxSiteDim));
    prod *= d;
  }
  if (prod > kMaxTotalDim)
    throw DimensionMismatch("composite dimension " + std::to_string(prod) +
                            " exceeds cap " + std::to_string(kMaxTotalDim));
  if (prod != ambient)
    throw DimensionMismatch("site dimensions multiply to " + std::to_string(prod) +
                            ", ambient dimension is " + std::to_string(ambient));
}

// (prod of dims before site, dim of site, prod of dims after site)
struct SiteSplit {
  int left;
  int mid;
  int right;
};

SiteSplit split_at(const std::vector<int>& site_dims, int site) {
  if (site < 1 || site > static_cast<int>(site_dims.size()))
    throw SiteMismatch("site index " + std::to_string(site) + " out of range 1.." +
                       std::to_string(site_dims.size()));
  SiteSplit s{1, site_dims[site - 1], 1};
  for (int i = 0; i < site - 1; ++i) s.left *= site_dims[i];
  for (int i = site; i < static_cast<int>(site_dims.size()); ++i)
    s.right *= site_dims[i];
  return s;
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

double projected_weight(const QuantumState& state, const ComplexMatrix& projector) {
  if (state.is_pure()) return (projector * state.vector()).squaredNorm();
  const ComplexMatrix rho = state.density_matrix();
  return (projector * rho * projector).trace().real();
}

}  // namespace

Observable::Observable(ComplexMatrix matrix, std::string label, const Tolerances& tol)
    : matrix_(std::move(matrix)), label_(std::move(label)) {
  spectrum_ = spectral_decompose(matrix_, tol);
}

Observable::Observable(ComplexMatrix matrix, SpectralDecomposition spectrum,
                       std::string label)
    : matrix_(std::move(matrix)),
      spectrum_(std::move(spectrum)),
      label_(std::move(label)) {}

const ComplexMatrix& Observable::projector_for(double outcome, const Tolerances& tol) const {
  return spectrum_.pairs[spectrum_.index_of(outcome, tol)].projector;
}

QuantumState::QuantumState(Kind kind, ComplexVector psi, ComplexMatrix rho,
                           std::vector<int> site_dims)
    : kind_(kind), psi_(std::move(psi)), rho_(std::move(rho)),
      site_dims_(std::move(site_dims)) {}

QuantumState QuantumState::pure(ComplexVector psi, std::vector<int> site_dims,
                                const Tolerances& tol) {
  check_site_dims(site_dims, psi.size());
  if (std::abs(psi.norm() - 1.0) > tol.norm)
    throw Error("pure state is not normalized: ||psi|| = " +
                std::to_string(psi.norm()));
  return QuantumState(Kind::Pure, std::move(psi), ComplexMatrix(), std::move(site_dims));
}

QuantumState QuantumState::density(ComplexMatrix rho, std::vector<int> site_dims,
                                   const Tolerances& tol) {
  check_site_dims(site_dims, rho.rows());
  if (!is_hermitian(rho, tol))
    throw NotHermitian("density operator is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > tol.norm ||
      std::abs(rho.trace().imag()) > tol.norm)
    throw Error("density operator trace is not 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw IterationFailure("density validation: eigen-solver did not converge");
  if (solver.eigenvalues().minCoeff() < -tol.psd)
    throw Error("density operator has a negative eigenvalue: " +
                std::to_string(solver.eigenvalues().minCoeff()));
  return QuantumState(Kind::Density, ComplexVector(), std::move(rho), std::move(site_dims));
}

int QuantumState::dim() const {
  return is_pure() ? static_cast<int>(psi_.size()) : static_cast<int>(rho_.rows());
}

const ComplexVector& QuantumState::vector() const {
  if (!is_pure()) throw NotPure("state is a density operator, not a vector");
  return psi_;
}

ComplexMatrix QuantumState::density_matrix() const {
  if (is_pure()) return psi_ * psi_.adjoint();
  return rho_;
}

double JointDistribution::probability_of(double x, double y, double match_tol) const {
  for (const auto& c : cells)
    if (std::abs(c.x - x) <= match_tol && std::abs(c.y - y) <= match_tol)
      return c.probability;
  throw UnknownOutcome("joint outcome pair not in table");
}

double born_probability(const QuantumState& state, const Observable& obs,
                        double outcome, const Tolerances& tol) {
  if (obs.dim() != state.dim())
    throw DimensionMismatch("born_probability: observable dimension " +
                            std::to_string(obs.dim()) + " vs state dimension " +
                            std::to_string(state.dim()));
  const ComplexMatrix& projector = obs.projector_for(outcome, tol);
  return clamp_probability(projected_weight(state, projector));
}

OutcomeDistribution outcome_distribution(const QuantumState& state, const Observable& obs,
                                         const Tolerances& tol) {
  OutcomeDistribution dist;
  for (const auto& pair : obs.spectrum().pairs)
    dist.entries.push_back({pair.value, born_probability(state, obs, pair.value, tol)});
  return dist;
}

QuantumState luders_update(const QuantumState& state, const Observable& obs,
                           double outcome, const Tolerances& tol) {
  const double p = born_probability(state, obs, outcome, tol);
  if (p <= tol.zero_prob)
    throw ZeroProbabilityOutcome("zero-probability outcome: cannot condition on " +
                                 std::to_string(outcome) + " (p = " +
                                 std::to_string(p) + ")");
  const ComplexMatrix& projector = obs.projector_for(outcome, tol);
  if (state.is_pure()) {
    ComplexVector projected = projector * state.vector();
    projected /= projected.norm();
    return QuantumState::pure(std::move(projected), state.site_dims(), tol);
  }
  ComplexMatrix projected = projector * state.density_matrix() * projector;
  projected /= projected.trace().real();
  projected = 0.5 * (projected + projected.adjoint().eval());
  return QuantumState::density(std::move(projected), state.site_dims(), tol);
}

Observable lift_observable(const Observable& obs, int site,
                           const std::vector<int>& site_dims) {
  const SiteSplit s = split_at(site_dims, site);
  if (obs.dim() != s.mid)
    throw SiteMismatch("observable dimension " + std::to_string(obs.dim()) +
                       " does not match site " + std::to_string(site) +
                       " dimension " + std::to_string(s.mid));

  const ComplexMatrix eye_left = ComplexMatrix::Identity(s.left, s.left);
  const ComplexMatrix eye_right = ComplexMatrix::Identity(s.right, s.right);
  auto lift = [&](const ComplexMatrix& m) -> ComplexMatrix {
    return kron(eye_left, kron(m, eye_right));
  };

  SpectralDecomposition lifted;
  lifted.source_dim = s.left * s.mid * s.right;
  for (const auto& pair : obs.spectrum().pairs)
    lifted.pairs.push_back({pair.value, lift(pair.projector)});
  return Observable(lift(obs.matrix()), std::move(lifted), obs.label());
}

QuantumState bipartite_luders_update(const QuantumState& state, const Observable& obs,
                                     int site, double outcome, const Tolerances& tol) {
  if (state.num_sites() < 2)
    throw SiteMismatch("bipartite update needs a state with at least two sites");
  return luders_update(state, lift_observable(obs, site, state.site_dims()), outcome, tol);
}

double conditional_probability(const QuantumState& state,
                               const Observable& first, double first_outcome,
                               const Observable& second, double second_outcome,
                               const Tolerances& tol) {
  if (state.num_sites() != 2)
    throw SiteMismatch("conditional_probability expects a two-site state");
  const QuantumState updated =
      bipartite_luders_update(state, first, 1, first_outcome, tol);
  return born_probability(updated, lift_observable(second, 2, state.site_dims()),
                          second_outcome, tol);
}

JointDistribution joint_distribution(const QuantumState& state,
                                     const Observable& obs1, const Observable& obs2,
                                     const Tolerances& tol) {
  if (state.num_sites() != 2)
    throw SiteMismatch("joint_distribution expects a two-site state");
  const Observable lifted1 = lift_observable(obs1, 1, state.site_dims());
  const Observable lifted2 = lift_observable(obs2, 2, state.site_dims());

  JointDistribution joint;
  for (const auto& pa : lifted1.spectrum().pairs) {
    for (const auto& pb : lifted2.spectrum().pairs) {
      const ComplexMatrix projector = pa.projector * pb.projector;
      double p;
      if (state.is_pure()) {
        p = (projector * state.vector()).squaredNorm();
      } else {
        const ComplexMatrix rho = state.density_matrix();
        p = (projector * rho * projector.adjoint()).trace().real();
      }
      joint.cells.push_back({pa.value, pb.value, clamp_probability(p)});
    }
  }
  return joint;
}

QuantumState marginal_state(const QuantumState& state, int site, const Tolerances& tol) {
  const SiteSplit s = split_at(state.site_dims(), site);
  ComplexMatrix rho = state.density_matrix();
  if (s.left > 1) rho = partial_trace(rho, s.left, s.mid * s.right, 2);
  if (s.right > 1) rho = partial_trace(rho, s.mid, s.right, 1);
  rho = 0.5 * (rho + rho.adjoint().eval());
  return QuantumState::density(std::move(rho), {s.mid}, tol);
}

SchmidtResult is_separable_pure(const QuantumState& state, const Tolerances& tol) {
  if (!state.is_pure()) throw NotPure("separability test is defined for pure states");
  if (state.num_sites() != 2)
    throw SiteMismatch("separability test expects exactly two sites");

  const int d1 = state.site_dims()[0];
  const int d2 = state.site_dims()[1];
  ComplexMatrix amplitudes(d1, d2);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j) amplitudes(i, j) = state.vector()(i * d2 + j);

  Eigen::JacobiSVD<ComplexMatrix> svd(amplitudes);
  const RealVector& sigma = svd.singularValues();
  const int rank = static_cast<int>((sigma.array() > tol.schmidt).count());
  return {rank == 1, sigma};
}

bool compatible(const Observable& obs1, const Observable& obs2, const Tolerances& tol) {
  if (obs1.dim() != obs2.dim())
    throw DimensionMismatch("compatibility test needs equal dimensions");
  return max_abs(obs1.matrix() * obs2.matrix() - obs2.matrix() * obs1.matrix()) <=
         tol.commute;
}

JointRefinement joint_refinement(const Observable& obs1, const Observable& obs2,
                                 const Tolerances& tol) {
  if (!compatible(obs1, obs2, tol))
    throw NotCompatible("observables do not commute; no joint refinement exists");

  const int dim = obs1.dim();
  ComplexMatrix refined_matrix = ComplexMatrix::Zero(dim, dim);
  SpectralDecomposition spectrum;
  spectrum.source_dim = dim;
  std::vector<JointRefinement::OutcomeTriple> outcome_map;

  int next_label = 1;
  for (const auto& pa : obs1.spectrum().pairs) {
    for (const auto& pb : obs2.spectrum().pairs) {
      // For commuting observables E F is the orthogonal projector on the
      // intersection of the two eigenspaces; its trace is the intersection rank.
      const ComplexMatrix joint = pa.projector * pb.projector;
      const int rank = static_cast<int>(std::lround(joint.trace().real()));
      if (rank <= 0) continue;

      Eigen::JacobiSVD<ComplexMatrix> svd(joint, Eigen::ComputeThinU);
      if (svd.singularValues()(rank - 1) < 0.5)
        throw IterationFailure("joint_refinement: eigenspace intersection is ill-conditioned");

      for (int k = 0; k < rank; ++k) {
        const ComplexVector basis_vector = svd.matrixU().col(k);
        ComplexMatrix projector = basis_vector * basis_vector.adjoint();
        projector = 0.5 * (projector + projector.adjoint().eval());
        const double label = static_cast<double>(next_label++);
        refined_matrix += label * projector;
        spectrum.pairs.push_back({label, std::move(projector)});
        outcome_map.push_back({label, pa.value, pb.value});
      }
    }
  }

  if (next_label - 1 != dim)
    throw IterationFailure("joint_refinement: joint eigenspaces do not span the space");

  refined_matrix = 0.5 * (refined_matrix + refined_matrix.adjoint().eval());
  Observable refined(std::move(refined_matrix), std::move(spectrum),
                     obs1.label().empty() && obs2.label().empty()
                         ? std::string("joint")
                         : obs1.label() + "*" + obs2.label());
  return {std::move(refined), std::move(outcome_map)};
}

}  // namespace janus
