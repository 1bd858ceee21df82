#ifndef JANUS_QUANTUM_HPP
#define JANUS_QUANTUM_HPP

#include <string>
#include <vector>

#include "janus/hilbert.hpp"

namespace janus {

// Hermitian operator together with its spectral resolution. Outcomes are the
// (clustered) eigenvalues; each outcome owns the orthogonal projector on its
// eigenspace.
class Observable {
 public:
  explicit Observable(ComplexMatrix matrix, std::string label = "",
                      const Tolerances& tol = default_tolerances());

  // Trusted constructor for callers that already hold a valid decomposition
  // (lifting to a composite space, joint refinement).
  Observable(ComplexMatrix matrix, SpectralDecomposition spectrum, std::string label);

  const ComplexMatrix& matrix() const { return matrix_; }
  const SpectralDecomposition& spectrum() const { return spectrum_; }
  const std::string& label() const { return label_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

  std::vector<double> outcomes() const { return spectrum_.values(); }
  const ComplexMatrix& projector_for(double outcome,
                                     const Tolerances& tol = default_tolerances()) const;

 private:
  ComplexMatrix matrix_;
  SpectralDecomposition spectrum_;
  std::string label_;
};

// Pure state vector or density operator on a (possibly tensor-product) space.
// site_dims records the factorization H = H1 (x) H2 (x) ...; a single-site
// state has one entry.
class QuantumState {
 public:
  enum class Kind { Pure, Density };

  static QuantumState pure(ComplexVector psi, std::vector<int> site_dims,
                           const Tolerances& tol = default_tolerances());
  static QuantumState density(ComplexMatrix rho, std::vector<int> site_dims,
                              const Tolerances& tol = default_tolerances());

  Kind kind() const { return kind_; }
  bool is_pure() const { return kind_ == Kind::Pure; }
  const std::vector<int>& site_dims() const { return site_dims_; }
  int num_sites() const { return static_cast<int>(site_dims_.size()); }
  int dim() const;

  // Pure amplitudes; NotPure when the state is a density operator.
  const ComplexVector& vector() const;
  // |psi><psi| for pure states, rho itself otherwise.
  ComplexMatrix density_matrix() const;

 private:
  QuantumState(Kind kind, ComplexVector psi, ComplexMatrix rho,
               std::vector<int> site_dims);

  Kind kind_;
  ComplexVector psi_;
  ComplexMatrix rho_;
  std::vector<int> site_dims_;
};

struct OutcomeDistribution {
  struct Entry {
    double outcome;
    double probability;
  };
  std::vector<Entry> entries;  // increasing outcome order
};

struct JointDistribution {
  struct Cell {
    double x;  // site-1 outcome
    double y;  // site-2 outcome
    double probability;
  };
  std::vector<Cell> cells;  // lexicographic in (x, y), both increasing

  double probability_of(double x, double y, double match_tol) const;
};

struct SchmidtResult {
  bool separable;
  RealVector coefficients;  // singular values, decreasing
};

struct JointRefinement {
  struct OutcomeTriple {
    double refined;  // eigenvalue of the refining observable
    double first;    // the outcome that obs1 takes on this eigenvector
    double second;   // the outcome that obs2 takes on this eigenvector
  };
  Observable refined;  // nondegenerate spectrum
  std::vector<OutcomeTriple> outcome_map;
};

// p(A=x; state) = ||E(x) psi||^2, or tr(E rho E) for density states.
double born_probability(const QuantumState& state, const Observable& obs, double outcome,
                        const Tolerances& tol = default_tolerances());

OutcomeDistribution outcome_distribution(const QuantumState& state, const Observable& obs,
                                         const Tolerances& tol = default_tolerances());

// Post-measurement state: normalized projection E psi / ||E psi|| for pure
// states, E rho E / tr(E rho E) for density states. Repeating the same update
// is a fixed point. ZeroProbabilityOutcome when p(outcome) <= zero_prob.
QuantumState luders_update(const QuantumState& state, const Observable& obs, double outcome,
                           const Tolerances& tol = default_tolerances());

// Embed a single-site observable into the composite space at `site` (1-based):
// I (x) ... (x) M (x) ... (x) I, with the spectrum lifted projector-by-projector
// so outcome labels are unchanged.
Observable lift_observable(const Observable& obs, int site, const std::vector<int>& site_dims);

// Lueders update of a composite state by a measurement on one site; equal to
// luders_update with the lifted observable.
QuantumState bipartite_luders_update(const QuantumState& state, const Observable& obs,
                                     int site, double outcome,
                                     const Tolerances& tol = default_tolerances());

// p(B=y | A=x; state) on a two-site state: first measured on site 1, second on
// site 2. Equals the Born probability of the lifted second observable on the
// updated state.
double conditional_probability(const QuantumState& state,
                               const Observable& first, double first_outcome,
                               const Observable& second, double second_outcome,
                               const Tolerances& tol = default_tolerances());

// Joint outcome table p(x, y) = ||(E(x) (x) F(y)) Psi||^2 on a two-site state.
JointDistribution joint_distribution(const QuantumState& state,
                                     const Observable& obs1, const Observable& obs2,
                                     const Tolerances& tol = default_tolerances());

// Reduced density operator of one site.
QuantumState marginal_state(const QuantumState& state, int site,
                            const Tolerances& tol = default_tolerances());

// Schmidt test for a pure state on two sites: separable iff exactly one
// singular value of the amplitude matrix exceeds tol.schmidt.
SchmidtResult is_separable_pure(const QuantumState& state,
                                const Tolerances& tol = default_tolerances());

// Commutation test max|AB - BA| <= tol.commute.
bool compatible(const Observable& obs1, const Observable& obs2,
                const Tolerances& tol = default_tolerances());

// For a commuting pair, build a refining observable C with nondegenerate
// spectrum such that obs1 = f(C) and obs2 = g(C); f and g are returned as the
// outcome_map table. Joint eigenspaces of dimension > 1 receive distinct C
// labels per basis vector (f, g constant across them).
JointRefinement joint_refinement(const Observable& obs1, const Observable& obs2,
                                 const Tolerances& tol = default_tolerances());

}  // namespace janus

#endif  // JANUS_QUANTUM_HPP
