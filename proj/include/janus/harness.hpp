#ifndef JANUS_HARNESS_HPP
#define JANUS_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "janus/classical.hpp"
#include "janus/quantum.hpp"

namespace janus {

// Two-outcome polarization observable at the given orientation: eigenvalue +1
// on cos(a)|x> + sin(a)|y>, -1 on the orthogonal direction. In matrix form
// [[cos 2a, sin 2a], [sin 2a, -cos 2a]].
Observable polarizer_observable(double angle_radians);

// Two-photon polarization pair with polarizer orientations at each site. The
// standard constructor uses the maximally correlated state
// (|xx> + |yy>)/sqrt(2); arbitrary two-site pure states are allowed.
struct EPRScenario {
  QuantumState state;
  double angle_a;
  double angle_b;

  static EPRScenario standard(double angle_a, double angle_b);
};

struct EprJointTable {
  double pp, pm, mp, mm;  // p(+,+), p(+,-), p(-,+), p(-,-)
};

// Joint detection table computed through the generic joint distribution (the
// closed form sits in the tests as the oracle).
EprJointTable epr_joint_probabilities(const EPRScenario& scenario,
                                      const Tolerances& tol = default_tolerances());

struct ComparisonRow {
  std::string label;
  double lhs;
  double rhs;
  double diff;  // |lhs - rhs|
  bool pass;
};

struct ComparisonReport {
  std::string lhs_name;
  std::string rhs_name;
  double tolerance;
  std::vector<ComparisonRow> rows;

  bool all_pass() const;
};

// For every outcome pair (x, y): two-step value p(x) * p(y|x) against the
// direct joint probability p(x, y). A row passes iff |diff| <= report
// tolerance (1e-10).
ComparisonReport two_step_vs_direct(const QuantumState& state,
                                    const Observable& obs1, const Observable& obs2,
                                    const Tolerances& tol = default_tolerances());

struct ClassicalEmbedding {
  FiniteProbSpace space;    // atoms = joint spectral outcomes
  RandomVariable first;     // value of the first observable per atom
  RandomVariable second;    // value of the second observable per atom
};

// Classical model of a compatible pair: atoms are joint outcomes, weights the
// joint Born probabilities. Observables on different sites always qualify;
// same-site pairs must commute (NotCompatible otherwise -- no joint
// distribution exists for an incompatible pair).
ClassicalEmbedding classical_embedding(const QuantumState& state,
                                       const Observable& obs1, int site1,
                                       const Observable& obs2, int site2,
                                       const Tolerances& tol = default_tolerances());

// Row-by-row check that the classical embedding reproduces the quantum
// numbers: unconditional probabilities for both observables, joint outcomes,
// and every conditional with a nonzero conditioning event.
ComparisonReport compare_embedding(const QuantumState& state,
                                   const Observable& obs1, int site1,
                                   const Observable& obs2, int site2,
                                   const Tolerances& tol = default_tolerances());

enum class SampleMode { Direct, TwoStep };

struct SampleRecord {
  std::int64_t trial;
  double outcome1;
  double outcome2;
};

struct SampleRun {
  std::uint64_t seed;
  std::int64_t trials;
  SampleMode mode;
  std::vector<SampleRecord> records;
};

// Seeded measurement simulation on a two-site state. Direct mode draws (x, y)
// from the joint distribution; TwoStep draws x from the site-1 Born
// distribution, applies the update, then draws y from the updated state.
// Outcomes are drawn by inverse CDF in increasing eigenvalue order (cells in
// lexicographic order for Direct), ties resolved toward the smaller
// eigenvalue. Each trial owns an independent substream derived from
// (seed, trial index), so runs are bit-identical for a fixed seed and
// identical under any worker partitioning. num_threads 0 picks the hardware
// count; 1 forces sequential execution.
SampleRun sample_outcomes(const QuantumState& state,
                          const Observable& obs1, const Observable& obs2,
                          std::int64_t trials, std::uint64_t seed, SampleMode mode,
                          const Tolerances& tol = default_tolerances(),
                          int num_threads = 0);

// Empirical site-2 distribution over the subensemble with the given site-1
// outcome. EmptySubensemble when nothing matches.
OutcomeDistribution conditional_statistics(const SampleRun& run, double outcome1_filter,
                                           const Tolerances& tol = default_tolerances());

// Empirical joint frequencies of a run, lexicographic in (outcome1, outcome2).
JointDistribution empirical_joint(const SampleRun& run,
                                  const Tolerances& tol = default_tolerances());

}  // namespace janus

#endif  // JANUS_HARNESS_HPP
