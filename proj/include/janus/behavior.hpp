#ifndef JANUS_BEHAVIOR_HPP
#define JANUS_BEHAVIOR_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "janus/quantum.hpp"

namespace janus {

// Two-site, two-setting, binary-outcome behavior: for each setting pair
// (i, j) a 2x2 outcome table over {+1, -1} x {+1, -1}. Outcome index 0 maps
// to +1 and index 1 to -1.
struct BehaviorTable {
  std::array<std::string, 2> site1_settings{{"A1", "A2"}};
  std::array<std::string, 2> site2_settings{{"B1", "B2"}};
  // tables[i][j](x_index, y_index)
  std::array<std::array<Eigen::Matrix2d, 2>, 2> tables;

  static constexpr double outcome_of(int index) { return index == 0 ? +1.0 : -1.0; }

  // Nonnegative tables summing to 1 (1e-10) and no-signaling marginals (1e-8);
  // SignalingBehavior when a site marginal depends on the remote setting.
  void validate(const Tolerances& tol = default_tolerances()) const;

  double site1_marginal(int i, int j, int x_index) const;
  double site2_marginal(int i, int j, int y_index) const;
};

// Correlator E(i, j) = sum_{x,y} x y p_ij(x, y).
double correlator(const BehaviorTable& b, int i, int j);

struct ChshValues {
  // Signed combinations over (E11, E12, E21, E22) with an odd number of minus
  // signs, enumerated by the bitmask (bit 3 -> E11 ... bit 0 -> E22, set bit =
  // minus) in increasing mask order.
  std::array<double, 8> values;
  std::array<int, 8> sign_masks;
  double max_abs;
  int argmax;  // index into values
};

ChshValues chsh_values(const BehaviorTable& b);

struct JpdVerdict {
  bool exists;
  // When a joint distribution exists: 16 weights over outcome quadruples
  // (a1, a2, b1, b2), each coordinate in {+1, -1}, index
  // a1_index*8 + a2_index*4 + b1_index*2 + b2_index.
  std::optional<Eigen::Matrix<double, 16, 1>> witness_distribution;
  // Otherwise: index into chsh.values and the violated value.
  std::optional<std::pair<int, double>> violated;
  ChshValues chsh;
};

// Joint-distribution feasibility over the 16-point outcome lattice, decided by
// a nonnegative least-squares fit with a certified residual (<= tol.feas per
// cell) and cross-checked against the CHSH criterion |S| <= 2; the two methods
// must agree or the call fails loudly.
JpdVerdict jpd_feasible(const BehaviorTable& b, const Tolerances& tol = default_tolerances());

// Behavior of a two-site state under two settings per site. Each observable
// must resolve into exactly two outcome clusters (OutcomeArity otherwise); the
// larger eigenvalue is reported as +1. No-signaling holds by construction.
BehaviorTable behavior_from_quantum(const QuantumState& state,
                                    const Observable& a1, const Observable& a2,
                                    const Observable& b1, const Observable& b2,
                                    const Tolerances& tol = default_tolerances());

}  // namespace janus

#endif  // JANUS_BEHAVIOR_HPP
