#include "janus/behavior.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace janus {

namespace {

constexpr double kTableSumTol = 1e-10;
constexpr double kNoSignalingTol = 1e-8;

// Lawson-Hanson nonnegative least squares: min ||A x - b|| with x >= 0.
// Small and dense (16 unknowns here); the caller certifies the residual.
RealVector nnls(const RealMatrix& A, const RealVector& b) {
  const int n = static_cast<int>(A.cols());
  std::vector<bool> passive(n, false);
  RealVector x = RealVector::Zero(n);

  auto solve_passive = [&](std::vector<int>& indices) -> RealVector {
    indices.clear();
    for (int i = 0; i < n; ++i)
      if (passive[i]) indices.push_back(i);
    RealMatrix Ap(A.rows(), indices.size());
    for (size_t k = 0; k < indices.size(); ++k) Ap.col(k) = A.col(indices[k]);
    return Ap.completeOrthogonalDecomposition().solve(b);
  };

  const double gradient_tol = 1e-12;
  const int max_outer = 8 * n;
  std::vector<int> indices;

  for (int outer = 0; outer < max_outer; ++outer) {
    const RealVector gradient = A.transpose() * (b - A * x);
    int candidate = -1;
    double best = gradient_tol;
    for (int i = 0; i < n; ++i) {
      if (!passive[i] && gradient(i) > best) {
        best = gradient(i);
        candidate = i;
      }
    }
    if (candidate < 0) break;
    passive[candidate] = true;

    for (int inner = 0; inner < max_outer; ++inner) {
      RealVector z = solve_passive(indices);
      double min_z = indices.empty() ? 1.0 : 1e300;
      for (size_t k = 0; k < indices.size(); ++k) min_z = std::min(min_z, z(k));
      if (min_z > 0.0) {
        x.setZero();
        for (size_t k = 0; k < indices.size(); ++k) x(indices[k]) = z(k);
        break;
      }
      // Step back to the boundary and drop the variables that hit zero.
      double alpha = 1e300;
      for (size_t k = 0; k < indices.size(); ++k)
        if (z(k) <= 0.0)
          alpha = std::min(alpha, x(indices[k]) / (x(indices[k]) - z(k)));
      for (size_t k = 0; k < indices.size(); ++k) {
        const int i = indices[k];
        x(i) += alpha * (z(k) - x(i));
        if (x(i) <= 1e-14) {
          x(i) = 0.0;
          passive[i] = false;
        }
      }
    }
  }
  return x;
}

}  // namespace

void BehaviorTable::validate(const Tolerances& tol) const {
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Eigen::Matrix2d& t = tables[i][j];
      if (t.minCoeff() < -kTableSumTol)
        throw Error("behavior table " + site1_settings[i] + "," + site2_settings[j] +
                    " has a negative probability");
      if (std::abs(t.sum() - 1.0) > kTableSumTol)
        throw Error("behavior table " + site1_settings[i] + "," + site2_settings[j] +
                    " sums to " + std::to_string(t.sum()));
    }
  }
  for (int i = 0; i < 2; ++i)
    for (int x = 0; x < 2; ++x)
      if (std::abs(site1_marginal(i, 0, x) - site1_marginal(i, 1, x)) > kNoSignalingTol)
        throw SignalingBehavior("site-1 marginal of setting " + site1_settings[i] +
                                " depends on the site-2 setting");
  for (int j = 0; j < 2; ++j)
    for (int y = 0; y < 2; ++y)
      if (std::abs(site2_marginal(0, j, y) - site2_marginal(1, j, y)) > kNoSignalingTol)
        throw SignalingBehavior("site-2 marginal of setting " + site2_settings[j] +
                                " depends on the site-1 setting");
  (void)tol;
}

double BehaviorTable::site1_marginal(int i, int j, int x_index) const {
  return tables[i][j](x_index, 0) + tables[i][j](x_index, 1);
}

double BehaviorTable::site2_marginal(int i, int j, int y_index) const {
  return tables[i][j](0, y_index) + tables[i][j](1, y_index);
}

double correlator(const BehaviorTable& b, int i, int j) {
  double e = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      e += BehaviorTable::outcome_of(x) * BehaviorTable::outcome_of(y) *
           b.tables[i][j](x, y);
  return e;
}

ChshValues chsh_values(const BehaviorTable& b) {
  const double e[4] = {correlator(b, 0, 0), correlator(b, 0, 1),
                       correlator(b, 1, 0), correlator(b, 1, 1)};
  ChshValues out{};
  int k = 0;
  for (int mask = 0; mask < 16; ++mask) {
    if (__builtin_popcount(mask) % 2 == 0) continue;
    double s = 0.0;
    for (int bit = 0; bit < 4; ++bit) {
      const double sign = (mask >> (3 - bit)) & 1 ? -1.0 : 1.0;
      s += sign * e[bit];
    }
    out.values[k] = s;
    out.sign_masks[k] = mask;
    ++k;
  }
  out.argmax = 0;
  for (int i = 1; i < 8; ++i)
    if (std::abs(out.values[i]) > std::abs(out.values[out.argmax])) out.argmax = i;
  out.max_abs = std::abs(out.values[out.argmax]);
  return out;
}

JpdVerdict jpd_feasible(const BehaviorTable& b, const Tolerances& tol) {
  b.validate(tol);

  // Constraint system over q(a1, a2, b1, b2): one row per observed cell, one
  // normalization row. Columns indexed a1*8 + a2*4 + b1*2 + b2.
  RealMatrix A = RealMatrix::Zero(17, 16);
  RealVector target(17);
  int row = 0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          for (int col = 0; col < 16; ++col) {
            const int a[2] = {(col >> 3) & 1, (col >> 2) & 1};
            const int bb[2] = {(col >> 1) & 1, col & 1};
            if (a[i] == x && bb[j] == y) A(row, col) = 1.0;
          }
          target(row) = b.tables[i][j](x, y);
          ++row;
        }
      }
    }
  }
  A.row(16).setOnes();
  target(16) = 1.0;

  const RealVector q = nnls(A, target);
  const double residual = (A.topRows(16) * q - target.head(16)).cwiseAbs().maxCoeff();
  const bool feasible = residual <= tol.feas;

  JpdVerdict verdict{};
  verdict.chsh = chsh_values(b);
  const bool within_fine_bound = verdict.chsh.max_abs <= 2.0 + tol.feas;

  if (feasible != within_fine_bound)
    throw Error("feasibility search and CHSH criterion disagree (residual " +
                std::to_string(residual) + ", max |S| " +
                std::to_string(verdict.chsh.max_abs) + ")");

  verdict.exists = feasible;
  if (feasible)
    verdict.witness_distribution = q;
  else
    verdict.violated = {verdict.chsh.argmax, verdict.chsh.values[verdict.chsh.argmax]};
  return verdict;
}

BehaviorTable behavior_from_quantum(const QuantumState& state,
                                    const Observable& a1, const Observable& a2,
                                    const Observable& b1, const Observable& b2,
                                    const Tolerances& tol) {
  const Observable* site1[2] = {&a1, &a2};
  const Observable* site2[2] = {&b1, &b2};
  for (const Observable* obs : {&a1, &a2, &b1, &b2})
    if (obs->spectrum().size() != 2)
      throw OutcomeArity("observable " + obs->label() + " has " +
                         std::to_string(obs->spectrum().size()) +
                         " outcome clusters, need exactly 2");

  BehaviorTable behavior;
  for (int i = 0; i < 2; ++i)
    if (!site1[i]->label().empty()) behavior.site1_settings[i] = site1[i]->label();
  for (int j = 0; j < 2; ++j)
    if (!site2[j]->label().empty()) behavior.site2_settings[j] = site2[j]->label();

  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const JointDistribution joint = joint_distribution(state, *site1[i], *site2[j], tol);
      // joint cells are lexicographic with increasing eigenvalues; index 0 of a
      // behavior table is the larger eigenvalue (+1 channel).
      behavior.tables[i][j](0, 0) = joint.cells[3].probability;
      behavior.tables[i][j](0, 1) = joint.cells[2].probability;
      behavior.tables[i][j](1, 0) = joint.cells[1].probability;
      behavior.tables[i][j](1, 1) = joint.cells[0].probability;
    }
  }
  behavior.validate(tol);
  return behavior;
}

}  // namespace janus
