#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "janus/behavior.hpp"
#include "janus/harness.hpp"
#include "support.hpp"

using namespace janus;
using janus_test::Rng;

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kTsirelson = 2.0 * std::sqrt(2.0);

BehaviorTable uniform_behavior() {
  BehaviorTable b;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) b.tables[i][j] = Eigen::Matrix2d::Constant(0.25);
  return b;
}

// Local deterministic behavior from a fixed outcome assignment.
BehaviorTable deterministic_behavior(double a1, double a2, double b1, double b2) {
  const double a[2] = {a1, a2};
  const double bb[2] = {b1, b2};
  BehaviorTable behavior;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      behavior.tables[i][j].setZero();
      behavior.tables[i][j](a[i] > 0 ? 0 : 1, bb[j] > 0 ? 0 : 1) = 1.0;
    }
  return behavior;
}

BehaviorTable epr_behavior(double a1, double a2, double b1, double b2,
                           const Tolerances& tol = default_tolerances()) {
  const EPRScenario scenario = EPRScenario::standard(0.0, 0.0);
  return behavior_from_quantum(scenario.state, polarizer_observable(a1),
                               polarizer_observable(a2), polarizer_observable(b1),
                               polarizer_observable(b2), tol);
}

BehaviorTable mix(const BehaviorTable& x, const BehaviorTable& y, double weight_x) {
  BehaviorTable out = x;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.tables[i][j] = weight_x * x.tables[i][j] + (1.0 - weight_x) * y.tables[i][j];
  return out;
}

// Behavior induced by an explicit 16-point joint distribution.
BehaviorTable behavior_from_joint(const Eigen::Matrix<double, 16, 1>& q) {
  BehaviorTable behavior;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      behavior.tables[i][j].setZero();
      for (int col = 0; col < 16; ++col) {
        const int a[2] = {(col >> 3) & 1, (col >> 2) & 1};
        const int b[2] = {(col >> 1) & 1, col & 1};
        behavior.tables[i][j](a[i], b[j]) += q(col);
      }
    }
  return behavior;
}

}  // namespace

TEST_CASE("all CHSH combinations vanish for independent fair coins") {
  const ChshValues chsh = chsh_values(uniform_behavior());
  for (double s : chsh.values) CHECK(std::abs(s) < 1e-12);
}

TEST_CASE("deterministic perfectly correlated tables reach the classical extreme") {
  const ChshValues chsh = chsh_values(deterministic_behavior(+1, +1, +1, +1));
  CHECK(chsh.max_abs == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("the photon pair at the optimal angles reaches 2*sqrt(2)") {
  // Oracle: E(a, b) = cos 2(a-b) by Born-rule enumeration, so the combination
  // E11 - E12 + E21 + E22 evaluates to 4 * (sqrt(2)/2) = 2.8284271247461903.
  const BehaviorTable behavior = epr_behavior(0.0, kPi / 4, kPi / 8, 3 * kPi / 8);
  double expected[2][2];
  const double angles_a[2] = {0.0, kPi / 4};
  const double angles_b[2] = {kPi / 8, 3 * kPi / 8};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      expected[i][j] = std::cos(2.0 * (angles_a[i] - angles_b[j]));
      CHECK(correlator(behavior, i, j) == doctest::Approx(expected[i][j]).epsilon(1e-10));
    }
  const ChshValues chsh = chsh_values(behavior);
  CHECK(chsh.max_abs == doctest::Approx(2.8284271247461903).epsilon(1e-10));
}

TEST_CASE("a product behavior admits a joint distribution") {
  const JpdVerdict verdict = jpd_feasible(uniform_behavior());
  CHECK(verdict.exists);
  REQUIRE(verdict.witness_distribution.has_value());
  const BehaviorTable reproduced = behavior_from_joint(*verdict.witness_distribution);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(max_abs(reproduced.tables[i][j] - uniform_behavior().tables[i][j]) < 1e-9);
}

TEST_CASE("the optimal photon behavior admits no joint distribution") {
  const JpdVerdict verdict = jpd_feasible(epr_behavior(0.0, kPi / 4, kPi / 8, 3 * kPi / 8));
  CHECK(!verdict.exists);
  REQUIRE(verdict.violated.has_value());
  CHECK(std::abs(verdict.violated->second) > 2.0 + 1e-9);
  CHECK(std::abs(verdict.violated->second) ==
        doctest::Approx(2.8284271247461903).epsilon(1e-9));
}

TEST_CASE("a degenerate site-1 setting restores feasibility") {
  // Oracle: with a1 = a2 the correlators satisfy E1j = E2j, so every odd-sign
  // combination telescopes to |E11 + E12 + E11 - E12| <= 2 (and permutations);
  // the CHSH bound cannot be exceeded.
  const double b1 = kPi / 8, b2 = 3 * kPi / 8;
  const double e11 = std::cos(2.0 * (0.4 - b1));
  const double e12 = std::cos(2.0 * (0.4 - b2));
  CHECK(std::abs(e11 + e12 + e11 - e12) <= 2.0 + 1e-12);
  CHECK(std::abs(e11 - e12 + e11 + e12) <= 2.0 + 1e-12);

  const JpdVerdict verdict = jpd_feasible(epr_behavior(0.4, 0.4, b1, b2));
  CHECK(verdict.exists);
}

TEST_CASE("signaling behaviors are rejected") {
  BehaviorTable b = uniform_behavior();
  b.tables[0][0] << 0.6, 0.0, 0.4, 0.0;  // site-1 marginal now depends on j
  CHECK_THROWS_AS(jpd_feasible(b), SignalingBehavior);
}

TEST_CASE("behavior tables must be distributions") {
  BehaviorTable b = uniform_behavior();
  b.tables[1][1](0, 0) = 0.5;  // sums to 1.25
  CHECK_THROWS_AS(b.validate(), Error);
}

TEST_CASE("quantum behaviors from product states are feasible") {
  Rng rng(61);
  for (int round = 0; round < 5; ++round) {
    const QuantumState state = janus_test::random_product_state(2, 2, rng);
    const BehaviorTable behavior = behavior_from_quantum(
        state, Observable(janus_test::random_hermitian(2, rng), "A1"),
        Observable(janus_test::random_hermitian(2, rng), "A2"),
        Observable(janus_test::random_hermitian(2, rng), "B1"),
        Observable(janus_test::random_hermitian(2, rng), "B2"));
    CHECK(jpd_feasible(behavior).exists);
  }
}

TEST_CASE("equal site-1 settings keep quantum behaviors feasible") {
  Rng rng(62);
  for (int round = 0; round < 5; ++round) {
    const QuantumState state = janus_test::random_two_site_pure(2, 2, rng);
    const ComplexMatrix a = janus_test::random_hermitian(2, rng);
    const BehaviorTable behavior = behavior_from_quantum(
        state, Observable(a, "A1"), Observable(a, "A2"),
        Observable(janus_test::random_hermitian(2, rng), "B1"),
        Observable(janus_test::random_hermitian(2, rng), "B2"));
    CHECK(jpd_feasible(behavior).exists);
  }
}

TEST_CASE("observables with more than two outcome clusters are rejected") {
  Rng rng(63);
  const QuantumState state = janus_test::random_two_site_pure(3, 2, rng);
  ComplexMatrix three = ComplexMatrix::Zero(3, 3);
  three.diagonal() << 1.0, 2.0, 3.0;
  CHECK_THROWS_AS(
      behavior_from_quantum(state, Observable(three, "A1"), Observable(three, "A2"),
                            Observable(janus_test::random_hermitian(2, rng), "B1"),
                            Observable(janus_test::random_hermitian(2, rng), "B2")),
      OutcomeArity);
}

TEST_CASE("no-signaling holds by construction for quantum behaviors") {
  Rng rng(64);
  const QuantumState state = janus_test::random_two_site_pure(2, 2, rng);
  const BehaviorTable behavior = behavior_from_quantum(
      state, Observable(janus_test::random_hermitian(2, rng), "A1"),
      Observable(janus_test::random_hermitian(2, rng), "A2"),
      Observable(janus_test::random_hermitian(2, rng), "B1"),
      Observable(janus_test::random_hermitian(2, rng), "B2"));
  for (int i = 0; i < 2; ++i)
    for (int x = 0; x < 2; ++x)
      CHECK(std::abs(behavior.site1_marginal(i, 0, x) - behavior.site1_marginal(i, 1, x)) <
            1e-10);
}

TEST_CASE("feasibility search and the CHSH criterion agree on random behaviors") {
  Rng rng(65);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  int infeasible_seen = 0;
  for (int round = 0; round < 300; ++round) {
    // Random mixtures of local deterministic vertices and a quantum behavior.
    const BehaviorTable quantum = epr_behavior(uniform(rng) * kPi, uniform(rng) * kPi,
                                               uniform(rng) * kPi, uniform(rng) * kPi);
    const BehaviorTable local = deterministic_behavior(
        uniform(rng) < 0.5 ? 1 : -1, uniform(rng) < 0.5 ? 1 : -1,
        uniform(rng) < 0.5 ? 1 : -1, uniform(rng) < 0.5 ? 1 : -1);
    const BehaviorTable candidate = mix(quantum, local, uniform(rng));
    const JpdVerdict verdict = jpd_feasible(candidate);  // throws on disagreement
    const bool fine = verdict.chsh.max_abs <= 2.0 + 1e-9;
    CHECK(verdict.exists == fine);
    if (!verdict.exists) ++infeasible_seen;
  }
  CHECK(infeasible_seen > 0);  // the mixture family straddles the boundary
}

TEST_CASE("quantum behaviors respect the Tsirelson bound") {
  Rng rng(66);
  for (int round = 0; round < 50; ++round) {
    const QuantumState state = janus_test::random_two_site_pure(2, 2, rng);
    const BehaviorTable behavior = behavior_from_quantum(
        state, Observable(janus_test::random_hermitian(2, rng), "A1"),
        Observable(janus_test::random_hermitian(2, rng), "A2"),
        Observable(janus_test::random_hermitian(2, rng), "B1"),
        Observable(janus_test::random_hermitian(2, rng), "B2"));
    CHECK(chsh_values(behavior).max_abs <= kTsirelson + 1e-9);
  }
}

TEST_CASE("behaviors built from explicit joint distributions are always feasible") {
  Rng rng(67);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int round = 0; round < 50; ++round) {
    Eigen::Matrix<double, 16, 1> q;
    for (int i = 0; i < 16; ++i) q(i) = uniform(rng);
    q /= q.sum();
    const BehaviorTable behavior = behavior_from_joint(q);
    const JpdVerdict verdict = jpd_feasible(behavior);
    CHECK(verdict.exists);
    REQUIRE(verdict.witness_distribution.has_value());
    const BehaviorTable reproduced = behavior_from_joint(*verdict.witness_distribution);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(max_abs(reproduced.tables[i][j] - behavior.tables[i][j]) <= 1e-9);
  }
}

TEST_CASE("embedded compatible configurations always admit a joint distribution") {
  Rng rng(68);
  for (int round = 0; round < 5; ++round) {
    // Site-1 settings are functions of one observable, hence compatible.
    const ComplexMatrix u = janus_test::random_unitary(2, rng);
    ComplexMatrix fd = ComplexMatrix::Zero(2, 2), gd = ComplexMatrix::Zero(2, 2);
    fd.diagonal() << 1.0, 2.0;
    gd.diagonal() << -1.0, 4.0;
    const Observable a1((u * fd * u.adjoint()).eval(), "A1");
    const Observable a2((u * gd * u.adjoint()).eval(), "A2");
    REQUIRE(compatible(a1, a2));

    const QuantumState state = janus_test::random_two_site_pure(2, 2, rng);
    const BehaviorTable behavior = behavior_from_quantum(
        state, a1, a2, Observable(janus_test::random_hermitian(2, rng), "B1"),
        Observable(janus_test::random_hermitian(2, rng), "B2"));
    CHECK(jpd_feasible(behavior).exists);
  }
}
