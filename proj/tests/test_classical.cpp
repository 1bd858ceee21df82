#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "janus/classical.hpp"
#include "support.hpp"

using namespace janus;
using janus_test::Rng;

namespace {

// Perfect-correlation measure on {0,1} x {0,1}: P(00) = P(11) = 1/2.
FiniteProbSpace correlated_space() {
  RealMatrix w(2, 2);
  w << 0.5, 0.0, 0.0, 0.5;
  return FiniteProbSpace::site_structured({"0", "1"}, {"0", "1"}, w);
}

RandomVariable first_bit(const FiniteProbSpace& space) {
  RealVector values(2);
  values << 0.0, 1.0;
  return RandomVariable::on_site(space, 1, "A", values);
}

RandomVariable second_bit(const FiniteProbSpace& space) {
  RealVector values(2);
  values << 0.0, 1.0;
  return RandomVariable::on_site(space, 2, "B", values);
}

FiniteProbSpace random_structured_space(int n1, int n2, Rng& rng) {
  RealMatrix w(n1, n2);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) w(i, j) = uniform(rng) + 1e-6;
  w /= w.sum();
  return FiniteProbSpace::site_structured(janus_test::index_labels("a", n1),
                                          janus_test::index_labels("b", n2), w);
}

}  // namespace

TEST_CASE("conditioning the perfect-correlation measure") {
  const FiniteProbSpace space = correlated_space();
  const FiniteProbSpace conditioned = bayes_condition(space, first_bit(space), 0.0);
  CHECK(conditioned.weight(0) == doctest::Approx(1.0));  // atom (0,0)
  CHECK(conditioned.weight(3) == doctest::Approx(0.0));
  CHECK(conditioned.weights().sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("conditioning on a constant full-support variable changes nothing") {
  Rng rng(5);
  const FiniteProbSpace space(janus_test::index_labels("w", 4),
                              janus_test::random_weights(4, rng));
  const RandomVariable constant("c", RealVector::Constant(4, 7.0));
  const FiniteProbSpace conditioned = bayes_condition(space, constant, 7.0);
  CHECK(max_abs(conditioned.weights() - space.weights()) < 1e-14);
}

TEST_CASE("conditioning on a null event fails") {
  const FiniteProbSpace space = correlated_space();
  RealVector values(4);
  values << 0, 1, 1, 0;  // parity: value 1 has probability 0 here
  const RandomVariable parity("parity", values);
  CHECK_THROWS_AS(bayes_condition(space, parity, 1.0), ZeroProbabilityOutcome);
}

TEST_CASE("probability of a first-bit value on the uniform space") {
  RealMatrix w = RealMatrix::Constant(2, 2, 0.25);
  const FiniteProbSpace space = FiniteProbSpace::site_structured({"0", "1"}, {"0", "1"}, w);
  CHECK(probability(space, first_bit(space), 0.0) == doctest::Approx(0.5));
}

TEST_CASE("point mass turns probability into an indicator") {
  RealVector w(3);
  w << 0.0, 1.0, 0.0;
  const FiniteProbSpace space(janus_test::index_labels("w", 3), w);
  RealVector values(3);
  values << 4.0, 5.0, 6.0;
  const RandomVariable rv("rv", values);
  CHECK(probability(space, rv, 5.0) == doctest::Approx(1.0));
  CHECK(probability(space, rv, 4.0) == doctest::Approx(0.0));
}

TEST_CASE("probability agrees with the exhaustive-sum oracle") {
  Rng rng(6);
  for (int round = 0; round < 20; ++round) {
    const int n = 8;
    const FiniteProbSpace space(janus_test::index_labels("w", n),
                                janus_test::random_weights(n, rng));
    RealVector values(n);
    std::uniform_int_distribution<int> value_of(0, 2);
    for (int i = 0; i < n; ++i) values(i) = static_cast<double>(value_of(rng));
    const RandomVariable rv("rv", values);
    for (double v : {0.0, 1.0, 2.0}) {
      double oracle = 0.0;
      for (int i = 0; i < n; ++i)
        if (values(i) == v) oracle += space.weight(i);
      CHECK(probability(space, rv, v) == doctest::Approx(oracle).epsilon(1e-14));
    }
  }
}

TEST_CASE("product of two fair coins is uniform") {
  const RealVector half = RealVector::Constant(2, 0.5);
  const FiniteProbSpace coin1({"h", "t"}, half);
  const FiniteProbSpace coin2({"h", "t"}, half);
  const FiniteProbSpace product = product_space(coin1, coin2);
  CHECK(product.size() == 4);
  for (int w = 0; w < 4; ++w) CHECK(product.weight(w) == doctest::Approx(0.25));
  CHECK(is_separable(product));
}

TEST_CASE("product with a point mass relabels the other factor") {
  RealVector point(2);
  point << 1.0, 0.0;
  Rng rng(7);
  const RealVector w = janus_test::random_weights(3, rng);
  const FiniteProbSpace mass({"x", "y"}, point);
  const FiniteProbSpace other(janus_test::index_labels("o", 3), w);
  const FiniteProbSpace product = product_space(mass, other);
  const FiniteProbSpace m2 = marginal(product, 2);
  CHECK(max_abs(m2.weights() - w) < 1e-14);
}

TEST_CASE("marginals of a product recover the factors") {
  Rng rng(8);
  const FiniteProbSpace s1(janus_test::index_labels("a", 3), janus_test::random_weights(3, rng));
  const FiniteProbSpace s2(janus_test::index_labels("b", 4), janus_test::random_weights(4, rng));
  const FiniteProbSpace product = product_space(s1, s2);
  CHECK(max_abs(marginal(product, 1).weights() - s1.weights()) < 1e-14);
  CHECK(max_abs(marginal(product, 2).weights() - s2.weights()) < 1e-14);
}

TEST_CASE("marginals of the perfect-correlation measure are fair coins") {
  const FiniteProbSpace space = correlated_space();
  for (int site : {1, 2}) {
    const FiniteProbSpace m = marginal(space, site);
    CHECK(m.weight(0) == doctest::Approx(0.5));
    CHECK(m.weight(1) == doctest::Approx(0.5));
  }
}

TEST_CASE("marginal agrees with the summation oracle") {
  Rng rng(9);
  const FiniteProbSpace space = random_structured_space(3, 5, rng);
  const RealMatrix w = space.weight_matrix();
  const FiniteProbSpace m1 = marginal(space, 1);
  for (int i = 0; i < 3; ++i) {
    double oracle = 0.0;
    for (int j = 0; j < 5; ++j) oracle += w(i, j);
    CHECK(m1.weight(i) == doctest::Approx(oracle).epsilon(1e-14));
  }
}

TEST_CASE("separability of products and correlated measures") {
  Rng rng(10);
  const FiniteProbSpace s1(janus_test::index_labels("a", 2), janus_test::random_weights(2, rng));
  const FiniteProbSpace s2(janus_test::index_labels("b", 3), janus_test::random_weights(3, rng));
  CHECK(is_separable(product_space(s1, s2)));
  CHECK(!is_separable(correlated_space()));
}

TEST_CASE("a faint admixture of correlation already breaks separability") {
  // 0.999 * uniform product + 0.001 * perfect correlation. Oracle: check the
  // product rule directly on the mixed weights.
  RealMatrix w = RealMatrix::Constant(2, 2, 0.25 * 0.999);
  w(0, 0) += 0.001 * 0.5;
  w(1, 1) += 0.001 * 0.5;
  const FiniteProbSpace space = FiniteProbSpace::site_structured({"0", "1"}, {"0", "1"}, w);

  const RealVector row = w.rowwise().sum();
  const RealVector col = w.colwise().sum().transpose();
  double oracle_defect = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      oracle_defect = std::max(oracle_defect, std::abs(w(i, j) - row(i) * col(j)));
  CHECK(oracle_defect > 1e-10);
  CHECK(!is_separable(space));
}

TEST_CASE("conditional probabilities on separable and correlated spaces") {
  Rng rng(11);
  const FiniteProbSpace s1(janus_test::index_labels("a", 2), janus_test::random_weights(2, rng));
  const FiniteProbSpace s2(janus_test::index_labels("b", 2), janus_test::random_weights(2, rng));
  const FiniteProbSpace product = product_space(s1, s2);

  RealVector bits(2);
  bits << 0.0, 1.0;
  const RandomVariable a = RandomVariable::on_site(product, 1, "A", bits);
  const RandomVariable b = RandomVariable::on_site(product, 2, "B", bits);
  for (double x : {0.0, 1.0})
    for (double y : {0.0, 1.0})
      CHECK(conditional_probability_classical(product, a, x, b, y) ==
            doctest::Approx(probability(product, b, y)).epsilon(1e-12));

  const FiniteProbSpace correlated = correlated_space();
  const RandomVariable ca = first_bit(correlated);
  const RandomVariable cb = second_bit(correlated);
  CHECK(conditional_probability_classical(correlated, ca, 0.0, cb, 0.0) ==
        doctest::Approx(1.0));
  CHECK(probability(correlated, cb, 0.0) == doctest::Approx(0.5));
}

TEST_CASE("conditional equals the joint/marginal ratio oracle") {
  Rng rng(12);
  for (int round = 0; round < 20; ++round) {
    const FiniteProbSpace space = random_structured_space(3, 3, rng);
    RealVector v1(3), v2(3);
    v1 << 0, 1, 2;
    v2 << 0, 1, 2;
    const RandomVariable a = RandomVariable::on_site(space, 1, "A", v1);
    const RandomVariable b = RandomVariable::on_site(space, 2, "B", v2);
    const RealMatrix w = space.weight_matrix();
    for (int x = 0; x < 3; ++x) {
      const double px = w.row(x).sum();
      for (int y = 0; y < 3; ++y) {
        const double ratio = w(x, y) / px;
        CHECK(std::abs(conditional_probability_classical(space, a, x, b, y) - ratio) <
              1e-12);
      }
    }
  }
}

TEST_CASE("conditioning twice is idempotent") {
  const FiniteProbSpace space = correlated_space();
  const RandomVariable a = first_bit(space);
  const FiniteProbSpace once = bayes_condition(space, a, 0.0);
  const FiniteProbSpace twice = bayes_condition(once, first_bit(once), 0.0);
  CHECK(max_abs(once.weights() - twice.weights()) < 1e-14);
}

TEST_CASE("law of total probability") {
  Rng rng(13);
  for (int round = 0; round < 20; ++round) {
    const FiniteProbSpace space = random_structured_space(3, 4, rng);
    RealVector v1(3), v2(4);
    v1 << 0, 1, 2;
    v2 << 0, 1, 2, 3;
    const RandomVariable a = RandomVariable::on_site(space, 1, "A", v1);
    const RandomVariable b = RandomVariable::on_site(space, 2, "B", v2);
    for (double y : {0.0, 1.0, 2.0, 3.0}) {
      double total = 0.0;
      for (double x : {0.0, 1.0, 2.0}) {
        const double px = probability(space, a, x);
        if (px <= 1e-12) continue;
        total += px * conditional_probability_classical(space, a, x, b, y);
      }
      CHECK(std::abs(total - probability(space, b, y)) < 1e-12);
    }
  }
}

TEST_CASE("separable spaces are conditionally invariant for every site pair") {
  Rng rng(14);
  for (int round = 0; round < 20; ++round) {
    const FiniteProbSpace s1(janus_test::index_labels("a", 3),
                             janus_test::random_weights(3, rng));
    const FiniteProbSpace s2(janus_test::index_labels("b", 3),
                             janus_test::random_weights(3, rng));
    const FiniteProbSpace product = product_space(s1, s2);
    RealVector v(3);
    v << 0, 1, 2;
    const RandomVariable a = RandomVariable::on_site(product, 1, "A", v);
    const RandomVariable b = RandomVariable::on_site(product, 2, "B", v);
    for (double x : {0.0, 1.0, 2.0})
      for (double y : {0.0, 1.0, 2.0})
        CHECK(std::abs(conditional_probability_classical(product, a, x, b, y) -
                       probability(product, b, y)) < 1e-12);
  }
}

TEST_CASE("marginals after conditioning") {
  Rng rng(15);
  // Separable: marginals coincide with the originals.
  const FiniteProbSpace s1(janus_test::index_labels("a", 2), janus_test::random_weights(2, rng));
  const FiniteProbSpace s2(janus_test::index_labels("b", 2), janus_test::random_weights(2, rng));
  const FiniteProbSpace product = product_space(s1, s2);
  RealVector bits(2);
  bits << 0.0, 1.0;
  const RandomVariable a = RandomVariable::on_site(product, 1, "A", bits);
  const FiniteProbSpace conditioned = bayes_condition(product, a, 0.0);
  CHECK(max_abs(marginal(conditioned, 2).weights() - marginal(product, 2).weights()) <
        1e-12);

  // Perfect correlation: the site-2 marginal moves by total variation 1/2.
  const FiniteProbSpace correlated = correlated_space();
  const FiniteProbSpace cond = bayes_condition(correlated, first_bit(correlated), 0.0);
  const RealVector before = marginal(correlated, 2).weights();
  const RealVector after = marginal(cond, 2).weights();
  const double tv = 0.5 * (before - after).cwiseAbs().sum();
  CHECK(tv == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("site structure is required where promised") {
  Rng rng(16);
  const FiniteProbSpace flat(janus_test::index_labels("w", 4),
                             janus_test::random_weights(4, rng));
  CHECK_THROWS_AS(marginal(flat, 1), NotSiteStructured);
  CHECK_THROWS_AS(is_separable(flat), NotSiteStructured);
}

TEST_CASE("weight validation") {
  RealVector bad(2);
  bad << 0.7, 0.7;
  CHECK_THROWS_AS(FiniteProbSpace({"a", "b"}, bad), Error);
  RealVector negative(2);
  negative << 1.5, -0.5;
  CHECK_THROWS_AS(FiniteProbSpace({"a", "b"}, negative), Error);
}
