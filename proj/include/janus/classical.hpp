#ifndef JANUS_CLASSICAL_HPP
#define JANUS_CLASSICAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "janus/errors.hpp"
#include "janus/tolerances.hpp"
#include "janus/types.hpp"

namespace janus {

// Finite sample space with probability weights. Events are handled implicitly
// as level sets of random variables, so no explicit sigma-algebra is stored.
// A site-structured space is a Cartesian product Omega1 x Omega2 whose atoms
// are ordered pairs laid out row-major (atom (i,j) at index i*n2 + j).
class FiniteProbSpace {
 public:
  FiniteProbSpace(std::vector<std::string> atoms, RealVector weights,
                  const Tolerances& tol = default_tolerances());

  static FiniteProbSpace site_structured(std::vector<std::string> site1_labels,
                                         std::vector<std::string> site2_labels,
                                         RealMatrix weights,
                                         const Tolerances& tol = default_tolerances());

  int size() const { return static_cast<int>(atoms_.size()); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const RealVector& weights() const { return weights_; }
  double weight(int atom) const { return weights_(atom); }

  bool has_site_structure() const { return site1_labels_.has_value(); }
  const std::vector<std::string>& site1_labels() const;
  const std::vector<std::string>& site2_labels() const;
  // Weights reshaped as an n1 x n2 matrix; NotSiteStructured otherwise.
  RealMatrix weight_matrix() const;

 private:
  std::vector<std::string> atoms_;
  RealVector weights_;
  std::optional<std::vector<std::string>> site1_labels_;
  std::optional<std::vector<std::string>> site2_labels_;
};

// Total map atoms -> R, stored aligned with a space's atom ordering.
class RandomVariable {
 public:
  RandomVariable(std::string label, RealVector values);

  // Lift a per-site map onto a site-structured space: the value at atom (i,j)
  // is site_values[i] (site 1) or site_values[j] (site 2).
  static RandomVariable on_site(const FiniteProbSpace& space, int site,
                                std::string label, const RealVector& site_values);

  const std::string& label() const { return label_; }
  int size() const { return static_cast<int>(values_.size()); }
  double operator()(int atom) const { return values_(atom); }
  const RealVector& values() const { return values_; }

  // Distinct values, increasing.
  std::vector<double> range() const;

 private:
  std::string label_;
  RealVector values_;
};

// P(rv = value): sum of weights over the level set. Values match within the
// same relative tolerance used for spectrum outcomes.
double probability(const FiniteProbSpace& space, const RandomVariable& rv, double value,
                   const Tolerances& tol = default_tolerances());

// Bayes update P -> P_{rv=value}: weights on the level set rescaled by
// 1/P(rv=value), all other atoms set to zero. ZeroProbabilityOutcome when the
// level set carries probability <= zero_prob.
FiniteProbSpace bayes_condition(const FiniteProbSpace& space, const RandomVariable& rv,
                                double value, const Tolerances& tol = default_tolerances());

// Product measure: weight(w1, w2) = w1(omega1) * w2(omega2), site-structured.
FiniteProbSpace product_space(const FiniteProbSpace& s1, const FiniteProbSpace& s2,
                              const Tolerances& tol = default_tolerances());

// Row/column sums of a site-structured space.
FiniteProbSpace marginal(const FiniteProbSpace& space, int site,
                         const Tolerances& tol = default_tolerances());

// Independence of the two site coordinates: every weight equals the product of
// its marginals within tol.independence.
bool is_separable(const FiniteProbSpace& space,
                  const Tolerances& tol = default_tolerances());

// P(second = y | first = x) via Bayes conditioning; equals the joint/marginal
// ratio.
double conditional_probability_classical(const FiniteProbSpace& space,
                                         const RandomVariable& first, double first_value,
                                         const RandomVariable& second, double second_value,
                                         const Tolerances& tol = default_tolerances());

}  // namespace janus

#endif  // JANUS_CLASSICAL_HPP
