#include "janus/classical.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "janus/hilbert.hpp"

namespace janus {

namespace {

constexpr int kMaxAtoms = 4096;

bool value_matches(double lhs, double rhs, const Tolerances& tol) {
  return std::abs(lhs - rhs) <= tol.cluster(std::max(std::abs(lhs), std::abs(rhs)));
}

void check_weights(const RealVector& weights, const Tolerances& tol) {
  if (weights.size() < 1) throw Error("probability space needs at least one atom");
  if (weights.size() > kMaxAtoms)
    throw Error("sample space exceeds the " + std::to_string(kMaxAtoms) + "-atom cap");
  if (weights.minCoeff() < 0.0)
    throw Error("probability weights must be nonnegative");
  if (std::abs(weights.sum() - 1.0) > 1e-12)
    throw Error("probability weights sum to " + std::to_string(weights.sum()) +
                ", expected 1");
  (void)tol;
}

}  // namespace

FiniteProbSpace::FiniteProbSpace(std::vector<std::string> atoms, RealVector weights,
                                 const Tolerances& tol)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (static_cast<int>(atoms_.size()) != weights_.size())
    throw Error("atom labels and weights disagree in length");
  check_weights(weights_, tol);
}

FiniteProbSpace FiniteProbSpace::site_structured(std::vector<std::string> site1_labels,
                                                 std::vector<std::string> site2_labels,
                                                 RealMatrix weights,
                                                 const Tolerances& tol) {
  const int n1 = static_cast<int>(site1_labels.size());
  const int n2 = static_cast<int>(site2_labels.size());
  if (weights.rows() != n1 || weights.cols() != n2)
    throw Error("weight matrix shape does not match site label counts");

  std::vector<std::string> atoms;
  atoms.reserve(static_cast<size_t>(n1) * n2);
  RealVector flat(static_cast<Eigen::Index>(n1) * n2);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      atoms.push_back("(" + site1_labels[i] + "," + site2_labels[j] + ")");
      flat(i * n2 + j) = weights(i, j);
    }

  FiniteProbSpace space(std::move(atoms), std::move(flat), tol);
  space.site1_labels_ = std::move(site1_labels);
  space.site2_labels_ = std::move(site2_labels);
  return space;
}

const std::vector<std::string>& FiniteProbSpace::site1_labels() const {
  if (!has_site_structure())
    throw NotSiteStructured("space has no site factorization");
  return *site1_labels_;
}

const std::vector<std::string>& FiniteProbSpace::site2_labels() const {
  if (!has_site_structure())
    throw NotSiteStructured("space has no site factorization");
  return *site2_labels_;
}

RealMatrix FiniteProbSpace::weight_matrix() const {
  const int n1 = static_cast<int>(site1_labels().size());
  const int n2 = static_cast<int>(site2_labels().size());
  RealMatrix m(n1, n2);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) m(i, j) = weights_(i * n2 + j);
  return m;
}

RandomVariable::RandomVariable(std::string label, RealVector values)
    : label_(std::move(label)), values_(std::move(values)) {
  if (values_.size() < 1) throw Error("random variable must be total");
}

RandomVariable RandomVariable::on_site(const FiniteProbSpace& space, int site,
                                       std::string label, const RealVector& site_values) {
  const int n1 = static_cast<int>(space.site1_labels().size());
  const int n2 = static_cast<int>(space.site2_labels().size());
  if (site != 1 && site != 2) throw SiteMismatch("site must be 1 or 2");
  if ((site == 1 && site_values.size() != n1) ||
      (site == 2 && site_values.size() != n2))
    throw DimensionMismatch("site value table does not match site label count");

  RealVector values(space.size());
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      values(i * n2 + j) = (site == 1) ? site_values(i) : site_values(j);
  return RandomVariable(std::move(label), std::move(values));
}

std::vector<double> RandomVariable::range() const {
  std::set<double> distinct(values_.begin(), values_.end());
  return {distinct.begin(), distinct.end()};
}

double probability(const FiniteProbSpace& space, const RandomVariable& rv, double value,
                   const Tolerances& tol) {
  if (rv.size() != space.size())
    throw DimensionMismatch("random variable is not aligned with the space");
  double p = 0.0;
  for (int w = 0; w < space.size(); ++w)
    if (value_matches(rv(w), value, tol)) p += space.weight(w);
  return std::clamp(p, 0.0, 1.0);
}

FiniteProbSpace bayes_condition(const FiniteProbSpace& space, const RandomVariable& rv,
                                double value, const Tolerances& tol) {
  const double p = probability(space, rv, value, tol);
  if (p <= tol.zero_prob)
    throw ZeroProbabilityOutcome("zero-probability outcome: cannot condition on " +
                                 rv.label() + " = " + std::to_string(value) +
                                 " (p = " + std::to_string(p) + ")");
  RealVector updated = RealVector::Zero(space.size());
  for (int w = 0; w < space.size(); ++w)
    if (value_matches(rv(w), value, tol)) updated(w) = space.weight(w) / p;
  // Rescaling leaves a roundoff-sized mass defect; renormalize exactly.
  updated /= updated.sum();

  if (space.has_site_structure()) {
    const int n2 = static_cast<int>(space.site2_labels().size());
    RealMatrix m(space.site1_labels().size(), n2);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < n2; ++j) m(i, j) = updated(i * n2 + j);
    return FiniteProbSpace::site_structured(space.site1_labels(), space.site2_labels(),
                                            std::move(m), tol);
  }
  return FiniteProbSpace(space.atoms(), std::move(updated), tol);
}

FiniteProbSpace product_space(const FiniteProbSpace& s1, const FiniteProbSpace& s2,
                              const Tolerances& tol) {
  RealMatrix weights = s1.weights() * s2.weights().transpose();
  return FiniteProbSpace::site_structured(s1.atoms(), s2.atoms(), std::move(weights), tol);
}

FiniteProbSpace marginal(const FiniteProbSpace& space, int site, const Tolerances& tol) {
  const RealMatrix m = space.weight_matrix();
  if (site == 1) return FiniteProbSpace(space.site1_labels(), m.rowwise().sum(), tol);
  if (site == 2)
    return FiniteProbSpace(space.site2_labels(), m.colwise().sum().transpose(), tol);
  throw SiteMismatch("site must be 1 or 2");
}

bool is_separable(const FiniteProbSpace& space, const Tolerances& tol) {
  const RealMatrix m = space.weight_matrix();
  const RealVector row = m.rowwise().sum();
  const RealVector col = m.colwise().sum();
  return max_abs(m - row * col.transpose()) <= tol.independence;
}

double conditional_probability_classical(const FiniteProbSpace& space,
                                         const RandomVariable& first, double first_value,
                                         const RandomVariable& second, double second_value,
                                         const Tolerances& tol) {
  const FiniteProbSpace conditioned = bayes_condition(space, first, first_value, tol);
  return probability(conditioned, second, second_value, tol);
}

}  // namespace janus
