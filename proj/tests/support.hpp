#ifndef JANUS_TESTS_SUPPORT_HPP
#define JANUS_TESTS_SUPPORT_HPP

// Deterministic generators and independent brute-force oracles shared by the
// test suites. Everything here stays off the library's implementation paths.

#include <random>
#include <vector>

#include "janus/classical.hpp"
#include "janus/hilbert.hpp"
#include "janus/quantum.hpp"

namespace janus_test {

using Rng = std::mt19937_64;

inline janus::Complex random_complex(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  return {normal(rng), normal(rng)};
}

inline janus::ComplexVector random_pure_vector(int dim, Rng& rng) {
  janus::ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = random_complex(rng);
  v /= v.norm();
  return v;
}

inline janus::ComplexMatrix random_matrix(int rows, int cols, Rng& rng) {
  janus::ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = random_complex(rng);
  return m;
}

inline janus::ComplexMatrix random_hermitian(int dim, Rng& rng) {
  const janus::ComplexMatrix m = random_matrix(dim, dim, rng);
  return 0.5 * (m + m.adjoint().eval());
}

inline janus::ComplexMatrix random_unitary(int dim, Rng& rng) {
  const Eigen::HouseholderQR<janus::ComplexMatrix> qr(random_matrix(dim, dim, rng));
  janus::ComplexMatrix q = qr.householderQ();
  const janus::ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the factorization is unambiguous.
  for (int j = 0; j < dim; ++j) {
    const janus::Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

inline janus::ComplexMatrix random_density(int dim, Rng& rng) {
  const janus::ComplexMatrix b = random_matrix(dim, dim, rng);
  janus::ComplexMatrix rho = b * b.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint().eval());
}

inline janus::QuantumState random_two_site_pure(int d1, int d2, Rng& rng) {
  return janus::QuantumState::pure(random_pure_vector(d1 * d2, rng), {d1, d2});
}

inline janus::QuantumState random_product_state(int d1, int d2, Rng& rng) {
  const janus::ComplexVector psi1 = random_pure_vector(d1, rng);
  const janus::ComplexVector psi2 = random_pure_vector(d2, rng);
  return janus::QuantumState::pure(janus::kron(psi1, psi2), {d1, d2});
}

// Almost every random pure state is entangled; redraw on the rare miss.
inline janus::QuantumState random_entangled_state(int d1, int d2, Rng& rng) {
  for (;;) {
    janus::QuantumState state = random_two_site_pure(d1, d2, rng);
    if (!janus::is_separable_pure(state).separable) return state;
  }
}

inline janus::RealVector random_weights(int n, Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  janus::RealVector w(n);
  for (int i = 0; i < n; ++i) w(i) = uniform(rng) + 1e-6;
  w /= w.sum();
  return w;
}

inline std::vector<std::string> index_labels(const char* prefix, int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::string(prefix) + std::to_string(i));
  return labels;
}

// Independent partial-trace oracle: sandwich with explicit basis kets,
// Tr_2(rho) = sum_k (I (x) <k|) rho (I (x) |k>), and mirrored for site 1.
inline janus::ComplexMatrix partial_trace_oracle(const janus::ComplexMatrix& rho,
                                                 int d1, int d2, int keep) {
  const int dk = keep == 1 ? d1 : d2;
  const int dt = keep == 1 ? d2 : d1;
  janus::ComplexMatrix out = janus::ComplexMatrix::Zero(dk, dk);
  for (int k = 0; k < dt; ++k) {
    janus::ComplexVector basis = janus::ComplexVector::Zero(dt);
    basis(k) = 1.0;
    const janus::ComplexMatrix eye = janus::ComplexMatrix::Identity(dk, dk);
    const janus::ComplexMatrix sandwich =
        keep == 1 ? janus::kron(eye, basis).eval() : janus::kron(basis, eye).eval();
    out += sandwich.adjoint() * rho * sandwich;
  }
  return out;
}

}  // namespace janus_test

#endif  // JANUS_TESTS_SUPPORT_HPP
