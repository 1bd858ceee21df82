#ifndef JANUS_TOLERANCES_HPP
#define JANUS_TOLERANCES_HPP

#include <cmath>

namespace janus {

// Numerical tolerances used across the library. Every operation accepts a
// Tolerances value so callers can override the defaults.
struct Tolerances {
  double herm = 1e-10;      // max|M - M^dagger| for Hermitian inputs
  double proj = 1e-10;      // projector idempotence / orthogonality / completeness
  double norm = 1e-10;      // state normalization and unit trace
  double spectral = 1e-9;   // spectral reconstruction  max|sum_x x E(x) - M|
  double psd = 1e-10;       // density eigenvalues >= -psd
  double schmidt = 1e-12;   // singular values above this count toward Schmidt rank
  double commute = 1e-10;   // max|AB - BA| for compatibility
  double zero_prob = 1e-12; // outcomes below this cannot be conditioned on
  double feas = 1e-9;       // joint-distribution feasibility residual
  double independence = 1e-10;  // product-measure check on classical spaces

  // Relative eigenvalue clustering: eigenvalues closer than
  // cluster(max|eigenvalue|) are merged into one degenerate eigenspace.
  // The same scale is used to match requested outcomes against a spectrum.
  double cluster_rel = 1e-9;
  double cluster(double max_abs_eigenvalue) const {
    return cluster_rel * (1.0 + std::abs(max_abs_eigenvalue));
  }
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace janus

#endif  // JANUS_TOLERANCES_HPP
