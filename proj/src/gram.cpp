#include "postselect/gram.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "postselect/error.hpp"

namespace postselect {

ComplexMatrix vectors_with_gram(const GramSpec& spec) {
  const ComplexMatrix& q = spec.q;
  const EigenSystem es = hermitian_eigensystem(q);
  const std::size_t n = q.rows();
  const double lmax = es.values.empty() ? 0.0 : std::max(es.values.back(), 0.0);
  const double floor = -1e-9 * std::max({lmax, q.max_abs(), spec.scale});

  ComplexMatrix x(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = es.values[k];
    if (lambda < floor) {
      throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(lambda) + " (scale " + std::to_string(std::max(lmax, spec.scale)) + ")" +
                                         " is negative beyond tolerance");
    }
    const double root = std::sqrt(std::max(lambda, 0.0));
    // Row k of X is sqrt(lambda_k) times the conjugated k-th eigenvector.
    for (std::size_t j = 0; j < n; ++j) x(k, j) = root * std::conj(es.vectors(j, k));
  }
  return x;
}

}  // namespace postselect
