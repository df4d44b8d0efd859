#pragma once

// Random fixtures and reference computations shared by the unit and
// acceptance tests. Kept independent of the library's own factorizations.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "postselect/linalg.hpp"
#include "postselect/projective.hpp"

namespace testsupport {

using postselect::ComplexMatrix;
using postselect::cplx;

inline cplx gauss_c(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

inline ComplexMatrix gaussian(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  ComplexMatrix m(r, c);
  for (auto& z : m.data()) z = gauss_c(rng);
  return m;
}

// Modified Gram-Schmidt on a Gaussian matrix: Haar-distributed up to column
// phases, which is all the tests need.
inline ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  ComplexMatrix a = gaussian(n, n, rng);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      cplx d = 0.0;
      for (std::size_t r = 0; r < n; ++r) d += std::conj(a(r, k)) * a(r, j);
      for (std::size_t r = 0; r < n; ++r) a(r, j) -= d * a(r, k);
    }
    double nn = 0.0;
    for (std::size_t r = 0; r < n; ++r) nn += std::norm(a(r, j));
    nn = std::sqrt(nn);
    for (std::size_t r = 0; r < n; ++r) a(r, j) /= nn;
  }
  return a;
}

// Weakly contracting: the Frobenius norm bounds the operator norm.
inline ComplexMatrix random_contraction(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.2, 1.0);
  ComplexMatrix a = gaussian(n, n, rng);
  return a * cplx(u(rng) / a.frobenius());
}

inline ComplexMatrix random_state(std::size_t n, std::mt19937_64& rng) {
  ComplexMatrix v = gaussian(n, 1, rng);
  return v * cplx(1.0 / postselect::norm(v));
}

inline postselect::ProjectivePoint random_point(std::size_t n, std::mt19937_64& rng) {
  return postselect::ProjectivePoint::from_vector(gaussian(n, 1, rng));
}

inline double fs_reference(const ComplexMatrix& u, const ComplexMatrix& v) {
  cplx s = 0.0;
  double nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    s += std::conj(u[i]) * v[i];
    nu += std::norm(u[i]);
    nv += std::norm(v[i]);
  }
  return std::acos(std::min(1.0, std::abs(s) / std::sqrt(nu * nv)));
}

// Moebius value of a 2x2 matrix at a finite point; the oracle for the
// homogeneous-coordinate code paths.
inline cplx moebius_value(const ComplexMatrix& m, cplx z) {
  return (m(0, 0) * z + m(0, 1)) / (m(1, 0) * z + m(1, 1));
}

inline double max_abs(const ComplexMatrix& m) { return m.max_abs(); }

}  // namespace testsupport
