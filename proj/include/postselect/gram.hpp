#pragma once

#include "postselect/linalg.hpp"

namespace postselect {

// Target Gram matrix Q (Q_ij = <x_i, x_j>).
struct GramSpec {
  ComplexMatrix q;
  // Magnitude the clamping tolerance is measured against, when it exceeds
  // lambda_max(Q). For Q = I - L^dagger L it is 1: with L unitary Q is pure
  // rounding noise and its own lambda_max says nothing about that.
  double scale = 0.0;
};

// Returns X (n x n) whose columns x_1..x_n satisfy <x_i, x_j> = Q_ij, i.e.
// X^dagger X = Q. Built as X = sqrt(D) V^dagger from Q = V D V^dagger.
// Eigenvalues in [-1e-9 * max(lambda_max, scale), 0) are clamped to zero; anything more
// negative means the inner products are infeasible and NotPSD is thrown.
ComplexMatrix vectors_with_gram(const GramSpec& spec);

}  // namespace postselect
