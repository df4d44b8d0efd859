#pragma once

#include <span>
#include <vector>

#include "postselect/linalg.hpp"

namespace postselect {

// Basis convention for the composite space C^2 (ancilla) x C^n (principal):
// the ancilla is the high-order factor, so the n basis states with the
// ancilla in |0> occupy indices 0..n-1. The ancilla starts and is
// post-selected in |0>, which makes the realized operator the top-left
// n x n block of U.

struct ContractionSpectrum {
  double lambda_min = 0.0;  // of L^dagger L, clamped >= 0
  double lambda_max = 0.0;
  bool weakly_contracting = false;  // lambda_max <= 1 + 1e-9
};

struct DilationResult {
  ComplexMatrix u;           // 2n x 2n unitary
  cplx scale_c{1.0, 0.0};    // top-left block of u equals scale_c * L
  double lambda_min = 0.0;   // spectrum of L^dagger L for the caller's L
  double lambda_max = 0.0;
  double gsp = 0.0;          // guaranteed success probability of u
};

struct PostSelectOutcome {
  ComplexMatrix state;  // unnormalized top block of U (|0> (x) psi)
  double success_prob = 0.0;
};

enum class Scaling { Optimal, Literal };

ContractionSpectrum contraction_spectrum(const ComplexMatrix& l);

// Unitary U with top-left block exactly L, block below it from
// vectors_with_gram(I - L^dagger L), remaining columns by orthonormal
// completion. Throws NotContracting unless L is weakly contracting.
ComplexMatrix dilate_literal(const ComplexMatrix& l);

// Optimal: scale_c = 1/sqrt(lambda_max), gsp = lambda_min/lambda_max.
// Literal: scale_c = 1 when L is already weakly contracting.
DilationResult exact_realize(const ComplexMatrix& l, Scaling scaling = Scaling::Optimal);

PostSelectOutcome apply_postselected(const ComplexMatrix& u, const ComplexMatrix& psi);

// L = sum_i w_i U_i, literally realized.
DilationResult realize_convex_combination(std::span<const ComplexMatrix> unitaries,
                                          std::span<const double> weights);

// lambda_min / lambda_max of L^dagger L; zero exactly when L is singular.
double rho(const ComplexMatrix& l);

// Guaranteed success probability of an arbitrary 2n x 2n unitary:
// lambda_min(M^dagger M) for its top-left block M.
double guaranteed_success_probability(const ComplexMatrix& u);

}  // namespace postselect
